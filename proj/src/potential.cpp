// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spectral_sums {
namespace {

constexpr double kPi = std::numbers::pi;

double grid_node(int i, int grid) {
  if (i == grid) return kPi;
  return kPi * static_cast<double>(i) / static_cast<double>(grid);
}

}  // namespace

FourierPotential::FourierPotential(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("coefficient list must contain q_0");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw std::invalid_argument("coefficients must be finite");
}

FourierPotential FourierPotential::constant(double c) { return FourierPotential({2.0 * c}); }

double FourierPotential::coeff(int k) const {
  if (k < 0) throw std::out_of_range("coefficient index must be >= 0");
  if (k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double FourierPotential::eval(double x) const {
  if (!(x >= 0.0 && x <= kPi))
    throw std::domain_error("evaluation point " + std::to_string(x) + " outside [0, pi]");
  double v = 0.5 * coeffs_[0];
  for (int k = 1; k < static_cast<int>(coeffs_.size()); ++k)
    v += coeffs_[static_cast<std::size_t>(k)] * std::cos(k * x);
  return v;
}

double FourierPotential::mean() const { return 0.5 * coeffs_[0]; }

double FourierPotential::boundary_sum() const {
  double v = coeffs_[0];
  for (int k = 2; k < static_cast<int>(coeffs_.size()); k += 2)
    v += 2.0 * coeffs_[static_cast<std::size_t>(k)];
  return v;
}

FourierPotential FourierPotential::shifted(double c) const {
  std::vector<double> out = coeffs_;
  out[0] += 2.0 * c;
  FourierPotential p(std::move(out));
  p.set_coeff_error_bound(coeff_error_bound_);
  return p;
}

SampledPotential::SampledPotential(int grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (grid_ < 8 || grid_ % 2 != 0)
    throw std::invalid_argument("grid must be even and >= 8");
  if (values_.size() != static_cast<std::size_t>(grid_) + 1)
    throw std::invalid_argument("expected grid+1 node values");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("sample values must be finite");
}

SampledPotential sample(const FourierPotential& p, int grid) {
  std::vector<double> values(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) values[static_cast<std::size_t>(i)] = p.eval(grid_node(i, grid));
  return SampledPotential(grid, std::move(values));
}

FourierPotential fourier_coefficients(const SampledPotential& s, int max_index) {
  const int g = s.grid();
  if (max_index < 0) throw std::invalid_argument("max_index must be >= 0");
  if (max_index > g / 2)
    throw std::invalid_argument("max_index " + std::to_string(max_index) +
                                " exceeds the anti-aliasing guard grid/2 = " +
                                std::to_string(g / 2));

  const double h = kPi / g;
  std::vector<double> coeffs(static_cast<std::size_t>(max_index) + 1, 0.0);
  for (int k = 0; k <= max_index; ++k) {
    double acc = 0.5 * (s.value(0) + s.value(g) * std::cos(k * kPi));
    for (int i = 1; i < g; ++i) acc += s.value(i) * std::cos(k * grid_node(i, g));
    coeffs[static_cast<std::size_t>(k)] = (2.0 / kPi) * h * acc;
  }

  // Trapezoid error for C^2 integrands: |E| <= (pi h^2 / 12) max |f''| with
  // f = (2/pi) q(x) cos(kx), so max |f''| <= (2/pi)(M2 + 2k M1 + k^2 M0).
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i <= g; ++i) m0 = std::max(m0, std::abs(s.value(i)));
  for (int i = 1; i < g; ++i) {
    m1 = std::max(m1, std::abs(s.value(i + 1) - s.value(i - 1)) / (2.0 * h));
    m2 = std::max(m2, std::abs(s.value(i + 1) - 2.0 * s.value(i) + s.value(i - 1)) / (h * h));
  }
  const double k_top = static_cast<double>(max_index);
  const double bound = (h * h / 6.0) * (m2 + 2.0 * k_top * m1 + k_top * k_top * m0);

  FourierPotential p(std::move(coeffs));
  p.set_coeff_error_bound(bound);
  return p;
}

const char* to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::DirichletFavorable: return "DirichletFavorable";
    case SymmetryClass::NeumannFavorable: return "NeumannFavorable";
    case SymmetryClass::Neither: return "Neither";
    case SymmetryClass::Both: return "Both";
  }
  return "Unknown";
}

SymmetryClass symmetry_classify(const SampledPotential& s) {
  const int g = s.grid();
  if (g < 16) throw std::invalid_argument("symmetry classification needs grid >= 16");
  const double h = kPi / g;

  std::vector<double> deriv(static_cast<std::size_t>(g) + 1, 0.0);
  double max_deriv = 0.0;
  for (int i = 1; i < g; ++i) {
    deriv[static_cast<std::size_t>(i)] = (s.value(i + 1) - s.value(i - 1)) / (2.0 * h);
    max_deriv = std::max(max_deriv, std::abs(deriv[static_cast<std::size_t>(i)]));
  }
  const double tol = 1e-8 * (1.0 + max_deriv);

  bool all_le = true;   // d <= +tol everywhere
  bool all_ge = true;   // d >= -tol everywhere
  for (int i = 1; i < g / 2; ++i) {
    const double d = deriv[static_cast<std::size_t>(i)] - deriv[static_cast<std::size_t>(g - i)];
    if (d > tol) all_le = false;
    if (d < -tol) all_ge = false;
  }

  if (all_le && all_ge) return SymmetryClass::Both;
  if (all_le) return SymmetryClass::DirichletFavorable;
  if (all_ge) return SymmetryClass::NeumannFavorable;
  return SymmetryClass::Neither;
}

TorusFourierPotential::TorusFourierPotential(int dimension, const std::vector<Term>& terms)
    : dimension_(dimension) {
  if (dimension_ < 1 || dimension_ > 4)
    throw std::invalid_argument("torus dimension must be between 1 and 4");

  double scale = 1.0;
  for (const auto& t : terms) scale = std::max(scale, std::abs(t.coeff));

  for (const auto& t : terms) {
    if (static_cast<int>(t.beta.size()) != dimension_)
      throw std::invalid_argument("potential term index has wrong dimension");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      throw std::invalid_argument("potential coefficients must be finite");
    auto [it, inserted] = terms_.emplace(t.beta, t.coeff);
    if (!inserted) throw std::invalid_argument("duplicate potential term index");
  }

  for (const auto& [beta, c] : terms_) {
    std::vector<int> neg(beta.size());
    bool is_zero = true;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      neg[i] = -beta[i];
      if (beta[i] != 0) is_zero = false;
    }
    if (is_zero) {
      if (std::abs(c.imag()) > 1e-12 * scale)
        throw std::invalid_argument("zero-index coefficient must be real");
      continue;
    }
    auto it = terms_.find(neg);
    if (it == terms_.end() || std::abs(it->second - std::conj(c)) > 1e-12 * scale)
      throw std::invalid_argument(
          "coefficients must satisfy conjugate symmetry (real-valued potential)");
  }
}

std::complex<double> TorusFourierPotential::coeff(const std::vector<int>& beta) const {
  auto it = terms_.find(beta);
  if (it == terms_.end()) return {0.0, 0.0};
  return it->second;
}

double TorusFourierPotential::average() const {
  return coeff(std::vector<int>(static_cast<std::size_t>(dimension_), 0)).real();
}

int TorusFourierPotential::max_abs_index() const {
  int m = 0;
  for (const auto& [beta, c] : terms_)
    for (int b : beta) m = std::max(m, std::abs(b));
  return m;
}

}  // namespace spectral_sums
