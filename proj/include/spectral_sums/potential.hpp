// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <map>
#include <vector>

namespace spectral_sums {

// Cosine series on (0, pi): q(x) = q_0/2 + sum_{k>=1} q_k cos(kx).
// coeffs[k] stores q_k; indices beyond the stored range are exactly 0.
// The constant potential c is stored as q_0 = 2c.
class FourierPotential {
 public:
  explicit FourierPotential(std::vector<double> coeffs);
  static FourierPotential constant(double c);

  int max_index() const { return static_cast<int>(coeffs_.size()) - 1; }
  double coeff(int k) const;
  const std::vector<double>& coeffs() const { return coeffs_; }

  double eval(double x) const;   // domain error outside [0, pi]
  double mean() const;           // q_0 / 2
  double boundary_sum() const;   // q_0 + 2 * sum_{k>=1} q_{2k} == q(0) + q(pi)
  FourierPotential shifted(double c) const;

  // Quadrature error estimate carried over from fourier_coefficients; 0 for
  // exactly constructed series.
  double coeff_error_bound() const { return coeff_error_bound_; }
  void set_coeff_error_bound(double b) { coeff_error_bound_ = b; }

 private:
  std::vector<double> coeffs_;
  double coeff_error_bound_ = 0.0;
};

// Point values on the uniform closed grid x_i = pi*i/G, i = 0..G.
class SampledPotential {
 public:
  SampledPotential(int grid, std::vector<double> values);
  int grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value(int i) const { return values_[static_cast<std::size_t>(i)]; }

 private:
  int grid_;
  std::vector<double> values_;
};

SampledPotential sample(const FourierPotential& p, int grid);

// Composite trapezoid evaluation of q_k = (2/pi) * integral of q(x) cos(kx).
// Exact for cosine content strictly below the Nyquist index G/2; requires
// max_index <= G/2.
FourierPotential fourier_coefficients(const SampledPotential& s, int max_index);

enum class SymmetryClass { DirichletFavorable, NeumannFavorable, Neither, Both };

const char* to_string(SymmetryClass c);

// Grid test of the sign of d(x) = q'(x) - q'(pi - x) on (0, pi/2) using
// centered differences (one-sided ends excluded), tol = 1e-8*(1 + max |q'|).
// Both when |d| <= tol everywhere; else DirichletFavorable when d <= tol
// everywhere, NeumannFavorable when d >= -tol everywhere, Neither otherwise.
SymmetryClass symmetry_classify(const SampledPotential& s);

// Finite Fourier data of a real potential on an N-torus: map from the dual
// index beta to the complex coefficient. Conjugate symmetry (coefficient at
// -beta equals the conjugate) is required of the input, which keeps the
// potential real-valued; the beta = 0 coefficient must be real.
class TorusFourierPotential {
 public:
  struct Term {
    std::vector<int> beta;
    std::complex<double> coeff;
  };

  TorusFourierPotential(int dimension, const std::vector<Term>& terms);

  int dimension() const { return dimension_; }
  std::complex<double> coeff(const std::vector<int>& beta) const;  // 0 when absent
  double average() const;       // the beta = 0 coefficient
  int max_abs_index() const;    // max over terms of |beta|_inf
  const std::map<std::vector<int>, std::complex<double>>& terms() const { return terms_; }

 private:
  int dimension_;
  std::map<std::vector<int>, std::complex<double>> terms_;
};

}  // namespace spectral_sums
