// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums/interval_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spectral_sums {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtHalf = 0.70710678118654752440;

void check_count(int count) {
  if (count < 1) throw std::invalid_argument("requested eigenvalue count must be >= 1");
}

std::vector<double> galerkin_values(const FourierPotential& p, BoundaryCondition bc,
                                    int basis_size, int count, SpectrumResult* vectors_out) {
  const DenseSymmetricMatrix h = bc == BoundaryCondition::Dirichlet
                                     ? assemble_dirichlet(p, basis_size)
                                     : assemble_neumann(p, basis_size);
  const bool want_vectors = vectors_out != nullptr;
  EigenDecomposition dec = eigen_symmetric(h, want_vectors);
  std::vector<double> firstn(dec.values.begin(), dec.values.begin() + count);
  if (want_vectors) {
    const int order = h.order();
    vectors_out->vector_rows = order;
    vectors_out->vectors.assign(static_cast<std::size_t>(order) * count, 0.0);
    for (int r = 0; r < order; ++r)
      for (int c = 0; c < count; ++c)
        vectors_out->vectors[static_cast<std::size_t>(r) * count + c] =
            dec.vector_component(r, c, order);
    vectors_out->has_vectors = true;
  }
  return firstn;
}

// Shared finite-difference worker; `fine` holds node values q(x_i) on the
// closed grid of `grid` intervals.
SpectrumResult fd_solve(const std::vector<double>& fine, BoundaryCondition bc, int count,
                        int grid) {
  auto solve_on = [bc](const std::vector<double>& nodes, int g) {
    const double h = kPi / g;
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> diag;
    std::vector<double> sub;
    if (bc == BoundaryCondition::Dirichlet) {
      diag.reserve(static_cast<std::size_t>(g) - 1);
      for (int i = 1; i < g; ++i) diag.push_back(2.0 * inv_h2 + nodes[static_cast<std::size_t>(i)]);
      sub.assign(static_cast<std::size_t>(g) - 2, -inv_h2);
    } else {
      diag.reserve(static_cast<std::size_t>(g) + 1);
      for (int i = 0; i <= g; ++i) diag.push_back(2.0 * inv_h2 + nodes[static_cast<std::size_t>(i)]);
      sub.assign(static_cast<std::size_t>(g), -inv_h2);
      // Mirror ghost rows made symmetric by the similarity
      // diag(1/sqrt2, 1, ..., 1, 1/sqrt2).
      sub.front() = -std::sqrt(2.0) * inv_h2;
      sub.back() = -std::sqrt(2.0) * inv_h2;
    }
    return eigen_tridiagonal(diag, sub, false).values;
  };

  const std::vector<double> full = solve_on(fine, grid);

  std::vector<double> coarse_nodes(static_cast<std::size_t>(grid / 2) + 1);
  for (int i = 0; i <= grid / 2; ++i) coarse_nodes[static_cast<std::size_t>(i)] = fine[static_cast<std::size_t>(2 * i)];
  const std::vector<double> half = solve_on(coarse_nodes, grid / 2);

  SpectrumResult out;
  out.bc = bc;
  out.basis_size = grid;
  out.method = "fd";
  out.values.assign(full.begin(), full.begin() + count);
  out.error_estimates.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    // Richardson for an O(h^2) method: err(h) ~ (value(2h) - value(h)) / 3.
    out.error_estimates[static_cast<std::size_t>(k)] =
        std::abs(half[static_cast<std::size_t>(k)] - full[static_cast<std::size_t>(k)]) / 3.0;
  return out;
}

void check_fd_grid(int count, int grid) {
  check_count(count);
  if (grid < 64 * count)
    throw std::invalid_argument("finite-difference grid must be >= 64 * count");
  if (grid % 2 != 0)
    throw std::invalid_argument("finite-difference grid must be even");
}

}  // namespace

const char* to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::Periodic: return "periodic";
  }
  return "unknown";
}

DenseSymmetricMatrix assemble_dirichlet(const FourierPotential& p, int basis_size) {
  if (basis_size < 1) throw std::invalid_argument("basis size must be >= 1");
  std::vector<double> entries(static_cast<std::size_t>(basis_size) * basis_size, 0.0);
  for (int j = 1; j <= basis_size; ++j) {
    for (int k = 1; k <= basis_size; ++k) {
      double v = 0.5 * (p.coeff(std::abs(j - k)) - p.coeff(j + k));
      if (j == k) v += static_cast<double>(j) * j;
      entries[static_cast<std::size_t>(j - 1) * basis_size + (k - 1)] = v;
    }
  }
  return DenseSymmetricMatrix(basis_size, std::move(entries));
}

DenseSymmetricMatrix assemble_neumann(const FourierPotential& p, int basis_size) {
  if (basis_size < 1) throw std::invalid_argument("basis size must be >= 1");
  const int order = basis_size + 1;
  std::vector<double> entries(static_cast<std::size_t>(order) * order, 0.0);
  entries[0] = 0.5 * p.coeff(0);
  for (int k = 1; k <= basis_size; ++k) {
    const double v = p.coeff(k) * kSqrtHalf;
    entries[static_cast<std::size_t>(k)] = v;
    entries[static_cast<std::size_t>(k) * order] = v;
  }
  for (int j = 1; j <= basis_size; ++j) {
    for (int k = 1; k <= basis_size; ++k) {
      double v = 0.5 * (p.coeff(std::abs(j - k)) + p.coeff(j + k));
      if (j == k) v += static_cast<double>(j) * j;
      entries[static_cast<std::size_t>(j) * order + k] = v;
    }
  }
  return DenseSymmetricMatrix(order, std::move(entries));
}

SpectrumResult eigenvalues(const IntervalProblem& prob, int count, bool want_vectors) {
  check_count(count);
  if (prob.bc == BoundaryCondition::Periodic)
    throw std::invalid_argument("periodic problems are handled by the torus solver");
  if (prob.basis_size < 8) throw std::invalid_argument("basis size must be >= 8");
  const int required = std::max(4 * count, count + 32);
  if (prob.basis_size < required)
    throw std::invalid_argument("basis size " + std::to_string(prob.basis_size) +
                                " too small for " + std::to_string(count) +
                                " eigenvalues; need >= " + std::to_string(required));

  SpectrumResult out;
  out.bc = prob.bc;
  out.basis_size = prob.basis_size;
  out.method = "galerkin";
  out.values = galerkin_values(prob.potential, prob.bc, prob.basis_size, count,
                               want_vectors ? &out : nullptr);
  const std::vector<double> half =
      galerkin_values(prob.potential, prob.bc, prob.basis_size / 2, count, nullptr);
  out.error_estimates.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    // Rayleigh-Ritz values decrease in basis size, so the half-basis gap is a
    // conservative one-sided truncation estimate.
    out.error_estimates[static_cast<std::size_t>(k)] =
        std::max(0.0, half[static_cast<std::size_t>(k)] - out.values[static_cast<std::size_t>(k)]);
  return out;
}

SpectrumResult fd_oracle(const FourierPotential& p, BoundaryCondition bc, int count, int grid) {
  check_fd_grid(count, grid);
  if (bc == BoundaryCondition::Periodic)
    throw std::invalid_argument("periodic problems are handled by the torus solver");
  std::vector<double> nodes(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) {
    const double x = i == grid ? kPi : kPi * static_cast<double>(i) / grid;
    nodes[static_cast<std::size_t>(i)] = p.eval(x);
  }
  return fd_solve(nodes, bc, count, grid);
}

SpectrumResult fd_oracle(const SampledPotential& s, BoundaryCondition bc, int count, int grid) {
  check_fd_grid(count, grid);
  if (bc == BoundaryCondition::Periodic)
    throw std::invalid_argument("periodic problems are handled by the torus solver");
  if (s.grid() != grid)
    throw std::invalid_argument("sample grid must match the finite-difference grid");
  return fd_solve(s.values(), bc, count, grid);
}

}  // namespace spectral_sums
