// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "spectral_sums/potential.hpp"
#include "spectral_sums/symmetric_eig.hpp"

namespace spectral_sums {

enum class BoundaryCondition { Dirichlet, Neumann, Periodic };

const char* to_string(BoundaryCondition bc);

// Eigenvalue problem -u'' + q u = lambda u on (0, pi) discretized in the free
// eigenbasis (sin kx for Dirichlet, normalized cos kx for Neumann).
struct IntervalProblem {
  FourierPotential potential;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  int basis_size = 64;  // >= 8
};

struct SpectrumResult {
  std::vector<double> values;           // ascending
  std::vector<double> error_estimates;  // per value, same length
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  int basis_size = 0;  // trial-space size, or grid intervals for "fd"
  std::string method;  // "galerkin", "fd", or "plane-wave"
  // Free-basis coordinates of the first values.size() eigenfunctions when
  // requested; row-major, vector_rows x values.size().
  std::vector<double> vectors;
  int vector_rows = 0;
  bool has_vectors = false;

  double vector_component(int row, int col) const {
    return vectors[static_cast<std::size_t>(row) * values.size() + col];
  }
};

// Sine-basis form matrix, indices j,k = 1..basis_size:
//   H_jk = j^2 delta_jk + (q_{|j-k|} - q_{j+k}) / 2.
// The diagonal equals the closed-form Dirichlet Rayleigh quotient.
DenseSymmetricMatrix assemble_dirichlet(const FourierPotential& p, int basis_size);

// Normalized cosine-basis form matrix, indices j,k = 0..basis_size:
//   H_00 = q_0/2, H_0k = q_k/sqrt(2),
//   H_jk = j^2 delta_jk + (q_{|j-k|} + q_{j+k}) / 2 for j,k >= 1.
DenseSymmetricMatrix assemble_neumann(const FourierPotential& p, int basis_size);

// First `count` eigenvalues by Rayleigh-Ritz in the free basis. Values are
// upper bounds to the true eigenvalues, decreasing in basis_size; the per-value
// truncation estimate is the gap against a half-basis solve. Requires
// basis_size >= max(4*count, count + 32).
SpectrumResult eigenvalues(const IntervalProblem& prob, int count, bool want_vectors = false);

// Independent second-order central finite-difference solver on `grid`
// intervals (even, >= 64*count). Dirichlet removes the boundary nodes; Neumann
// uses mirror ghost nodes, symmetrized by a diagonal similarity. O(grid^-2)
// accuracy; the per-value estimate is a half-grid Richardson gap.
SpectrumResult fd_oracle(const FourierPotential& p, BoundaryCondition bc, int count, int grid);

// Sampled input variant; the sample grid must equal `grid` so nodes line up.
SpectrumResult fd_oracle(const SampledPotential& s, BoundaryCondition bc, int count, int grid);

}  // namespace spectral_sums
