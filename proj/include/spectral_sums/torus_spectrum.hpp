// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "spectral_sums/interval_spectrum.hpp"
#include "spectral_sums/potential.hpp"

namespace spectral_sums {

// Rows w_j of the returned matrix satisfy (w_j, v_k) = delta_jk; computed by
// Gaussian elimination with partial pivoting and residual-checked to 1e-12.
// A numerically dependent spanning set is an explicit failure.
std::vector<std::vector<double>> dual_basis(const std::vector<std::vector<double>>& vectors);

// Flat torus R^N / lattice, N <= 4, described by its spanning vectors and the
// derived dual basis.
class Lattice {
 public:
  explicit Lattice(std::vector<std::vector<double>> vectors);

  int dimension() const { return dimension_; }
  const std::vector<std::vector<double>>& vectors() const { return vectors_; }
  const std::vector<std::vector<double>>& dual() const { return dual_; }

  // 4 pi^2 * sum_n (sum_m alpha_m w_mn)^2.
  double free_eigenvalue(const std::vector<int>& alpha) const;

  // Smallest eigenvalue of W W^T; lower-bounds free_eigenvalue(alpha) by
  // 4 pi^2 * sigma_min^2 * |alpha|^2, which certifies enumeration cutoffs.
  double sigma_min_dual_sq() const { return sigma_min_sq_; }

 private:
  int dimension_;
  std::vector<std::vector<double>> vectors_;
  std::vector<std::vector<double>> dual_;
  double sigma_min_sq_;
};

struct FreeEigenvalue {
  double value;
  std::vector<int> alpha;
};

// Ascending by value, ties broken lexicographically in alpha; complete (no
// lattice point below the last value is missing).
struct FreeSpectrum {
  std::vector<FreeEigenvalue> entries;
};

// The `count` smallest free eigenvalues with multiplicity, via expanding
// integer boxes; a cutoff is final only once the certified lower bound for
// everything outside the box exceeds it.
FreeSpectrum enumerate_free(const Lattice& lat, int count);

// Spectrum of the constant-potential operator: free values plus qbar.
std::vector<double> free_plus_average(const Lattice& lat, double qbar, int count);

// Plane-wave Galerkin over the index box |alpha|_inf <= basis_cutoff:
//   H_{alpha,alpha'} = lambda_alpha delta + qhat_{alpha - alpha'},
// solved as a Hermitian matrix. Requires every potential index to satisfy
// |beta|_inf <= basis_cutoff/2 and the embedded real order to stay within the
// dense-solver guard. Per-value estimates come from a half-cutoff solve.
SpectrumResult eigenvalues_torus(const Lattice& lat, const TorusFourierPotential& p, int count,
                                 int basis_cutoff);

}  // namespace spectral_sums
