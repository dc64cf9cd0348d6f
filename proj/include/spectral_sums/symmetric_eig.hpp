// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectral_sums {

// Raised when an iterative eigenvalue sweep exhausts its rotation budget or an
// eigenvalue of an embedded Hermitian matrix cannot be paired. Never silent.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Orders above this are rejected up front; the dense O(n^3) path is meant for
// desk-scale Galerkin matrices, not large sparse problems.
inline constexpr int kMaxEigenOrder = 4096;

// Row-major dense symmetric matrix. Construction checks symmetry to 1e-13
// relative and stores the symmetrized entries.
class DenseSymmetricMatrix {
 public:
  DenseSymmetricMatrix(int order, std::vector<double> entries);

  int order() const { return order_; }
  double at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * order_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  int order_;
  std::vector<double> entries_;
};

struct EigenDecomposition {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major order x order; column j = eigenvector j; empty unless requested
  bool has_vectors = false;

  double vector_component(int row, int col, int order) const {
    return vectors[static_cast<std::size_t>(row) * order + col];
  }
};

// Householder tridiagonalization followed by implicit-shift QL. Deterministic;
// throws SolverError after 50*order rotations on a single eigenvalue.
EigenDecomposition eigen_symmetric(const DenseSymmetricMatrix& a, bool want_vectors);

// Implicit-shift QL directly on a tridiagonal matrix (diag d[0..n-1],
// subdiagonal e[0..n-2]). Same failure contract as eigen_symmetric; O(n^2)
// without vectors, which keeps fine finite-difference grids cheap.
EigenDecomposition eigen_tridiagonal(const std::vector<double>& diag,
                                     const std::vector<double>& sub,
                                     bool want_vectors);

// Hermitian solve via the real embedding [[A, -B], [B, A]] of H = A + iB.
// Entries are row-major order x order; Hermitian symmetry checked to 1e-13.
// Each doubled eigenvalue of the embedding is returned once (pairing tolerance
// 1e-8 * scale); an unpaired value raises SolverError.
std::vector<double> eigen_hermitian(int order, const std::vector<std::complex<double>>& entries);

}  // namespace spectral_sums
