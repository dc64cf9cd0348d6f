// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums/torus_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spectral_sums/symmetric_eig.hpp"

namespace spectral_sums {
namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

// All integer vectors with |alpha|_inf <= b in lexicographic order.
std::vector<std::vector<int>> index_box(int dimension, int b) {
  std::vector<std::vector<int>> out;
  std::vector<int> alpha(static_cast<std::size_t>(dimension), -b);
  while (true) {
    out.push_back(alpha);
    int pos = dimension - 1;
    while (pos >= 0 && alpha[static_cast<std::size_t>(pos)] == b) {
      alpha[static_cast<std::size_t>(pos)] = -b;
      --pos;
    }
    if (pos < 0) break;
    ++alpha[static_cast<std::size_t>(pos)];
  }
  return out;
}

std::vector<double> torus_galerkin_values(const Lattice& lat, const TorusFourierPotential& p,
                                          int cutoff) {
  const int n = lat.dimension();
  const std::vector<std::vector<int>> box = index_box(n, cutoff);
  const int m = static_cast<int>(box.size());
  if (2 * m > kMaxEigenOrder)
    throw std::invalid_argument("plane-wave box of " + std::to_string(m) +
                                " modes exceeds the dense-solver guard");

  std::vector<std::complex<double>> h(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<int> diff(static_cast<std::size_t>(n));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i)
        diff[static_cast<std::size_t>(i)] =
            box[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] -
            box[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)];
      std::complex<double> v = p.coeff(diff);
      if (a == b) v += lat.free_eigenvalue(box[static_cast<std::size_t>(a)]);
      h[static_cast<std::size_t>(a) * m + b] = v;
    }
  }
  return eigen_hermitian(m, h);
}

}  // namespace

std::vector<std::vector<double>> dual_basis(const std::vector<std::vector<double>>& vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n < 1 || n > 4) throw std::invalid_argument("lattice dimension must be between 1 and 4");
  double scale = 0.0;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("spanning vectors must have length equal to their count");
    for (double x : v) {
      if (!std::isfinite(x)) throw std::invalid_argument("spanning vectors must be finite");
      scale = std::max(scale, std::abs(x));
    }
  }
  if (scale == 0.0) throw std::invalid_argument("spanning vectors are all zero");

  // Gauss-Jordan on [V^T | I]; the dual matrix is (V^T)^{-1}.
  std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(2 * n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1.0;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
        pivot = r;
    if (std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]) <= 1e-12 * scale)
      throw std::invalid_argument("spanning vectors are numerically dependent");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    const double d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int j = 0; j < 2 * n; ++j) a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * n; ++j)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
    }
  }

  std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  double wscale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
      wscale = std::max(wscale, std::abs(w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }

  const double tol = 1e-12 * std::max(1.0, scale * wscale);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i)
        dot += w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
               vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      if (std::abs(dot - (j == k ? 1.0 : 0.0)) > tol)
        throw std::invalid_argument("dual-basis residual check failed");
    }
  return w;
}

Lattice::Lattice(std::vector<std::vector<double>> vectors)
    : dimension_(static_cast<int>(vectors.size())),
      vectors_(std::move(vectors)),
      dual_(dual_basis(vectors_)),
      sigma_min_sq_(0.0) {
  // sigma_min(W^T)^2 is the smallest eigenvalue of W W^T.
  std::vector<double> g(static_cast<std::size_t>(dimension_) * dimension_, 0.0);
  for (int i = 0; i < dimension_; ++i)
    for (int j = 0; j < dimension_; ++j) {
      double dot = 0.0;
      for (int k = 0; k < dimension_; ++k)
        dot += dual_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
               dual_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      g[static_cast<std::size_t>(i) * dimension_ + j] = dot;
    }
  DenseSymmetricMatrix gram(dimension_, std::move(g));
  sigma_min_sq_ = eigen_symmetric(gram, false).values.front();
}

double Lattice::free_eigenvalue(const std::vector<int>& alpha) const {
  if (static_cast<int>(alpha.size()) != dimension_)
    throw std::invalid_argument("index vector has wrong dimension");
  double sum = 0.0;
  for (int n = 0; n < dimension_; ++n) {
    double c = 0.0;
    for (int m = 0; m < dimension_; ++m)
      c += alpha[static_cast<std::size_t>(m)] * dual_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
    sum += c * c;
  }
  return kFourPiSq * sum;
}

FreeSpectrum enumerate_free(const Lattice& lat, int count) {
  if (count < 1) throw std::invalid_argument("requested eigenvalue count must be >= 1");
  const double lower_rate = kFourPiSq * lat.sigma_min_dual_sq();

  for (int b = 1;; ++b) {
    const std::vector<std::vector<int>> box = index_box(lat.dimension(), b);
    if (box.size() > static_cast<std::size_t>(3'000'000))
      throw SolverError("free-spectrum enumeration box grew past 3e6 points");
    if (box.size() < static_cast<std::size_t>(count)) continue;

    std::vector<FreeEigenvalue> entries;
    entries.reserve(box.size());
    for (const auto& alpha : box) entries.push_back({lat.free_eigenvalue(alpha), alpha});
    std::sort(entries.begin(), entries.end(), [](const FreeEigenvalue& x, const FreeEigenvalue& y) {
      if (x.value != y.value) return x.value < y.value;
      return x.alpha < y.alpha;
    });

    const double cutoff = entries[static_cast<std::size_t>(count) - 1].value;
    // Everything outside the box has |alpha| >= b+1, hence free eigenvalue
    // at least lower_rate*(b+1)^2; the margin also pulls in exact ties.
    const double certified = lower_rate * static_cast<double>(b + 1) * (b + 1);
    if (certified > cutoff * (1.0 + 1e-9) + 1e-12) {
      entries.resize(static_cast<std::size_t>(count));
      return FreeSpectrum{std::move(entries)};
    }
  }
}

std::vector<double> free_plus_average(const Lattice& lat, double qbar, int count) {
  FreeSpectrum free = enumerate_free(lat, count);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = free.entries[static_cast<std::size_t>(k)].value + qbar;
  return out;
}

SpectrumResult eigenvalues_torus(const Lattice& lat, const TorusFourierPotential& p, int count,
                                 int basis_cutoff) {
  if (count < 1) throw std::invalid_argument("requested eigenvalue count must be >= 1");
  if (p.dimension() != lat.dimension())
    throw std::invalid_argument("potential dimension does not match the lattice");
  if (lat.dimension() > 2)
    throw std::invalid_argument("perturbed torus solves are limited to dimension <= 2");
  if (basis_cutoff < 2) throw std::invalid_argument("basis cutoff must be >= 2");
  if (p.max_abs_index() > basis_cutoff / 2)
    throw std::invalid_argument("potential index range exceeds basis_cutoff/2");

  const int half_cutoff = basis_cutoff / 2;
  double half_modes = 1.0;
  for (int i = 0; i < lat.dimension(); ++i) half_modes *= 2.0 * half_cutoff + 1.0;
  if (half_modes < static_cast<double>(count))
    throw std::invalid_argument("basis cutoff too small for the requested count");

  const std::vector<double> full = torus_galerkin_values(lat, p, basis_cutoff);
  const std::vector<double> half = torus_galerkin_values(lat, p, half_cutoff);

  SpectrumResult out;
  out.bc = BoundaryCondition::Periodic;
  out.basis_size = basis_cutoff;
  out.method = "plane-wave";
  out.values.assign(full.begin(), full.begin() + count);
  out.error_estimates.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    out.error_estimates[static_cast<std::size_t>(k)] =
        std::max(0.0, half[static_cast<std::size_t>(k)] - out.values[static_cast<std::size_t>(k)]);
  return out;
}

}  // namespace spectral_sums
