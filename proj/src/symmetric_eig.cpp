// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums/symmetric_eig.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

namespace spectral_sums {
namespace {

// Householder reduction of a (row-major, destroyed) to tridiagonal form.
// When accumulate is set, a is overwritten with the orthogonal transform Q so
// that Q^T A Q = T; otherwise a's contents are scratch afterwards.
void householder_tridiagonalize(int n, std::vector<double>& a, std::vector<double>& d,
                                std::vector<double>& e, bool accumulate) {
  auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          if (accumulate) at(j, i) = at(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = at(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }

  if (accumulate) d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (accumulate) {
      const int l = i - 1;
      if (d[i] != 0.0) {
        for (int j = 0; j <= l; ++j) {
          double g = 0.0;
          for (int k = 0; k <= l; ++k) g += at(i, k) * at(k, j);
          for (int k = 0; k <= l; ++k) at(k, j) -= g * at(k, i);
        }
      }
      d[i] = at(i, i);
      at(i, i) = 1.0;
      for (int j = 0; j <= l; ++j) at(j, i) = at(i, j) = 0.0;
    } else {
      d[i] = at(i, i);
    }
  }
}

// Implicit-shift QL sweeps on the tridiagonal (d, e); e uses the convention
// e[i] couples d[i-1] and d[i], with e[0] unused. z (if non-null, row-major
// n x n) accumulates the rotations onto an initial orthogonal matrix.
void ql_implicit(int n, std::vector<double>& d, std::vector<double>& e, double* z) {
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const long rotation_budget_per_value = 50L * n;
  for (int l = 0; l < n; ++l) {
    long rotations = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool deflated_early = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated_early = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (int k = 0; k < n; ++k) {
              f = z[static_cast<std::size_t>(k) * n + i + 1];
              z[static_cast<std::size_t>(k) * n + i + 1] = s * z[static_cast<std::size_t>(k) * n + i] + c * f;
              z[static_cast<std::size_t>(k) * n + i] = c * z[static_cast<std::size_t>(k) * n + i] - s * f;
            }
          }
          if (++rotations > rotation_budget_per_value) {
            throw SolverError("eigenvalue iteration exceeded " +
                              std::to_string(rotation_budget_per_value) +
                              " rotations at index " + std::to_string(l));
          }
        }
        // A completed sweep must still fold its accumulated shift into d[l];
        // only a genuine early deflation (r hit exactly zero mid-sweep) skips
        // that and restarts the scan.
        if (deflated_early) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void sort_ascending(int n, std::vector<double>& d, double* z) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&d](int i, int j) { return d[i] < d[j]; });

  std::vector<double> ds(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) ds[j] = d[perm[j]];
  d = std::move(ds);

  if (z != nullptr) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double* base = z + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) row[j] = base[perm[j]];
      std::copy(row.begin(), row.end(), base);
    }
  }
}

}  // namespace

DenseSymmetricMatrix::DenseSymmetricMatrix(int order, std::vector<double> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ < 1) throw std::invalid_argument("matrix order must be >= 1");
  if (order_ > kMaxEigenOrder)
    throw std::invalid_argument("matrix order exceeds the resource guard of 4096");
  if (entries_.size() != static_cast<std::size_t>(order_) * order_)
    throw std::invalid_argument("entry count does not match order*order");
  for (double v : entries_)
    if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
  for (int i = 0; i < order_; ++i) {
    for (int j = i + 1; j < order_; ++j) {
      const double aij = entries_[static_cast<std::size_t>(i) * order_ + j];
      const double aji = entries_[static_cast<std::size_t>(j) * order_ + i];
      const double tol = 1e-13 * std::max({1.0, std::abs(aij), std::abs(aji)});
      if (std::abs(aij - aji) > tol)
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      const double sym = 0.5 * (aij + aji);
      entries_[static_cast<std::size_t>(i) * order_ + j] = sym;
      entries_[static_cast<std::size_t>(j) * order_ + i] = sym;
    }
  }
}

EigenDecomposition eigen_symmetric(const DenseSymmetricMatrix& a, bool want_vectors) {
  const int n = a.order();
  std::vector<double> work = a.entries();
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);

  if (n == 1) {
    EigenDecomposition out;
    out.values = {work[0]};
    if (want_vectors) {
      out.vectors = {1.0};
      out.has_vectors = true;
    }
    return out;
  }

  householder_tridiagonalize(n, work, d, e, want_vectors);
  ql_implicit(n, d, e, want_vectors ? work.data() : nullptr);
  sort_ascending(n, d, want_vectors ? work.data() : nullptr);

  EigenDecomposition out;
  out.values = std::move(d);
  if (want_vectors) {
    out.vectors = std::move(work);
    out.has_vectors = true;
  }
  return out;
}

EigenDecomposition eigen_tridiagonal(const std::vector<double>& diag,
                                     const std::vector<double>& sub, bool want_vectors) {
  const int n = static_cast<int>(diag.size());
  if (n < 1) throw std::invalid_argument("tridiagonal order must be >= 1");
  if (sub.size() + 1 != diag.size())
    throw std::invalid_argument("subdiagonal must have order-1 entries");
  for (double v : diag)
    if (!std::isfinite(v)) throw std::invalid_argument("tridiagonal entries must be finite");
  for (double v : sub)
    if (!std::isfinite(v)) throw std::invalid_argument("tridiagonal entries must be finite");

  std::vector<double> d = diag;
  // ql_implicit expects the coupling between d[i-1] and d[i] in e[i].
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i < n; ++i) e[i] = sub[i - 1];

  EigenDecomposition out;
  if (want_vectors) {
    out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) out.vectors[static_cast<std::size_t>(i) * n + i] = 1.0;
    out.has_vectors = true;
  }
  if (n == 1) {
    out.values = d;
    return out;
  }
  ql_implicit(n, d, e, want_vectors ? out.vectors.data() : nullptr);
  sort_ascending(n, d, want_vectors ? out.vectors.data() : nullptr);
  out.values = std::move(d);
  return out;
}

std::vector<double> eigen_hermitian(int order, const std::vector<std::complex<double>>& entries) {
  if (order < 1) throw std::invalid_argument("matrix order must be >= 1");
  if (2 * order > kMaxEigenOrder)
    throw std::invalid_argument("embedded matrix order exceeds the resource guard of 4096");
  if (entries.size() != static_cast<std::size_t>(order) * order)
    throw std::invalid_argument("entry count does not match order*order");

  double scale = 1.0;
  for (const auto& v : entries) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < order; ++i) {
    for (int j = i; j < order; ++j) {
      const auto hij = entries[static_cast<std::size_t>(i) * order + j];
      const auto hji = entries[static_cast<std::size_t>(j) * order + i];
      if (std::abs(hij - std::conj(hji)) > 1e-13 * scale)
        throw std::invalid_argument("matrix is not Hermitian at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    }
  }

  // H = A + iB embeds as the real symmetric [[A, -B], [B, A]], doubling every
  // eigenvalue.
  const int m = 2 * order;
  std::vector<double> embed(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const auto h = entries[static_cast<std::size_t>(i) * order + j];
      embed[static_cast<std::size_t>(i) * m + j] = h.real();
      embed[static_cast<std::size_t>(i) * m + (j + order)] = -h.imag();
      embed[static_cast<std::size_t>(i + order) * m + j] = h.imag();
      embed[static_cast<std::size_t>(i + order) * m + (j + order)] = h.real();
    }
  }

  DenseSymmetricMatrix em(m, std::move(embed));
  EigenDecomposition dec = eigen_symmetric(em, false);

  const double pair_tol = 1e-8 * scale;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(order));
  for (int i = 0; i < m; i += 2) {
    const double lo = dec.values[i];
    const double hi = dec.values[i + 1];
    if (std::abs(hi - lo) > pair_tol)
      throw SolverError("embedded eigenvalue " + std::to_string(lo) +
                        " has no partner within pairing tolerance");
    values.push_back(0.5 * (lo + hi));
  }
  return values;
}

}  // namespace spectral_sums
