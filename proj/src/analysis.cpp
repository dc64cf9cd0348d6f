// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spectral_sums {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBaseTol = 1e-9;

void require_spectrum(const SpectrumResult& spec, BoundaryCondition bc, int count,
                      const char* what) {
  if (spec.bc != bc)
    throw std::invalid_argument(std::string(what) + ": spectrum has the wrong boundary condition");
  if (static_cast<int>(spec.values.size()) < count)
    throw std::invalid_argument(std::string(what) + ": spectrum holds fewer than " +
                                std::to_string(count) + " eigenvalues");
  if (spec.error_estimates.size() != spec.values.size())
    throw std::invalid_argument(std::string(what) + ": spectrum lacks per-value error estimates");
}

double error_budget(const SpectrumResult& spec, int count) {
  double s = 0.0;
  for (int k = 0; k < count; ++k) s += spec.error_estimates[static_cast<std::size_t>(k)];
  return s;
}

InequalityReport make_report(std::string theorem, int n, double lhs, double rhs, double slack,
                             double tol, std::string note) {
  InequalityReport r;
  r.theorem = std::move(theorem);
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = slack;
  r.tol = tol;
  r.status = slack >= -tol ? ReportStatus::Pass : ReportStatus::Fail;
  r.note = std::move(note);
  return r;
}

InequalityReport make_inapplicable(std::string theorem, int n, std::string note) {
  InequalityReport r;
  r.theorem = std::move(theorem);
  r.n = n;
  r.status = ReportStatus::Inapplicable;
  r.note = std::move(note);
  return r;
}

double half_even_coeff_sum(const FourierPotential& p, int n) {
  double s = 0.0;
  for (int k = 1; k <= n; ++k) s += p.coeff(2 * k);
  return 0.5 * s;
}

}  // namespace

const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass: return "pass";
    case ReportStatus::Fail: return "fail";
    case ReportStatus::Inapplicable: return "inapplicable";
  }
  return "unknown";
}

double rayleigh(const FourierPotential& p, BoundaryCondition bc, int k) {
  if (bc == BoundaryCondition::Dirichlet) {
    if (k < 1) throw std::out_of_range("Dirichlet mode index must be >= 1");
    return static_cast<double>(k) * k + 0.5 * (p.coeff(0) - p.coeff(2 * k));
  }
  if (bc == BoundaryCondition::Neumann) {
    if (k < 0) throw std::out_of_range("Neumann mode index must be >= 0");
    if (k == 0) return 0.5 * p.coeff(0);
    return static_cast<double>(k) * k + 0.5 * (p.coeff(0) + p.coeff(2 * k));
  }
  throw std::invalid_argument("Rayleigh closed form covers interval problems only");
}

InequalityReport verify_dirichlet_sum(const FourierPotential& p, int n,
                                      const SpectrumResult& spec) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  require_spectrum(spec, BoundaryCondition::Dirichlet, n, "dirichlet_sum");
  const double half_mean = p.mean();
  double lhs = 0.0;
  for (int k = 1; k <= n; ++k)
    lhs += spec.values[static_cast<std::size_t>(k - 1)] - static_cast<double>(k) * k - half_mean;
  const double rhs = -half_even_coeff_sum(p, n);
  const double tol = error_budget(spec, n) + kBaseTol;
  return make_report("dirichlet_sum", n, lhs, rhs, rhs - lhs, tol,
                     "basis=" + std::to_string(spec.basis_size));
}

InequalityReport verify_neumann_sum(const FourierPotential& p, int n, const SpectrumResult& spec) {
  if (n < 0) throw std::invalid_argument("truncation must be >= 0");
  require_spectrum(spec, BoundaryCondition::Neumann, n + 1, "neumann_sum");
  const double half_mean = p.mean();
  double lhs = 0.0;
  for (int k = 0; k <= n; ++k)
    lhs += spec.values[static_cast<std::size_t>(k)] - static_cast<double>(k) * k - half_mean;
  const double rhs = half_even_coeff_sum(p, n);
  const double tol = error_budget(spec, n + 1) + kBaseTol;
  return make_report("neumann_sum", n, lhs, rhs, rhs - lhs, tol,
                     "basis=" + std::to_string(spec.basis_size));
}

InequalityReport verify_combined(const FourierPotential& p, int n, const SpectrumResult& dspec,
                                 const SpectrumResult& nspec) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  require_spectrum(dspec, BoundaryCondition::Dirichlet, n, "combined_sum");
  require_spectrum(nspec, BoundaryCondition::Neumann, n + 1, "combined_sum");
  const double half_mean = p.mean();
  double lhs = 0.5 * (nspec.values[0] - half_mean);
  for (int k = 1; k <= n; ++k)
    lhs += 0.5 * (dspec.values[static_cast<std::size_t>(k - 1)] +
                  nspec.values[static_cast<std::size_t>(k)]) -
           static_cast<double>(k) * k - half_mean;
  const double tol = 0.5 * (error_budget(dspec, n) + error_budget(nspec, n + 1)) + kBaseTol;
  return make_report("combined_sum", n, lhs, 0.0, -lhs, tol,
                     "basis=" + std::to_string(dspec.basis_size));
}

InequalityReport verify_sumpower(const FourierPotential& p, int n, double s,
                                 const SpectrumResult& dspec, const SpectrumResult& nspec) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  if (s <= 0.0) throw std::invalid_argument("power must be > 0");
  require_spectrum(dspec, BoundaryCondition::Dirichlet, n, "power_sum");
  require_spectrum(nspec, BoundaryCondition::Neumann, n + 1, "power_sum");

  const double mu0 = nspec.values[0];
  if (!(mu0 > 0.0))
    return make_inapplicable("power_sum", n, "hypothesis mu_0 > 0 fails: mu_0=" + std::to_string(mu0));
  const double q0 = p.coeff(0);
  if (!(q0 > 0.0))
    return make_inapplicable("power_sum", n,
                             "mean must be positive for the comparison sums; q_0=" +
                                 std::to_string(q0));

  double lhs = 0.0;
  double tol = kBaseTol;
  for (int k = 1; k <= n; ++k) {
    const double lam = dspec.values[static_cast<std::size_t>(k - 1)];
    if (!(lam > 0.0))
      return make_inapplicable("power_sum", n, "nonpositive Dirichlet eigenvalue in power sum");
    lhs += std::pow(lam, -s);
    tol += s * std::pow(lam, -s - 1.0) * dspec.error_estimates[static_cast<std::size_t>(k - 1)];
  }
  for (int k = 0; k <= n; ++k) {
    const double mu = nspec.values[static_cast<std::size_t>(k)];
    if (!(mu > 0.0))
      return make_inapplicable("power_sum", n, "nonpositive Neumann eigenvalue in power sum");
    lhs += std::pow(mu, -s);
    tol += s * std::pow(mu, -s - 1.0) * nspec.error_estimates[static_cast<std::size_t>(k)];
  }
  double rhs = std::pow(0.5 * q0, -s);
  for (int k = 1; k <= n; ++k) rhs += 2.0 * std::pow(static_cast<double>(k) * k + 0.5 * q0, -s);

  return make_report("power_sum", n, lhs, rhs, lhs - rhs, tol,
                     "basis=" + std::to_string(dspec.basis_size) + ";s=" + std::to_string(s));
}

InequalityReport verify_app(const SampledPotential& sp, int n, SlopeBranch branch, double s,
                            const SpectrumResult& spec) {
  const SymmetryClass cls = symmetry_classify(sp);
  const double q0 = fourier_coefficients(sp, 0).coeff(0);
  const double q0_err = fourier_coefficients(sp, 0).coeff_error_bound();

  if (branch == SlopeBranch::Dirichlet || branch == SlopeBranch::Zeta) {
    if (n < 1) throw std::invalid_argument("truncation must be >= 1");
    require_spectrum(spec, BoundaryCondition::Dirichlet, n, "slope branch");
    if (cls != SymmetryClass::DirichletFavorable && cls != SymmetryClass::Both) {
      const char* tag = branch == SlopeBranch::Dirichlet ? "slope_dirichlet" : "slope_zeta";
      return make_inapplicable(tag, n, std::string("slope classification is ") + to_string(cls));
    }
  } else {
    if (n < 0) throw std::invalid_argument("truncation must be >= 0");
    require_spectrum(spec, BoundaryCondition::Neumann, n + 1, "slope branch");
    if (cls != SymmetryClass::NeumannFavorable && cls != SymmetryClass::Both)
      return make_inapplicable("slope_neumann", n,
                               std::string("slope classification is ") + to_string(cls));
  }

  if (branch == SlopeBranch::Dirichlet) {
    double lhs = 0.0;
    for (int k = 1; k <= n; ++k)
      lhs += spec.values[static_cast<std::size_t>(k - 1)] - static_cast<double>(k) * k - 0.5 * q0;
    const double tol = error_budget(spec, n) + 0.5 * n * q0_err + kBaseTol;
    return make_report("slope_dirichlet", n, lhs, 0.0, -lhs, tol,
                       std::string("classification=") + to_string(cls));
  }
  if (branch == SlopeBranch::Neumann) {
    double lhs = 0.0;
    for (int k = 0; k <= n; ++k)
      lhs += spec.values[static_cast<std::size_t>(k)] - static_cast<double>(k) * k - 0.5 * q0;
    const double tol = error_budget(spec, n + 1) + 0.5 * (n + 1) * q0_err + kBaseTol;
    return make_report("slope_neumann", n, lhs, 0.0, -lhs, tol,
                       std::string("classification=") + to_string(cls));
  }

  // Zeta branch.
  if (!(s > 0.5))
    return make_inapplicable("slope_zeta", n, "power must be > 1/2; s=" + std::to_string(s));
  if (q0 > 0.0)
    return make_inapplicable("slope_zeta", n,
                             "requires nonpositive potential integral; q_0=" + std::to_string(q0));
  if (!(spec.values[0] > 0.0))
    return make_inapplicable("slope_zeta", n, "requires lambda_1 > 0; lambda_1=" +
                                                  std::to_string(spec.values[0]));
  double lhs = 0.0;
  double tol = kBaseTol;
  for (int k = 1; k <= n; ++k) {
    const double lam = spec.values[static_cast<std::size_t>(k - 1)];
    lhs += std::pow(lam, -s);
    tol += s * std::pow(lam, -s - 1.0) * spec.error_estimates[static_cast<std::size_t>(k - 1)];
  }
  double rhs = 0.0;
  for (int k = 1; k <= n; ++k) rhs += std::pow(static_cast<double>(k), -2.0 * s);
  return make_report("slope_zeta", n, lhs, rhs, lhs - rhs, tol,
                     std::string("classification=") + to_string(cls) + ";s=" + std::to_string(s));
}

bool cosine_sum_monotonic(int n, int grid) {
  if (n < 1) throw std::invalid_argument("mode count must be >= 1");
  if (grid < 16) throw std::invalid_argument("grid must be >= 16");
  double prev = 0.0;
  for (int i = 1; i < grid; ++i) {
    const double x = 0.5 * kPi * static_cast<double>(i) / grid;
    double f = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double c = std::cos(k * x);
      f += c * c / (static_cast<double>(k) * k);
    }
    if (i > 1 && f > prev + 1e-12) return false;
    prev = f;
  }
  return true;
}

InequalityReport verify_torus_sum(const Lattice& lat, const TorusFourierPotential& p, int n,
                                  const SpectrumResult& spec) {
  if (n < 0) throw std::invalid_argument("truncation must be >= 0");
  require_spectrum(spec, BoundaryCondition::Periodic, n + 1, "torus_sum");
  const std::vector<double> comparison = free_plus_average(lat, p.average(), n + 1);
  double lhs = 0.0;
  for (int k = 0; k <= n; ++k)
    lhs += spec.values[static_cast<std::size_t>(k)] - comparison[static_cast<std::size_t>(k)];
  const double tol = error_budget(spec, n + 1) + kBaseTol;
  return make_report("torus_sum", n, lhs, 0.0, -lhs, tol,
                     "cutoff=" + std::to_string(spec.basis_size));
}

InequalityReport verify_toruspower(const Lattice& lat, const TorusFourierPotential& p, int n,
                                   double s, const SpectrumResult& spec) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  if (s <= 0.0) throw std::invalid_argument("power must be > 0");
  require_spectrum(spec, BoundaryCondition::Periodic, n + 1, "torus_power");
  if (!(spec.values[0] > 0.0))
    return make_inapplicable("torus_power", n, "hypothesis lambda_0(q) > 0 fails: lambda_0=" +
                                                   std::to_string(spec.values[0]));
  const double qbar = p.average();
  if (!(qbar > 0.0))
    return make_inapplicable("torus_power", n,
                             "average must be positive for the comparison sums; qbar=" +
                                 std::to_string(qbar));
  const std::vector<double> comparison = free_plus_average(lat, qbar, n + 1);
  double lhs = 0.0;
  double tol = kBaseTol;
  for (int k = 0; k <= n; ++k) {
    const double lam = spec.values[static_cast<std::size_t>(k)];
    lhs += std::pow(lam, -s);
    tol += s * std::pow(lam, -s - 1.0) * spec.error_estimates[static_cast<std::size_t>(k)];
  }
  double rhs = 0.0;
  for (int k = 0; k <= n; ++k) rhs += std::pow(comparison[static_cast<std::size_t>(k)], -s);
  return make_report("torus_power", n, lhs, rhs, lhs - rhs, tol,
                     "cutoff=" + std::to_string(spec.basis_size) + ";s=" + std::to_string(s));
}

InequalityReport abstract_zeta_bound(const std::vector<double>& lambdas,
                                     const std::vector<double>& a_seq,
                                     const std::vector<double>& b_seq, double s, int n) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  if (s <= 0.0) throw std::invalid_argument("power must be > 0");
  if (static_cast<int>(lambdas.size()) < n || static_cast<int>(a_seq.size()) < n ||
      static_cast<int>(b_seq.size()) < n)
    throw std::invalid_argument("sequences must hold at least n entries");

  for (int k = 0; k < n; ++k) {
    if (!(lambdas[static_cast<std::size_t>(k)] > 0.0))
      return make_inapplicable("zeta_bound", n, "lambda sequence must be positive");
    if (!(a_seq[static_cast<std::size_t>(k)] > 0.0))
      return make_inapplicable("zeta_bound", n, "a sequence must be positive");
    if (k > 0 && a_seq[static_cast<std::size_t>(k)] < a_seq[static_cast<std::size_t>(k - 1)])
      return make_inapplicable("zeta_bound", n, "a sequence must be non-decreasing");
  }
  double lam_partial = 0.0, b_partial = 0.0;
  for (int m = 0; m < n; ++m) {
    lam_partial += lambdas[static_cast<std::size_t>(m)];
    b_partial += b_seq[static_cast<std::size_t>(m)];
    if (lam_partial > b_partial + 1e-12 * (1.0 + std::abs(b_partial)))
      return make_inapplicable("zeta_bound", n, "partial-sum hypothesis fails at m=" +
                                                    std::to_string(m + 1));
  }

  auto g = [s](double a, double b) {
    return (s + 1.0) * std::pow(a, -s) - s * std::pow(a, -s - 1.0) * b;
  };
  double lhs = 0.0, rhs = 0.0;
  for (int k = 0; k < n; ++k) {
    lhs += std::pow(lambdas[static_cast<std::size_t>(k)], -s);
    rhs += g(a_seq[static_cast<std::size_t>(k)], b_seq[static_cast<std::size_t>(k)]);
  }

  // With a == b and b positive non-decreasing, each term is maximized at
  // a_k = b_k; nudging a_k either way must not increase the bound.
  std::string note;
  bool max_ok = true;
  bool a_equals_b = true;
  bool b_admissible = b_seq[0] > 0.0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(a_seq[static_cast<std::size_t>(k)] - b_seq[static_cast<std::size_t>(k)]) >
        1e-12 * (1.0 + std::abs(b_seq[static_cast<std::size_t>(k)])))
      a_equals_b = false;
    if (!(b_seq[static_cast<std::size_t>(k)] > 0.0) ||
        (k > 0 && b_seq[static_cast<std::size_t>(k)] < b_seq[static_cast<std::size_t>(k - 1)]))
      b_admissible = false;
  }
  if (a_equals_b && b_admissible) {
    for (int k = 0; k < n && max_ok; ++k) {
      const double b = b_seq[static_cast<std::size_t>(k)];
      const double peak = g(b, b);
      if (g(b * 1.001, b) > peak + 1e-12 || g(b * 0.999, b) > peak + 1e-12) max_ok = false;
    }
    note = max_ok ? "max_check=ok" : "max_check=failed";
  }

  InequalityReport r = make_report("zeta_bound", n, lhs, rhs, lhs - rhs, kBaseTol, note);
  if (!max_ok) r.status = ReportStatus::Fail;
  return r;
}

double powerrep_check(double lambda, double s) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be > 0");
  if (!(s > 0.0)) throw std::domain_error("power must be > 0");
  // Antiderivative of alpha^{-s-2}(alpha - lambda) is
  // -alpha^{-s}/s + lambda alpha^{-s-1}/(s+1); it vanishes at infinity.
  const double at_lambda = -std::pow(lambda, -s) / s + lambda * std::pow(lambda, -s - 1.0) / (s + 1.0);
  return s * (s + 1.0) * (0.0 - at_lambda);
}

TraceConvergenceReport trace_partial_sums(const FourierPotential& p, int n_max,
                                          const SpectrumResult& dspec) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  require_spectrum(dspec, BoundaryCondition::Dirichlet, n_max, "trace partial sums");

  TraceConvergenceReport rep;
  rep.target = 0.5 * p.mean() - 0.25 * p.boundary_sum();
  rep.partial_sums.resize(static_cast<std::size_t>(n_max));
  rep.tail.resize(static_cast<std::size_t>(n_max));
  rep.tols.resize(static_cast<std::size_t>(n_max));
  const double half_mean = p.mean();
  double running = 0.0;
  double budget = kBaseTol;
  for (int k = 1; k <= n_max; ++k) {
    running += dspec.values[static_cast<std::size_t>(k - 1)] - static_cast<double>(k) * k - half_mean;
    budget += dspec.error_estimates[static_cast<std::size_t>(k - 1)];
    rep.partial_sums[static_cast<std::size_t>(k - 1)] = running;
    rep.tail[static_cast<std::size_t>(k - 1)] = running - rep.target;
    rep.tols[static_cast<std::size_t>(k - 1)] = budget;
  }
  const int quartile_start = std::max(1, n_max - n_max / 4);
  double worst = 0.0;
  for (int k = quartile_start; k <= n_max; ++k)
    worst = std::max(worst, std::abs(rep.tail[static_cast<std::size_t>(k - 1)]));
  rep.max_tail_last_quartile = worst;
  return rep;
}

DikiiReport dikii_sums(const FourierPotential& p, int n, const SpectrumResult& dspec) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  require_spectrum(dspec, BoundaryCondition::Dirichlet, n, "basis-change sums");
  if (!dspec.has_vectors)
    throw std::invalid_argument("basis-change sums need Galerkin eigenvectors");
  if (dspec.method != "galerkin")
    throw std::invalid_argument("basis-change sums need a Galerkin spectrum");
  const int m_b = dspec.basis_size;
  if (dspec.vector_rows != m_b)
    throw std::invalid_argument("eigenvector rows do not match the basis size");
  if (n > m_b) throw std::invalid_argument("truncation exceeds the basis size");

  // Mean-zero frame; the shift drops out of every difference reported.
  const FourierPotential p0 = p.shifted(-p.mean());
  const DenseSymmetricMatrix h0 = assemble_dirichlet(p0, m_b);
  const EigenDecomposition dec = eigen_symmetric(h0, true);

  // The provided eigenvector columns must actually solve the shifted problem.
  double h_scale = 1.0;
  for (double v : h0.entries()) h_scale = std::max(h_scale, std::abs(v));
  const int provided = static_cast<int>(dspec.values.size());
  for (int c = 0; c < std::min(provided, n); ++c) {
    const double lam0 = dspec.values[static_cast<std::size_t>(c)] - p.mean();
    double resid_sq = 0.0;
    for (int r = 0; r < m_b; ++r) {
      double acc = 0.0;
      for (int j = 0; j < m_b; ++j) acc += h0.at(r, j) * dspec.vector_component(j, c);
      acc -= lam0 * dspec.vector_component(r, c);
      resid_sq += acc * acc;
    }
    if (std::sqrt(resid_sq) > 1e-7 * h_scale)
      throw std::invalid_argument("provided eigenvectors do not solve the assembled problem");
  }

  DikiiReport rep;
  rep.n = n;
  rep.basis_size = m_b;
  rep.coefficients.resize(static_cast<std::size_t>(n) * m_b);
  rep.max_row_norm_defect = 0.0;
  for (int k = 1; k <= n; ++k) {
    double norm = 0.0;
    for (int m = 1; m <= m_b; ++m) {
      const double a = dec.vector_component(k - 1, m - 1, m_b);
      rep.coefficients[static_cast<std::size_t>(k - 1) * m_b + (m - 1)] = a;
      norm += a * a;
    }
    rep.max_row_norm_defect = std::max(rep.max_row_norm_defect, std::abs(norm - 1.0));
  }

  rep.sums_spectral.resize(static_cast<std::size_t>(n));
  rep.sums_coefficient.resize(static_cast<std::size_t>(n));
  rep.split_asym.resize(static_cast<std::size_t>(n));
  rep.split_gap.resize(static_cast<std::size_t>(n));
  rep.tols.resize(static_cast<std::size_t>(n));

  auto a_of = [&dec, m_b](int k, int m) {  // <free mode k, eigenfunction m>, 1-based
    return dec.vector_component(k - 1, m - 1, m_b);
  };

  double spectral_running = 0.0;
  double budget = kBaseTol;
  rep.max_route_gap = 0.0;
  for (int i = 1; i <= n; ++i) {
    spectral_running += dspec.values[static_cast<std::size_t>(i - 1)] -
                        rayleigh(p, BoundaryCondition::Dirichlet, i);
    budget += dspec.error_estimates[static_cast<std::size_t>(i - 1)];
    rep.sums_spectral[static_cast<std::size_t>(i - 1)] = spectral_running;
    rep.tols[static_cast<std::size_t>(i - 1)] = budget;

    double asym = 0.0, gap = 0.0;
    for (int k = 1; k <= i; ++k) {
      const double lam_k = dec.values[static_cast<std::size_t>(k - 1)];
      for (int m = i + 1; m <= m_b; ++m) {
        const double akm = a_of(k, m);
        const double amk = a_of(m, k);
        asym += lam_k * (amk * amk - akm * akm);
        gap += (lam_k - dec.values[static_cast<std::size_t>(m - 1)]) * akm * akm;
      }
    }
    rep.split_asym[static_cast<std::size_t>(i - 1)] = asym;
    rep.split_gap[static_cast<std::size_t>(i - 1)] = gap;
    rep.sums_coefficient[static_cast<std::size_t>(i - 1)] = asym + gap;
    rep.max_route_gap =
        std::max(rep.max_route_gap, std::abs(spectral_running - (asym + gap)));
  }

  rep.nonpositive = true;
  for (int i = 1; i <= n; ++i)
    if (rep.sums_spectral[static_cast<std::size_t>(i - 1)] > rep.tols[static_cast<std::size_t>(i - 1)])
      rep.nonpositive = false;

  rep.tail_decreasing = true;
  const int quartile_start = std::max(1, n - n / 4);
  for (int i = quartile_start; i < n; ++i)
    if (std::abs(rep.sums_spectral[static_cast<std::size_t>(i)]) >
        std::abs(rep.sums_spectral[static_cast<std::size_t>(i - 1)]) + 1e-12)
      rep.tail_decreasing = false;
  return rep;
}

CounterexampleScan counterexample_scan(int n, const std::vector<double>& t_values) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  if (t_values.empty()) throw std::invalid_argument("at least one t value is required");

  CounterexampleScan scan;
  scan.n = n;
  const int mode = 2 * n + 2;
  const int basis = std::max(128, 4 * n + 64);
  double bound_base = (n + 1) * (n + 1);
  for (int k = 1; k <= n - 1; ++k) bound_base += static_cast<double>(k) * k;

  for (double t : t_values) {
    if (!std::isfinite(t)) throw std::invalid_argument("t values must be finite");
    std::vector<double> coeffs(static_cast<std::size_t>(mode) + 1, 0.0);
    coeffs[static_cast<std::size_t>(mode)] = t;
    IntervalProblem prob{FourierPotential(std::move(coeffs)), BoundaryCondition::Dirichlet, basis};
    const SpectrumResult spec = eigenvalues(prob, n);
    CounterexampleRow row;
    row.t = t;
    row.sum = 0.0;
    for (int k = 0; k < n; ++k) row.sum += spec.values[static_cast<std::size_t>(k)];
    row.bound = bound_base - 0.5 * t;
    row.tol = error_budget(spec, n) + kBaseTol;
    row.within = row.sum <= row.bound + row.tol;
    scan.rows.push_back(row);
  }

  // Least-squares slope of sum against t.
  const double m = static_cast<double>(scan.rows.size());
  double st = 0.0, ss = 0.0, stt = 0.0, sts = 0.0;
  for (const auto& row : scan.rows) {
    st += row.t;
    ss += row.sum;
    stt += row.t * row.t;
    sts += row.t * row.sum;
  }
  const double denom = m * stt - st * st;
  scan.fitted_slope = denom != 0.0 ? (m * sts - st * ss) / denom : 0.0;
  return scan;
}

EqualityGapScan equality_gap_scan(const std::vector<FourierPotential>& potentials, int n) {
  if (n < 1) throw std::invalid_argument("truncation must be >= 1");
  EqualityGapScan out;
  out.constants_tight = true;
  out.nonconstants_sharp = true;
  const int basis = std::max(4 * (n + 1), n + 33);

  for (const auto& p : potentials) {
    const SpectrumResult dspec =
        eigenvalues({p, BoundaryCondition::Dirichlet, basis}, n);
    const SpectrumResult nspec =
        eigenvalues({p, BoundaryCondition::Neumann, basis}, n + 1);
    InequalityReport rd = verify_dirichlet_sum(p, n, dspec);
    InequalityReport rn = verify_neumann_sum(p, n, nspec);

    bool constant = true;
    for (int k = 1; k <= p.max_index(); ++k)
      if (std::abs(p.coeff(k)) > 1e-14) constant = false;
    bool flagged = false;
    for (int k = 1; k <= n; ++k)
      if (std::abs(p.coeff(2 * k)) >= 0.1) flagged = true;

    if (constant) {
      if (std::abs(rd.slack) > rd.tol || std::abs(rn.slack) > rn.tol) out.constants_tight = false;
    } else if (flagged) {
      if (rd.slack <= 10.0 * rd.tol || rn.slack <= 10.0 * rn.tol) out.nonconstants_sharp = false;
    }
    rd.note += constant ? ";constant" : (flagged ? ";sharp_flagged" : "");
    rn.note += constant ? ";constant" : (flagged ? ";sharp_flagged" : "");
    out.reports.push_back(std::move(rd));
    out.reports.push_back(std::move(rn));
  }
  return out;
}

}  // namespace spectral_sums
