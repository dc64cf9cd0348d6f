// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "spectral_sums/interval_spectrum.hpp"
#include "spectral_sums/potential.hpp"
#include "spectral_sums/torus_spectrum.hpp"

namespace spectral_sums {

enum class ReportStatus { Pass, Fail, Inapplicable };

const char* to_string(ReportStatus s);

// One verified inequality at one truncation. `slack` is the signed margin in
// the inequality's favorable direction: rhs - lhs for upper bounds and
// lhs - rhs for lower bounds, so status is Pass iff slack >= -tol whenever the
// hypotheses hold; hypothesis violations yield Inapplicable, never Fail.
struct InequalityReport {
  std::string theorem;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  ReportStatus status = ReportStatus::Pass;
  std::string note;  // diagnostics: basis sizes, gate values; not serialized
};

// Closed-form Rayleigh quotient of the k-th free mode: Dirichlet
// k^2 + (q_0 - q_{2k})/2 for k >= 1; Neumann k^2 + (q_0 + q_{2k})/2 for
// k >= 1 and q_0/2 for k = 0. Equals the matching form-matrix diagonal entry.
double rayleigh(const FourierPotential& p, BoundaryCondition bc, int k);

// sum_{k=1..n} (lambda_k - k^2 - q_0/2) <= -(1/2) sum_{k=1..n} q_{2k}.
InequalityReport verify_dirichlet_sum(const FourierPotential& p, int n,
                                      const SpectrumResult& spec);

// sum_{k=0..n} (mu_k - k^2 - q_0/2) <= +(1/2) sum_{k=1..n} q_{2k}.
InequalityReport verify_neumann_sum(const FourierPotential& p, int n, const SpectrumResult& spec);

// sum_{k=1..n} [(lambda_k+mu_k)/2 - k^2 - q_0/2] + (mu_0 - q_0/2)/2 <= 0.
InequalityReport verify_combined(const FourierPotential& p, int n, const SpectrumResult& dspec,
                                 const SpectrumResult& nspec);

// Requires mu_0 > 0 (else inapplicable):
// sum lambda_k^{-s} + sum mu_k^{-s} >= 2 sum (k^2+q_0/2)^{-s} + (q_0/2)^{-s}.
InequalityReport verify_sumpower(const FourierPotential& p, int n, double s,
                                 const SpectrumResult& dspec, const SpectrumResult& nspec);

// Branches gated by the sampled potential's slope classification.
enum class SlopeBranch { Dirichlet, Neumann, Zeta };

// Dirichlet: sum_{k=1..n} (lambda_k - k^2 - q_0/2) <= 0 for slope-favorable q.
// Neumann: sum_{k=0..n} (mu_k - k^2 - q_0/2) <= 0 for the reversed slope.
// Zeta: sum_{k=1..n} lambda_k^{-s} >= sum_{k=1..n} k^{-2s}, additionally
// requiring integral(q) <= 0, lambda_1 > 0 and s > 1/2.
InequalityReport verify_app(const SampledPotential& sp, int n, SlopeBranch branch, double s,
                            const SpectrumResult& spec);

// Checks that F(x) = sum_{k=1..n} cos^2(kx)/k^2 is non-increasing across a
// uniform grid of (0, pi/2).
bool cosine_sum_monotonic(int n, int grid);

// sum_{k=0..n} [lambda_k(q) - (lambda_k(0) + qbar)] <= 0 on a flat torus.
InequalityReport verify_torus_sum(const Lattice& lat, const TorusFourierPotential& p, int n,
                                  const SpectrumResult& spec);

// Requires lambda_0(q) > 0 (else inapplicable):
// sum_{k=0..n} lambda_k(q)^{-s} >= sum_{k=0..n} (lambda_k(0)+qbar)^{-s}.
InequalityReport verify_toruspower(const Lattice& lat, const TorusFourierPotential& p, int n,
                                   double s, const SpectrumResult& spec);

// Abstract lower bound: for positive lambda, positive non-decreasing a, and
// partial sums sum_{k<=m} lambda_k <= sum_{k<=m} b_k for every m <= n,
//   sum_{k<=n} lambda_k^{-s} >= sum_{k<=n} [(s+1) a_k^{-s} - s a_k^{-s-1} b_k].
// When a == b (and b is positive non-decreasing) also asserts that perturbing
// any a_k cannot increase the right-hand side.
InequalityReport abstract_zeta_bound(const std::vector<double>& lambdas,
                                     const std::vector<double>& a_seq,
                                     const std::vector<double>& b_seq, double s, int n);

// Self-test of the integral representation behind the power bounds: evaluates
// s(s+1) * integral_lambda^inf alpha^{-s-2} (alpha-lambda) d(alpha) through
// its closed-form antiderivative; the result must reproduce lambda^{-s}.
double powerrep_check(double lambda, double s);

// Partial sums S_n = sum_{k<=n} (lambda_k - k^2 - q_0/2) against the trace
// target L = mean/2 - (q(0)+q(pi))/4.
struct TraceConvergenceReport {
  std::vector<double> partial_sums;  // S_1..S_n_max
  double target = 0.0;
  std::vector<double> tail;  // S_n - target
  std::vector<double> tols;  // cumulative spectrum-error budget per n
  double max_tail_last_quartile = 0.0;
};

TraceConvergenceReport trace_partial_sums(const FourierPotential& p, int n_max,
                                          const SpectrumResult& dspec);

// Change-of-basis data between free and perturbed Dirichlet eigenfunctions,
// computed in the mean-zero frame (q shifted by -q_0/2, which leaves every
// eigenvalue difference unchanged). a(k,m) is the inner product of the k-th
// free mode with the m-th perturbed eigenfunction. D_n sums the gaps between
// perturbed eigenvalues and the free-mode Rayleigh quotients; it is computed
// both spectrally and through the coefficients, where it splits into a
// basis-asymmetry term and an eigenvalue-gap term over indices past n.
struct DikiiReport {
  int n = 0;
  int basis_size = 0;
  std::vector<double> coefficients;  // row-major n x basis_size
  std::vector<double> sums_spectral;     // D_1..D_n from eigenvalues
  std::vector<double> sums_coefficient;  // D_1..D_n from coefficients
  std::vector<double> split_asym;        // sum lambda_k (a(m,k)^2 - a(k,m)^2)
  std::vector<double> split_gap;         // sum (lambda_k - lambda_m) a(k,m)^2
  std::vector<double> tols;
  double max_route_gap = 0.0;        // max |spectral - coefficient|
  double max_row_norm_defect = 0.0;  // max_k |sum_m a(k,m)^2 - 1|
  bool nonpositive = false;          // D_i <= tol_i for every i
  bool tail_decreasing = false;      // |D_i| non-increasing on the last quartile

  double coefficient(int k, int m) const {  // 1-based indices
    return coefficients[static_cast<std::size_t>(k - 1) * basis_size + (m - 1)];
  }
};

DikiiReport dikii_sums(const FourierPotential& p, int n, const SpectrumResult& dspec);

// Family q_t = t cos((2n+2)x): every coefficient the first n sums see is 0,
// yet sum_{k<=n} lambda_k drops below sum_{k<=n-1} k^2 + (n+1)^2 - t/2 without
// bound as t grows.
struct CounterexampleRow {
  double t = 0.0;
  double sum = 0.0;    // sum_{k<=n} lambda_k
  double bound = 0.0;  // sum_{k<=n-1} k^2 + (n+1)^2 - t/2
  double tol = 0.0;
  bool within = false;
};

struct CounterexampleScan {
  int n = 0;
  std::vector<CounterexampleRow> rows;
  double fitted_slope = 0.0;  // least-squares d(sum)/dt over the rows
};

CounterexampleScan counterexample_scan(int n, const std::vector<double>& t_values);

// Slack survey of the Dirichlet and Neumann sum bounds at truncation n:
// constants must sit at equality within tol, while non-constant potentials
// carrying an even coefficient of at least 0.1 below index 2n must show slack
// clear of the numerical noise floor (> 10 tol).
struct EqualityGapScan {
  std::vector<InequalityReport> reports;  // two per potential, in input order
  bool constants_tight = false;
  bool nonconstants_sharp = false;
};

EqualityGapScan equality_gap_scan(const std::vector<FourierPotential>& potentials, int n);

}  // namespace spectral_sums
