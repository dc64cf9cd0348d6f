// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spectral_sums/analysis.hpp"
#include "spectral_sums/interval_spectrum.hpp"
#include "spectral_sums/potential.hpp"
#include "spectral_sums/reports.hpp"
#include "spectral_sums/torus_spectrum.hpp"
#include "spectral_sums/version.hpp"

namespace spectral_sums {
namespace {

using nlohmann::json;

// A config problem. The message is already anchored ("file:line: detail").
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  const std::size_t stop = std::min(offset, text.size());
  for (std::size_t i = 0; i < stop; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Offset of the opening brace of the idx-th element of the top-level "jobs"
// array, skipping string literals while matching brackets. Returns npos when
// the text does not contain the expected shape (anchor falls back to line 1).
std::size_t job_offset(const std::string& text, int idx) {
  const std::size_t key = text.find("\"jobs\"");
  if (key == std::string::npos) return std::string::npos;
  std::size_t i = text.find('[', key);
  if (i == std::string::npos) return std::string::npos;
  int depth = 0;
  int element = -1;
  bool in_string = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_string = false;
      continue;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '[': case '{':
        if (depth == 1 && c == '{') {
          ++element;
          if (element == idx) return i;
        }
        ++depth;
        break;
      case ']': case '}':
        --depth;
        if (depth == 0) return std::string::npos;
        break;
      default: break;
    }
  }
  return std::string::npos;
}

struct Anchor {
  const std::string* path;
  const std::string* text;
  int job_index = -1;  // -1: top level

  [[noreturn]] void fail(const std::string& detail) const {
    std::size_t off = std::string::npos;
    if (job_index >= 0) off = job_offset(*text, job_index);
    const int line = off == std::string::npos ? 1 : line_of_offset(*text, off);
    std::string where = job_index >= 0 ? " jobs[" + std::to_string(job_index) + "]: " : " ";
    throw ConfigError(*path + ":" + std::to_string(line) + ":" + where + detail);
  }
};

const json& require_key(const json& j, const char* key, const Anchor& a) {
  const auto it = j.find(key);
  if (it == j.end()) a.fail(std::string("missing required key \"") + key + "\"");
  return *it;
}

double as_number(const json& j, const char* key, const Anchor& a) {
  if (!j.is_number()) a.fail(std::string("\"") + key + "\" must be a number");
  return j.get<double>();
}

int as_int(const json& j, const char* key, const Anchor& a) {
  if (!j.is_number_integer()) a.fail(std::string("\"") + key + "\" must be an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const char* key, const Anchor& a) {
  if (!j.is_string()) a.fail(std::string("\"") + key + "\" must be a string");
  return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const char* key, const Anchor& a) {
  if (!j.is_array()) a.fail(std::string("\"") + key + "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) a.fail(std::string("\"") + key + "\" must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const Anchor& a) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : allowed)
      if (key == k) ok = true;
    if (!ok) a.fail("unknown key \"" + key + "\"");
  }
}

using AnyPotential = std::variant<FourierPotential, SampledPotential>;

AnyPotential parse_potential(const json& j, const Anchor& a) {
  if (!j.is_object()) a.fail("\"potential\" must be an object");
  const std::string type = as_string(require_key(j, "type", a), "type", a);
  if (type == "fourier") {
    check_keys(j, {"type", "coeffs"}, a);
    std::vector<double> coeffs = as_number_array(require_key(j, "coeffs", a), "coeffs", a);
    if (coeffs.empty()) a.fail("\"coeffs\" must hold at least q0");
    return FourierPotential(std::move(coeffs));
  }
  if (type == "sampled") {
    check_keys(j, {"type", "grid", "values"}, a);
    const int grid = as_int(require_key(j, "grid", a), "grid", a);
    std::vector<double> values = as_number_array(require_key(j, "values", a), "values", a);
    try {
      return SampledPotential(grid, std::move(values));
    } catch (const std::exception& e) {
      a.fail(e.what());
    }
  }
  a.fail("potential \"type\" must be \"fourier\" or \"sampled\"");
}

FourierPotential to_fourier(const AnyPotential& p, const Anchor& a) {
  if (std::holds_alternative<FourierPotential>(p)) return std::get<FourierPotential>(p);
  const SampledPotential& s = std::get<SampledPotential>(p);
  const int max_index = std::min(s.grid() / 2, 64);
  try {
    return fourier_coefficients(s, max_index);
  } catch (const std::exception& e) {
    a.fail(e.what());
  }
}

SampledPotential to_sampled(const AnyPotential& p, const Anchor& a) {
  if (std::holds_alternative<SampledPotential>(p)) return std::get<SampledPotential>(p);
  try {
    return sample(std::get<FourierPotential>(p), 2048);
  } catch (const std::exception& e) {
    a.fail(e.what());
  }
}

BoundaryCondition parse_bc(const json& j, const Anchor& a) {
  const std::string bc = as_string(j, "bc", a);
  if (bc == "dirichlet") return BoundaryCondition::Dirichlet;
  if (bc == "neumann") return BoundaryCondition::Neumann;
  a.fail("\"bc\" must be \"dirichlet\" or \"neumann\"");
}

Lattice parse_lattice(const json& j, const Anchor& a) {
  if (!j.is_object()) a.fail("\"lattice\" must be an object");
  check_keys(j, {"vectors"}, a);
  const json& vecs = require_key(j, "vectors", a);
  if (!vecs.is_array() || vecs.empty()) a.fail("\"vectors\" must be a non-empty array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : vecs) rows.push_back(as_number_array(row, "vectors", a));
  try {
    return Lattice(std::move(rows));
  } catch (const std::exception& e) {
    a.fail(e.what());
  }
}

TorusFourierPotential parse_torus_potential(const json& j, int dimension, const Anchor& a) {
  if (!j.is_object()) a.fail("torus \"potential\" must be an object with \"terms\"");
  check_keys(j, {"terms"}, a);
  const json& terms = require_key(j, "terms", a);
  if (!terms.is_array()) a.fail("\"terms\" must be an array");
  std::vector<TorusFourierPotential::Term> parsed;
  for (const auto& t : terms) {
    if (!t.is_object()) a.fail("each term must be an object");
    check_keys(t, {"beta", "re", "im"}, a);
    TorusFourierPotential::Term term;
    const json& beta = require_key(t, "beta", a);
    if (!beta.is_array()) a.fail("\"beta\" must be an integer array");
    for (const auto& b : beta) term.beta.push_back(as_int(b, "beta", a));
    const double re = as_number(require_key(t, "re", a), "re", a);
    const double im = t.contains("im") ? as_number(t["im"], "im", a) : 0.0;
    term.coeff = {re, im};
    parsed.push_back(std::move(term));
  }
  try {
    return TorusFourierPotential(dimension, parsed);
  } catch (const std::exception& e) {
    a.fail(e.what());
  }
}

int default_basis(int count) { return std::max(4 * count, count + 32); }

int default_cutoff(const TorusFourierPotential& p, int dimension, int count) {
  int c = std::max(4, 2 * p.max_abs_index() + 4);
  auto half_modes = [dimension](int cutoff) {
    double m = 1.0;
    for (int i = 0; i < dimension; ++i) m *= 2.0 * (cutoff / 2) + 1.0;
    return m;
  };
  while (half_modes(c) < 2.0 * count) c += 2;
  return c;
}

std::vector<int> parse_truncations(const json& job, const Anchor& a, int min_n) {
  std::vector<int> ns;
  const bool has_n = job.contains("n");
  const bool has_range = job.contains("n_range");
  if (has_n == has_range) a.fail("exactly one of \"n\" or \"n_range\" is required");
  if (has_n) {
    ns.push_back(as_int(job["n"], "n", a));
  } else {
    const json& r = job["n_range"];
    if (!r.is_array() || r.size() != 2) a.fail("\"n_range\" must be [lo, hi]");
    const int lo = as_int(r[0], "n_range", a);
    const int hi = as_int(r[1], "n_range", a);
    if (lo > hi) a.fail("\"n_range\" must satisfy lo <= hi");
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
  }
  for (int n : ns)
    if (n < min_n) a.fail("truncation must be >= " + std::to_string(min_n));
  return ns;
}

std::vector<double> parse_powers(const json& job, const Anchor& a) {
  const bool has_s = job.contains("s");
  const bool has_list = job.contains("s_values");
  if (has_s == has_list) a.fail("exactly one of \"s\" or \"s_values\" is required");
  if (has_s) return {as_number(job["s"], "s", a)};
  std::vector<double> out = as_number_array(job["s_values"], "s_values", a);
  if (out.empty()) a.fail("\"s_values\" must be non-empty");
  return out;
}

struct JobOutcome {
  std::string filename;
  std::string csv;
  std::vector<InequalityReport> rows;  // report-style jobs only
  bool report_job = false;
  int severity = 0;  // 0 pass, 2 failed inequality, 3 solver error, 4 schema
  std::string error;
  json notes = json::object();
  double seconds = 0.0;
};

int severity_of(const std::vector<InequalityReport>& rows) {
  for (const auto& r : rows)
    if (r.status == ReportStatus::Fail) return 2;
  return 0;
}

void apply_tolerance_scale(std::vector<InequalityReport>& rows, double scale) {
  if (scale == 1.0) return;
  for (auto& r : rows) {
    r.tol *= scale;
    if (r.status == ReportStatus::Inapplicable) continue;
    if (r.theorem == "trace_tail") continue;  // convergence profile, not a bound
    if (r.note.find("max_check=failed") != std::string::npos) continue;
    r.status = r.slack >= -r.tol ? ReportStatus::Pass : ReportStatus::Fail;
  }
}

SpectrumResult interval_spectrum_for(const FourierPotential& p, BoundaryCondition bc, int count,
                                     std::optional<int> basis, bool want_vectors = false) {
  IntervalProblem prob{p, bc, basis.value_or(default_basis(count))};
  return eigenvalues(prob, count, want_vectors);
}

JobOutcome run_interval_spectrum(const json& job, const Anchor& a) {
  check_keys(job, {"type", "potential", "bc", "count", "basis", "method", "grid", "out"}, a);
  const AnyPotential pot = parse_potential(require_key(job, "potential", a), a);
  const BoundaryCondition bc = parse_bc(require_key(job, "bc", a), a);
  const int count = as_int(require_key(job, "count", a), "count", a);
  const std::string method =
      job.contains("method") ? as_string(job["method"], "method", a) : "galerkin";

  JobOutcome out;
  if (method == "galerkin") {
    if (job.contains("grid")) a.fail("\"grid\" applies to the fd method only");
    std::optional<int> basis;
    if (job.contains("basis")) basis = as_int(job["basis"], "basis", a);
    const FourierPotential p = to_fourier(pot, a);
    const SpectrumResult spec = interval_spectrum_for(p, bc, count, basis);
    out.csv = spectrum_csv(spec);
    out.notes["basis"] = spec.basis_size;
  } else if (method == "fd") {
    if (job.contains("basis")) a.fail("\"basis\" applies to the galerkin method only");
    SpectrumResult spec;
    if (std::holds_alternative<SampledPotential>(pot)) {
      const SampledPotential& s = std::get<SampledPotential>(pot);
      const int grid = job.contains("grid") ? as_int(job["grid"], "grid", a) : s.grid();
      spec = fd_oracle(s, bc, count, grid);
      out.notes["grid"] = grid;
    } else {
      const int grid = job.contains("grid") ? as_int(job["grid"], "grid", a) : 64 * count;
      spec = fd_oracle(std::get<FourierPotential>(pot), bc, count, grid);
      out.notes["grid"] = grid;
    }
    out.csv = spectrum_csv(spec);
  } else {
    a.fail("\"method\" must be \"galerkin\" or \"fd\"");
  }
  return out;
}

JobOutcome run_torus_spectrum(const json& job, const Anchor& a) {
  check_keys(job, {"type", "lattice", "potential", "count", "cutoff", "out"}, a);
  const Lattice lat = parse_lattice(require_key(job, "lattice", a), a);
  const int count = as_int(require_key(job, "count", a), "count", a);

  JobOutcome out;
  if (job.contains("potential")) {
    const TorusFourierPotential p =
        parse_torus_potential(job["potential"], lat.dimension(), a);
    const int cutoff = job.contains("cutoff") ? as_int(job["cutoff"], "cutoff", a)
                                              : default_cutoff(p, lat.dimension(), count);
    const SpectrumResult spec = eigenvalues_torus(lat, p, count, cutoff);
    out.csv = spectrum_csv(spec);
    out.notes["cutoff"] = cutoff;
  } else {
    if (job.contains("cutoff")) a.fail("\"cutoff\" requires a \"potential\"");
    SpectrumResult spec;
    spec.bc = BoundaryCondition::Periodic;
    spec.method = "enumeration";
    spec.values = free_plus_average(lat, 0.0, count);
    spec.error_estimates.assign(spec.values.size(), 0.0);
    out.csv = spectrum_csv(spec);
  }
  return out;
}

JobOutcome run_verify(const json& job, const Anchor& a) {
  check_keys(job,
             {"type", "theorem", "potential", "lattice", "n", "n_range", "s", "s_values", "basis",
              "cutoff", "out"},
             a);
  const std::string tag = as_string(require_key(job, "theorem", a), "theorem", a);
  std::optional<int> basis;
  if (job.contains("basis")) basis = as_int(job["basis"], "basis", a);

  std::vector<InequalityReport> rows;
  JobOutcome out;

  const bool torus_tag = tag == "torus_sum" || tag == "torus_power";
  const bool slope_tag = tag == "slope_dirichlet" || tag == "slope_neumann" || tag == "slope_zeta";

  if (torus_tag) {
    const Lattice lat = parse_lattice(require_key(job, "lattice", a), a);
    const TorusFourierPotential p =
        parse_torus_potential(require_key(job, "potential", a), lat.dimension(), a);
    if (basis) a.fail("torus jobs take \"cutoff\", not \"basis\"");
    const std::vector<int> ns = parse_truncations(job, a, tag == "torus_sum" ? 0 : 1);
    const int max_n = *std::max_element(ns.begin(), ns.end());
    const int cutoff = job.contains("cutoff") ? as_int(job["cutoff"], "cutoff", a)
                                              : default_cutoff(p, lat.dimension(), max_n + 1);
    const SpectrumResult spec = eigenvalues_torus(lat, p, max_n + 1, cutoff);
    out.notes["cutoff"] = cutoff;
    if (tag == "torus_sum") {
      for (int n : ns) rows.push_back(verify_torus_sum(lat, p, n, spec));
    } else {
      const std::vector<double> powers = parse_powers(job, a);
      for (int n : ns)
        for (double s : powers) rows.push_back(verify_toruspower(lat, p, n, s, spec));
    }
  } else if (slope_tag) {
    if (job.contains("lattice") || job.contains("cutoff"))
      a.fail("\"lattice\"/\"cutoff\" apply to torus theorems only");
    const AnyPotential pot = parse_potential(require_key(job, "potential", a), a);
    const SampledPotential sp = to_sampled(pot, a);
    const FourierPotential p = to_fourier(pot, a);
    const SlopeBranch branch = tag == "slope_dirichlet" ? SlopeBranch::Dirichlet
                               : tag == "slope_neumann" ? SlopeBranch::Neumann
                                                        : SlopeBranch::Zeta;
    const int min_n = branch == SlopeBranch::Neumann ? 0 : 1;
    const std::vector<int> ns = parse_truncations(job, a, min_n);
    const int max_n = *std::max_element(ns.begin(), ns.end());
    const BoundaryCondition bc = branch == SlopeBranch::Neumann ? BoundaryCondition::Neumann
                                                                : BoundaryCondition::Dirichlet;
    const int count = branch == SlopeBranch::Neumann ? max_n + 1 : std::max(max_n, 1);
    const SpectrumResult spec = interval_spectrum_for(p, bc, count, basis);
    out.notes["basis"] = spec.basis_size;
    if (branch == SlopeBranch::Zeta) {
      const std::vector<double> powers = parse_powers(job, a);
      for (int n : ns)
        for (double s : powers) rows.push_back(verify_app(sp, n, branch, s, spec));
    } else {
      if (job.contains("s") || job.contains("s_values"))
        a.fail("powers apply to power-type theorems only");
      for (int n : ns) rows.push_back(verify_app(sp, n, branch, 1.0, spec));
    }
  } else if (tag == "dirichlet_sum" || tag == "neumann_sum" || tag == "combined_sum" ||
             tag == "power_sum") {
    if (job.contains("lattice") || job.contains("cutoff"))
      a.fail("\"lattice\"/\"cutoff\" apply to torus theorems only");
    const FourierPotential p = to_fourier(parse_potential(require_key(job, "potential", a), a), a);
    const int min_n = tag == "neumann_sum" ? 0 : 1;
    const std::vector<int> ns = parse_truncations(job, a, min_n);
    const int max_n = *std::max_element(ns.begin(), ns.end());
    const bool need_d = tag != "neumann_sum";
    const bool need_n = tag != "dirichlet_sum";
    SpectrumResult dspec, nspec;
    if (need_d)
      dspec = interval_spectrum_for(p, BoundaryCondition::Dirichlet, std::max(max_n, 1), basis);
    if (need_n)
      nspec = interval_spectrum_for(p, BoundaryCondition::Neumann, max_n + 1, basis);
    out.notes["basis"] = need_d ? dspec.basis_size : nspec.basis_size;
    if (tag == "dirichlet_sum") {
      for (int n : ns) rows.push_back(verify_dirichlet_sum(p, n, dspec));
    } else if (tag == "neumann_sum") {
      for (int n : ns) rows.push_back(verify_neumann_sum(p, n, nspec));
    } else if (tag == "combined_sum") {
      for (int n : ns) rows.push_back(verify_combined(p, n, dspec, nspec));
    } else {
      const std::vector<double> powers = parse_powers(job, a);
      for (int n : ns)
        for (double s : powers) rows.push_back(verify_sumpower(p, n, s, dspec, nspec));
    }
  } else {
    a.fail("unknown theorem tag \"" + tag +
           "\" (zeta_bound and power_identity run under the \"zeta\" job)");
  }

  out.rows = std::move(rows);
  out.report_job = true;
  return out;
}

JobOutcome run_trace(const json& job, const Anchor& a) {
  check_keys(job, {"type", "potential", "n_max", "basis", "out"}, a);
  const FourierPotential p = to_fourier(parse_potential(require_key(job, "potential", a), a), a);
  const int n_max = as_int(require_key(job, "n_max", a), "n_max", a);
  std::optional<int> basis;
  if (job.contains("basis")) basis = as_int(job["basis"], "basis", a);
  const SpectrumResult dspec =
      interval_spectrum_for(p, BoundaryCondition::Dirichlet, n_max, basis);
  const TraceConvergenceReport rep = trace_partial_sums(p, n_max, dspec);

  std::vector<InequalityReport> rows;
  for (int n = 1; n <= n_max; ++n) {
    InequalityReport r;
    r.theorem = "trace_tail";
    r.n = n;
    r.lhs = rep.partial_sums[static_cast<std::size_t>(n - 1)];
    r.rhs = rep.target;
    r.slack = r.rhs - r.lhs;
    r.tol = rep.tols[static_cast<std::size_t>(n - 1)];
    r.status = ReportStatus::Pass;  // convergence profile, not an inequality
    rows.push_back(std::move(r));
  }
  JobOutcome out;
  out.rows = std::move(rows);
  out.report_job = true;
  out.notes["target"] = rep.target;
  out.notes["max_tail_last_quartile"] = rep.max_tail_last_quartile;
  out.notes["basis"] = dspec.basis_size;
  return out;
}

JobOutcome run_dikii(const json& job, const Anchor& a) {
  check_keys(job, {"type", "potential", "n", "basis", "out"}, a);
  const FourierPotential p = to_fourier(parse_potential(require_key(job, "potential", a), a), a);
  const int n = as_int(require_key(job, "n", a), "n", a);
  std::optional<int> basis;
  if (job.contains("basis")) basis = as_int(job["basis"], "basis", a);
  const SpectrumResult dspec =
      interval_spectrum_for(p, BoundaryCondition::Dirichlet, n, basis, true);
  const DikiiReport rep = dikii_sums(p, n, dspec);

  std::vector<InequalityReport> rows;
  for (int i = 1; i <= n; ++i) {
    InequalityReport r;
    r.theorem = "rayleigh_defect";
    r.n = i;
    r.lhs = rep.sums_spectral[static_cast<std::size_t>(i - 1)];
    r.rhs = 0.0;
    r.slack = -r.lhs;
    r.tol = rep.tols[static_cast<std::size_t>(i - 1)];
    r.status = r.slack >= -r.tol ? ReportStatus::Pass : ReportStatus::Fail;
    rows.push_back(std::move(r));
  }
  JobOutcome out;
  out.rows = std::move(rows);
  out.report_job = true;
  out.notes["basis"] = rep.basis_size;
  out.notes["max_route_gap"] = rep.max_route_gap;
  out.notes["max_row_norm_defect"] = rep.max_row_norm_defect;
  return out;
}

JobOutcome run_zeta(const json& job, const Anchor& a) {
  check_keys(job, {"type", "lambdas", "a", "b", "s", "s_values", "n", "powerrep", "out"}, a);
  std::vector<InequalityReport> rows;

  const bool has_sequences = job.contains("lambdas") || job.contains("a") || job.contains("b");
  if (has_sequences) {
    const std::vector<double> lambdas =
        as_number_array(require_key(job, "lambdas", a), "lambdas", a);
    const std::vector<double> a_seq = as_number_array(require_key(job, "a", a), "a", a);
    const std::vector<double> b_seq = as_number_array(require_key(job, "b", a), "b", a);
    const int n = job.contains("n") ? as_int(job["n"], "n", a)
                                    : static_cast<int>(lambdas.size());
    const std::vector<double> powers = parse_powers(job, a);
    for (double s : powers) rows.push_back(abstract_zeta_bound(lambdas, a_seq, b_seq, s, n));
  } else if (job.contains("s") || job.contains("s_values") || job.contains("n")) {
    a.fail("\"s\"/\"n\" accompany the \"lambdas\"/\"a\"/\"b\" sequences");
  }

  if (job.contains("powerrep")) {
    const json& pairs = job["powerrep"];
    if (!pairs.is_array()) a.fail("\"powerrep\" must be an array of [lambda, s] pairs");
    int idx = 0;
    for (const auto& pr : pairs) {
      if (!pr.is_array() || pr.size() != 2) a.fail("\"powerrep\" entries must be [lambda, s]");
      const double lambda = as_number(pr[0], "powerrep", a);
      const double s = as_number(pr[1], "powerrep", a);
      ++idx;
      InequalityReport r;
      r.theorem = "power_identity";
      r.n = idx;
      r.lhs = powerrep_check(lambda, s);
      r.rhs = std::pow(lambda, -s);
      r.slack = -std::abs(r.lhs - r.rhs);
      r.tol = 1e-12;
      r.status = r.slack >= -r.tol ? ReportStatus::Pass : ReportStatus::Fail;
      rows.push_back(std::move(r));
    }
  }
  if (rows.empty()) a.fail("zeta job needs sequences and/or \"powerrep\" pairs");

  JobOutcome out;
  out.rows = std::move(rows);
  out.report_job = true;
  return out;
}

JobOutcome run_counterexample(const json& job, const Anchor& a) {
  check_keys(job, {"type", "n", "t_values", "out"}, a);
  const int n = as_int(require_key(job, "n", a), "n", a);
  const std::vector<double> t_values =
      as_number_array(require_key(job, "t_values", a), "t_values", a);
  const CounterexampleScan scan = counterexample_scan(n, t_values);

  std::vector<InequalityReport> rows;
  for (const auto& row : scan.rows) {
    InequalityReport r;
    r.theorem = "mode_drop";
    r.n = scan.n;
    r.lhs = row.sum;
    r.rhs = row.bound;
    r.slack = r.rhs - r.lhs;
    r.tol = row.tol;
    r.status = row.within ? ReportStatus::Pass : ReportStatus::Fail;
    rows.push_back(std::move(r));
  }
  JobOutcome out;
  out.rows = std::move(rows);
  out.report_job = true;
  out.notes["fitted_slope"] = scan.fitted_slope;
  return out;
}

JobOutcome execute_job(const json& job, const Anchor& a, const std::string& type,
                       double tolerance_scale) {
  const auto start = std::chrono::steady_clock::now();
  JobOutcome out;
  try {
    if (type == "interval-spectrum")
      out = run_interval_spectrum(job, a);
    else if (type == "torus-spectrum")
      out = run_torus_spectrum(job, a);
    else if (type == "verify")
      out = run_verify(job, a);
    else if (type == "trace")
      out = run_trace(job, a);
    else if (type == "dikii")
      out = run_dikii(job, a);
    else if (type == "zeta")
      out = run_zeta(job, a);
    else if (type == "counterexample")
      out = run_counterexample(job, a);
    else
      a.fail("unknown job type \"" + type + "\"");
    if (out.report_job) {
      apply_tolerance_scale(out.rows, tolerance_scale);
      out.severity = severity_of(out.rows);
      out.csv = report_csv(out.rows);
    }
  } catch (const ConfigError& e) {
    out.severity = 4;
    out.error = e.what();
  } catch (const SolverError& e) {
    out.severity = 3;
    out.error = std::string("solver error: ") + e.what();
  } catch (const std::invalid_argument& e) {
    // A structurally valid config asking for something the library rejects is
    // still a config problem; anchor it like one.
    out.severity = 4;
    try {
      a.fail(e.what());
    } catch (const ConfigError& anchored) {
      out.error = anchored.what();
    }
  } catch (const std::exception& e) {
    out.severity = 3;
    out.error = std::string("solver error: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunResult run_config(const RunOptions& opts) {
  RunResult result;
  const std::string path = opts.config_path;
  std::string text;
  try {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ":1: cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();

    if (!(opts.tolerance_scale > 0.0) || !std::isfinite(opts.tolerance_scale))
      throw ConfigError(path + ":1: tolerance scale must be a positive finite number");

    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(path + ":" + std::to_string(line_of_offset(text, e.byte)) +
                        ": " + e.what());
    }

    // Manifest re-run: a previous run's manifest echoes its config; running it
    // again replays that config.
    if (doc.is_object() && doc.contains("run_manifest_version") && doc.contains("config_echo"))
      doc = doc["config_echo"];

    Anchor top{&path, &text, -1};
    if (!doc.is_object()) top.fail("config root must be a JSON object");
    check_keys(doc, {"schema", "jobs"}, top);
    const int schema = as_int(require_key(doc, "schema", top), "schema", top);
    if (schema != kConfigSchemaVersion)
      top.fail("unsupported \"schema\" " + std::to_string(schema) + " (expected " +
               std::to_string(kConfigSchemaVersion) + ")");
    const json& jobs = require_key(doc, "jobs", top);
    if (!jobs.is_array()) top.fail("\"jobs\" must be an array");

    // Validate shapes and output names up front so nothing runs on a bad plan.
    std::vector<std::string> filenames;
    std::vector<std::string> types;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      Anchor a{&path, &text, static_cast<int>(i)};
      const json& job = jobs[i];
      if (!job.is_object()) a.fail("job must be an object");
      const std::string type = as_string(require_key(job, "type", a), "type", a);
      types.push_back(type);
      std::string name = "job_" + std::to_string(i) + "_" + type + ".csv";
      if (job.contains("out")) {
        name = as_string(job["out"], "out", a);
        if (name.empty() || name.find('/') != std::string::npos ||
            name.find('\\') != std::string::npos || name.find("..") != std::string::npos)
          a.fail("\"out\" must be a plain file name");
      }
      if (!seen.insert(name).second) a.fail("duplicate output file \"" + name + "\"");
      filenames.push_back(name);
    }

    const std::string started = utc_now();

    std::vector<JobOutcome> outcomes(jobs.size());
    auto run_one = [&](std::size_t i) {
      Anchor a{&path, &text, static_cast<int>(i)};
      outcomes[i] = execute_job(jobs[i], a, types[i], opts.tolerance_scale);
      outcomes[i].filename = filenames[i];
    };
    if (opts.jobs_parallel && jobs.size() > 1) {
      std::vector<std::future<void>> futures;
      futures.reserve(jobs.size());
      for (std::size_t i = 0; i < jobs.size(); ++i)
        futures.push_back(std::async(std::launch::async, run_one, i));
      for (auto& f : futures) f.get();
    } else {
      for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
    }

    std::filesystem::create_directories(opts.out_dir);
    int exit_code = 0;
    json summaries = json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const JobOutcome& o = outcomes[i];
      exit_code = std::max(exit_code, o.severity);
      json s;
      s["index"] = i;
      s["type"] = types[i];
      s["output"] = o.filename;
      s["seconds"] = o.seconds;
      s["severity"] = o.severity;
      if (!o.error.empty()) {
        s["error"] = o.error;
        if (result.error.empty() || o.severity > 3) result.error = o.error;
      }
      if (!o.notes.empty()) s["notes"] = o.notes;
      summaries.push_back(std::move(s));
      if (o.severity >= 3) continue;  // nothing meaningful to write
      const std::filesystem::path file = std::filesystem::path(opts.out_dir) / o.filename;
      std::ofstream csv(file, std::ios::binary);
      if (!csv) throw ConfigError(path + ":1: cannot write " + file.string());
      csv << o.csv;
      result.outputs.push_back(file.string());
    }

    json manifest;
    manifest["run_manifest_version"] = 1;
    manifest["tool_name"] = "spectral-sums";
    manifest["tool_version"] = kVersion;
    manifest["schema"] = kConfigSchemaVersion;
    manifest["started_utc"] = started;
    manifest["finished_utc"] = utc_now();
    manifest["jobs_parallel"] = opts.jobs_parallel;
    manifest["tolerance_scale"] = opts.tolerance_scale;
    if (const char* seed = std::getenv("SPECTRAL_SUMS_SEED"))
      manifest["seed"] = std::string(seed);
    else
      manifest["seed"] = nullptr;
    manifest["job_summaries"] = std::move(summaries);
    manifest["exit_code"] = exit_code;
    manifest["config_echo"] = doc;

    const std::filesystem::path mpath = std::filesystem::path(opts.out_dir) / "run-manifest.json";
    std::ofstream mout(mpath, std::ios::binary);
    if (!mout) throw ConfigError(path + ":1: cannot write " + mpath.string());
    mout << manifest.dump(2) << '\n';
    result.outputs.push_back(mpath.string());
    result.exit_code = exit_code;
  } catch (const ConfigError& e) {
    result.exit_code = 4;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 3;
    result.error = std::string("solver error: ") + e.what();
  }
  return result;
}

std::string jobs_help() {
  std::string h;
  h += "spectral-sums ";
  h += kVersion;
  h += " (config schema " + std::to_string(kConfigSchemaVersion) + ")\n\n";
  h +=
      "Top-level config: {\"schema\":1,\"jobs\":[...]}\n\n"
      "Job types:\n"
      "  interval-spectrum  {\"type\":\"interval-spectrum\",\"potential\":P,\"bc\":\"dirichlet\"|"
      "\"neumann\",\n"
      "                      \"count\":N,\"method\":\"galerkin\"|\"fd\",\"basis\":M,\"grid\":G,"
      "\"out\":FILE}\n"
      "  torus-spectrum     {\"type\":\"torus-spectrum\",\"lattice\":{\"vectors\":[[...],...]},\n"
      "                      \"potential\":T,\"count\":N,\"cutoff\":B,\"out\":FILE}\n"
      "  verify             {\"type\":\"verify\",\"theorem\":TAG,\"potential\":P|T,\"lattice\":L,\n"
      "                      \"n\":N|\"n_range\":[LO,HI],\"s\":S|\"s_values\":[...],\"basis\":M,"
      "\"cutoff\":B,\"out\":FILE}\n"
      "  trace              {\"type\":\"trace\",\"potential\":P,\"n_max\":N,\"basis\":M,"
      "\"out\":FILE}\n"
      "  dikii              {\"type\":\"dikii\",\"potential\":P,\"n\":N,\"basis\":M,\"out\":FILE}\n"
      "  zeta               {\"type\":\"zeta\",\"lambdas\":[...],\"a\":[...],\"b\":[...],\n"
      "                      \"s\":S|\"s_values\":[...],\"n\":N,\"powerrep\":[[LAMBDA,S],...],"
      "\"out\":FILE}\n"
      "  counterexample     {\"type\":\"counterexample\",\"n\":N,\"t_values\":[...],\"out\":FILE}\n"
      "\n"
      "Potential P: {\"type\":\"fourier\",\"coeffs\":[q0,q1,...]} or\n"
      "             {\"type\":\"sampled\",\"grid\":G,\"values\":[v0,...,vG]}\n"
      "Torus potential T: {\"terms\":[{\"beta\":[...],\"re\":X,\"im\":Y},...]}, conjugate-"
      "symmetric.\n"
      "Theorem tags: dirichlet_sum, neumann_sum, combined_sum, power_sum, slope_dirichlet,\n"
      "  slope_neumann, slope_zeta, torus_sum, torus_power (zeta_bound and power_identity run\n"
      "  under the \"zeta\" job; mode_drop under \"counterexample\"; trace_tail under \"trace\";\n"
      "  rayleigh_defect under \"dikii\").\n"
      "Report CSV header: theorem,n,lhs,rhs,slack,tol,status\n"
      "Spectrum CSV header: k,value,error_estimate\n"
      "Outputs: one CSV per job plus run-manifest.json (timestamps live only in the manifest;\n"
      "  re-running a manifest as the config replays its config_echo).\n"
      "Env: SPECTRAL_SUMS_SEED seeds randomized test batteries; recorded in the manifest.\n"
      "Exit codes: 0 all applicable reports pass; 2 failed inequality; 3 solver error;\n"
      "  4 schema violation.\n";
  return h;
}

}  // namespace spectral_sums
