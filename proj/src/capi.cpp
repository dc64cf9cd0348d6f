// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spectral_sums/interval_spectrum.hpp"
#include "spectral_sums/potential.hpp"
#include "spectral_sums/runner.hpp"
#include "spectral_sums/symmetric_eig.hpp"
#include "spectral_sums/version.hpp"

using spectral_sums::BoundaryCondition;
using spectral_sums::FourierPotential;
using spectral_sums::SampledPotential;
using spectral_sums::SolverError;
using spectral_sums::SpectrumResult;

struct ss_potential {
  std::variant<FourierPotential, SampledPotential> value;
};

struct ss_spectrum {
  SpectrumResult value;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

template <typename Fn>
ss_status guarded(Fn&& fn) {
  t_last_error.clear();
  try {
    fn();
    return SS_OK;
  } catch (const SolverError& e) {
    set_error(e.what());
    return SS_ERR_SOLVER;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return SS_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SS_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return SS_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SS_ERR_INTERNAL;
  }
}

ss_status require(bool ok, const char* msg) {
  if (ok) return SS_OK;
  set_error(msg);
  return SS_ERR_INVALID_ARGUMENT;
}

BoundaryCondition to_bc(int bc) {
  if (bc == SS_BC_DIRICHLET) return BoundaryCondition::Dirichlet;
  if (bc == SS_BC_NEUMANN) return BoundaryCondition::Neumann;
  throw std::invalid_argument("bc must be SS_BC_DIRICHLET or SS_BC_NEUMANN");
}

}  // namespace

extern "C" {

const char* ss_version(void) { return spectral_sums::kVersion; }

const char* ss_last_error(void) { return t_last_error.c_str(); }

const char* ss_jobs_help(void) {
  static const std::string help = spectral_sums::jobs_help();
  return help.c_str();
}

ss_status ss_potential_create_fourier(const double* coeffs, size_t count, ss_potential** out) {
  if (ss_status st = require(out != nullptr, "out must not be null")) return st;
  if (ss_status st = require(coeffs != nullptr && count >= 1, "coeffs must hold at least q0"))
    return st;
  *out = nullptr;
  return guarded([&] {
    std::vector<double> c(coeffs, coeffs + count);
    *out = new ss_potential{FourierPotential(std::move(c))};
  });
}

ss_status ss_potential_create_sampled(int grid, const double* values, size_t count,
                                      ss_potential** out) {
  if (ss_status st = require(out != nullptr, "out must not be null")) return st;
  if (ss_status st = require(values != nullptr, "values must not be null")) return st;
  if (ss_status st = require(grid >= 0 && count == static_cast<size_t>(grid) + 1,
                             "count must equal grid + 1"))
    return st;
  *out = nullptr;
  return guarded([&] {
    std::vector<double> v(values, values + count);
    *out = new ss_potential{SampledPotential(grid, std::move(v))};
  });
}

void ss_potential_destroy(ss_potential* p) { delete p; }

ss_status ss_potential_eval(const ss_potential* p, double x, double* out) {
  if (ss_status st = require(p != nullptr && out != nullptr, "null argument")) return st;
  return guarded([&] {
    if (const auto* f = std::get_if<FourierPotential>(&p->value)) {
      *out = f->eval(x);
      return;
    }
    const auto& s = std::get<SampledPotential>(p->value);
    constexpr double pi = std::numbers::pi;
    if (!(x >= 0.0) || !(x <= pi)) throw std::domain_error("x must lie in [0, pi]");
    const double pos = x / pi * s.grid();
    const int i = std::min(static_cast<int>(pos), s.grid() - 1);
    const double frac = pos - i;
    *out = (1.0 - frac) * s.value(i) + frac * s.value(i + 1);
  });
}

ss_status ss_potential_mean(const ss_potential* p, double* out) {
  if (ss_status st = require(p != nullptr && out != nullptr, "null argument")) return st;
  return guarded([&] {
    if (const auto* f = std::get_if<FourierPotential>(&p->value)) {
      *out = f->mean();
      return;
    }
    const auto& s = std::get<SampledPotential>(p->value);
    *out = spectral_sums::fourier_coefficients(s, 0).mean();
  });
}

ss_status ss_interval_spectrum(const ss_potential* p, int bc, int count, int basis,
                               ss_spectrum** out) {
  if (ss_status st = require(p != nullptr && out != nullptr, "null argument")) return st;
  *out = nullptr;
  return guarded([&] {
    const FourierPotential f =
        std::holds_alternative<FourierPotential>(p->value)
            ? std::get<FourierPotential>(p->value)
            : spectral_sums::fourier_coefficients(
                  std::get<SampledPotential>(p->value),
                  std::min(std::get<SampledPotential>(p->value).grid() / 2, 64));
    const int effective = basis > 0 ? basis : std::max(4 * count, count + 32);
    spectral_sums::IntervalProblem prob{f, to_bc(bc), effective};
    *out = new ss_spectrum{spectral_sums::eigenvalues(prob, count)};
  });
}

ss_status ss_interval_fd_spectrum(const ss_potential* p, int bc, int count, int grid,
                                  ss_spectrum** out) {
  if (ss_status st = require(p != nullptr && out != nullptr, "null argument")) return st;
  *out = nullptr;
  return guarded([&] {
    if (const auto* f = std::get_if<FourierPotential>(&p->value)) {
      *out = new ss_spectrum{spectral_sums::fd_oracle(*f, to_bc(bc), count, grid)};
      return;
    }
    const auto& s = std::get<SampledPotential>(p->value);
    *out = new ss_spectrum{spectral_sums::fd_oracle(s, to_bc(bc), count, grid)};
  });
}

int ss_spectrum_count(const ss_spectrum* s) {
  return s == nullptr ? 0 : static_cast<int>(s->value.values.size());
}

ss_status ss_spectrum_values(const ss_spectrum* s, double* out, size_t capacity) {
  if (ss_status st = require(s != nullptr && out != nullptr, "null argument")) return st;
  if (ss_status st = require(capacity >= s->value.values.size(), "capacity too small")) return st;
  std::memcpy(out, s->value.values.data(), s->value.values.size() * sizeof(double));
  t_last_error.clear();
  return SS_OK;
}

ss_status ss_spectrum_error_estimates(const ss_spectrum* s, double* out, size_t capacity) {
  if (ss_status st = require(s != nullptr && out != nullptr, "null argument")) return st;
  if (ss_status st = require(capacity >= s->value.error_estimates.size(), "capacity too small"))
    return st;
  std::memcpy(out, s->value.error_estimates.data(),
              s->value.error_estimates.size() * sizeof(double));
  t_last_error.clear();
  return SS_OK;
}

void ss_spectrum_destroy(ss_spectrum* s) { delete s; }

ss_status ss_run_config(const char* config_path, const char* out_dir, int jobs_parallel,
                        double tolerance_scale, int* cli_exit) {
  if (ss_status st = require(config_path != nullptr && out_dir != nullptr && cli_exit != nullptr,
                             "null argument"))
    return st;
  return guarded([&] {
    spectral_sums::RunOptions opts;
    opts.config_path = config_path;
    opts.out_dir = out_dir;
    opts.jobs_parallel = jobs_parallel != 0;
    opts.tolerance_scale = tolerance_scale;
    const spectral_sums::RunResult r = spectral_sums::run_config(opts);
    *cli_exit = r.exit_code;
    if (!r.error.empty()) set_error(r.error);
  });
}

}  // extern "C"
