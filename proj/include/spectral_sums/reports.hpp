// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "spectral_sums/analysis.hpp"
#include "spectral_sums/interval_spectrum.hpp"

namespace spectral_sums {

// Shortest decimal form that round-trips to the same double. Deterministic,
// locale-free; repeated runs on identical inputs serialize byte-identically.
std::string format_number(double v);

std::string report_csv_header();   // "theorem,n,lhs,rhs,slack,tol,status"
std::string to_csv_row(const InequalityReport& r);
std::string report_csv(const std::vector<InequalityReport>& rows);

std::string spectrum_csv_header();  // "k,value,error_estimate"

// Rows indexed by mode number: 1-based for Dirichlet spectra, 0-based for
// Neumann and periodic ones.
std::string spectrum_csv(const SpectrumResult& spec);

}  // namespace spectral_sums
