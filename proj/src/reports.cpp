// SPDX-License-Identifier: Apache-2.0
#include "spectral_sums/reports.hpp"

#include <charconv>
#include <system_error>

namespace spectral_sums {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string report_csv_header() { return "theorem,n,lhs,rhs,slack,tol,status"; }

std::string to_csv_row(const InequalityReport& r) {
  std::string row = r.theorem;
  row += ',';
  row += std::to_string(r.n);
  row += ',';
  row += format_number(r.lhs);
  row += ',';
  row += format_number(r.rhs);
  row += ',';
  row += format_number(r.slack);
  row += ',';
  row += format_number(r.tol);
  row += ',';
  row += to_string(r.status);
  return row;
}

std::string report_csv(const std::vector<InequalityReport>& rows) {
  std::string out = report_csv_header();
  out += '\n';
  for (const auto& r : rows) {
    out += to_csv_row(r);
    out += '\n';
  }
  return out;
}

std::string spectrum_csv_header() { return "k,value,error_estimate"; }

std::string spectrum_csv(const SpectrumResult& spec) {
  std::string out = spectrum_csv_header();
  out += '\n';
  const int base = spec.bc == BoundaryCondition::Dirichlet ? 1 : 0;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    out += std::to_string(base + static_cast<int>(i));
    out += ',';
    out += format_number(spec.values[i]);
    out += ',';
    out += format_number(spec.error_estimates[i]);
    out += '\n';
  }
  return out;
}

}  // namespace spectral_sums
