// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace oracles {

// Composite Simpson rule on [a, b] with an even number of subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

// Form-matrix entries of -u'' + q u on (0, pi) by direct quadrature against
// the normalized free eigenbases: sin modes (indices from 1) for the
// Dirichlet form, cos modes (indices from 0, constant normalized to 1/pi)
// for the Neumann form. Independent of any cosine-coefficient algebra.
double dirichlet_form_entry(const std::function<double(double)>& q, int j, int k, int intervals);
double neumann_form_entry(const std::function<double(double)>& q, int j, int k, int intervals);

}  // namespace oracles
