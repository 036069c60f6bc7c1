#pragma once

#include <functional>

namespace dsm {

// Midpoint rule with n uniform panels.
double midpoint_integral(const std::function<double(double)>& f, double a,
                         double b, int n);

// Double-exponential (tanh-sinh) quadrature on (a, b). Converges fast for
// smooth integrands and stays accurate for integrable endpoint
// singularities, which the midpoint rule cannot handle. Abscissas never
// touch the endpoints.
double tanh_sinh_integral(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12);

}  // namespace dsm
