#pragma once

#include <functional>
#include <vector>

namespace pcb {

/// Integrand form used by the tanh-sinh rule. Besides the abscissa x, the
/// rule passes the distances to both interval endpoints, computed without
/// cancellation. Integrable endpoint singularities like (1-x)^alpha with
/// alpha > -1 should be evaluated from the distances, not from x itself.
using WeightedIntegrand = std::function<double(double x, double dist_lo, double dist_hi)>;

/// Tanh-sinh (double-exponential) quadrature on [lo, hi]. Halves the step
/// until two consecutive levels agree to abs_tol.
double tanh_sinh(const WeightedIntegrand& f, double lo, double hi, double abs_tol,
                 int max_level = 12);

/// Convenience overload for integrands that are regular at the endpoints.
double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol);

/// Integrates piece by piece between consecutive breakpoints (which should
/// include both interval ends and any interior kinks of the integrand).
double integrate_pieces(const WeightedIntegrand& f, const std::vector<double>& breakpoints,
                        double abs_tol);

}  // namespace pcb
