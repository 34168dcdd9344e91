#pragma once

#include "pcb/galerkin.hpp"
#include "pcb/pc_basis.hpp"

namespace pcb {

/// Riemann data u = +-a + b*xi on either side of x0, with b > 0 so the jump
/// location in the random variable stays well defined.
struct RiemannSetup {
  enum class Kind { Shock, Rarefaction };
  Kind kind = Kind::Shock;
  double a = 1.0;
  double b = 0.2;
  double x0 = 0.5;
};

/// Smooth bump of uncertain height riding on the constant state 1.
struct BumpSetup {
  double x0 = 0.25;
  double r = 0.25;
  double eps = 0.0271828182845904524;  // e / 100
  double b = 0.2;
};

/// Hermite-basis coefficient of the infinite-order shock solution.
/// u_0 = a - 2a Phi(xi_s); u_i = b delta_{i,1} + (2a/sqrt(i)) g_{i-1}(xi_s)
/// with g_j = phi_j * omega and xi_s = (x - x0) / (b t). Needs t > 0.
double shock_coefficient(int i, double x, double t, const RiemannSetup& setup);

/// Hermite-basis coefficient of the infinite-order rarefaction solution,
/// assembled from the defining integrals over the three xi-regions with
/// xi_1 = (x - x0 - a t)/(b t) and xi_2 = (x - x0 + a t)/(b t).
double rarefaction_coefficient(int i, double x, double t, const RiemannSetup& setup);

/// Piecewise-constant initial coefficients (+-a, b, 0, ...). An x exactly at
/// x0 takes the value prescribed for the interior convention; nodes on a
/// duplicated element face pass from_left to pick the one-sided value.
ModeVector initial_coefficients(const RiemannSetup& setup, double x, int modes,
                                bool from_left = true);

/// Bump initial coefficients: u_0 = 1 + eps exp(-r^2/(r^2-(x-x0)^2)) inside
/// the bump, u_1 = eps b exp(...), zero above.
ModeVector bump_initial(double x, const BumpSetup& setup, int modes);

/// Generalized-family coefficients <u, phi_i> (raw projections against the
/// family's standard polynomials). Shock needs i >= 1, rarefaction i >= 2;
/// the lower modes have no boundary-term closed form and are served by
/// reference_projection below.
double jacobi_shock_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                double alpha, double beta);
double jacobi_rarefaction_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                      double alpha, double beta);
double laguerre_shock_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                  double alpha);
double laguerre_rarefaction_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                        double alpha);

/// Projection <u(x,t,.), phi_i> for any family and any i >= 0 by adaptive
/// quadrature of the defining integral over the exact solution.
double reference_projection(const OrthogonalFamily& family, int i, double x, double t,
                            const RiemannSetup& setup);

/// Moments of the Hermite reference solution: E = u_0 and
/// Var = sum_{i>=1} u_i^2, truncated adaptively once |u_i|^2 < 1e-12
/// (at least m_report modes are always summed).
Moments reference_moments(double x, double t, const RiemannSetup& setup, int m_report);

}  // namespace pcb
