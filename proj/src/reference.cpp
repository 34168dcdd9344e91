#include "pcb/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcb/quadrature.hpp"

namespace pcb {

namespace {

void require_positive_time(double t, const char* where) {
  if (!(t > 0.0)) throw std::invalid_argument(std::string(where) + ": needs t > 0");
}

double sq(double x) { return x * x; }

}  // namespace

double shock_coefficient(int i, double x, double t, const RiemannSetup& setup) {
  require_positive_time(t, "shock_coefficient");
  if (setup.kind != RiemannSetup::Kind::Shock)
    throw std::invalid_argument("shock_coefficient: setup is not a shock");
  const double xi_s = (x - setup.x0) / (setup.b * t);
  if (i == 0) return setup.a - 2.0 * setup.a * gauss_cdf(xi_s);
  const double tail = 2.0 * setup.a / std::sqrt(static_cast<double>(i)) *
                      hermite_weighted_eval(i - 1, xi_s);
  return (i == 1 ? setup.b : 0.0) + tail;
}

double rarefaction_coefficient(int i, double x, double t, const RiemannSetup& setup) {
  require_positive_time(t, "rarefaction_coefficient");
  if (setup.kind != RiemannSetup::Kind::Rarefaction)
    throw std::invalid_argument("rarefaction_coefficient: setup is not a rarefaction");
  const double a = setup.a, b = setup.b;
  const double xi1 = (x - setup.x0 - a * t) / (b * t);
  const double xi2 = (x - setup.x0 + a * t) / (b * t);

  // u = (a + b xi) + b (xi1 - xi) 1_{(xi1,xi2)} - 2a 1_{xi > xi2}, so the
  // coefficient splits into the whole-line part and three tail integrals
  //   I = int_{xi1}^{xi2} phi_i w,  J = int_{xi1}^{xi2} xi phi_i w,
  //   T = int_{xi2}^{inf} phi_i w,
  // each reduced to boundary terms of phi_{i-1} w via the weighted recursion.
  double I, J, T;
  if (i == 0) {
    I = gauss_cdf(xi2) - gauss_cdf(xi1);
    J = gauss_density(xi1) - gauss_density(xi2);
    T = 1.0 - gauss_cdf(xi2);
  } else if (i == 1) {
    I = -(hermite_weighted_eval(0, xi2) - hermite_weighted_eval(0, xi1));
    J = (gauss_cdf(xi2) - gauss_cdf(xi1)) -
        (xi2 * gauss_density(xi2) - xi1 * gauss_density(xi1));
    T = hermite_weighted_eval(0, xi2);
  } else {
    const double ri = 1.0 / std::sqrt(static_cast<double>(i));
    const double g2a = hermite_weighted_eval(i - 1, xi1);
    const double g2b = hermite_weighted_eval(i - 1, xi2);
    I = -ri * (g2b - g2a);
    J = -ri * (xi2 * g2b - xi1 * g2a +
               (hermite_weighted_eval(i - 2, xi2) - hermite_weighted_eval(i - 2, xi1)) /
                   std::sqrt(i - 1.0));
    T = ri * g2b;
  }
  const double base = (i == 0 ? a : 0.0) + (i == 1 ? b : 0.0);
  return base + b * xi1 * I - b * J - 2.0 * a * T;
}

ModeVector initial_coefficients(const RiemannSetup& setup, double x, int modes, bool from_left) {
  ModeVector u(modes, 0.0);
  const double sgn_left = (setup.kind == RiemannSetup::Kind::Shock) ? 1.0 : -1.0;
  double u0;
  if (x < setup.x0)
    u0 = sgn_left * setup.a;
  else if (x > setup.x0)
    u0 = -sgn_left * setup.a;
  else
    u0 = (from_left ? sgn_left : -sgn_left) * setup.a;
  u[0] = u0;
  if (modes > 1) u[1] = setup.b;
  return u;
}

ModeVector bump_initial(double x, const BumpSetup& setup, int modes) {
  ModeVector u(modes, 0.0);
  u[0] = 1.0;
  const double d = x - setup.x0;
  if (std::abs(d) < setup.r) {
    const double shape = std::exp(-sq(setup.r) / (sq(setup.r) - sq(d)));
    u[0] += setup.eps * shape;
    if (modes > 1) u[1] = setup.eps * setup.b * shape;
  }
  return u;
}

namespace {

// phi_j * weight for the shifted Jacobi/Laguerre families, zero off support.
double jacobi_weighted(int j, double alpha, double beta, double s) {
  if (s <= -1.0 || s >= 1.0) return 0.0;
  return jacobi_eval(j, alpha, beta, s) *
         std::pow(1.0 - s, alpha) * std::pow(1.0 + s, beta);
}

double laguerre_weighted(int j, double alpha, double s) {
  if (s <= 0.0) return 0.0;
  return laguerre_eval(j, alpha, s) * std::pow(s, alpha) * std::exp(-s);
}

}  // namespace

double jacobi_shock_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                double alpha, double beta) {
  require_positive_time(t, "jacobi_shock_coefficient");
  if (i < 1) throw std::invalid_argument("jacobi_shock_coefficient: needs i >= 1");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("jacobi_shock_coefficient: parameters must be > -1");
  const double xi_s = (x - setup.x0) / (setup.b * t);
  double v = (setup.a / i) * jacobi_weighted(i - 1, alpha + 1.0, beta + 1.0, xi_s);
  if (i == 1) {
    const double h1 = family_norm2(OrthogonalFamily::jacobi(alpha, beta), 1);
    v += setup.b * 2.0 / (alpha + beta + 2.0) * h1;  // <xi, P_1>
  }
  return v;
}

double jacobi_rarefaction_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                      double alpha, double beta) {
  require_positive_time(t, "jacobi_rarefaction_coefficient");
  if (i < 2) throw std::invalid_argument("jacobi_rarefaction_coefficient: needs i >= 2");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("jacobi_rarefaction_coefficient: parameters must be > -1");
  const double a = setup.a, b = setup.b;
  const double xi1 = (x - setup.x0 - a * t) / (b * t);
  const double xi2 = (x - setup.x0 + a * t) / (b * t);
  auto gp = [&](int j, double shift, double s) {
    return jacobi_weighted(j, alpha + shift, beta + shift, s);
  };
  const double I = -(gp(i - 1, 1.0, xi2) - gp(i - 1, 1.0, xi1)) / (2.0 * i);
  auto jb = [&](double s) {
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return -s / (2.0 * i) * gp(i - 1, 1.0, s) - gp(i - 2, 2.0, s) / (4.0 * i * (i - 1.0));
  };
  const double J = jb(xi2) - jb(xi1);
  const double T = gp(i - 1, 1.0, xi2) / (2.0 * i);
  return b * xi1 * I - b * J - 2.0 * a * T;
}

double laguerre_shock_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                  double alpha) {
  require_positive_time(t, "laguerre_shock_coefficient");
  if (i < 1) throw std::invalid_argument("laguerre_shock_coefficient: needs i >= 1");
  if (alpha <= -1.0) throw std::invalid_argument("laguerre_shock_coefficient: alpha must be > -1");
  const double xi_s = (x - setup.x0) / (setup.b * t);
  double v = -(2.0 * setup.a / i) * laguerre_weighted(i - 1, alpha + 1.0, xi_s);
  if (i == 1) v += -setup.b * std::exp(std::lgamma(alpha + 2.0));  // <xi, L_1>
  return v;
}

double laguerre_rarefaction_coefficient(int i, double x, double t, const RiemannSetup& setup,
                                        double alpha) {
  require_positive_time(t, "laguerre_rarefaction_coefficient");
  if (i < 2) throw std::invalid_argument("laguerre_rarefaction_coefficient: needs i >= 2");
  if (alpha <= -1.0)
    throw std::invalid_argument("laguerre_rarefaction_coefficient: alpha must be > -1");
  const double a = setup.a, b = setup.b;
  const double xi1 = (x - setup.x0 - a * t) / (b * t);
  const double xi2 = (x - setup.x0 + a * t) / (b * t);
  auto gl = [&](int j, double shift, double s) { return laguerre_weighted(j, alpha + shift, s); };
  const double I = (gl(i - 1, 1.0, xi2) - gl(i - 1, 1.0, xi1)) / i;
  auto jb = [&](double s) {
    if (s <= 0.0) return 0.0;
    // xi * w^(alpha+1) = w^(alpha+2)
    return laguerre_eval(i - 1, alpha + 1.0, s) * std::pow(s, alpha + 2.0) * std::exp(-s) / i -
           gl(i - 2, 2.0, s) / (i * (i - 1.0));
  };
  const double J = jb(xi2) - jb(xi1);
  const double T = -gl(i - 1, 1.0, xi2) / i;
  return b * xi1 * I - b * J - 2.0 * a * T;
}

namespace {

// Exact solution in the random variable at fixed (x, t).
double exact_in_xi(const RiemannSetup& setup, double x, double t, double xi) {
  const double a = setup.a, b = setup.b;
  if (setup.kind == RiemannSetup::Kind::Shock) {
    const double xi_s = (x - setup.x0) / (b * t);
    return (xi > xi_s) ? (a + b * xi) : (-a + b * xi);
  }
  const double xi1 = (x - setup.x0 - a * t) / (b * t);
  const double xi2 = (x - setup.x0 + a * t) / (b * t);
  if (xi > xi2) return -a + b * xi;
  if (xi < xi1) return a + b * xi;
  return a + b * xi1;  // (x - x0) / t
}

std::vector<double> breakpoints_in(const RiemannSetup& setup, double x, double t, double lo,
                                   double hi) {
  std::vector<double> pts = {lo, hi};
  auto add = [&](double s) {
    if (s > lo && s < hi) pts.push_back(s);
  };
  if (setup.kind == RiemannSetup::Kind::Shock) {
    add((x - setup.x0) / (setup.b * t));
  } else {
    add((x - setup.x0 - setup.a * t) / (setup.b * t));
    add((x - setup.x0 + setup.a * t) / (setup.b * t));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

double reference_projection(const OrthogonalFamily& family, int i, double x, double t,
                            const RiemannSetup& setup) {
  require_positive_time(t, "reference_projection");
  constexpr double tol = 1e-12;
  switch (family.kind) {
    case OrthogonalFamily::Kind::HermiteNormalized: {
      const auto pts = breakpoints_in(setup, x, t, -13.0, 13.0);
      return integrate_pieces(
          [&](double xi, double, double) {
            return exact_in_xi(setup, x, t, xi) * hermite_eval(i, xi) * gauss_density(xi);
          },
          pts, tol);
    }
    case OrthogonalFamily::Kind::Jacobi: {
      const auto pts = breakpoints_in(setup, x, t, -1.0, 1.0);
      double total = 0.0;
      for (size_t m = 0; m + 1 < pts.size(); ++m) {
        const double lo = pts[m], hi = pts[m + 1];
        if (!(hi > lo)) continue;
        // evaluate the weight from the endpoint distances on the pieces that
        // touch the singular support boundary
        total += tanh_sinh(
            [&](double xi, double dlo, double dhi) {
              const double one_minus = (hi == 1.0) ? dhi : 1.0 - xi;
              const double one_plus = (lo == -1.0) ? dlo : 1.0 + xi;
              const double w =
                  std::pow(one_minus, family.alpha) * std::pow(one_plus, family.beta);
              return exact_in_xi(setup, x, t, xi) *
                     jacobi_eval(i, family.alpha, family.beta, xi) * w;
            },
            lo, hi, tol / static_cast<double>(pts.size()));
      }
      return total;
    }
    case OrthogonalFamily::Kind::Laguerre: {
      auto pts = breakpoints_in(setup, x, t, 0.0, 120.0);
      double total = 0.0;
      for (size_t m = 0; m + 1 < pts.size(); ++m) {
        const double lo = pts[m], hi = pts[m + 1];
        if (!(hi > lo)) continue;
        total += tanh_sinh(
            [&](double xi, double dlo, double) {
              const double r = (lo == 0.0) ? dlo : xi;
              const double w = std::pow(r, family.alpha) * std::exp(-xi);
              return exact_in_xi(setup, x, t, xi) * laguerre_eval(i, family.alpha, xi) * w;
            },
            lo, hi, tol / static_cast<double>(pts.size()));
      }
      return total;
    }
  }
  throw std::logic_error("reference_projection: unknown family");
}

Moments reference_moments(double x, double t, const RiemannSetup& setup, int m_report) {
  require_positive_time(t, "reference_moments");
  auto coeff = [&](int i) {
    return setup.kind == RiemannSetup::Kind::Shock ? shock_coefficient(i, x, t, setup)
                                                   : rarefaction_coefficient(i, x, t, setup);
  };
  Moments m;
  m.expectation = coeff(0);
  long double var = 0.0L;
  constexpr int hard_cap = 400;
  for (int i = 1; i < hard_cap; ++i) {
    const double ui = coeff(i);
    var += static_cast<long double>(ui) * ui;
    if (i >= m_report && ui * ui < 1e-12) break;
  }
  m.variance = static_cast<double>(var);
  return m;
}

}  // namespace pcb
