#include "pcb/numerical_flux.hpp"

#include <cmath>
#include <stdexcept>

namespace pcb {

namespace {
void check_pair(std::span<const double> left, std::span<const double> right,
                const TripleProductTensor& tensor, const char* where) {
  if (left.size() != right.size())
    throw std::invalid_argument(std::string(where) + ": trace orders differ");
  if (tensor.order() + 1 != static_cast<int>(left.size()))
    throw std::invalid_argument(std::string(where) + ": tensor order does not match traces");
}
}  // namespace

void ec_flux_into(std::span<const double> left, std::span<const double> right,
                  const TripleProductTensor& tensor, std::span<double> out) {
  check_pair(left, right, tensor, "ec_flux");
  const int n = tensor.order() + 1;
  for (int k = 0; k < n; ++k) {
    long double acc = 0.0L;
    for (const auto& p : tensor.pairs(k)) {
      const long double li = left[p.i], lj = left[p.j];
      const long double ri = right[p.i], rj = right[p.j];
      const long double prod_mean = 0.5L * (li * lj + ri * rj);
      const long double mean_prod = 0.25L * (li + ri) * (lj + rj);
      long double term = prod_mean / 3.0L + (2.0L / 3.0L) * mean_prod;
      if (p.i != p.j) term *= 2.0L;
      acc += p.value * term;
    }
    out[k] = static_cast<double>(0.5L * acc);
  }
}

ModeVector ec_flux(std::span<const double> left, std::span<const double> right,
                   const TripleProductTensor& tensor) {
  ModeVector out(left.size());
  ec_flux_into(left, right, tensor, out);
  return out;
}

ModeVector tadmor_phase_integral(std::span<const double> left, std::span<const double> right,
                                 const TripleProductTensor& tensor) {
  check_pair(left, right, tensor, "tadmor_phase_integral");
  const int n = tensor.order() + 1;
  // Gauss points on [0,1]; the blended-state flux is quadratic in s.
  const long double s1 = 0.5L - 0.5L / std::sqrt(3.0L);
  const long double s2 = 0.5L + 0.5L / std::sqrt(3.0L);
  ModeVector out(n);
  for (int k = 0; k < n; ++k) {
    long double acc = 0.0L;
    for (const auto& p : tensor.pairs(k)) {
      const long double gi1 = (1.0L - s1) * left[p.i] + s1 * right[p.i];
      const long double gj1 = (1.0L - s1) * left[p.j] + s1 * right[p.j];
      const long double gi2 = (1.0L - s2) * left[p.i] + s2 * right[p.i];
      const long double gj2 = (1.0L - s2) * left[p.j] + s2 * right[p.j];
      long double term = 0.5L * (gi1 * gj1 + gi2 * gj2);
      if (p.i != p.j) term *= 2.0L;
      acc += p.value * term;
    }
    out[k] = static_cast<double>(0.5L * acc);
  }
  return out;
}

void llf_es_flux_into(std::span<const double> left, std::span<const double> right,
                      const TripleProductTensor& tensor, double omega, std::span<double> out) {
  if (!(omega > 0.0) || omega > 1.0)
    throw std::invalid_argument("llf_es_flux: dissipation weight must lie in (0, 1]");
  ec_flux_into(left, right, tensor, out);
  const double lam =
      std::max(max_abs_eigenvalue(left, tensor), max_abs_eigenvalue(right, tensor));
  const size_t n = left.size();
  for (size_t k = 0; k < n; ++k) out[k] -= 0.5 * omega * lam * (right[k] - left[k]);
}

ModeVector llf_es_flux(std::span<const double> left, std::span<const double> right,
                       const TripleProductTensor& tensor, double omega) {
  ModeVector out(left.size());
  llf_es_flux_into(left, right, tensor, omega, out);
  return out;
}

namespace {

double mean1(double l, double r) { return 0.5 * (l + r); }
double mean_sq(double l, double r) { return 0.5 * (l * l + r * r); }
double mean_prod(double li, double lj, double ri, double rj) {
  return 0.5 * (li * lj + ri * rj);
}

double scalar_subflux(double l, double r, ScalarFluxChoice choice) {
  switch (choice) {
    case ScalarFluxChoice::EntropyConservative:
      return mean_sq(l, r) / 6.0 + mean1(l, r) * mean1(l, r) / 3.0;
    case ScalarFluxChoice::LocalLaxFriedrichs: {
      const double lam = std::max(std::abs(l), std::abs(r));
      return 0.5 * (0.5 * l * l + 0.5 * r * r) - 0.5 * lam * (r - l);
    }
  }
  throw std::logic_error("scalar_subflux: unknown choice");
}

}  // namespace

ModeVector example_flux(int pc_order, std::span<const double> left,
                        std::span<const double> right, ScalarFluxChoice scalar_flux) {
  if (pc_order < 0 || pc_order > 3)
    throw std::invalid_argument("example_flux: only M = 0..3 are written out termwise");
  if (left.size() != right.size() || static_cast<int>(left.size()) != pc_order + 1)
    throw std::invalid_argument("example_flux: trace order mismatch");
  const double sq2 = std::sqrt(2.0);
  const double sq3 = std::sqrt(3.0);
  auto m = [&](int i) { return mean1(left[i], right[i]); };
  auto msq = [&](int i) { return mean_sq(left[i], right[i]); };
  auto mp = [&](int i, int j) { return mean_prod(left[i], left[j], right[i], right[j]); };
  auto split = [&](int i, int j) { return mp(i, j) / 3.0 + 2.0 / 3.0 * m(i) * m(j); };

  const double f00 = scalar_subflux(left[0], right[0], scalar_flux);
  switch (pc_order) {
    case 0:
      return {f00};
    case 1:
      return {f00 + 0.5 * msq(1),  //
              m(0) * m(1)};
    case 2: {
      const double f22 = scalar_subflux(left[2], right[2], scalar_flux);
      return {f00 + 0.5 * msq(1) + 0.5 * msq(2),  //
              m(0) * m(1) + sq2 * m(1) * m(2),    //
              2.0 * sq2 * f22 + m(0) * m(2) + 0.5 * sq2 * msq(1)};
    }
    case 3: {
      const double f22 = scalar_subflux(left[2], right[2], scalar_flux);
      return {f00 + 0.5 * msq(1) + 0.5 * msq(2) + 0.5 * msq(3),
              m(0) * m(1) + sq2 * m(1) * m(2) + sq3 * split(2, 3),
              m(0) * m(2) + 0.5 * sq2 * msq(1) + sq3 * split(1, 3) + 2.0 * sq2 * f22 +
                  1.5 * sq2 * msq(3),
              m(0) * m(3) + sq3 * split(1, 2) + 3.0 * sq2 * m(2) * m(3)};
    }
  }
  throw std::logic_error("example_flux: unreachable");
}

double entropy_residual(std::span<const double> left, std::span<const double> right,
                        std::span<const double> fnum, const TripleProductTensor& tensor) {
  if (left.size() != right.size() || left.size() != fnum.size())
    throw std::invalid_argument("entropy_residual: size mismatch");
  long double jump_dot = 0.0L;
  for (size_t k = 0; k < left.size(); ++k)
    jump_dot += (static_cast<long double>(right[k]) - left[k]) * fnum[k];
  const long double dpsi = static_cast<long double>(flux_potential(right, tensor)) -
                           static_cast<long double>(flux_potential(left, tensor));
  return static_cast<double>(jump_dot - dpsi);
}

FluxKernel make_ec_kernel(const TripleProductTensor& tensor) {
  return [&tensor](std::span<const double> l, std::span<const double> r, std::span<double> out) {
    ec_flux_into(l, r, tensor, out);
  };
}

FluxKernel make_llf_kernel(const TripleProductTensor& tensor, double omega) {
  return [&tensor, omega](std::span<const double> l, std::span<const double> r,
                          std::span<double> out) { llf_es_flux_into(l, r, tensor, omega, out); };
}

}  // namespace pcb
