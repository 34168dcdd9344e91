#pragma once

#include <functional>
#include <span>

#include "pcb/galerkin.hpp"

namespace pcb {

/// Left/right trace pair at an element interface: left = u(-), right = u(+).
struct InterfacePair {
  ModeVector left;
  ModeVector right;
};

/// Two-point interface flux: (left trace, right trace) -> flux per mode.
using FluxKernel =
    std::function<void(std::span<const double>, std::span<const double>, std::span<double>)>;

/// Entropy conservative flux
///   f_k = 1/2 sum_{ij} <phi_i phi_j phi_k> (1/3 mean(u_i u_j) + 2/3 mean(u_i) mean(u_j)).
/// Satisfies [u] . f = [psi] exactly; symmetric and consistent.
void ec_flux_into(std::span<const double> left, std::span<const double> right,
                  const TripleProductTensor& tensor, std::span<double> out);
ModeVector ec_flux(std::span<const double> left, std::span<const double> right,
                   const TripleProductTensor& tensor);

/// The same flux derived as the phase-space line integral
/// int_0^1 f((1-s) u(-) + s u(+)) ds, evaluated by two-point Gauss
/// quadrature (exact: the integrand is quadratic in s).
ModeVector tadmor_phase_integral(std::span<const double> left, std::span<const double> right,
                                 const TripleProductTensor& tensor);

/// Entropy stable flux: EC part plus local Lax-Friedrichs dissipation
/// -(omega/2) lambda [u] with lambda = max(|lambda(-)|max, |lambda(+)|max).
/// omega in (0, 1] scales the dissipation matrix.
void llf_es_flux_into(std::span<const double> left, std::span<const double> right,
                      const TripleProductTensor& tensor, double omega, std::span<double> out);
ModeVector llf_es_flux(std::span<const double> left, std::span<const double> right,
                       const TripleProductTensor& tensor, double omega = 1.0);

enum class ScalarFluxChoice {
  EntropyConservative,  // f_ii = 1/6 mean(u_i^2) + 1/3 mean(u_i)^2
  LocalLaxFriedrichs,   // central - 1/2 max(|l|,|r|) [u_i]
};

/// The per-order example fluxes for M = 0..3, written out termwise; the
/// general ec/llf fluxes cover larger M.
ModeVector example_flux(int pc_order, std::span<const double> left,
                        std::span<const double> right, ScalarFluxChoice scalar_flux);

/// Tadmor residual [u] . fnum - [psi]; zero for entropy conservative fluxes,
/// nonpositive for entropy stable ones.
double entropy_residual(std::span<const double> left, std::span<const double> right,
                        std::span<const double> fnum, const TripleProductTensor& tensor);

/// Kernel factories binding a tensor (kept alive by the caller).
FluxKernel make_ec_kernel(const TripleProductTensor& tensor);
FluxKernel make_llf_kernel(const TripleProductTensor& tensor, double omega = 1.0);

/// Pair-style conveniences.
inline ModeVector ec_flux(const InterfacePair& pair, const TripleProductTensor& tensor) {
  return ec_flux(pair.left, pair.right, tensor);
}
inline ModeVector tadmor_phase_integral(const InterfacePair& pair,
                                        const TripleProductTensor& tensor) {
  return tadmor_phase_integral(pair.left, pair.right, tensor);
}
inline ModeVector llf_es_flux(const InterfacePair& pair, const TripleProductTensor& tensor,
                              double omega = 1.0) {
  return llf_es_flux(pair.left, pair.right, tensor, omega);
}
inline double entropy_residual(const InterfacePair& pair, std::span<const double> fnum,
                               const TripleProductTensor& tensor) {
  return entropy_residual(pair.left, pair.right, fnum, tensor);
}

}  // namespace pcb
