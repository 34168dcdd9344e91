#pragma once

#include <span>
#include <vector>

#include "pcb/galerkin.hpp"
#include "pcb/numerical_flux.hpp"
#include "pcb/sbp.hpp"

namespace pcb {

/// Uniform 1-D mesh of N elements with an affine map onto [-1, 1] per
/// element (Jacobian h/2).
struct Mesh1D {
  double x_lo = 0.0;
  double x_hi = 1.0;
  int elements = 1;

  double width() const { return (x_hi - x_lo) / elements; }
  double element_lo(int e) const { return x_lo + e * width(); }
  double node_position(int e, double ref_node) const {
    return element_lo(e) + 0.5 * (ref_node + 1.0) * width();
  }
};

/// Evolved coefficients, indexed (element, node, mode), mode fastest.
struct SolutionField {
  int elements = 0;
  int nodes = 0;  // p + 1
  int modes = 0;  // M + 1
  std::vector<double> coeff;

  SolutionField() = default;
  SolutionField(int n_elem, int n_node, int n_mode)
      : elements(n_elem),
        nodes(n_node),
        modes(n_mode),
        coeff(static_cast<size_t>(n_elem) * n_node * n_mode, 0.0) {}

  size_t index(int e, int n, int k) const {
    return (static_cast<size_t>(e) * nodes + n) * modes + k;
  }
  double& at(int e, int n, int k) { return coeff[index(e, n, k)]; }
  double at(int e, int n, int k) const { return coeff[index(e, n, k)]; }
  std::span<double> node_modes(int e, int n) {
    return {coeff.data() + index(e, n, 0), static_cast<size_t>(modes)};
  }
  std::span<const double> node_modes(int e, int n) const {
    return {coeff.data() + index(e, n, 0), static_cast<size_t>(modes)};
  }
};

enum class BcKind { Periodic, InflowDirichlet, Outflow };

struct BoundaryCondition {
  BcKind kind = BcKind::Periodic;
  ModeVector left_state;   // inflow only
  ModeVector right_state;  // inflow only

  static BoundaryCondition periodic() { return {}; }
  static BoundaryCondition inflow(ModeVector left, ModeVector right) {
    return {BcKind::InflowDirichlet, std::move(left), std::move(right)};
  }
  static BoundaryCondition outflow() { return {BcKind::Outflow, {}, {}}; }
};

/// Ghost states seen from the two domain boundaries: periodic wraps,
/// inflow prescribes the Dirichlet mode vector (imposed weakly through the
/// numerical flux), outflow copies the interior trace.
ModeVector boundary_ghost_left(const BoundaryCondition& bc, const SolutionField& field);
ModeVector boundary_ghost_right(const BoundaryCondition& bc, const SolutionField& field);

/// Componentwise split-form semidiscretization:
///   du_k/dt = -(1/3) sum_{ij} <phi_i phi_j phi_k> (D (u_i u_j) + u_j (D u_i))
///             - M^{-1} R^T B (f_num_k - sum_{ij} <...> (1/3 R(u_i u_j)
///                                                       + 1/6 (R u_i)(R u_j)))
/// scaled by 2/h. Interface fluxes are evaluated once per face and shared by
/// both neighbors.
void semidiscrete_rhs(const SolutionField& field, const Mesh1D& mesh, const SBPOperatorSet& ops,
                      const TripleProductTensor& tensor, const FluxKernel& flux_fn,
                      const BoundaryCondition& bc, SolutionField& rate);

/// Matrix-form skew-symmetric discretization on Gauss-Lobatto nodes:
///   du/dt = -(beta/2) D (A_G u) - (1-beta) A_G (D u)
///           - M^{-1} R^T B (f_num - 1/2 R (A_G u)).
/// For beta = 2/3 this is algebraically identical to semidiscrete_rhs.
void skewsym_rhs_lobatto(const SolutionField& field, const Mesh1D& mesh,
                         const SBPOperatorSet& ops, const TripleProductTensor& tensor,
                         const FluxKernel& flux_fn, const BoundaryCondition& bc, double beta,
                         SolutionField& rate);

/// Discrete integrals: entropy = sum_e h/4 sum_k u_k^T M u_k, and per-mode
/// mass = sum_e h/2 1^T M u_k.
double total_entropy(const SolutionField& field, const Mesh1D& mesh, const SBPOperatorSet& ops);
ModeVector total_mass(const SolutionField& field, const Mesh1D& mesh, const SBPOperatorSet& ops);

/// Semidiscrete entropy rate sum_e h/2 sum_k u_k^T M rate_k; vanishes for
/// entropy conservative fluxes on periodic meshes.
double entropy_rate(const SolutionField& field, const SolutionField& rate, const Mesh1D& mesh,
                    const SBPOperatorSet& ops);

/// Applies the modal filter to every element and mode in place.
void apply_filter(SolutionField& field, const FilterMatrix& filter);

}  // namespace pcb
