#pragma once

#include <span>
#include <vector>

#include "pcb/cpr.hpp"
#include "pcb/galerkin.hpp"
#include "pcb/small_linalg.hpp"

namespace pcb {

/// Global-grid diagonal-norm FD SBP first-derivative operator on N+1 nodes
/// spanning [x_lo, x_hi], interior order 2 or 4 with the classical boundary
/// closures. Operators are in physical scaling.
struct FdOperator {
  int interior_order = 4;
  int grid_points = 0;  // N + 1
  double h = 0.0;
  std::vector<double> x;
  Matrix d;
  std::vector<double> mnorm;  // diagonal norm, h-scaled
};

FdOperator fd_sbp_operator(int cells, double x_lo, double x_hi, int interior_order);

enum class FdDissipation { SecondAndFourth, FourthOnly };

struct FdScheme {
  FdDissipation dissipation = FdDissipation::SecondAndFourth;
  double c2 = 0.5;   // second-order artificial-dissipation coefficient
  double c4 = 0.05;  // fourth-order coefficient
};

/// Global state: one mode vector per grid node, mode fastest.
struct FDState {
  int points = 0;
  int modes = 0;
  std::vector<double> value;

  FDState() = default;
  FDState(int n_points, int n_modes)
      : points(n_points), modes(n_modes), value(static_cast<size_t>(n_points) * n_modes, 0.0) {}

  std::span<double> node(int i) {
    return {value.data() + static_cast<size_t>(i) * modes, static_cast<size_t>(modes)};
  }
  std::span<const double> node(int i) const {
    return {value.data() + static_cast<size_t>(i) * modes, static_cast<size_t>(modes)};
  }
};

/// Split-form (beta = 2/3) global SBP semidiscretization with SAT boundary
/// penalties through the numerical flux and artificial dissipation built
/// from undivided difference stencils:
///   AD = M^{-1} (-c2 Delta1^T Lambda Delta1 - c4 Delta2^T Delta2) u,
/// the norm inverse supplying the 1/h so the two blocks act as the
/// vanishing viscosities c2 lambda h u_xx and c4 h^3 u_xxxx.
void fd_rhs(const FDState& state, const FdOperator& op, const TripleProductTensor& tensor,
            const FdScheme& scheme, const BoundaryCondition& bc, FDState& rate);

/// y += (-c2 Delta1^T Lambda Delta1 - c4 Delta2^T Delta2) u for one mode;
/// exposed so the negative-semidefiniteness of the dissipation operator is
/// testable on its own.
void fd_dissipation_apply(const FdScheme& scheme, std::span<const double> lambda_face,
                          std::span<const double> u, std::span<double> y);

}  // namespace pcb
