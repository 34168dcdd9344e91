#pragma once

#include <span>
#include <vector>

#include "pcb/cpr.hpp"
#include "pcb/galerkin.hpp"

namespace pcb {

/// First-order finite-volume state: N cell averages of mode vectors, flat
/// storage (cell, mode) with mode fastest.
struct FVState {
  int cells = 0;
  int modes = 0;
  double dx = 0.0;
  std::vector<double> value;

  FVState() = default;
  FVState(int n_cells, int n_modes, double cell_width)
      : cells(n_cells),
        modes(n_modes),
        dx(cell_width),
        value(static_cast<size_t>(n_cells) * n_modes, 0.0) {}

  std::span<double> cell(int i) {
    return {value.data() + static_cast<size_t>(i) * modes, static_cast<size_t>(modes)};
  }
  std::span<const double> cell(int i) const {
    return {value.data() + static_cast<size_t>(i) * modes, static_cast<size_t>(modes)};
  }
};

/// rate_i = -(f_{i+1/2} - f_{i-1/2}) / dx with the interface flux
/// f = ec_flux - (omega/2) lambda [u]; lambda is cached per cell so the
/// eigen-solve runs once per cell and stage. omega must lie in (0, 1].
void fv_rhs(const FVState& state, const TripleProductTensor& tensor, double omega,
            const BoundaryCondition& bc, FVState& rate);

}  // namespace pcb
