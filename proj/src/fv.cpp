#include "pcb/fv.hpp"

#include <cmath>
#include <stdexcept>

#include "pcb/numerical_flux.hpp"

namespace pcb {

void fv_rhs(const FVState& state, const TripleProductTensor& tensor, double omega,
            const BoundaryCondition& bc, FVState& rate) {
  if (!(omega > 0.0) || omega > 1.0)
    throw std::invalid_argument("fv_rhs: dissipation weight must lie in (0, 1]");
  if (tensor.order() + 1 != state.modes)
    throw std::invalid_argument("fv_rhs: tensor order does not match state");
  if (rate.cells != state.cells || rate.modes != state.modes) {
    rate = FVState(state.cells, state.modes, state.dx);
  }
  const int nc = state.cells;
  const int nk = state.modes;

  ModeVector ghost_l(nk), ghost_r(nk);
  switch (bc.kind) {
    case BcKind::Periodic: {
      auto l = state.cell(nc - 1);
      auto r = state.cell(0);
      ghost_l.assign(l.begin(), l.end());
      ghost_r.assign(r.begin(), r.end());
      break;
    }
    case BcKind::InflowDirichlet:
      if (static_cast<int>(bc.left_state.size()) != nk ||
          static_cast<int>(bc.right_state.size()) != nk)
        throw std::invalid_argument("fv_rhs: inflow state order mismatch");
      ghost_l = bc.left_state;
      ghost_r = bc.right_state;
      break;
    case BcKind::Outflow: {
      auto l = state.cell(0);
      auto r = state.cell(nc - 1);
      ghost_l.assign(l.begin(), l.end());
      ghost_r.assign(r.begin(), r.end());
      break;
    }
  }

  // spectral radius per cell (plus ghosts), once per evaluation
  std::vector<double> lam(nc + 2);
  lam[0] = max_abs_eigenvalue(ghost_l, tensor);
  for (int i = 0; i < nc; ++i) lam[i + 1] = max_abs_eigenvalue(state.cell(i), tensor);
  lam[nc + 1] = max_abs_eigenvalue(ghost_r, tensor);

  auto face = [&](std::span<const double> l, std::span<const double> r, double lam_face,
                  std::span<double> out) {
    ec_flux_into(l, r, tensor, out);
    for (int k = 0; k < nk; ++k) out[k] -= 0.5 * omega * lam_face * (r[k] - l[k]);
  };

  std::vector<double> flux(static_cast<size_t>(nc + 1) * nk);
  auto face_span = [&](int f) {
    return std::span<double>(flux.data() + static_cast<size_t>(f) * nk, nk);
  };
  face(ghost_l, state.cell(0), std::max(lam[0], lam[1]), face_span(0));
  for (int f = 1; f < nc; ++f)
    face(state.cell(f - 1), state.cell(f), std::max(lam[f], lam[f + 1]), face_span(f));
  face(state.cell(nc - 1), ghost_r, std::max(lam[nc], lam[nc + 1]), face_span(nc));
  if (bc.kind == BcKind::Periodic) {
    // one flux per periodic face keeps the telescoping sum exact
    std::copy_n(flux.data(), nk, flux.data() + static_cast<size_t>(nc) * nk);
  }

  for (int i = 0; i < nc; ++i) {
    auto out = rate.cell(i);
    auto fl = face_span(i);
    auto fr = face_span(i + 1);
    for (int k = 0; k < nk; ++k) out[k] = -(fr[k] - fl[k]) / state.dx;
  }
}

}  // namespace pcb
