#include "pcb/fd.hpp"

#include <cmath>
#include <stdexcept>

#include "pcb/numerical_flux.hpp"

namespace pcb {

FdOperator fd_sbp_operator(int cells, double x_lo, double x_hi, int interior_order) {
  if (cells < 8) throw std::invalid_argument("fd_sbp_operator: need at least 8 cells");
  if (interior_order != 2 && interior_order != 4)
    throw std::invalid_argument("fd_sbp_operator: interior order must be 2 or 4");
  FdOperator op;
  op.interior_order = interior_order;
  op.grid_points = cells + 1;
  op.h = (x_hi - x_lo) / cells;
  const int n = op.grid_points;
  op.x.resize(n);
  for (int i = 0; i < n; ++i) op.x[i] = x_lo + i * op.h;
  op.d = Matrix(n, n);
  op.mnorm.assign(n, op.h);

  if (interior_order == 2) {
    op.mnorm[0] = op.mnorm[n - 1] = 0.5 * op.h;
    op.d(0, 0) = -1.0;
    op.d(0, 1) = 1.0;
    for (int i = 1; i < n - 1; ++i) {
      op.d(i, i - 1) = -0.5;
      op.d(i, i + 1) = 0.5;
    }
    op.d(n - 1, n - 2) = -1.0;
    op.d(n - 1, n - 1) = 1.0;
  } else {
    const double hb[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
    for (int i = 0; i < 4; ++i) {
      op.mnorm[i] = hb[i] * op.h;
      op.mnorm[n - 1 - i] = hb[i] * op.h;
    }
    const double block[4][6] = {
        {-24.0 / 17.0, 59.0 / 34.0, -4.0 / 17.0, -3.0 / 34.0, 0.0, 0.0},
        {-0.5, 0.0, 0.5, 0.0, 0.0, 0.0},
        {4.0 / 43.0, -59.0 / 86.0, 0.0, 59.0 / 86.0, -4.0 / 43.0, 0.0},
        {3.0 / 98.0, 0.0, -59.0 / 98.0, 0.0, 32.0 / 49.0, -4.0 / 49.0}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) {
        op.d(i, j) = block[i][j];
        op.d(n - 1 - i, n - 1 - j) = -block[i][j];
      }
    for (int i = 4; i < n - 4; ++i) {
      op.d(i, i - 2) = 1.0 / 12.0;
      op.d(i, i - 1) = -2.0 / 3.0;
      op.d(i, i + 1) = 2.0 / 3.0;
      op.d(i, i + 2) = -1.0 / 12.0;
    }
  }
  for (double& v : op.d.a) v /= op.h;
  return op;
}

namespace {

// Banded application of the global derivative; the dense matvec dominates
// runtime on long grids otherwise.
void apply_derivative(const FdOperator& op, const double* u, double* y) {
  const int n = op.grid_points;
  const int brow = (op.interior_order == 4) ? 4 : 1;
  const int bcol = (op.interior_order == 4) ? 6 : 2;
  const int half = (op.interior_order == 4) ? 2 : 1;
  for (int i = 0; i < brow; ++i) {
    double s = 0.0;
    for (int j = 0; j < bcol; ++j) s += op.d(i, j) * u[j];
    y[i] = s;
    s = 0.0;
    for (int j = 0; j < bcol; ++j) s += op.d(n - 1 - i, n - 1 - j) * u[n - 1 - j];
    y[n - 1 - i] = s;
  }
  for (int i = brow; i < n - brow; ++i) {
    double s = 0.0;
    for (int j = i - half; j <= i + half; ++j) s += op.d(i, j) * u[j];
    y[i] = s;
  }
}

}  // namespace

void fd_dissipation_apply(const FdScheme& scheme, std::span<const double> lambda_face,
                          std::span<const double> u, std::span<double> y) {
  // Undivided difference stencils; the norm inverse applied by the caller
  // carries the 1/h, so these blocks give the first- and third-order
  // vanishing viscosities c2 lambda h u_xx and c4 h^3 u_xxxx.
  const int n = static_cast<int>(u.size());
  if (scheme.dissipation == FdDissipation::SecondAndFourth && scheme.c2 != 0.0) {
    for (int f = 0; f + 1 < n; ++f) {
      const double d1 = u[f + 1] - u[f];
      const double w = scheme.c2 * lambda_face[f] * d1;
      y[f] += w;
      y[f + 1] -= w;
    }
  }
  if (scheme.c4 != 0.0) {
    for (int m = 1; m + 1 < n; ++m) {
      const double d2 = u[m + 1] - 2.0 * u[m] + u[m - 1];
      const double w = scheme.c4 * d2;
      y[m - 1] -= w;
      y[m] += 2.0 * w;
      y[m + 1] -= w;
    }
  }
}

void fd_rhs(const FDState& state, const FdOperator& op, const TripleProductTensor& tensor,
            const FdScheme& scheme, const BoundaryCondition& bc, FDState& rate) {
  const int n = op.grid_points;
  const int nk = tensor.order() + 1;
  if (state.points != n || state.modes != nk)
    throw std::invalid_argument("fd_rhs: state does not match operator/tensor");
  if (rate.points != n || rate.modes != nk) rate = FDState(n, nk);

  constexpr double beta = 2.0 / 3.0;

  // nodal A_G u and spectral radii
  std::vector<double> agu(static_cast<size_t>(nk) * n);
  std::vector<double> lam(n);
  for (int i = 0; i < n; ++i) {
    const auto u = state.node(i);
    for (int k = 0; k < nk; ++k) agu[k * static_cast<size_t>(n) + i] = tensor_pair_sum(tensor, k, u, u);
    lam[i] = max_abs_eigenvalue(u, tensor);
  }
  std::vector<double> lam_face(n - 1);
  for (int f = 0; f + 1 < n; ++f) lam_face[f] = std::max(lam[f], lam[f + 1]);

  // volume terms: -(beta/2) D (A_G u) - (1-beta) A_G (D u)
  std::vector<double> un(n), dun(static_cast<size_t>(nk) * n), tmp(n);
  for (int k = 0; k < nk; ++k) {
    for (int i = 0; i < n; ++i) un[i] = state.value[static_cast<size_t>(i) * nk + k];
    apply_derivative(op, un.data(), &dun[k * static_cast<size_t>(n)]);
  }
  for (int k = 0; k < nk; ++k) {
    apply_derivative(op, &agu[k * static_cast<size_t>(n)], tmp.data());
    for (int i = 0; i < n; ++i) rate.value[static_cast<size_t>(i) * nk + k] = -0.5 * beta * tmp[i];
  }
  ModeVector dui(nk), adu(nk);
  for (int i = 0; i < n; ++i) {
    const auto u = state.node(i);
    for (int k = 0; k < nk; ++k) dui[k] = dun[k * static_cast<size_t>(n) + i];
    for (int k = 0; k < nk; ++k) adu[k] = tensor_pair_sum(tensor, k, u, dui);
    auto out = rate.node(i);
    for (int k = 0; k < nk; ++k) out[k] -= (1.0 - beta) * adu[k];
  }

  // SAT penalties: weak boundary data through the dissipative numerical flux
  ModeVector ghost_l(nk), ghost_r(nk), fnum(nk);
  switch (bc.kind) {
    case BcKind::Periodic:
      throw std::invalid_argument("fd_rhs: periodic boundaries are not supported on the global grid");
    case BcKind::InflowDirichlet:
      ghost_l = bc.left_state;
      ghost_r = bc.right_state;
      break;
    case BcKind::Outflow: {
      auto l = state.node(0);
      auto r = state.node(n - 1);
      ghost_l.assign(l.begin(), l.end());
      ghost_r.assign(r.begin(), r.end());
      break;
    }
  }
  llf_es_flux_into(ghost_l, state.node(0), tensor, 1.0, fnum);
  for (int k = 0; k < nk; ++k) {
    const double corr = fnum[k] - 0.5 * agu[k * static_cast<size_t>(n) + 0];
    rate.value[k] += corr / op.mnorm[0];
  }
  llf_es_flux_into(state.node(n - 1), ghost_r, tensor, 1.0, fnum);
  for (int k = 0; k < nk; ++k) {
    const double corr = fnum[k] - 0.5 * agu[k * static_cast<size_t>(n) + n - 1];
    rate.value[static_cast<size_t>(n - 1) * nk + k] -= corr / op.mnorm[n - 1];
  }

  // artificial dissipation, M^{-1}-weighted
  std::vector<double> ad(n);
  for (int k = 0; k < nk; ++k) {
    for (int i = 0; i < n; ++i) un[i] = state.value[static_cast<size_t>(i) * nk + k];
    std::fill(ad.begin(), ad.end(), 0.0);
    fd_dissipation_apply(scheme, lam_face, un, ad);
    for (int i = 0; i < n; ++i)
      rate.value[static_cast<size_t>(i) * nk + k] += ad[i] / op.mnorm[i];
  }
}

}  // namespace pcb
