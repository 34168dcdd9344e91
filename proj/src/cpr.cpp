#include "pcb/cpr.hpp"

#include <cmath>
#include <stdexcept>

namespace pcb {

namespace {

void check_shapes(const SolutionField& field, const Mesh1D& mesh, const SBPOperatorSet& ops,
                  const TripleProductTensor& tensor, SolutionField& rate, const char* where) {
  if (field.elements != mesh.elements || field.nodes != ops.node_count() ||
      field.modes != tensor.order() + 1)
    throw std::invalid_argument(std::string(where) + ": inconsistent field/mesh/operator shapes");
  if (rate.elements != field.elements || rate.nodes != field.nodes || rate.modes != field.modes)
    rate = SolutionField(field.elements, field.nodes, field.modes);
}

// Restriction of per-mode nodal data to one boundary row of R.
void restrict_traces(const SBPOperatorSet& ops, const SolutionField& field, int e, int row,
                     std::span<double> out) {
  const int nn = field.nodes;
  const int nk = field.modes;
  for (int k = 0; k < nk; ++k) out[k] = 0.0;
  for (int n = 0; n < nn; ++n) {
    const double rn = ops.r(row, n);
    if (rn == 0.0) continue;
    const auto u = field.node_modes(e, n);
    for (int k = 0; k < nk; ++k) out[k] += rn * u[k];
  }
}

// Face fluxes shared by both neighbors; face f sits between element f-1 and
// element f, with faces 0 and N at the domain boundary.
void compute_face_fluxes(const SolutionField& field, const SBPOperatorSet& ops,
                         const FluxKernel& flux_fn, const BoundaryCondition& bc,
                         std::vector<ModeVector>& face_flux) {
  const int ne = field.elements;
  const int nk = field.modes;
  face_flux.assign(ne + 1, ModeVector(nk));
  ModeVector lt(nk), rt(nk);
  for (int f = 1; f < ne; ++f) {
    restrict_traces(ops, field, f - 1, 1, lt);
    restrict_traces(ops, field, f, 0, rt);
    flux_fn(lt, rt, face_flux[f]);
  }
  switch (bc.kind) {
    case BcKind::Periodic: {
      restrict_traces(ops, field, ne - 1, 1, lt);
      restrict_traces(ops, field, 0, 0, rt);
      flux_fn(lt, rt, face_flux[0]);
      face_flux[ne] = face_flux[0];
      break;
    }
    case BcKind::InflowDirichlet: {
      if (static_cast<int>(bc.left_state.size()) != nk ||
          static_cast<int>(bc.right_state.size()) != nk)
        throw std::invalid_argument("semidiscrete_rhs: inflow state order mismatch");
      restrict_traces(ops, field, 0, 0, rt);
      flux_fn(bc.left_state, rt, face_flux[0]);
      restrict_traces(ops, field, ne - 1, 1, lt);
      flux_fn(lt, bc.right_state, face_flux[ne]);
      break;
    }
    case BcKind::Outflow: {
      restrict_traces(ops, field, 0, 0, rt);
      flux_fn(rt, rt, face_flux[0]);
      restrict_traces(ops, field, ne - 1, 1, lt);
      flux_fn(lt, lt, face_flux[ne]);
      break;
    }
  }
}

}  // namespace

ModeVector boundary_ghost_left(const BoundaryCondition& bc, const SolutionField& field) {
  ModeVector g(field.modes);
  switch (bc.kind) {
    case BcKind::Periodic: {
      const auto u = field.node_modes(field.elements - 1, field.nodes - 1);
      g.assign(u.begin(), u.end());
      break;
    }
    case BcKind::InflowDirichlet:
      g = bc.left_state;
      break;
    case BcKind::Outflow: {
      const auto u = field.node_modes(0, 0);
      g.assign(u.begin(), u.end());
      break;
    }
  }
  return g;
}

ModeVector boundary_ghost_right(const BoundaryCondition& bc, const SolutionField& field) {
  ModeVector g(field.modes);
  switch (bc.kind) {
    case BcKind::Periodic: {
      const auto u = field.node_modes(0, 0);
      g.assign(u.begin(), u.end());
      break;
    }
    case BcKind::InflowDirichlet:
      g = bc.right_state;
      break;
    case BcKind::Outflow: {
      const auto u = field.node_modes(field.elements - 1, field.nodes - 1);
      g.assign(u.begin(), u.end());
      break;
    }
  }
  return g;
}

void semidiscrete_rhs(const SolutionField& field, const Mesh1D& mesh, const SBPOperatorSet& ops,
                      const TripleProductTensor& tensor, const FluxKernel& flux_fn,
                      const BoundaryCondition& bc, SolutionField& rate) {
  check_shapes(field, mesh, ops, tensor, rate, "semidiscrete_rhs");
  const int ne = field.elements;
  const int nn = field.nodes;
  const int nk = field.modes;
  const double scale = 2.0 / mesh.width();

  std::vector<ModeVector> face_flux;
  compute_face_fluxes(field, ops, flux_fn, bc, face_flux);

  // element workspaces
  std::vector<double> q(static_cast<size_t>(nk) * nn);         // q_k(n) = sum <ijk> u_i u_j
  std::vector<double> du(static_cast<size_t>(nk) * nn);        // D u_i per mode
  std::vector<double> un(static_cast<size_t>(nk) * nn);        // nodal values, node-fastest
  std::vector<double> dq(nn), adv(nn);
  std::vector<double> trace_q(2), trace_u(2 * static_cast<size_t>(nk));

  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < nk; ++k)
      for (int n = 0; n < nn; ++n) un[k * nn + n] = field.at(e, n, k);
    for (int k = 0; k < nk; ++k)
      matvec(ops.d, std::span<const double>(&un[k * nn], nn), std::span<double>(&du[k * nn], nn));
    for (int n = 0; n < nn; ++n) {
      const auto u = field.node_modes(e, n);
      for (int k = 0; k < nk; ++k) q[k * nn + n] = tensor_pair_sum(tensor, k, u, u);
    }
    // boundary traces of the modes
    for (int row = 0; row < 2; ++row)
      restrict_traces(ops, field, e, row,
                      std::span<double>(&trace_u[row * static_cast<size_t>(nk)], nk));

    for (int k = 0; k < nk; ++k) {
      matvec(ops.d, std::span<const double>(&q[k * nn], nn), dq);
      // advective part sum_{ij} <ijk> u_j (D u_i)
      for (int n = 0; n < nn; ++n) adv[n] = 0.0;
      for (const auto& p : tensor.pairs(k)) {
        const double* ui = &un[p.i * nn];
        const double* uj = &un[p.j * nn];
        const double* dui = &du[p.i * nn];
        const double* duj = &du[p.j * nn];
        if (p.i == p.j) {
          for (int n = 0; n < nn; ++n) adv[n] += p.value * ui[n] * dui[n];
        } else {
          for (int n = 0; n < nn; ++n)
            adv[n] += p.value * (uj[n] * dui[n] + ui[n] * duj[n]);
        }
      }
      for (int n = 0; n < nn; ++n)
        rate.at(e, n, k) = -scale / 3.0 * (dq[n] + adv[n]);

      // correction: f_num_k - (1/3 R q_k + 1/6 q_k(traces))
      for (int row = 0; row < 2; ++row) {
        double rq = 0.0;
        for (int n = 0; n < nn; ++n) rq += ops.r(row, n) * q[k * nn + n];
        trace_q[row] = rq;
      }
      const std::span<const double> tl(&trace_u[0], nk);
      const std::span<const double> tr(&trace_u[nk], nk);
      const double inner_l = trace_q[0] / 3.0 + tensor_pair_sum(tensor, k, tl, tl) / 6.0;
      const double inner_r = trace_q[1] / 3.0 + tensor_pair_sum(tensor, k, tr, tr) / 6.0;
      const double corr_l = face_flux[e][k] - inner_l;
      const double corr_r = face_flux[e + 1][k] - inner_r;
      // -M^{-1} R^T B corr with B = diag(-1, +1)
      for (int n = 0; n < nn; ++n) {
        const double rl = ops.r(0, n);
        const double rr = ops.r(1, n);
        if (rl != 0.0 || rr != 0.0)
          rate.at(e, n, k) += scale * (rl * corr_l - rr * corr_r) / ops.mnorm[n];
      }
    }
  }
}

void skewsym_rhs_lobatto(const SolutionField& field, const Mesh1D& mesh,
                         const SBPOperatorSet& ops, const TripleProductTensor& tensor,
                         const FluxKernel& flux_fn, const BoundaryCondition& bc, double beta,
                         SolutionField& rate) {
  if (!ops.is_lobatto())
    throw std::invalid_argument("skewsym_rhs_lobatto: needs a nodal set including the boundary");
  check_shapes(field, mesh, ops, tensor, rate, "skewsym_rhs_lobatto");
  const int ne = field.elements;
  const int nn = field.nodes;
  const int nk = field.modes;
  const double scale = 2.0 / mesh.width();

  std::vector<ModeVector> face_flux;
  compute_face_fluxes(field, ops, flux_fn, bc, face_flux);

  std::vector<double> un(static_cast<size_t>(nk) * nn);
  std::vector<double> du(static_cast<size_t>(nk) * nn);
  std::vector<double> agu(static_cast<size_t>(nk) * nn);  // (A_G u) per mode/node
  std::vector<double> dagu(nn);
  ModeVector adu(nk);

  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < nk; ++k)
      for (int n = 0; n < nn; ++n) un[k * nn + n] = field.at(e, n, k);
    for (int k = 0; k < nk; ++k)
      matvec(ops.d, std::span<const double>(&un[k * nn], nn), std::span<double>(&du[k * nn], nn));
    // A_G u: pointwise A(u(n)) u(n) = sum_{ij} <ijk> u_i u_j
    for (int n = 0; n < nn; ++n) {
      const auto u = field.node_modes(e, n);
      for (int k = 0; k < nk; ++k) agu[k * nn + n] = tensor_pair_sum(tensor, k, u, u);
    }
    for (int n = 0; n < nn; ++n) {
      // A(u(n)) (D u)(n): pair sum with distinct arguments
      const auto u = field.node_modes(e, n);
      ModeVector dun(nk);
      for (int k = 0; k < nk; ++k) dun[k] = du[k * nn + n];
      for (int k = 0; k < nk; ++k) adu[k] = tensor_pair_sum(tensor, k, u, dun);
      for (int k = 0; k < nk; ++k) rate.at(e, n, k) = -scale * (1.0 - beta) * adu[k];
    }
    for (int k = 0; k < nk; ++k) {
      matvec(ops.d, std::span<const double>(&agu[k * nn], nn), dagu);
      for (int n = 0; n < nn; ++n) rate.at(e, n, k) -= scale * 0.5 * beta * dagu[n];
      const double corr_l = face_flux[e][k] - 0.5 * agu[k * nn + 0];
      const double corr_r = face_flux[e + 1][k] - 0.5 * agu[k * nn + nn - 1];
      rate.at(e, 0, k) += scale * corr_l / ops.mnorm[0];
      rate.at(e, nn - 1, k) -= scale * corr_r / ops.mnorm[nn - 1];
    }
  }
}

double total_entropy(const SolutionField& field, const Mesh1D& mesh, const SBPOperatorSet& ops) {
  long double acc = 0.0L;
  for (int e = 0; e < field.elements; ++e)
    for (int n = 0; n < field.nodes; ++n) {
      const auto u = field.node_modes(e, n);
      long double s = 0.0L;
      for (double v : u) s += static_cast<long double>(v) * v;
      acc += ops.mnorm[n] * s;
    }
  return static_cast<double>(acc * mesh.width() / 4.0);
}

ModeVector total_mass(const SolutionField& field, const Mesh1D& mesh, const SBPOperatorSet& ops) {
  std::vector<long double> acc(field.modes, 0.0L);
  for (int e = 0; e < field.elements; ++e)
    for (int n = 0; n < field.nodes; ++n) {
      const auto u = field.node_modes(e, n);
      for (int k = 0; k < field.modes; ++k) acc[k] += ops.mnorm[n] * u[k];
    }
  ModeVector mass(field.modes);
  for (int k = 0; k < field.modes; ++k)
    mass[k] = static_cast<double>(acc[k] * mesh.width() / 2.0);
  return mass;
}

double entropy_rate(const SolutionField& field, const SolutionField& rate, const Mesh1D& mesh,
                    const SBPOperatorSet& ops) {
  long double acc = 0.0L;
  for (int e = 0; e < field.elements; ++e)
    for (int n = 0; n < field.nodes; ++n) {
      const auto u = field.node_modes(e, n);
      const auto r = rate.node_modes(e, n);
      long double s = 0.0L;
      for (int k = 0; k < field.modes; ++k) s += static_cast<long double>(u[k]) * r[k];
      acc += ops.mnorm[n] * s;
    }
  return static_cast<double>(acc * mesh.width() / 2.0);
}

void apply_filter(SolutionField& field, const FilterMatrix& filter) {
  if (filter.degree + 1 != field.nodes)
    throw std::invalid_argument("apply_filter: filter degree does not match field");
  const int nn = field.nodes;
  const int nk = field.modes;
  std::vector<double> tmp(nn), out(nn);
  for (int e = 0; e < field.elements; ++e)
    for (int k = 0; k < nk; ++k) {
      for (int n = 0; n < nn; ++n) tmp[n] = field.at(e, n, k);
      matvec(filter.nodal, tmp, out);
      for (int n = 0; n < nn; ++n) field.at(e, n, k) = out[n];
    }
}

}  // namespace pcb
