#pragma once

#include <vector>

#include "pcb/galerkin.hpp"

namespace pcb {

/// One detected discontinuity in a sampled profile with its jump-condition
/// diagnostics: least-squares speed s from s [u_k] = [f_k] over the modes,
/// the worst per-mode residual, and the entropy condition [F] <= s [U].
struct DiscontinuityAudit {
  double location = 0.0;
  double speed = 0.0;
  double rh_residual = 0.0;
  double entropy_jump = 0.0;  // [F] - s [U]; admissible when <= tol
  bool entropy_admissible = false;
  ModeVector left;
  ModeVector right;
};

/// Scans a sampled profile (x ascending, one mode vector per sample) for
/// jumps: a neighbor jump in u_0 counts when it exceeds ten times the median
/// neighbor jump. Consecutive flagged gaps merge into one discontinuity;
/// plateau states are read a couple of samples away from the jump. A smooth
/// profile yields an empty list.
std::vector<DiscontinuityAudit> rankine_hugoniot_audit(const std::vector<double>& x,
                                                       const std::vector<ModeVector>& profile,
                                                       const TripleProductTensor& tensor,
                                                       double entropy_tol = 1e-8);

}  // namespace pcb
