#include "pcb/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcb {

namespace {

struct JumpGroup {
  int first;  // first flagged gap index
  int last;   // last flagged gap index
  int peak;   // gap with the largest |[u_0]|
};

}  // namespace

std::vector<DiscontinuityAudit> rankine_hugoniot_audit(const std::vector<double>& x,
                                                       const std::vector<ModeVector>& profile,
                                                       const TripleProductTensor& tensor,
                                                       double entropy_tol) {
  const int n = static_cast<int>(profile.size());
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("rankine_hugoniot_audit: grid/profile size mismatch");
  std::vector<DiscontinuityAudit> out;
  if (n < 5) return out;

  std::vector<double> jumps(n - 1);
  double scale = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    jumps[i] = std::abs(profile[i + 1][0] - profile[i][0]);
    scale = std::max(scale, std::abs(profile[i][0]));
  }
  std::vector<double> sorted = jumps;
  std::nth_element(sorted.begin(), sorted.begin() + (n - 1) / 2, sorted.end());
  const double median = sorted[(n - 1) / 2];
  // floor guards the exact piecewise-constant case where the median vanishes
  const double threshold = std::max(10.0 * median, 1e-12 * std::max(scale, 1.0));

  std::vector<JumpGroup> groups;
  int i = 0;
  while (i < n - 1) {
    if (jumps[i] <= threshold) {
      ++i;
      continue;
    }
    JumpGroup g{i, i, i};
    while (g.last + 1 < n - 1 && jumps[g.last + 1] > threshold) {
      ++g.last;
      if (jumps[g.last] > jumps[g.peak]) g.peak = g.last;
    }
    groups.push_back(g);
    i = g.last + 1;
  }

  // plateau states averaged over windows clear of the jump and of the
  // neighboring discontinuities; oscillatory profiles corrupt single-sample
  // reads, so wide windows are preferred where room permits
  const int window = std::clamp(n / 64, 2, 16);
  const int nk = static_cast<int>(profile[0].size());
  auto plateau = [&](int lo, int hi) {
    lo = std::max(0, lo);
    hi = std::min(n - 1, hi);
    if (hi < lo) hi = lo;
    ModeVector mean(nk, 0.0);
    for (int s = lo; s <= hi; ++s)
      for (int k = 0; k < nk; ++k) mean[k] += profile[s][k];
    for (int k = 0; k < nk; ++k) mean[k] /= (hi - lo + 1);
    return mean;
  };

  for (size_t g = 0; g < groups.size(); ++g) {
    const JumpGroup& grp = groups[g];
    // sample indices clear of this jump
    int left_hi = grp.first - 2;
    int right_lo = grp.last + 3;
    // stay clear of the neighboring groups as well
    int left_lo = left_hi - (window - 1);
    if (g > 0) left_lo = std::max(left_lo, groups[g - 1].last + 3);
    int right_hi = right_lo + (window - 1);
    if (g + 1 < groups.size()) right_hi = std::min(right_hi, groups[g + 1].first - 2);

    DiscontinuityAudit audit;
    audit.location = 0.5 * (x[grp.peak] + x[grp.peak + 1]);
    audit.left = plateau(left_lo, left_hi);
    audit.right = plateau(right_lo, right_hi);
    const ModeVector fl = flux(audit.left, tensor);
    const ModeVector fr = flux(audit.right, tensor);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < nk; ++k) {
      const double du = audit.right[k] - audit.left[k];
      const double df = fr[k] - fl[k];
      num += du * df;
      den += du * du;
    }
    audit.speed = (den > 0.0) ? num / den : 0.0;
    double res = 0.0;
    for (int k = 0; k < nk; ++k) {
      const double du = audit.right[k] - audit.left[k];
      const double df = fr[k] - fl[k];
      res = std::max(res, std::abs(audit.speed * du - df));
    }
    audit.rh_residual = res;
    const double dU = entropy(audit.right) - entropy(audit.left);
    const double dF = entropy_flux(audit.right, tensor) - entropy_flux(audit.left, tensor);
    audit.entropy_jump = dF - audit.speed * dU;
    audit.entropy_admissible = audit.entropy_jump <= entropy_tol;
    out.push_back(std::move(audit));
  }
  return out;
}

}  // namespace pcb
