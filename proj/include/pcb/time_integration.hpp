#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace pcb {

enum class StepperKind { SSPRK33, RK4 };

/// rate <- L(state); rate is pre-sized to match state.
using RhsFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// Explicit fixed-step Runge-Kutta stepper over a flat state vector.
/// Stage storage lives here so repeated steps do not allocate.
class TimeIntegrator {
 public:
  TimeIntegrator(StepperKind kind, double dt) : kind_(kind), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeIntegrator: dt must be positive");
  }

  StepperKind kind() const { return kind_; }
  double dt() const { return dt_; }

  void step(std::vector<double>& u, const RhsFn& rhs) {
    switch (kind_) {
      case StepperKind::SSPRK33:
        ssprk33(u, rhs);
        return;
      case StepperKind::RK4:
        rk4(u, rhs);
        return;
    }
    throw std::logic_error("TimeIntegrator: unknown stepper");
  }

 private:
  void resize(size_t n) {
    k_.resize(n);
    s1_.resize(n);
    s2_.resize(n);
    acc_.resize(n);
  }

  // u1 = u + dt L(u); u2 = 3/4 u + 1/4 (u1 + dt L(u1));
  // u  = 1/3 u + 2/3 (u2 + dt L(u2)).
  void ssprk33(std::vector<double>& u, const RhsFn& rhs) {
    const size_t n = u.size();
    resize(n);
    rhs(u, k_);
    for (size_t i = 0; i < n; ++i) s1_[i] = u[i] + dt_ * k_[i];
    rhs(s1_, k_);
    for (size_t i = 0; i < n; ++i) s2_[i] = 0.75 * u[i] + 0.25 * (s1_[i] + dt_ * k_[i]);
    rhs(s2_, k_);
    for (size_t i = 0; i < n; ++i)
      u[i] = u[i] / 3.0 + (2.0 / 3.0) * (s2_[i] + dt_ * k_[i]);
  }

  void rk4(std::vector<double>& u, const RhsFn& rhs) {
    const size_t n = u.size();
    resize(n);
    rhs(u, k_);
    for (size_t i = 0; i < n; ++i) {
      acc_[i] = k_[i];
      s1_[i] = u[i] + 0.5 * dt_ * k_[i];
    }
    rhs(s1_, k_);
    for (size_t i = 0; i < n; ++i) {
      acc_[i] += 2.0 * k_[i];
      s2_[i] = u[i] + 0.5 * dt_ * k_[i];
    }
    rhs(s2_, k_);
    for (size_t i = 0; i < n; ++i) {
      acc_[i] += 2.0 * k_[i];
      s1_[i] = u[i] + dt_ * k_[i];
    }
    rhs(s1_, k_);
    for (size_t i = 0; i < n; ++i) u[i] += dt_ / 6.0 * (acc_[i] + k_[i]);
  }

  StepperKind kind_;
  double dt_;
  std::vector<double> k_, s1_, s2_, acc_;
};

}  // namespace pcb
