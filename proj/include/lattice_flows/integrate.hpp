#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/state.hpp"
#include "lattice_flows/systems.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace lattice_flows::integrate {

struct FixedStep {
  double dt = 1e-3;
};

/// Dormand-Prince 5(4) with error per component scaled by atol + rtol * |y|.
struct Adaptive {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_dt = 1e-3;
  double max_dt = std::numeric_limits<double>::infinity();
};

using StepPolicy = std::variant<FixedStep, Adaptive>;

constexpr double kMinStep = 1e-12;

struct Trajectory {
  std::string system_id;
  std::vector<double> times;
  std::vector<State> states;
  StepPolicy policy;
};

/// Integrates ds/dt = field(s) from t = 0 to t_end, sampling every accepted step.
/// If positive_domain and s0 is real, a coordinate whose real part reaches 0 raises
/// DomainExit. Adaptive steps below kMinStep, or non-finite values, raise StepFailure.
Trajectory integrate(const systems::Field& field, const State& s0, double t_end,
                     const StepPolicy& policy, bool positive_domain = false,
                     std::string system_id = {});

Trajectory integrate(const systems::LatticeSystem& system, const State& s0, double t_end,
                     const StepPolicy& policy);

struct Drift {
  std::string name;
  Complex initial;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
};

/// Drift against the value at t = 0; relative drift divides by max(|initial|, 1e-12).
std::vector<Drift> drift_report(const Trajectory& traj,
                                const std::vector<systems::NamedInvariant>& invariants);

/// CSV with header t,<coordinates>,<invariants>, 17 significant digits. If any value is
/// complex every column after t is written as <name>_re,<name>_im.
void write_csv(std::ostream& out, const Trajectory& traj,
               const std::vector<systems::NamedInvariant>& invariants);

}  // namespace lattice_flows::integrate
