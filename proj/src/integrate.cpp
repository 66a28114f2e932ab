#include "lattice_flows/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace lattice_flows::integrate {

namespace {

bool all_finite(const Vec& x) {
  for (Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(x(i).real()) || !std::isfinite(x(i).imag())) return false;
  return true;
}

class Stepper {
 public:
  Stepper(const systems::Field& field, const State& s0, bool positive)
      : field_(field), shape_(s0), guard_(positive && s0.is_real()) {}

  Vec eval(const Vec& x) const { return field_(shape_.with_coords(x)); }

  void check(const Vec& x, double t) const {
    if (!all_finite(x)) throw StepFailure("state became non-finite", t);
    if (!guard_) return;
    for (Index i = 0; i < x.size(); ++i)
      if (!(x(i).real() > 0.0))
        throw DomainExit("coordinate " + shape_.coordinate_names()[static_cast<std::size_t>(i)] +
                             " left the positive domain",
                         t, i);
  }

  State make(const Vec& x) const { return shape_.with_coords(x); }

 private:
  const systems::Field& field_;
  State shape_;
  bool guard_;
};

void run_fixed(const Stepper& st, Trajectory& traj, double t_end, double dt) {
  if (!(dt > 0.0)) throw DimensionError("fixed step must be positive");
  const double ratio = t_end / dt;
  Index steps = static_cast<Index>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
    steps = static_cast<Index>(std::ceil(ratio));
  const double h = t_end / static_cast<double>(steps);
  Vec x = traj.states.front().coords();
  for (Index k = 1; k <= steps; ++k) {
    const Vec k1 = st.eval(x);
    const Vec k2 = st.eval(x + 0.5 * h * k1);
    const Vec k3 = st.eval(x + 0.5 * h * k2);
    const Vec k4 = st.eval(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = h * static_cast<double>(k);
    st.check(x, t);
    traj.times.push_back(t);
    traj.states.push_back(st.make(x));
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

void run_adaptive(const Stepper& st, Trajectory& traj, double t_end, const Adaptive& p) {
  if (!(p.rtol > 0.0) && !(p.atol > 0.0)) throw DimensionError("adaptive tolerances must be positive");
  Vec x = traj.states.front().coords();
  double t = 0.0;
  double h = std::min({p.initial_dt, p.max_dt, t_end});
  Vec k1 = st.eval(x);
  while (t < t_end) {
    if (t + h > t_end) h = t_end - t;
    const Vec k2 = st.eval(x + h * (a21 * k1));
    const Vec k3 = st.eval(x + h * (a31 * k1 + a32 * k2));
    const Vec k4 = st.eval(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = st.eval(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 = st.eval(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec y = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec k7 = st.eval(y);
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const double scale = p.atol + p.rtol * std::max(std::abs(x(i)), std::abs(y(i)));
      const double r = std::abs(err(i)) / scale;
      norm += r * r;
    }
    norm = x.size() > 0 ? std::sqrt(norm / static_cast<double>(x.size())) : 0.0;
    if (!std::isfinite(norm)) norm = 1e10;

    const double factor =
        norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    if (norm <= 1.0) {
      t = (t_end - t <= h) ? t_end : t + h;
      x = y;
      k1 = k7;
      st.check(x, t);
      traj.times.push_back(t);
      traj.states.push_back(st.make(x));
      h = std::min(h * factor, p.max_dt);
    } else {
      h *= std::min(factor, 1.0);
      if (h < kMinStep) throw StepFailure("adaptive step fell below 1e-12", t);
    }
  }
}

}  // namespace

Trajectory integrate(const systems::Field& field, const State& s0, double t_end,
                     const StepPolicy& policy, bool positive_domain, std::string system_id) {
  if (!(t_end >= 0.0)) throw DimensionError("t_end must be nonnegative");
  Trajectory traj{std::move(system_id), {0.0}, {s0}, policy};
  if (t_end == 0.0) return traj;
  const Stepper st(field, s0, positive_domain);
  st.check(s0.coords(), 0.0);
  if (const auto* fixed = std::get_if<FixedStep>(&policy))
    run_fixed(st, traj, t_end, fixed->dt);
  else
    run_adaptive(st, traj, t_end, std::get<Adaptive>(policy));
  return traj;
}

Trajectory integrate(const systems::LatticeSystem& system, const State& s0, double t_end,
                     const StepPolicy& policy) {
  require_chart(s0, system.chart, "integrate");
  if (s0.size() != system.dimension)
    throw DimensionError("initial state has " + std::to_string(s0.size()) +
                         " coordinates, system " + system.id + " needs " +
                         std::to_string(system.dimension));
  return integrate(system.field, s0, t_end, policy, system.positive_domain, system.id);
}

std::vector<Drift> drift_report(const Trajectory& traj,
                                const std::vector<systems::NamedInvariant>& invariants) {
  std::vector<Drift> out;
  out.reserve(invariants.size());
  for (const auto& inv : invariants) {
    Drift d{inv.name, inv.evaluate(traj.states.front())};
    const double denom = std::max(std::abs(d.initial), 1e-12);
    for (const auto& s : traj.states)
      d.max_abs_drift = std::max(d.max_abs_drift, std::abs(inv.evaluate(s) - d.initial));
    d.max_rel_drift = d.max_abs_drift / denom;
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

void put_number(std::ostream& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out << buf;
}

}  // namespace

void write_csv(std::ostream& out, const Trajectory& traj,
               const std::vector<systems::NamedInvariant>& invariants) {
  std::vector<std::vector<Complex>> values;
  values.reserve(traj.states.size());
  bool complex_data = false;
  for (const auto& s : traj.states) {
    std::vector<Complex> row(s.coords().begin(), s.coords().end());
    for (const auto& inv : invariants) row.push_back(inv.evaluate(s));
    for (const auto& z : row) complex_data = complex_data || z.imag() != 0.0;
    values.push_back(std::move(row));
  }

  std::vector<std::string> names = traj.states.front().coordinate_names();
  for (const auto& inv : invariants) names.push_back(inv.name);
  out << 't';
  for (const auto& name : names) {
    if (complex_data)
      out << ',' << name << "_re," << name << "_im";
    else
      out << ',' << name;
  }
  out << '\n';

  for (std::size_t r = 0; r < values.size(); ++r) {
    put_number(out, traj.times[r]);
    for (const auto& z : values[r]) {
      out << ',';
      put_number(out, z.real());
      if (complex_data) {
        out << ',';
        put_number(out, z.imag());
      }
    }
    out << '\n';
  }
}

}  // namespace lattice_flows::integrate
