#include "lattice_flows/state.hpp"

#include <array>
#include <utility>

namespace lattice_flows {

namespace {

constexpr std::array<std::pair<Chart, std::string_view>, 5> kChartNames{{
    {Chart::qp, "qp"},
    {Chart::flaschka_ab, "flaschka_ab"},
    {Chart::volterra_u, "volterra_u"},
    {Chart::volterra_v, "volterra_v"},
    {Chart::c_vars, "c_vars"},
}};

}  // namespace

std::string_view chart_name(Chart chart) noexcept {
  for (const auto& [c, name] : kChartNames)
    if (c == chart) return name;
  return "unknown";
}

Chart chart_from_name(std::string_view name) {
  for (const auto& [c, n] : kChartNames)
    if (n == name) return c;
  throw ChartMismatch("unknown chart: " + std::string(name));
}

State::State(Chart chart, Vec coords, Index split)
    : chart_(chart), coords_(std::move(coords)), split_(split) {
  if (split_ < 0 || split_ > coords_.size())
    throw DimensionError("state split index out of range");
  if (chart_ == Chart::qp && 2 * split_ != coords_.size())
    throw DimensionError("qp state needs as many momenta as positions");
  if (chart_ != Chart::qp && chart_ != Chart::flaschka_ab) split_ = coords_.size();
}

State State::qp(const Vec& q, const Vec& p) {
  if (q.size() != p.size()) throw DimensionError("q and p lengths differ");
  Vec x(q.size() + p.size());
  x << q, p;
  return State(Chart::qp, std::move(x), q.size());
}

State State::ab(const Vec& a, const Vec& b) {
  Vec x(a.size() + b.size());
  x << a, b;
  return State(Chart::flaschka_ab, std::move(x), a.size());
}

State State::volterra_u(Vec u) { return State(Chart::volterra_u, std::move(u)); }
State State::volterra_v(Vec v) { return State(Chart::volterra_v, std::move(v)); }
State State::c_vars(Vec c) { return State(Chart::c_vars, std::move(c)); }

State State::with_coords(Vec coords) const {
  if (coords.size() != coords_.size()) throw DimensionError("coordinate count changed");
  return State(chart_, std::move(coords), split_);
}

std::vector<std::string> State::coordinate_names() const {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(size()));
  auto group = [&](std::string_view prefix, Index count) {
    for (Index i = 1; i <= count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  };
  switch (chart_) {
    case Chart::qp:
      group("q", split_);
      group("p", split_);
      break;
    case Chart::flaschka_ab:
      group("a", split_);
      group("b", size() - split_);
      break;
    case Chart::volterra_u:
      group("u", size());
      break;
    case Chart::volterra_v:
      group("v", size());
      break;
    case Chart::c_vars:
      group("c", size());
      break;
  }
  return names;
}

bool State::is_real(double tol) const {
  return coords_.size() == 0 || coords_.imag().cwiseAbs().maxCoeff() <= tol;
}

void require_chart(const State& s, Chart expected, std::string_view op) {
  if (s.chart() != expected) {
    throw ChartMismatch(std::string(op) + " expects chart " + std::string(chart_name(expected)) +
                        ", got " + std::string(chart_name(s.chart())));
  }
}

void require_positive(const State& s, std::string_view op) {
  for (Index i = 0; i < s.size(); ++i) {
    if (s[i].imag() != 0.0 || !(s[i].real() > 0.0))
      throw DomainError(std::string(op) + " needs strictly positive real coordinates");
  }
}

Vec to_complex(const RealVec& x) { return x.cast<Complex>(); }

}  // namespace lattice_flows
