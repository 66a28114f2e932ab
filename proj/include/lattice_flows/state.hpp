#pragma once

#include "lattice_flows/core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lattice_flows {

// Coordinate charts. Indices are 0-based internally: the paper's coordinate x_i
// (1-based) lives at position i - 1 of its group.
enum class Chart { qp, flaschka_ab, volterra_u, volterra_v, c_vars };

std::string_view chart_name(Chart chart) noexcept;
Chart chart_from_name(std::string_view name);

/// A point in one chart. For qp the coordinates are (q_1..q_n, p_1..p_n); for
/// flaschka_ab they are (a_1..a_N, b_1..b_M). `split` is the size of the first group.
class State {
 public:
  State(Chart chart, Vec coords, Index split = 0);

  static State qp(const Vec& q, const Vec& p);
  static State ab(const Vec& a, const Vec& b);
  static State volterra_u(Vec u);
  static State volterra_v(Vec v);
  static State c_vars(Vec c);

  Chart chart() const noexcept { return chart_; }
  Index size() const noexcept { return coords_.size(); }
  Index split() const noexcept { return split_; }
  const Vec& coords() const noexcept { return coords_; }
  Vec& coords() noexcept { return coords_; }
  Complex operator[](Index i) const { return coords_(i); }

  // First and second coordinate groups (q and p, or a and b).
  auto head() const { return coords_.head(split_); }
  auto tail() const { return coords_.tail(coords_.size() - split_); }

  /// Same chart and split, new coordinates (used for perturbations and integration).
  State with_coords(Vec coords) const;

  /// Names in the paper's 1-based convention, e.g. a1, a2, b1 or v1..v7.
  std::vector<std::string> coordinate_names() const;

  bool is_real(double tol = 0.0) const;

 private:
  Chart chart_;
  Vec coords_;
  Index split_;
};

/// Throws ChartMismatch unless s is in `expected`.
void require_chart(const State& s, Chart expected, std::string_view op);

/// Throws DomainError unless every coordinate is real and strictly positive.
void require_positive(const State& s, std::string_view op);

Vec to_complex(const RealVec& x);

}  // namespace lattice_flows
