#include "lattice_flows/poisson.hpp"

#include "lattice_flows/lax.hpp"
#include "lattice_flows/systems.hpp"

#include <array>
#include <string>

namespace lattice_flows::poisson {

namespace {

constexpr std::array<std::pair<StructureName, std::string_view>, 5> kNames{{
    {StructureName::c_bracket, "c-bracket"},
    {StructureName::pi1_v, "pi1-v"},
    {StructureName::pi3_v, "pi3-v"},
    {StructureName::pi1_ab, "pi1-ab"},
    {StructureName::pi3_ab, "pi3-ab"},
}};

// Upper-triangle writer with 1-based indices; mirror() produces the antisymmetric matrix.
struct Upper {
  Mat M;
  explicit Upper(Index n) : M(Mat::Zero(n, n)) {}
  void set(Index i, Index j, Complex value) { M(i - 1, j - 1) = value; }
  Mat mirror() const { return M - M.transpose(); }
};

Mat c_bracket_matrix(const State& s) {
  require_chart(s, Chart::c_vars, "c-bracket");
  const Index r = s.size();
  if (r < 4) throw UnsupportedDimension("c-bracket needs at least 4 c's");
  Upper P(r);
  for (Index j = 1; j <= r - 2; ++j) P.set(j, j + 1, 1.0);
  P.set(r - 2, r, 1.0);
  return P.mirror();
}

Mat pi1_v_matrix(const State& v) {
  require_chart(v, Chart::volterra_v, "pi1-v");
  const Index n = v.size();
  if (n % 2 == 0) throw ParityError("pi1-v is defined for odd n only");
  if (n < 5) throw UnsupportedDimension("pi1-v needs n >= 5");
  auto sign = [](Index e) { return e % 2 == 0 ? 1.0 : -1.0; };
  Upper P(n);
  for (Index i = 1; i <= n - 2; ++i) {
    for (Index j = i + 1; j <= n - 2; ++j)
      P.set(i, j, sign(i + j - 1) * tau(v, i / 2 + 1, (j + 1) / 2));
    const Complex edge = 0.5 * sign(i + n) * tau(v, i / 2 + 1, n / 2);
    P.set(i, n - 1, edge);
    P.set(i, n, edge);
  }
  P.set(n - 1, n, 0.5 * (v[n - 1] - v[n - 2]));
  return P.mirror();
}

Mat pi3_v_matrix(const State& v) {
  require_chart(v, Chart::volterra_v, "pi3-v");
  const Index n = v.size();
  if (n < 4) throw UnsupportedDimension("pi3-v needs n >= 4");
  auto V = [&](Index k) { return v[k - 1]; };
  Upper P(n);
  P.set(1, 2, V(1) * V(2) * (2.0 * V(1) + V(2)));
  for (Index i = 2; i <= n - 3; ++i) P.set(i, i + 1, V(i) * V(i + 1) * (V(i) + V(i + 1)));
  P.set(n - 2, n - 1, V(n - 2) * V(n - 1) * (2.0 * V(n - 1) + V(n - 2)));
  P.set(n - 1, n, 2.0 * V(n - 1) * V(n) * (V(n) - V(n - 1)));
  for (Index i = 1; i <= n - 3; ++i) P.set(i, i + 2, V(i) * V(i + 1) * V(i + 2));
  P.set(n - 2, n, V(n - 2) * V(n) * (V(n - 2) + 2.0 * V(n)));
  P.set(n - 3, n, V(n - 3) * V(n - 2) * V(n));
  return P.mirror();
}

Mat pi1_ab_matrix(const State& s) {
  const Index m = systems::ab_order(s);
  auto A = [&](Index i) { return s[i - 1]; };
  auto ia = [](Index i) { return i; };
  auto ib = [m](Index i) { return m + 1 + i; };
  Upper P(2 * m + 1);
  P.M(ia(1) - 1, ib(1) - 1) += A(1);
  for (Index i = 2; i <= m; ++i) P.M(ia(i) - 1, ib(i) - 1) += 0.5 * A(i);
  for (Index i = 1; i <= m - 1; ++i) P.M(ia(i + 1) - 1, ib(i) - 1) += -0.5 * A(i + 1);
  P.M(ia(m + 1) - 1, ib(m) - 1) += -A(m + 1);
  return P.mirror();
}

Mat pi3_ab_matrix(const State& s) {
  const Index m = systems::ab_order(s);
  if (m < 2) throw UnsupportedDimension("pi3-ab needs m >= 2");
  auto A = [&](Index i) { return s[i - 1]; };
  auto B = [&](Index i) { return s[m + i]; };
  auto ia = [](Index i) { return i; };
  auto ib = [m](Index i) { return m + 1 + i; };
  Upper P(2 * m + 1);
  for (Index i = 1; i <= m; ++i) {
    const double coef = (i == 1 || i == m) ? 2.0 : 1.0;
    P.set(ia(i), ia(i + 1), coef * A(i) * A(i + 1) * B(i));
  }
  for (Index i = 1; i <= m - 1; ++i)
    P.set(ib(i), ib(i + 1), 2.0 * A(i + 1) * A(i + 1) * (B(i) + B(i + 1)));
  P.set(ia(1), ib(1), 2.0 * A(1) * (A(1) * A(1) + B(1) * B(1)));
  for (Index i = 2; i <= m - 1; ++i) P.set(ia(i), ib(i), A(i) * (A(i) * A(i) + B(i) * B(i)));
  P.set(ia(m), ib(m), A(m) * (A(m) * A(m) + B(m) * B(m) - A(m + 1) * A(m + 1)));
  P.set(ia(1), ib(2), 2.0 * A(2) * A(2) * A(1));
  for (Index i = 2; i <= m - 1; ++i) P.set(ia(i), ib(i + 1), A(i + 1) * A(i + 1) * A(i));
  P.set(ia(2), ib(1), -A(2) * (A(2) * A(2) + B(1) * B(1) - A(1) * A(1)));
  for (Index i = 2; i <= m - 1; ++i)
    P.set(ia(i + 1), ib(i), -A(i + 1) * (A(i + 1) * A(i + 1) + B(i) * B(i)));
  P.set(ia(m + 1), ib(m), -2.0 * A(m + 1) * (A(m + 1) * A(m + 1) + B(m) * B(m)));
  for (Index i = 1; i <= m - 2; ++i) P.set(ia(i + 2), ib(i), -A(i + 1) * A(i + 1) * A(i + 2));
  P.set(ia(m + 1), ib(m - 1), -2.0 * A(m) * A(m) * A(m + 1));
  return P.mirror();
}

Chart structure_chart(StructureName name) {
  switch (name) {
    case StructureName::c_bracket: return Chart::c_vars;
    case StructureName::pi1_v:
    case StructureName::pi3_v: return Chart::volterra_v;
    case StructureName::pi1_ab:
    case StructureName::pi3_ab: return Chart::flaschka_ab;
  }
  return Chart::qp;
}

}  // namespace

std::string_view structure_name(StructureName name) noexcept {
  for (const auto& [n, text] : kNames)
    if (n == name) return text;
  return "unknown";
}

StructureName structure_from_name(std::string_view name) {
  for (const auto& [n, text] : kNames)
    if (text == name) return n;
  throw ChartMismatch("unknown Poisson structure: " + std::string(name));
}

Complex tau(const State& v, Index i, Index j) {
  if (i > j) return -tau(v, j, i);
  auto V = [&](Index k) { return v[k - 1]; };
  Complex t = V(2 * i - 1);
  for (Index k = i; k <= j - 1; ++k) t *= V(2 * k + 1) / V(2 * k);
  return t;
}

Mat poisson_matrix(StructureName name, const State& s) {
  switch (name) {
    case StructureName::c_bracket: return c_bracket_matrix(s);
    case StructureName::pi1_v: return pi1_v_matrix(s);
    case StructureName::pi3_v: return pi3_v_matrix(s);
    case StructureName::pi1_ab: return pi1_ab_matrix(s);
    case StructureName::pi3_ab: return pi3_ab_matrix(s);
  }
  return {};
}

PoissonStructure structure(StructureName name) {
  PoissonStructure ps{name, structure_chart(name),
                      [name](const State& s) { return poisson_matrix(name, s); }, 0, {}};
  switch (name) {
    case StructureName::c_bracket: ps.degree = 0; break;
    case StructureName::pi1_v:
      ps.degree = -1;
      ps.casimirs.push_back({"F", lax::casimir_F, lax::casimir_F_gradient});
      break;
    case StructureName::pi3_v: ps.degree = 3; break;
    case StructureName::pi1_ab:
      ps.degree = 1;
      ps.casimirs.push_back({"C", lax::casimir_C, lax::casimir_C_gradient});
      break;
    case StructureName::pi3_ab: ps.degree = 3; break;
  }
  return ps;
}

Vec fd_gradient(const ScalarFunction& f, const State& s, double fd_step) {
  Vec g(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    Vec plus = s.coords();
    Vec minus = s.coords();
    plus(i) += fd_step;
    minus(i) -= fd_step;
    g(i) = (f(s.with_coords(plus)) - f(s.with_coords(minus))) / (2.0 * fd_step);
  }
  return g;
}

Complex bracket_eval(StructureName name, const ScalarFunction& f, const ScalarFunction& g,
                     const State& s, double fd_step) {
  const Vec gf = fd_gradient(f, s, fd_step);
  const Vec gg = fd_gradient(g, s, fd_step);
  return (gf.transpose() * poisson_matrix(name, s) * gg).value();
}

Complex bracket_eval(StructureName name, const Gradient& grad_f, const Gradient& grad_g,
                     const State& s) {
  return (grad_f(s).transpose() * poisson_matrix(name, s) * grad_g(s)).value();
}

double jacobi_residual(const Tensor& P, const State& s, double fd_step, Differencing scheme) {
  const Index n = s.size();
  const Mat at = P(s);
  // Complex steps need P real at real points; automatic falls back to central otherwise.
  const bool complex_step =
      scheme == Differencing::complex_step ||
      (scheme == Differencing::automatic && s.is_real() &&
       (at.size() == 0 || at.imag().cwiseAbs().maxCoeff() == 0.0));
  std::vector<Mat> partial;
  partial.reserve(static_cast<std::size_t>(n));
  for (Index l = 0; l < n; ++l) {
    if (complex_step) {
      Vec probe = s.coords();
      probe(l) += kI * kComplexStep;
      partial.push_back((P(s.with_coords(probe)).imag() / kComplexStep).cast<Complex>());
      continue;
    }
    Vec plus = s.coords();
    Vec minus = s.coords();
    plus(l) += fd_step;
    minus(l) -= fd_step;
    partial.push_back((P(s.with_coords(plus)) - P(s.with_coords(minus))) / (2.0 * fd_step));
  }
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      for (Index k = j + 1; k < n; ++k) {
        Complex sum = 0.0;
        for (Index l = 0; l < n; ++l) {
          const Mat& d = partial[static_cast<std::size_t>(l)];
          sum += at(i, l) * d(j, k) + at(j, l) * d(k, i) + at(k, l) * d(i, j);
        }
        worst = std::max(worst, std::abs(sum));
      }
    }
  }
  return worst;
}

double jacobi_residual(StructureName name, const State& s, double fd_step, Differencing scheme) {
  return jacobi_residual([name](const State& x) { return poisson_matrix(name, x); }, s, fd_step,
                         scheme);
}

double compatibility_residual(StructureName first, StructureName second, double lambda,
                              const State& s, double fd_step, Differencing scheme) {
  if (structure_chart(first) != structure_chart(second))
    throw ChartMismatch("compatibility needs two structures on the same chart");
  return jacobi_residual(
      [=](const State& x) {
        return Mat(poisson_matrix(first, x) + lambda * poisson_matrix(second, x));
      },
      s, fd_step, scheme);
}

double casimir_residual(StructureName name, const Gradient& grad_c, const State& s) {
  return (poisson_matrix(name, s) * grad_c(s)).norm();
}

namespace {

Vec invariant_gradient(lax::LaxKind kind, const State& s, int order, GradientMode mode) {
  if (mode == GradientMode::analytic) return lax::trace_gradient(kind, s, order);
  return fd_gradient([=](const State& x) { return lax::trace_invariant(kind, x, order); }, s,
                     kGradientStep);
}

}  // namespace

double lenard_residual(const State& s, GradientMode mode) {
  switch (s.chart()) {
    case Chart::volterra_v: {
      if (s.size() % 2 == 0) throw ParityError("Lenard relation in v needs odd n");
      const Vec lhs = poisson_matrix(StructureName::pi3_v, s) *
                      invariant_gradient(lax::LaxKind::vd, s, 4, mode);
      const Vec rhs = poisson_matrix(StructureName::pi1_v, s) *
                      invariant_gradient(lax::LaxKind::vd, s, 8, mode);
      return (lhs - rhs).norm();
    }
    case Chart::flaschka_ab: {
      const Vec lhs = poisson_matrix(StructureName::pi3_ab, s) *
                      invariant_gradient(lax::LaxKind::ab, s, 2, mode);
      const Vec rhs = poisson_matrix(StructureName::pi1_ab, s) *
                      invariant_gradient(lax::LaxKind::ab, s, 4, mode);
      return (lhs - kAbLenardScale * rhs).norm();
    }
    default:
      throw ChartMismatch("lenard_residual is defined on the v and ab charts");
  }
}

double lenard_residual_unscaled_ab(const State& s) {
  const Vec lhs = poisson_matrix(StructureName::pi3_ab, s) * lax::trace_gradient(lax::LaxKind::ab, s, 2);
  const Vec rhs = poisson_matrix(StructureName::pi1_ab, s) * lax::trace_gradient(lax::LaxKind::ab, s, 4);
  return (lhs - rhs).norm();
}

double hamiltonian_flow_check(StructureName name, const Gradient& grad_h,
                              const std::function<Vec(const State&)>& field, const State& s) {
  return (poisson_matrix(name, s) * grad_h(s) - field(s)).norm();
}

}  // namespace lattice_flows::poisson
