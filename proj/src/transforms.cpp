#include "lattice_flows/transforms.hpp"

#include <cmath>
#include <string>

namespace lattice_flows::transforms {

namespace {

// Principal square root of a product; real negative products are outside the domain.
Complex root_of_product(Complex x, Complex y, std::string_view op) {
  const Complex p = x * y;
  if (p.imag() == 0.0 && p.real() < 0.0)
    throw DomainError(std::string(op) + ": negative product under a square root");
  return std::sqrt(p);
}

}  // namespace

State henon_map(const State& u) {
  require_chart(u, Chart::volterra_u, "henon_map");
  const Index n = u.size();
  if (n < 1) throw UnsupportedDimension("henon_map needs n >= 1");
  auto U = [&](Index k) { return (k >= 1 && k <= n) ? u[k - 1] : Complex{}; };
  const Index count_a = n / 2;
  const Index count_b = (n + 2) / 2;
  Vec a(count_a);
  Vec b(count_b);
  for (Index i = 1; i <= count_a; ++i) a(i - 1) = -0.5 * root_of_product(U(2 * i), U(2 * i - 1), "henon_map");
  for (Index i = 1; i <= count_b; ++i) b(i - 1) = 0.5 * (U(2 * i - 1) + U(2 * i - 2));
  return State::ab(a, b);
}

Mat moser_reduce(const Mat& L) {
  if (L.rows() != L.cols()) throw DimensionError("moser_reduce needs a square matrix");
  const Mat sq = L * L;
  const Index k = (L.rows() + 1) / 2;
  Mat out(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) out(i, j) = sq(2 * i, 2 * j);
  return out;
}

State d_transform(const State& u) {
  if (u.chart() != Chart::volterra_u && u.chart() != Chart::volterra_v)
    throw ChartMismatch("d_transform expects volterra_u or volterra_v");
  const Index n = u.size();
  if (n % 2 == 0) throw DimensionError("d_transform needs an odd number of variables");
  if (n < 5) throw UnsupportedDimension("d_transform needs n >= 5");
  const Index m = (n - 1) / 2;
  auto U = [&](Index k) { return u[k - 1]; };
  Vec a(m + 1);
  Vec b(m);
  a(0) = 0.5 * kI * (U(n) - U(n - 1));
  for (Index j = 2; j <= m; ++j)
    a(j - 1) = 0.5 * root_of_product(U(n - 2 * j + 2), U(n - 2 * j + 1), "d_transform");
  a(m) = 0.5 * kI * U(1);
  b(0) = -0.5 * (U(n) + U(n - 1) + U(n - 2));
  for (Index j = 2; j <= m; ++j) b(j - 1) = -0.5 * (U(n - 2 * j + 1) + U(n - 2 * j));
  return State::ab(a, b);
}

Mat d_transform_jacobian(const State& u) {
  const State image = d_transform(u);
  const Index n = u.size();
  const Index m = (n - 1) / 2;
  auto U = [&](Index k) { return u[k - 1]; };
  // Columns by 1-based variable index, rows a_1..a_{m+1} then b_1..b_m.
  Mat J = Mat::Zero(2 * m + 1, n);
  auto at = [&](Index row, Index k) -> Complex& { return J(row, k - 1); };
  at(0, n) = 0.5 * kI;
  at(0, n - 1) = -0.5 * kI;
  for (Index j = 2; j <= m; ++j) {
    const Index p = n - 2 * j + 2;
    const Index q = n - 2 * j + 1;
    const Complex root = 2.0 * image.head()(j - 1);
    at(j - 1, p) = 0.25 * U(q) / root;
    at(j - 1, q) = 0.25 * U(p) / root;
  }
  at(m, 1) = 0.5 * kI;
  const Index b0 = m + 1;
  at(b0, n) = at(b0, n - 1) = at(b0, n - 2) = -0.5;
  for (Index j = 2; j <= m; ++j) at(b0 + j - 1, n - 2 * j + 1) = at(b0 + j - 1, n - 2 * j) = -0.5;
  return J;
}

State sklyanin_flaschka(const State& qp) {
  require_chart(qp, Chart::qp, "sklyanin_flaschka");
  const Index m = qp.split();
  if (m < 1) throw UnsupportedDimension("sklyanin_flaschka needs m >= 1");
  const Vec q = qp.head();
  const Vec p = qp.tail();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vec a(m + 1);
  a(0) = inv_sqrt2 * std::exp(-q(0));
  for (Index i = 1; i < m; ++i) a(i) = 0.5 * std::exp(0.5 * (q(i - 1) - q(i)));
  a(m) = inv_sqrt2 * std::exp(q(m - 1));
  return State::ab(a, -0.5 * p);
}

State toda_flaschka(const State& qp, const rootdata::Spectrum& spectrum) {
  require_chart(qp, Chart::qp, "toda_flaschka");
  if (qp.split() != spectrum.dimension()) throw ChartMismatch("state and spectrum dimensions differ");
  const Vec q = qp.head();
  Vec a(spectrum.size());
  for (Index i = 0; i < spectrum.size(); ++i)
    a(i) = 0.5 * std::exp(0.5 * to_complex(spectrum[i]).dot(q));
  return State::ab(a, -0.5 * qp.tail());
}

State generalized_flaschka(const State& qp, const rootdata::Spectrum& spectrum) {
  require_chart(qp, Chart::qp, "generalized_flaschka");
  if (qp.split() != spectrum.dimension()) throw ChartMismatch("state and spectrum dimensions differ");
  const Vec q = qp.head();
  const Vec p = qp.tail();
  Vec a(spectrum.size());
  Vec b(spectrum.size());
  for (Index i = 0; i < spectrum.size(); ++i) {
    const Vec v = to_complex(spectrum[i]);
    // dot() conjugates its left argument; v is real so this is the bilinear product.
    a(i) = -std::exp(v.dot(q));
    b(i) = v.dot(p);
  }
  return State::ab(a, b);
}

State c_to_v(const State& c) {
  require_chart(c, Chart::c_vars, "c_to_v");
  const Index r = c.size();
  if (r < 5) throw UnsupportedDimension("c_to_v needs at least 5 c's");
  for (Index j = 0; j < r; ++j)
    if (c[j] == Complex{}) throw DivisionByZero("c_to_v: c_" + std::to_string(j + 1) + " is zero");
  const Index n = r - 1;
  auto C = [&](Index j) { return c[j - 1]; };
  Vec v(n);
  v(0) = 1.0 / (C(1) * C(2));
  for (Index k = 2; k <= n - 2; ++k) v(k - 1) = 2.0 / (C(k) * C(k + 1));
  v(n - 2) = 1.0 / (C(n - 1) * C(n));
  v(n - 1) = 1.0 / (C(n - 1) * C(n + 1));
  return State::volterra_v(v);
}

namespace {

bool is_real(const Vec& x) { return x.size() == 0 || x.imag().cwiseAbs().maxCoeff() == 0.0; }

bool use_complex_step(Differencing scheme, const State& s, const Vec& direction, const State& image) {
  switch (scheme) {
    case Differencing::central: return false;
    case Differencing::complex_step: return true;
    case Differencing::automatic: return s.is_real() && is_real(direction) && image.is_real();
  }
  return false;
}

// Derivative of map at s along a unit direction.
Vec directional(const Map& map, const State& s, const Vec& direction, bool complex_step,
                double fd_step) {
  if (complex_step) {
    const State probe = map(s.with_coords(s.coords() + kI * kComplexStep * direction));
    return (probe.coords().imag() / kComplexStep).cast<Complex>();
  }
  const State plus = map(s.with_coords(s.coords() + fd_step * direction));
  const State minus = map(s.with_coords(s.coords() - fd_step * direction));
  return (plus.coords() - minus.coords()) / (2.0 * fd_step);
}

}  // namespace

double pushforward_residual(const Map& map, const Field& source, const Field& target,
                            const State& s, double fd_step, Differencing scheme) {
  const Vec f = source(s);
  const State image = map(s);
  const double scale = f.norm();
  Vec pushed = Vec::Zero(image.size());
  if (scale > 0.0) {
    // the complex step is linear in the direction, so only central differences need a unit one
    if (use_complex_step(scheme, s, f, image))
      pushed = directional(map, s, f, true, fd_step);
    else
      pushed = scale * directional(map, s, f / scale, false, fd_step);
  }
  return (pushed - target(image)).norm();
}

Mat jacobian_fd(const Map& map, const State& s, double fd_step, Differencing scheme) {
  const State image = map(s);
  Mat J(image.size(), s.size());
  for (Index i = 0; i < s.size(); ++i) {
    Vec unit = Vec::Zero(s.size());
    unit(i) = 1.0;
    J.col(i) = directional(map, s, unit, use_complex_step(scheme, s, unit, image), fd_step);
  }
  return J;
}

Mat pushforward_tensor(const Map& map, const Mat& P, const State& s, double fd_step,
                       Differencing scheme) {
  const Mat J = jacobian_fd(map, s, fd_step, scheme);
  return J * P * J.transpose();
}

}  // namespace lattice_flows::transforms
