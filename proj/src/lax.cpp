#include "lattice_flows/lax.hpp"

#include "lattice_flows/systems.hpp"

#include <array>
#include <cmath>
#include <string>

namespace lattice_flows::lax {

// Each builder writes L as a linear function of per-coordinate "atoms": the
// coordinate itself for toda and ab, its principal square root for km and vd.
// dL/dx_i is then L assembled from the i-th unit atom times d(atom_i)/dx_i.

namespace {

constexpr std::array<std::pair<LaxKind, std::string_view>, 4> kKindNames{{
    {LaxKind::km, "km"},
    {LaxKind::toda, "toda"},
    {LaxKind::vd, "vd"},
    {LaxKind::ab, "ab"},
}};

Chart expected_chart(LaxKind kind) {
  switch (kind) {
    case LaxKind::km: return Chart::volterra_u;
    case LaxKind::vd: return Chart::volterra_v;
    case LaxKind::toda:
    case LaxKind::ab: return Chart::flaschka_ab;
  }
  return Chart::qp;
}

void check_shape(LaxKind kind, const State& s) {
  require_chart(s, expected_chart(kind), "build_lax");
  switch (kind) {
    case LaxKind::km:
      if (s.size() < 1) throw UnsupportedDimension("km Lax needs n >= 1");
      break;
    case LaxKind::vd:
      if (s.size() < 4) throw UnsupportedDimension("vd Lax needs n >= 4");
      break;
    case LaxKind::toda:
      if (s.size() - s.split() < 1 || s.split() != s.size() - s.split() - 1)
        throw ChartMismatch("toda Lax needs n-1 a's and n b's");
      break;
    case LaxKind::ab:
      systems::ab_order(s);
      break;
  }
}

bool uses_roots(LaxKind kind) { return kind == LaxKind::km || kind == LaxKind::vd; }

Vec atoms_of(LaxKind kind, const State& s) {
  if (!uses_roots(kind)) return s.coords();
  Vec roots(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    const Complex x = s[i];
    if (x.imag() == 0.0 && x.real() <= 0.0)
      throw DomainError(std::string(lax_kind_name(kind)) +
                        " Lax needs coordinates off the nonpositive real axis");
    roots(i) = std::sqrt(x);
  }
  return roots;
}

Index matrix_size(LaxKind kind, const State& s) {
  switch (kind) {
    case LaxKind::km: return s.size() + 1;
    case LaxKind::toda: return s.size() - s.split();
    case LaxKind::vd: return 2 * s.size() - 1;
    case LaxKind::ab: return 2 * (s.size() - s.split());
  }
  return 0;
}

// Adds the 2x2 block X at block position (i, j), 1-based, after the scalar border.
void add_block(Mat& M, Index i, Index j, const Eigen::Matrix2cd& X) {
  M.block<2, 2>(1 + 2 * (i - 1), 1 + 2 * (j - 1)) += X;
}

Mat km_L(const Vec& root, Index size) {
  Mat L = Mat::Zero(size, size);
  const double scale = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i + 1 < size; ++i) {
    L(i, i + 1) = scale * root(i);
    L(i + 1, i) = scale * root(i);
  }
  return L;
}

Mat km_B(const Vec& root, Index size) {
  Mat B = Mat::Zero(size, size);
  for (Index i = 0; i + 2 < size; ++i) {
    const Complex w = 0.5 * root(i) * root(i + 1);  // a_i a_{i+1}
    B(i, i + 2) = w;
    B(i + 2, i) = -w;
  }
  return B;
}

Mat toda_L(const Vec& x, Index n) {
  Mat L = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) L(i, i) = x(n - 1 + i);
  for (Index i = 0; i + 1 < n; ++i) {
    L(i, i + 1) = x(i);
    L(i + 1, i) = x(i);
  }
  return L;
}

Mat toda_B(const Vec& x, Index n) {
  Mat B = Mat::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) {
    B(i, i + 1) = x(i);
    B(i + 1, i) = -x(i);
  }
  return B;
}

Mat vd_L(const Vec& root) {
  const Index n = root.size();
  const Index blocks = n - 1;
  auto S = [&](Index k) { return root(k - 1); };
  Mat L = Mat::Zero(2 * n - 1, 2 * n - 1);

  Eigen::Matrix2cd X;
  X << S(n), kI * S(n), -S(n - 1), kI * S(n - 1);
  add_block(L, 1, 2, X);
  add_block(L, 2, 1, X.transpose());
  for (Index b = 2; b < blocks; ++b) {
    const Index k = n - b;
    Eigen::Matrix2cd Xk;
    Xk << S(k), 0.0, 0.0, kI * S(k);
    add_block(L, b, b + 1, Xk);
    add_block(L, b + 1, b, Xk);
  }
  const Index r = 1 + 2 * (blocks - 1);
  L(0, r) += S(1);
  L(0, r + 1) += kI * S(1);
  L(r, 0) += S(1);
  L(r + 1, 0) += kI * S(1);
  return L;
}

Mat vd_B(const Vec& root) {
  const Index n = root.size();
  const Index blocks = n - 1;
  auto S = [&](Index k) { return root(k - 1); };
  auto V = [&](Index k) { return root(k - 1) * root(k - 1); };
  Mat B = Mat::Zero(2 * n - 1, 2 * n - 1);

  Eigen::Matrix2cd Y;
  const Complex y1 = 0.5 * S(n - 2) * S(n);
  const Complex y2 = 0.5 * S(n - 2) * S(n - 1);
  Y << y1, y1, -y2, y2;
  add_block(B, 1, 3, Y);
  add_block(B, 3, 1, -Y.transpose());

  Eigen::Matrix2cd W;
  W << 0.0, 0.5 * kI * (V(n - 1) - V(n)), 0.5 * kI * (V(n) - V(n - 1)), 0.0;
  add_block(B, 2, 2, W);

  for (Index b = 2; b + 1 < blocks; ++b) {
    const Index k = n - 1 - b;
    const Eigen::Matrix2cd Yk = 0.5 * S(k) * S(k + 1) * Eigen::Matrix2cd::Identity();
    add_block(B, b, b + 2, Yk);
    add_block(B, b + 2, b, -Yk);
  }

  Eigen::Matrix2cd Y0;
  Y0 << 0.0, 0.5 * kI * V(1), -0.5 * kI * V(1), 0.0;
  add_block(B, blocks, blocks, Y0);

  const Index r = 1 + 2 * (blocks - 2);
  const Complex c = 0.5 * S(1) * S(2);
  B(0, r) += -c;
  B(0, r + 1) += -c;
  B(r, 0) += c;
  B(r + 1, 0) += c;
  return B;
}

Mat ab_L(const Vec& x, Index m) {
  auto A = [&](Index i) { return x(i - 1); };
  auto Bv = [&](Index i) { return x(m + i); };
  const Index size = 2 * m;
  Mat L = Mat::Zero(size, size);
  for (Index i = 1; i <= m; ++i) {
    L(2 * i - 2, 2 * i - 2) += Bv(i);
    L(2 * i - 1, 2 * i - 1) -= Bv(i);
  }
  L(0, 1) += A(1);
  L(1, 0) += A(1);
  L(size - 2, size - 1) += A(m + 1);
  L(size - 1, size - 2) += A(m + 1);
  for (Index i = 2; i <= m; ++i) {
    const Index r = 2 * i - 4;
    const Index c = 2 * i - 2;
    L(r, c) += A(i);
    L(c, r) += A(i);
    L(r + 1, c + 1) -= A(i);
    L(c + 1, r + 1) -= A(i);
  }
  return L;
}

Mat ab_B(const Vec& x, Index m) {
  auto A = [&](Index i) { return x(i - 1); };
  const Index size = 2 * m;
  Mat B = Mat::Zero(size, size);
  B(0, 1) -= A(1);
  B(1, 0) += A(1);
  B(size - 2, size - 1) += A(m + 1);
  B(size - 1, size - 2) -= A(m + 1);
  for (Index i = 2; i <= m; ++i) {
    const Index r = 2 * i - 4;
    const Index c = 2 * i - 2;
    B(r, c) += A(i);
    B(c, r) -= A(i);
    B(r + 1, c + 1) += A(i);
    B(c + 1, r + 1) -= A(i);
  }
  return B;
}

Mat assemble_L(LaxKind kind, const State& s, const Vec& atoms) {
  switch (kind) {
    case LaxKind::km: return km_L(atoms, matrix_size(kind, s));
    case LaxKind::toda: return toda_L(atoms, matrix_size(kind, s));
    case LaxKind::vd: return vd_L(atoms);
    case LaxKind::ab: return ab_L(atoms, s.size() - s.split());
  }
  return {};
}

Mat assemble_B(LaxKind kind, const State& s, const Vec& atoms) {
  switch (kind) {
    case LaxKind::km: return km_B(atoms, matrix_size(kind, s));
    case LaxKind::toda: return toda_B(atoms, matrix_size(kind, s));
    case LaxKind::vd: return vd_B(atoms);
    case LaxKind::ab: return ab_B(atoms, s.size() - s.split());
  }
  return {};
}

int lax_sign(LaxKind kind) { return kind == LaxKind::vd ? -1 : 1; }

Mat matrix_power(const Mat& L, int k) {
  Mat P = Mat::Identity(L.rows(), L.cols());
  for (int i = 0; i < k; ++i) P = P * L;
  return P;
}

// Gradient of a monomial prod x_j^{e_j}, computed without dividing by x_j.
Vec monomial_gradient(const Vec& x, const std::vector<int>& e) {
  const Index n = x.size();
  Vec g = Vec::Zero(n);
  for (Index j = 0; j < n; ++j) {
    if (e[static_cast<std::size_t>(j)] == 0) continue;
    Complex term = static_cast<double>(e[static_cast<std::size_t>(j)]);
    for (Index l = 0; l < n; ++l) {
      const int power = e[static_cast<std::size_t>(l)] - (l == j ? 1 : 0);
      for (int p = 0; p < power; ++p) term *= x(l);
    }
    g(j) = term;
  }
  return g;
}

Complex monomial(const Vec& x, const std::vector<int>& e) {
  Complex value = 1.0;
  for (Index l = 0; l < x.size(); ++l)
    for (int p = 0; p < e[static_cast<std::size_t>(l)]; ++p) value *= x(l);
  return value;
}

std::vector<int> casimir_C_exponents(Index m) {
  std::vector<int> e(static_cast<std::size_t>(2 * m + 1), 0);
  for (Index i = 0; i <= m; ++i) e[static_cast<std::size_t>(i)] = (i == 0 || i == m) ? 1 : 2;
  return e;
}

}  // namespace

std::string_view lax_kind_name(LaxKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

LaxKind lax_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  throw ChartMismatch("no Lax pair for system: " + std::string(name));
}

LaxPair build_lax(LaxKind kind, const State& s) {
  check_shape(kind, s);
  const Vec atoms = atoms_of(kind, s);
  LaxPair pair;
  pair.L = assemble_L(kind, s, atoms);
  pair.B = assemble_B(kind, s, atoms);
  pair.sign = lax_sign(kind);
  pair.kind = kind;
  pair.dim = pair.L.rows();
  return pair;
}

std::vector<Mat> lax_derivatives(LaxKind kind, const State& s) {
  check_shape(kind, s);
  const Vec atoms = atoms_of(kind, s);
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) {
    Vec unit = Vec::Zero(s.size());
    unit(i) = 1.0;
    const Complex datom = uses_roots(kind) ? 0.5 / atoms(i) : Complex{1.0};
    out.push_back(datom * assemble_L(kind, s, unit));
  }
  return out;
}

double lax_residual(const LaxPair& pair, const Vec& field_value, const State& s) {
  const std::vector<Mat> dL = lax_derivatives(pair.kind, s);
  if (field_value.size() != s.size()) throw DimensionError("field length differs from state size");
  Mat lhs = Mat::Zero(pair.dim, pair.dim);
  for (Index i = 0; i < s.size(); ++i) lhs += field_value(i) * dL[static_cast<std::size_t>(i)];
  const Mat commutator = pair.B * pair.L - pair.L * pair.B;
  return (lhs - static_cast<double>(pair.sign) * commutator).norm();
}

std::vector<Complex> trace_invariants(const LaxPair& pair, const std::vector<int>& orders) {
  std::vector<Complex> out;
  out.reserve(orders.size());
  for (int k : orders) {
    if (k < 1) throw DimensionError("trace invariant order must be positive");
    out.push_back(matrix_power(pair.L, k).trace() / static_cast<double>(k));
  }
  return out;
}

Complex trace_invariant(LaxKind kind, const State& s, int order) {
  return trace_invariants(build_lax(kind, s), {order}).front();
}

Vec trace_gradient(LaxKind kind, const State& s, int order) {
  if (order < 1) throw DimensionError("trace invariant order must be positive");
  const LaxPair pair = build_lax(kind, s);
  const Mat P = matrix_power(pair.L, order - 1);
  const std::vector<Mat> dL = lax_derivatives(kind, s);
  Vec g(s.size());
  for (Index i = 0; i < s.size(); ++i)
    g(i) = P.transpose().cwiseProduct(dL[static_cast<std::size_t>(i)]).sum();
  return g;
}

Complex h2_ab(const State& s) {
  const Index m = systems::ab_order(s);
  const Vec& x = s.coords();
  Complex h = x(0) * x(0) + x(m) * x(m);
  for (Index i = 1; i < m; ++i) h += 2.0 * x(i) * x(i);
  for (Index i = 0; i < m; ++i) h += x(m + 1 + i) * x(m + 1 + i);
  return h;
}

Vec h2_ab_gradient(const State& s) {
  const Index m = systems::ab_order(s);
  Vec g = 2.0 * s.coords();
  for (Index i = 1; i < m; ++i) g(i) *= 2.0;
  return g;
}

Complex casimir_C(const State& s) {
  const Index m = systems::ab_order(s);
  return monomial(s.coords(), casimir_C_exponents(m));
}

Vec casimir_C_gradient(const State& s) {
  const Index m = systems::ab_order(s);
  return monomial_gradient(s.coords(), casimir_C_exponents(m));
}

Complex casimir_F(const State& s) {
  require_chart(s, Chart::volterra_v, "casimir_F");
  const Index n = s.size();
  if (n < 3) throw UnsupportedDimension("casimir_F needs n >= 3");
  Complex prod = 1.0;
  for (Index i = 0; i + 2 < n; ++i) prod *= s[i];
  return (s[n - 1] - s[n - 2]) * prod;
}

Vec casimir_F_gradient(const State& s) {
  require_chart(s, Chart::volterra_v, "casimir_F_gradient");
  const Index n = s.size();
  if (n < 3) throw UnsupportedDimension("casimir_F needs n >= 3");
  const Vec head = s.coords().head(n - 2);
  const std::vector<int> ones(static_cast<std::size_t>(n - 2), 1);
  const Complex diff = s[n - 1] - s[n - 2];
  const Complex prod = monomial(head, ones);
  Vec g(n);
  g.head(n - 2) = diff * monomial_gradient(head, ones);
  g(n - 2) = -prod;
  g(n - 1) = prod;
  return g;
}

Complex vd_hamiltonian(const State& s) {
  require_chart(s, Chart::volterra_v, "vd_hamiltonian");
  const Index n = s.size();
  if (n < 4) throw UnsupportedDimension("vd_hamiltonian needs n >= 4");
  auto V = [&](Index k) { return s[k - 1]; };
  Complex h = V(n - 2) * V(n) + 2.0 * V(n - 1) * V(n);
  for (Index i = 1; i <= n - 2; ++i) h += V(i) * V(i + 1);
  for (Index i = 2; i <= n - 2; ++i) h += 0.5 * V(i) * V(i);
  return h;
}

Vec vd_hamiltonian_gradient(const State& s) {
  require_chart(s, Chart::volterra_v, "vd_hamiltonian_gradient");
  const Index n = s.size();
  if (n < 4) throw UnsupportedDimension("vd_hamiltonian needs n >= 4");
  auto V = [&](Index k) { return s[k - 1]; };
  Vec g = Vec::Zero(n);
  auto G = [&](Index k) -> Complex& { return g(k - 1); };
  G(n - 2) += V(n);
  G(n) += V(n - 2);
  G(n - 1) += 2.0 * V(n);
  G(n) += 2.0 * V(n - 1);
  for (Index i = 1; i <= n - 2; ++i) {
    G(i) += V(i + 1);
    G(i + 1) += V(i);
  }
  for (Index i = 2; i <= n - 2; ++i) G(i) += V(i);
  return g;
}

}  // namespace lattice_flows::lax
