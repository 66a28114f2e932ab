#include "lattice_flows/systems.hpp"

#include <cmath>
#include <string>

namespace lattice_flows::systems {

namespace {

void require_min(Index n, Index minimum, std::string_view op) {
  if (n < minimum) {
    throw UnsupportedDimension(std::string(op) + " needs at least " + std::to_string(minimum) +
                               " variables, got " + std::to_string(n));
  }
}

Complex integer_power(Complex base, long exponent) {
  if (exponent < 0) return 1.0 / integer_power(base, -exponent);
  Complex result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

char family_letter(Family family) noexcept {
  switch (family) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

Family family_from_letter(char letter) {
  switch (letter) {
    case 'A': case 'a': return Family::A;
    case 'B': case 'b': return Family::B;
    case 'C': case 'c': return Family::C;
    case 'D': case 'd': return Family::D;
    default: throw UnsupportedDimension(std::string("unknown family: ") + letter);
  }
}

Vec km_field(const State& s) {
  require_chart(s, Chart::volterra_u, "km_field");
  const Vec& u = s.coords();
  const Index n = u.size();
  Vec du(n);
  for (Index i = 0; i < n; ++i) {
    const Complex next = i + 1 < n ? u(i + 1) : Complex{};
    const Complex prev = i > 0 ? u(i - 1) : Complex{};
    du(i) = u(i) * (next - prev);
  }
  return du;
}

Index bv_min_dimension(Family family) noexcept {
  switch (family) {
    case Family::A: return 2;
    case Family::B: return 3;
    case Family::C: return 3;
    case Family::D: return 5;
  }
  return 0;
}

Vec bv_field(Family family, const State& s) {
  require_chart(s, Chart::volterra_u, "bv_field");
  const Vec& u = s.coords();
  const Index n = u.size();
  require_min(n, bv_min_dimension(family), "bv_field");
  auto U = [&](Index k) { return u(k - 1); };
  Vec du(n);
  auto D = [&](Index k) -> Complex& { return du(k - 1); };

  switch (family) {
    case Family::A:
      D(1) = U(1) * U(2);
      for (Index i = 2; i <= n - 1; ++i) D(i) = U(i) * (U(i + 1) - U(i - 1));
      D(n) = -U(n - 1) * U(n);
      break;
    case Family::B:
      D(1) = U(1) * (U(1) + 2.0 * U(2));
      D(2) = U(2) * (2.0 * U(3) - U(1));
      for (Index i = 3; i <= n - 1; ++i) D(i) = 2.0 * U(i) * (U(i + 1) - U(i - 1));
      D(n) = -2.0 * U(n - 1) * U(n);
      break;
    case Family::C:
      D(1) = 2.0 * U(1) * U(2);
      for (Index i = 2; i <= n - 2; ++i) D(i) = 2.0 * U(i) * (U(i + 1) - U(i - 1));
      D(n - 1) = U(n - 1) * (U(n) - 2.0 * U(n - 2));
      D(n) = -U(n) * (U(n) + 2.0 * U(n - 1));
      break;
    case Family::D:
      D(1) = U(1) * (2.0 * U(2) + U(1));
      D(2) = U(2) * (2.0 * U(3) - U(1));
      for (Index i = 3; i <= n - 3; ++i) D(i) = 2.0 * U(i) * (U(i + 1) - U(i - 1));
      D(n - 2) = U(n - 2) * (U(n) + U(n - 1) - 2.0 * U(n - 3));
      D(n - 1) = U(n - 1) * (U(n) - U(n - 1) - 2.0 * U(n - 2));
      D(n) = -U(n) * (U(n) - U(n - 1) + 2.0 * U(n - 2));
      break;
  }
  return du;
}

Index c_min_rank(Family family) noexcept { return family == Family::D ? 4 : 2; }

CartanData cartan_data(Family family, Index rank) {
  require_min(rank, c_min_rank(family), "cartan_data");
  const Index n = rank - 1;  // number of edge variables
  CartanData data{RealVec::Ones(rank), Eigen::MatrixXi::Zero(rank, rank)};
  auto edge = [&](Index i, Index j) {  // 1-based, i < j
    data.c(i - 1, j - 1) = 1;
    data.c(j - 1, i - 1) = -1;
  };
  switch (family) {
    case Family::A:
      for (Index i = 1; i <= n; ++i) edge(i, i + 1);
      break;
    case Family::B:
      data.k.tail(rank - 1).setConstant(2.0);
      for (Index i = 1; i <= n; ++i) edge(i, i + 1);
      break;
    case Family::C:
      data.k.setConstant(2.0);
      data.k(rank - 1) = 1.0;
      for (Index i = 1; i <= n; ++i) edge(i, i + 1);
      break;
    case Family::D:
      data.k.setConstant(2.0);
      data.k(0) = 1.0;
      data.k(n - 1) = 1.0;
      data.k(n) = 1.0;
      for (Index i = 1; i <= n - 1; ++i) edge(i, i + 1);
      edge(n - 1, n + 1);
      break;
  }
  return data;
}

Vec c_field(Family family, const State& s) {
  require_chart(s, Chart::c_vars, "c_field");
  const Vec& c = s.coords();
  const Index r = c.size();
  for (Index j = 0; j < r; ++j)
    if (c(j) == Complex{}) throw DivisionByZero("c_field: c_" + std::to_string(j + 1) + " is zero");
  const CartanData data = cartan_data(family, r);
  Vec weighted(r);
  for (Index j = 0; j < r; ++j) weighted(j) = data.k(j) / c(j);
  Vec dc = Vec::Zero(r);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      if (data.c(i, j) != 0) dc(i) -= static_cast<double>(data.c(i, j)) * weighted(j);
  return dc;
}

Vec vd_field(const State& s) {
  require_chart(s, Chart::volterra_v, "vd_field");
  const Vec& v = s.coords();
  const Index n = v.size();
  require_min(n, 4, "vd_field");
  auto V = [&](Index k) { return v(k - 1); };
  Vec dv(n);
  auto D = [&](Index k) -> Complex& { return dv(k - 1); };
  D(1) = V(1) * (V(1) + V(2));
  for (Index k = 2; k <= n - 3; ++k) D(k) = V(k) * (V(k + 1) - V(k - 1));
  D(n - 2) = V(n - 2) * (V(n) + V(n - 1) - V(n - 3));
  D(n - 1) = V(n - 1) * (V(n) - V(n - 1) - V(n - 2));
  D(n) = -V(n) * (V(n) - V(n - 1) + V(n - 2));
  return dv;
}

Index ab_order(const State& s) {
  require_chart(s, Chart::flaschka_ab, "ab system");
  const Index m = s.size() - s.split();
  if (m < 1 || s.split() != m + 1)
    throw ChartMismatch("ab system needs m+1 a's and m b's");
  return m;
}

Vec ab_field(const State& s) {
  const Index m = ab_order(s);
  const Vec& x = s.coords();
  auto A = [&](Index i) { return x(i - 1); };
  auto B = [&](Index i) { return x(m + i); };
  Vec dx(2 * m + 1);
  auto DA = [&](Index i) -> Complex& { return dx(i - 1); };
  auto DB = [&](Index i) -> Complex& { return dx(m + i); };
  DA(1) = 2.0 * A(1) * B(1);
  for (Index i = 2; i <= m; ++i) DA(i) = A(i) * (B(i) - B(i - 1));
  DA(m + 1) = -2.0 * A(m + 1) * B(m);
  for (Index i = 1; i <= m; ++i) DB(i) = 2.0 * (A(i + 1) * A(i + 1) - A(i) * A(i));
  return dx;
}

Vec toda_field(const State& s) {
  require_chart(s, Chart::flaschka_ab, "toda_field");
  const Index n = s.size() - s.split();
  if (n < 1 || s.split() != n - 1) throw ChartMismatch("toda_field needs n-1 a's and n b's");
  const Vec& x = s.coords();
  auto A = [&](Index i) { return (i >= 1 && i <= n - 1) ? x(i - 1) : Complex{}; };
  auto B = [&](Index i) { return x(n - 2 + i); };
  Vec dx(2 * n - 1);
  for (Index i = 1; i <= n - 1; ++i) dx(i - 1) = A(i) * (B(i + 1) - B(i));
  for (Index i = 1; i <= n; ++i) dx(n - 2 + i) = 2.0 * (A(i) * A(i) - A(i - 1) * A(i - 1));
  return dx;
}

Vec spectrum_field(const rootdata::Spectrum& spectrum, const State& s) {
  require_chart(s, Chart::flaschka_ab, "spectrum_field");
  const Index count = spectrum.size();
  if (s.split() != count || s.size() != 2 * count)
    throw ChartMismatch("spectrum_field needs N a's and N b's");
  const Mat gram = rootdata::gram_matrix(spectrum).cast<Complex>();
  const Vec a = s.head();
  const Vec b = s.tail();
  Vec dx(2 * count);
  dx.head(count) = a.cwiseProduct(b);
  dx.tail(count) = gram * a;
  return dx;
}

Integrals integrals_f1_f2(const State& s, const RealVec& lambda) {
  require_chart(s, Chart::flaschka_ab, "integrals_f1_f2");
  const Index count = lambda.size();
  if (s.split() < count || s.size() - s.split() < count)
    throw ChartMismatch("integrals_f1_f2: lambda longer than the a or b groups");
  Integrals out{Complex{}, Complex{1.0}};
  for (Index i = 0; i < count; ++i) {
    const Complex a = s[i];
    const Complex b = s[s.split() + i];
    const double l = lambda(i);
    out.f1 += l * b;
    if (l == 0.0) continue;
    if (a == Complex{} && l < 0.0) throw DomainError("integrals_f1_f2: 0 to a negative power");
    const double rounded = std::round(l);
    if (std::abs(l - rounded) < 1e-12)
      out.f2 *= integer_power(a, static_cast<long>(rounded));
    else
      out.f2 *= std::pow(a, Complex{l});
  }
  return out;
}

namespace {

struct QpView {
  Index n;
  Vec q;
  Vec p;
};

QpView qp_view(const State& s, std::string_view op) {
  require_chart(s, Chart::qp, op);
  return {s.split(), s.head(), s.tail()};
}

}  // namespace

Complex hamiltonian_eval(Hamiltonian system, const State& s, const SklyaninCouplings& k) {
  const auto [n, q, p] = qp_view(s, "hamiltonian_eval");
  Complex h = 0.5 * (p.array() * p.array()).sum();
  for (Index i = 0; i + 1 < n; ++i) h += std::exp(q(i) - q(i + 1));
  switch (system) {
    case Hamiltonian::toda:
      break;
    case Hamiltonian::sklyanin:
      h += std::exp(-2.0 * q(0)) + std::exp(2.0 * q(n - 1));
      break;
    case Hamiltonian::sklyanin_full:
      h += k.alpha1 * std::exp(q(0)) + k.beta1 * std::exp(2.0 * q(0)) +
           k.alphan * std::exp(-q(n - 1)) + k.betan * std::exp(-2.0 * q(n - 1));
      break;
  }
  return h;
}

Vec qp_field(Hamiltonian system, const State& s, const SklyaninCouplings& k) {
  const auto [n, q, p] = qp_view(s, "qp_field");
  Vec grad_q = Vec::Zero(n);
  for (Index i = 0; i + 1 < n; ++i) {
    const Complex e = std::exp(q(i) - q(i + 1));
    grad_q(i) += e;
    grad_q(i + 1) -= e;
  }
  switch (system) {
    case Hamiltonian::toda:
      break;
    case Hamiltonian::sklyanin:
      grad_q(0) += -2.0 * std::exp(-2.0 * q(0));
      grad_q(n - 1) += 2.0 * std::exp(2.0 * q(n - 1));
      break;
    case Hamiltonian::sklyanin_full:
      grad_q(0) += k.alpha1 * std::exp(q(0)) + 2.0 * k.beta1 * std::exp(2.0 * q(0));
      grad_q(n - 1) += -k.alphan * std::exp(-q(n - 1)) - 2.0 * k.betan * std::exp(-2.0 * q(n - 1));
      break;
  }
  Vec dx(2 * n);
  dx << p, -grad_q;
  return dx;
}

Complex exponential_hamiltonian(const rootdata::Spectrum& spectrum, const State& s) {
  const auto [n, q, p] = qp_view(s, "exponential_hamiltonian");
  if (n != spectrum.dimension()) throw ChartMismatch("state and spectrum dimensions differ");
  Complex h = 0.5 * (p.array() * p.array()).sum();
  for (const auto& v : spectrum.vectors()) h += std::exp(to_complex(v).dot(q));
  return h;
}

Vec exponential_qp_field(const rootdata::Spectrum& spectrum, const State& s) {
  const auto [n, q, p] = qp_view(s, "exponential_qp_field");
  if (n != spectrum.dimension()) throw ChartMismatch("state and spectrum dimensions differ");
  Vec grad_q = Vec::Zero(n);
  for (const auto& v : spectrum.vectors()) {
    const Vec vc = to_complex(v);
    grad_q += std::exp(vc.dot(q)) * vc;
  }
  Vec dx(2 * n);
  dx << p, -grad_q;
  return dx;
}

}  // namespace lattice_flows::systems
