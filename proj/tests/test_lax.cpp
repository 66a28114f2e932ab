#include "lattice_flows/lax.hpp"
#include "lattice_flows/systems.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace lattice_flows;
using namespace lattice_flows::lax;
using lattice_flows::testing::ab_state;
using lattice_flows::testing::max_abs;
using lattice_flows::testing::u_state;
using lattice_flows::testing::v_state;

namespace {

Vec fd_gradient(const std::function<Complex(const State&)>& f, const State& s, double h = 1e-6) {
  Vec g(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    Vec plus = s.coords(), minus = s.coords();
    plus(i) += h;
    minus(i) -= h;
    g(i) = (f(s.with_coords(plus)) - f(s.with_coords(minus))) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("km lax at a = (1, 1)", "[lax]") {
  const LaxPair p = build_lax(LaxKind::km, u_state({2, 2}));
  Mat want = Mat::Zero(3, 3);
  want(0, 1) = want(1, 0) = want(1, 2) = want(2, 1) = 1.0;
  CHECK(max_abs(p.L - want) < 1e-15);
  CHECK(p.sign == 1);
}

TEST_CASE("ab lax at the smallest size", "[lax]") {
  const State s = ab_state({1, 1}, {1});
  const LaxPair p = build_lax(LaxKind::ab, s);
  CHECK(p.L.rows() == 2);
  CHECK(lax_residual(p, systems::ab_field(s), s) < 1e-12);
}

TEST_CASE("vd lax dimension and entries", "[lax]") {
  const State v = State::volterra_v(Vec::Ones(7));
  const LaxPair p = build_lax(LaxKind::vd, v);
  CHECK(p.L.rows() == 13);
  CHECK(p.dim == 13);
  CHECK(p.sign == -1);
  // Ones everywhere: every entry is 0, a real or an imaginary unit times a small rational.
  bool has_imaginary = false;
  for (Index i = 0; i < p.L.rows(); ++i)
    for (Index j = 0; j < p.L.cols(); ++j) has_imaginary = has_imaginary || p.L(i, j).imag() != 0.0;
  CHECK(has_imaginary);
  CHECK(lax_residual(p, systems::vd_field(v), v) < 1e-12);
}

TEST_CASE("km and vd reject nonpositive coordinates", "[lax]") {
  CHECK_THROWS_AS(build_lax(LaxKind::km, u_state({1, -1, 1})), DomainError);
  CHECK_THROWS_AS(build_lax(LaxKind::vd, v_state({1, 1, 0, 1, 1})), DomainError);
  CHECK_THROWS_AS(build_lax(LaxKind::toda, u_state({1, 1})), ChartMismatch);
}

TEST_CASE("lax residual vanishes at the zero state", "[lax]") {
  const State s = ab_state({0, 0, 0}, {0, 0});
  CHECK(lax_residual(build_lax(LaxKind::ab, s), systems::ab_field(s), s) == 0.0);
}

TEST_CASE("lax residual at random states", "[lax][property]") {
  sampling::Rng rng(17);
  for (Index n = 2; n <= 8; ++n) {
    for (int t = 0; t < 20; ++t) {
      const State u = sampling::random_u(rng, n);
      CHECK(lax_residual(build_lax(LaxKind::km, u), systems::km_field(u), u) < 1e-10);
      const State s = sampling::random_toda_ab(rng, n);
      CHECK(lax_residual(build_lax(LaxKind::toda, s), systems::toda_field(s), s) < 1e-10);
    }
  }
  for (Index n : {5, 7, 9}) {
    for (int t = 0; t < 20; ++t) {
      const State v = sampling::random_v(rng, n);
      CHECK(lax_residual(build_lax(LaxKind::vd, v), systems::vd_field(v), v) < 1e-10);
    }
  }
  for (Index m : {2, 3, 4}) {
    for (int t = 0; t < 20; ++t) {
      const State s = sampling::random_ab(rng, m);
      CHECK(lax_residual(build_lax(LaxKind::ab, s), systems::ab_field(s), s) < 1e-10);
    }
  }
}

TEST_CASE("lax residual detects the wrong sign", "[lax]") {
  sampling::Rng rng(1);
  const State v = sampling::random_v(rng, 7);
  LaxPair p = build_lax(LaxKind::vd, v);
  p.sign = -p.sign;
  CHECK(lax_residual(p, systems::vd_field(v), v) > 1e-3);
}

TEST_CASE("trace invariant examples", "[lax]") {
  const LaxPair km = build_lax(LaxKind::km, u_state({2, 2}));
  const auto h = trace_invariants(km, {1, 2, 3});
  CHECK(std::abs(h[0]) < 1e-15);
  CHECK(std::abs(h[1] - 2.0) < 1e-14);
  CHECK(std::abs(h[2]) < 1e-14);

  const State s = ab_state({1, 1, 1}, {1, 1});
  CHECK(std::abs(h2_ab(s) - 6.0) < 1e-14);
  CHECK(std::abs(trace_invariant(LaxKind::ab, s, 2) - h2_ab(s)) < 1e-13);
}

TEST_CASE("odd km traces vanish", "[lax][property]") {
  sampling::Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const State u = sampling::random_u(rng, 6);
    const auto h = trace_invariants(build_lax(LaxKind::km, u), {1, 3, 5});
    for (const auto& x : h) CHECK(std::abs(x) < 1e-12);
  }
}

TEST_CASE("h2 equals tr L^2 / 2 on ab states", "[lax][property]") {
  sampling::Rng rng(29);
  for (Index m : {2, 3, 4})
    for (int t = 0; t < 20; ++t) {
      const State s = sampling::random_ab(rng, m);
      CHECK(std::abs(h2_ab(s) - trace_invariant(LaxKind::ab, s, 2)) < 1e-12);
    }
}

TEST_CASE("even ab traces are real on real states", "[lax][property]") {
  sampling::Rng rng(31);
  for (Index m : {2, 3, 4})
    for (int t = 0; t < 20; ++t) {
      const State s = sampling::random_ab(rng, m);
      for (int k = 2; k <= 2 * m; k += 2) CHECK(std::abs(trace_invariant(LaxKind::ab, s, k).imag()) < 1e-12);
    }
}

TEST_CASE("closed-form invariant examples", "[lax]") {
  CHECK(std::abs(casimir_C(ab_state({1, 1, 1}, {0, 0})) - 1.0) < 1e-15);
  CHECK(std::abs(casimir_C(ab_state({2, 3, 4}, {0, 0})) - 72.0) < 1e-12);
  CHECK(std::abs(casimir_F(v_state({1, 1, 1, 2})) - 1.0) < 1e-15);
  CHECK(std::abs(casimir_F(v_state({3, 1, 2, 5, 5}))) == 0.0);
}

TEST_CASE("vd hamiltonian is tr L^4 / 8", "[lax][property]") {
  sampling::Rng rng(37);
  for (Index n : {5, 7, 9})
    for (int t = 0; t < 10; ++t) {
      const State v = sampling::random_v(rng, n);
      const Complex quarter = trace_invariant(LaxKind::vd, v, 4);  // tr L^4 / 4
      CHECK(std::abs(vd_hamiltonian(v) - 0.5 * quarter) < 1e-11);
    }
}

TEST_CASE("analytic gradients match finite differences", "[lax][property]") {
  sampling::Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    const State s = sampling::random_ab(rng, 3);
    CHECK(max_abs(h2_ab_gradient(s) - fd_gradient(h2_ab, s)) < 1e-8);
    CHECK(max_abs(casimir_C_gradient(s) - fd_gradient(casimir_C, s)) < 1e-8);
    for (int k : {2, 4, 6})
      CHECK(max_abs(trace_gradient(LaxKind::ab, s, k) -
                    fd_gradient([k](const State& x) { return trace_invariant(LaxKind::ab, x, k); }, s)) <
            1e-7);

    const State v = sampling::random_v(rng, 7);
    CHECK(max_abs(casimir_F_gradient(v) - fd_gradient(casimir_F, v)) < 1e-7);
    CHECK(max_abs(vd_hamiltonian_gradient(v) - fd_gradient(vd_hamiltonian, v)) < 1e-7);
    CHECK(max_abs(trace_gradient(LaxKind::vd, v, 4) -
                  fd_gradient([](const State& x) { return trace_invariant(LaxKind::vd, x, 4); }, v)) <
          1e-7);

    const State u = sampling::random_u(rng, 5);
    CHECK(max_abs(trace_gradient(LaxKind::km, u, 2) -
                  fd_gradient([](const State& x) { return trace_invariant(LaxKind::km, x, 2); }, u)) <
          1e-7);
  }
}

TEST_CASE("lax derivatives match finite differences", "[lax][property]") {
  sampling::Rng rng(43);
  const State v = sampling::random_v(rng, 5);
  const auto d = lax_derivatives(LaxKind::vd, v);
  REQUIRE(static_cast<Index>(d.size()) == v.size());
  const double h = 1e-6;
  for (Index i = 0; i < v.size(); ++i) {
    Vec plus = v.coords(), minus = v.coords();
    plus(i) += h;
    minus(i) -= h;
    const Mat fd = (build_lax(LaxKind::vd, v.with_coords(plus)).L -
                    build_lax(LaxKind::vd, v.with_coords(minus)).L) / (2.0 * h);
    CHECK(max_abs(d[static_cast<std::size_t>(i)] - fd) < 1e-7);
  }
}

TEST_CASE("kind names round trip", "[lax]") {
  for (auto k : {LaxKind::km, LaxKind::toda, LaxKind::vd, LaxKind::ab})
    CHECK(lax_kind_from_name(lax_kind_name(k)) == k);
  CHECK_THROWS_AS(lax_kind_from_name("nope"), Error);
}
