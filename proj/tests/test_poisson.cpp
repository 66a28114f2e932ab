#include "lattice_flows/lax.hpp"
#include "lattice_flows/poisson.hpp"
#include "lattice_flows/systems.hpp"
#include "lattice_flows/transforms.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace lattice_flows;
using namespace lattice_flows::poisson;
using lattice_flows::testing::ab_state;
using lattice_flows::testing::c_state;
using lattice_flows::testing::max_abs;

namespace {

// The 7x7 pi1 matrix as displayed, with the tau's expanded by hand.
Mat pi1_golden(const Vec& v) {
  const Complex t11 = v(0), t22 = v(2), t33 = v(4);
  const Complex t12 = v(0) * v(2) / v(1);
  const Complex t13 = v(0) * v(2) * v(4) / (v(1) * v(3));
  const Complex t23 = v(2) * v(4) / v(3);
  const Complex d = 0.5 * (v(6) - v(5));
  Mat P(7, 7);
  P << 0, t11, -t12, t12, -t13, 0.5 * t13, 0.5 * t13,
      -t11, 0, t22, -t22, t23, -0.5 * t23, -0.5 * t23,
      t12, -t22, 0, t22, -t23, 0.5 * t23, 0.5 * t23,
      -t12, t22, -t22, 0, t33, -0.5 * t33, -0.5 * t33,
      t13, -t23, t23, -t33, 0, 0.5 * t33, 0.5 * t33,
      -0.5 * t13, 0.5 * t23, -0.5 * t23, 0.5 * t33, -0.5 * t33, 0, d,
      -0.5 * t13, 0.5 * t23, -0.5 * t23, 0.5 * t33, -0.5 * t33, -d, 0;
  return P;
}

// The same matrix from the general tau rule, with tau from the library.
Mat pi1_from_tau(const State& s) {
  const Index n = s.size();
  Mat P = Mat::Zero(n, n);
  for (Index i = 1; i <= n - 2; ++i)
    for (Index j = i + 1; j <= n - 2; ++j) {
      const double sign = ((i + j - 1) % 2 == 0) ? 1.0 : -1.0;
      P(i - 1, j - 1) = sign * tau(s, i / 2 + 1, (j + 1) / 2);
    }
  for (Index i = 1; i <= n - 2; ++i) {
    const double sign = ((i + n) % 2 == 0) ? 1.0 : -1.0;
    P(i - 1, n - 2) = P(i - 1, n - 1) = 0.5 * sign * tau(s, i / 2 + 1, n / 2);
  }
  P(n - 2, n - 1) = 0.5 * (s[n - 1] - s[n - 2]);
  return Mat(P - P.transpose());
}

Index nonzero_upper(const Mat& P) {
  Index count = 0;
  for (Index i = 0; i < P.rows(); ++i)
    for (Index j = i + 1; j < P.cols(); ++j) count += std::abs(P(i, j)) > 0.0;
  return count;
}

}  // namespace

TEST_CASE("pi1-v reproduces the displayed 7x7 matrix", "[poisson]") {
  sampling::Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    const State v = sampling::random_v(rng, 7);
    const Mat P = poisson_matrix(StructureName::pi1_v, v);
    CHECK(max_abs(P - pi1_golden(v.coords())) < 1e-12);
    CHECK(max_abs(P - pi1_from_tau(v)) < 1e-12);
  }
  const State ones = State::volterra_v(Vec::Ones(7));
  CHECK(max_abs(poisson_matrix(StructureName::pi1_v, ones) - pi1_golden(ones.coords())) == 0.0);
}

TEST_CASE("tau definition", "[poisson]") {
  const State v = testing::v_state({2, 3, 5, 7, 11, 13, 17});
  CHECK(std::abs(tau(v, 1, 1) - 2.0) < 1e-15);
  CHECK(std::abs(tau(v, 1, 2) - 2.0 * 5.0 / 3.0) < 1e-14);
  CHECK(std::abs(tau(v, 2, 1) + 2.0 * 5.0 / 3.0) < 1e-14);
  CHECK(std::abs(tau(v, 2, 3) - 5.0 * 11.0 / 7.0) < 1e-14);
}

TEST_CASE("pi1-v needs odd n", "[poisson]") {
  CHECK_THROWS_AS(poisson_matrix(StructureName::pi1_v, State::volterra_v(Vec::Ones(6))), ParityError);
  CHECK_THROWS_AS(poisson_matrix(StructureName::pi1_ab, State::volterra_v(Vec::Ones(5))), ChartMismatch);
}

TEST_CASE("c-bracket is the displayed constant matrix", "[poisson]") {
  const Mat P = poisson_matrix(StructureName::c_bracket, c_state({3, 1, 4, 1, 5}));
  Mat want = Mat::Zero(5, 5);
  for (Index j = 0; j + 2 < 5; ++j) want(j, j + 1) = 1.0;
  want(2, 4) = 1.0;  // {c_{n-1}, c_{n+1}} with n + 1 = 5 c's
  want -= Mat(want.transpose());
  CHECK(max_abs(P - want) == 0.0);
}

TEST_CASE("pi1-ab entries at m = 2", "[poisson]") {
  const Mat P = poisson_matrix(StructureName::pi1_ab, ab_state({1, 1, 1}, {0, 0}));
  // coordinates a1 a2 a3 b1 b2
  CHECK(P(0, 3) == Complex(1.0));
  CHECK(P(1, 4) == Complex(0.5));
  CHECK(P(1, 3) == Complex(-0.5));
  CHECK(P(2, 4) == Complex(-1.0));
  CHECK(nonzero_upper(P) == 4);
}

TEST_CASE("every structure is antisymmetric", "[poisson][property]") {
  sampling::Rng rng(20);
  for (int t = 0; t < 10; ++t) {
    const State v7 = sampling::random_v(rng, 7);
    const State ab = sampling::random_ab(rng, 3);
    const State c = sampling::random_c(rng, 6);
    for (auto [name, s] : {std::pair{StructureName::pi1_v, v7}, std::pair{StructureName::pi3_v, v7},
                           std::pair{StructureName::pi1_ab, ab}, std::pair{StructureName::pi3_ab, ab},
                           std::pair{StructureName::c_bracket, c}}) {
      const Mat P = poisson_matrix(name, s);
      CHECK(max_abs(P + P.transpose()) < 1e-14);
    }
  }
}

TEST_CASE("bracket evaluation", "[poisson]") {
  const State c = c_state({0.5, 1.5, 0.7, 1.1, 0.9});
  const ScalarFunction c1 = [](const State& s) { return s[0]; };
  const ScalarFunction c2 = [](const State& s) { return s[1]; };
  CHECK(std::abs(bracket_eval(StructureName::c_bracket, c1, c2, c) - 1.0) < 1e-9);
  sampling::Rng rng(21);
  const State v = sampling::random_v(rng, 7);
  CHECK(std::abs(bracket_eval(StructureName::pi3_v, lax::casimir_F, lax::casimir_F, v)) < 1e-9);
  const State ab = sampling::random_ab(rng, 3);
  const Gradient g2 = [](const State& s) { return lax::trace_gradient(lax::LaxKind::ab, s, 2); };
  const Gradient g4 = [](const State& s) { return lax::trace_gradient(lax::LaxKind::ab, s, 4); };
  CHECK(std::abs(bracket_eval(StructureName::pi1_ab, g2, g4, ab)) < 1e-9);
}

TEST_CASE("jacobi identity", "[poisson][property]") {
  CHECK(jacobi_residual(StructureName::c_bracket, c_state({1, 2, 3, 4, 5})) == 0.0);
  sampling::Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    for (Index n : {5, 7}) {
      const State v = sampling::random_v(rng, n);
      CHECK(jacobi_residual(StructureName::pi1_v, v) < 1e-6);
      CHECK(jacobi_residual(StructureName::pi3_v, v) < 1e-6);
      CHECK(jacobi_residual(StructureName::pi1_v, v, kJacobiStep, Differencing::central) < 1e-6);
    }
    const State ab = sampling::random_ab(rng, 3);
    CHECK(jacobi_residual(StructureName::pi1_ab, ab) < 1e-6);
    CHECK(jacobi_residual(StructureName::pi3_ab, ab) < 1e-6);
  }
}

TEST_CASE("jacobi residual detects a non-Poisson tensor", "[poisson]") {
  // {x1, x2} = x3, {x2, x3} = x3, {x1, x3} = x2 fails the identity.
  const Tensor bad = [](const State& s) {
    Mat P = Mat::Zero(3, 3);
    P(0, 1) = s[2];
    P(1, 2) = s[2];
    P(0, 2) = s[1];
    return Mat(P - P.transpose());
  };
  CHECK(jacobi_residual(bad, testing::u_state({1, 2, 3})) > 0.1);
}

TEST_CASE("compatibility of the pencils", "[poisson][property]") {
  sampling::Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const State v = sampling::random_v(rng, 7);
    CHECK(std::abs(compatibility_residual(StructureName::pi1_v, StructureName::pi3_v, 0.0, v) -
                   jacobi_residual(StructureName::pi1_v, v)) < 1e-15);
    for (double l : {1.0, 2.5})
      CHECK(compatibility_residual(StructureName::pi1_v, StructureName::pi3_v, l, v) < 1e-6);
    const State ab = sampling::random_ab(rng, 3);
    CHECK(compatibility_residual(StructureName::pi1_ab, StructureName::pi3_ab, 1.0, ab) < 1e-6);
  }
  CHECK_THROWS_AS(compatibility_residual(StructureName::pi1_v, StructureName::pi1_ab, 1.0,
                                         State::volterra_v(Vec::Ones(5))),
                  ChartMismatch);
}

TEST_CASE("casimirs", "[poisson][property]") {
  sampling::Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    const State v = sampling::random_v(rng, 7);
    CHECK(casimir_residual(StructureName::pi1_v, lax::casimir_F_gradient, v) < 1e-10);
    for (Index m : {2, 3}) {
      const State ab = sampling::random_ab(rng, m);
      CHECK(casimir_residual(StructureName::pi1_ab, lax::casimir_C_gradient, ab) < 1e-10);
    }
  }
  const Gradient zero = [](const State& s) { return Vec(Vec::Zero(s.size())); };
  CHECK(casimir_residual(StructureName::pi3_v, zero, State::volterra_v(Vec::Ones(5))) == 0.0);
  // F is not a casimir of pi3.
  const State v = sampling::random_v(rng, 7);
  CHECK(casimir_residual(StructureName::pi3_v, lax::casimir_F_gradient, v) > 1e-3);
  CHECK(structure(StructureName::pi1_v).casimirs.front().name == "F");
  CHECK(structure(StructureName::pi1_ab).casimirs.front().name == "C");
}

TEST_CASE("lenard relation", "[poisson][property]") {
  sampling::Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    CHECK(lenard_residual(sampling::random_v(rng, 7)) < 1e-7);
    for (Index m : {2, 3}) {
      const State ab = sampling::random_ab(rng, m);
      CHECK(lenard_residual(ab) < 1e-7);
      CHECK(lenard_residual(ab, GradientMode::finite_difference) < 1e-7);
    }
  }
  CHECK(lenard_residual(ab_state({0, 0, 0}, {0, 0})) == 0.0);
  CHECK_THROWS_AS(lenard_residual(State::volterra_v(Vec::Ones(6))), ParityError);
}

TEST_CASE("the unscaled ab lenard relation fails", "[poisson]") {
  // pi3 grad H2 is exactly twice pi1 grad H4; dropping the factor leaves an O(1) residual.
  sampling::Rng rng(26);
  const State ab = sampling::random_ab(rng, 3);
  CHECK(lenard_residual_unscaled_ab(ab) > 1e-2);
  CHECK(lenard_residual(ab) < 1e-9);
}

TEST_CASE("hamiltonian flows", "[poisson][property]") {
  sampling::Rng rng(27);
  for (int t = 0; t < 20; ++t) {
    const State v = sampling::random_v(rng, 7);
    CHECK(hamiltonian_flow_check(StructureName::pi1_v, lax::vd_hamiltonian_gradient, systems::vd_field, v) <
          1e-8);
    const State ab = sampling::random_ab(rng, 3);
    CHECK(hamiltonian_flow_check(StructureName::pi1_ab, lax::h2_ab_gradient, systems::ab_field, ab) < 1e-8);
  }
  CHECK(hamiltonian_flow_check(StructureName::pi1_ab, lax::h2_ab_gradient, systems::ab_field,
                               ab_state({0, 0, 0}, {0, 0})) == 0.0);
}

TEST_CASE("brackets are images of one another", "[poisson][property]") {
  sampling::Rng rng(28);
  for (int t = 0; t < 10; ++t) {
    const State v = sampling::random_v(rng, 7);
    const Mat J = transforms::d_transform_jacobian(v);
    const State ab = transforms::d_transform(v);
    const Mat img1 = J * poisson_matrix(StructureName::pi1_v, v) * J.transpose();
    const Mat img3 = J * poisson_matrix(StructureName::pi3_v, v) * J.transpose();
    CHECK(max_abs(kPi1AbImageScale * img1 - poisson_matrix(StructureName::pi1_ab, ab)) < 1e-10);
    CHECK(max_abs(img3 - poisson_matrix(StructureName::pi3_ab, ab)) < 1e-10);

    const State c = sampling::random_c(rng, 6);
    const Mat cimg = transforms::pushforward_tensor(transforms::c_to_v, poisson_matrix(StructureName::c_bracket, c), c);
    const Mat pi3 = poisson_matrix(StructureName::pi3_v, transforms::c_to_v(c));
    CHECK(max_abs(cimg - kCBracketToPi3Scale * pi3) < 1e-8 * (1.0 + max_abs(pi3)));
  }
}

TEST_CASE("structure names round trip", "[poisson]") {
  for (auto n : {StructureName::c_bracket, StructureName::pi1_v, StructureName::pi3_v,
                 StructureName::pi1_ab, StructureName::pi3_ab})
    CHECK(structure_from_name(structure_name(n)) == n);
  CHECK(structure_name(StructureName::pi1_v) == "pi1-v");
  CHECK_THROWS_AS(structure_from_name("pi2"), Error);
}
