#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/state.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lattice_flows::poisson {

enum class StructureName { c_bracket, pi1_v, pi3_v, pi1_ab, pi3_ab };

std::string_view structure_name(StructureName name) noexcept;
StructureName structure_from_name(std::string_view name);

using Tensor = std::function<Mat(const State&)>;
using ScalarFunction = std::function<Complex(const State&)>;
using Gradient = std::function<Vec(const State&)>;

struct NamedCasimir {
  std::string name;
  ScalarFunction value;
  Gradient gradient;
};

struct PoissonStructure {
  StructureName name;
  Chart chart;
  Tensor evaluate;
  int degree;  // polynomial degree of the entries; -1 for rational (pi1-v)
  std::vector<NamedCasimir> casimirs;
};

PoissonStructure structure(StructureName name);

/// The bracket matrix at s, built from the upper-triangle relations and mirrored.
///   c-bracket: c_vars (r >= 4), {c_j, c_{j+1}} = 1 for j < r-1 and {c_{r-2}, c_r} = 1.
///   pi1-v: volterra_v with odd n >= 5 (ParityError for even n).
///   pi3-v: volterra_v with n >= 4.
///   pi1-ab: flaschka_ab with m >= 1, with {a_{i+1}, b_i} = -a_{i+1}/2.
///   pi3-ab: flaschka_ab with m >= 2.
Mat poisson_matrix(StructureName name, const State& s);

/// tau_ij of the pi1-v bracket (1-based): tau_ii = v_{2i-1},
/// tau_ij = v_{2i-1} prod_{k=i}^{j-1} v_{2k+1}/v_{2k} for i < j, tau_ji = -tau_ij.
Complex tau(const State& v, Index i, Index j);

// Scale factors between brackets that agree only up to a constant:
//   pi1-ab = kPi1AbImageScale * (image of pi1-v under the d-map)
//   image of the c-bracket under c_to_v = kCBracketToPi3Scale * pi3-v
//   pi3-ab grad H2 = kAbLenardScale * pi1-ab grad H4  (H_k = tr(L^k)/k)
constexpr double kPi1AbImageScale = 2.0;
constexpr double kCBracketToPi3Scale = 0.5;
constexpr double kAbLenardScale = 2.0;

constexpr double kGradientStep = 1e-6;
constexpr double kJacobiStep = 1e-5;

Vec fd_gradient(const ScalarFunction& f, const State& s, double fd_step = kGradientStep);

Complex bracket_eval(StructureName name, const ScalarFunction& f, const ScalarFunction& g,
                     const State& s, double fd_step = kGradientStep);
Complex bracket_eval(StructureName name, const Gradient& grad_f, const Gradient& grad_g,
                     const State& s);

/// max over (i, j, k) of |sum_l P_il d_l P_jk + P_jl d_l P_ki + P_kl d_l P_ij|,
/// with the partials d_l by differencing (central steps of fd_step, or complex steps).
double jacobi_residual(const Tensor& P, const State& s, double fd_step = kJacobiStep,
                       Differencing scheme = Differencing::automatic);
double jacobi_residual(StructureName name, const State& s, double fd_step = kJacobiStep,
                       Differencing scheme = Differencing::automatic);

/// Jacobi residual of the pencil P1 + lambda P2.
double compatibility_residual(StructureName first, StructureName second, double lambda,
                              const State& s, double fd_step = kJacobiStep,
                              Differencing scheme = Differencing::automatic);

/// || P(s) grad C(s) ||.
double casimir_residual(StructureName name, const Gradient& grad_c, const State& s);

enum class GradientMode { finite_difference, analytic };

/// v chart (odd n): || pi3 grad(tr L^4/4) - pi1 grad(tr L^8/8) ||.
/// ab chart: || pi3 grad H2 - kAbLenardScale * pi1 grad H4 || with H_k = tr(L^k)/k.
/// Finite differences use kGradientStep.
double lenard_residual(const State& s, GradientMode mode = GradientMode::analytic);

/// The unscaled ab relation || pi3 grad H2 - pi1 grad H4 || (kept to document the factor).
double lenard_residual_unscaled_ab(const State& s);

/// || P(s) grad H(s) - field(s) ||.
double hamiltonian_flow_check(StructureName name, const Gradient& grad_h,
                              const std::function<Vec(const State&)>& field, const State& s);

}  // namespace lattice_flows::poisson
