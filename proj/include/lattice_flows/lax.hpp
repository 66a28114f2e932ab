#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/state.hpp"

#include <string_view>
#include <vector>

namespace lattice_flows::lax {

enum class LaxKind { km, toda, vd, ab };

std::string_view lax_kind_name(LaxKind kind) noexcept;
LaxKind lax_kind_from_name(std::string_view name);

/// sign = +1 means dL/dt = [B, L], sign = -1 means dL/dt = [L, B].
struct LaxPair {
  Mat L;
  Mat B;
  int sign = 1;
  LaxKind kind = LaxKind::km;
  Index dim = 0;
};

/// Builds (L, B) at s.
///   km:   volterra_u, L tridiagonal (n+1)x(n+1) with a_i = sqrt(u_i / 2).
///   toda: flaschka_ab with n-1 a's and n b's, L = tridiag(b; a).
///   vd:   volterra_v (n >= 4), scalar border plus n-1 2x2 blocks, size 2n-1.
///   ab:   flaschka_ab with m+1 a's and m b's, size 2m.
/// km and vd take principal square roots and reject coordinates on the closed
/// nonpositive real axis (DomainError); complex values off that axis are accepted.
LaxPair build_lax(LaxKind kind, const State& s);

/// Partial derivatives dL/dx_i for every coordinate of s, from the closed-form entries.
std::vector<Mat> lax_derivatives(LaxKind kind, const State& s);

/// || sum_i f_i dL/dx_i - sign [B, L] ||_F.
double lax_residual(const LaxPair& pair, const Vec& field_value, const State& s);

/// H_k = tr(L^k) / k for each requested order.
std::vector<Complex> trace_invariants(const LaxPair& pair, const std::vector<int>& orders);

/// tr(L^k)/k and its analytic gradient tr(L^{k-1} dL/dx_i).
Complex trace_invariant(LaxKind kind, const State& s, int order);
Vec trace_gradient(LaxKind kind, const State& s, int order);

/// sum b_i^2 + a_1^2 + 2 sum_{i=2}^m a_i^2 + a_{m+1}^2.
Complex h2_ab(const State& s);
Vec h2_ab_gradient(const State& s);

/// C = a_1 a_2^2 ... a_m^2 a_{m+1}.
Complex casimir_C(const State& s);
Vec casimir_C_gradient(const State& s);

/// F = (v_n - v_{n-1}) prod_{i=1}^{n-2} v_i.
Complex casimir_F(const State& s);
Vec casimir_F_gradient(const State& s);

/// v_{n-2} v_n + 2 v_{n-1} v_n + sum_{i=1}^{n-2} v_i v_{i+1} + 1/2 sum_{i=2}^{n-2} v_i^2,
/// which equals tr(L^4)/8 for the vd Lax matrix; its pi1-v flow is vd_field.
Complex vd_hamiltonian(const State& s);
Vec vd_hamiltonian_gradient(const State& s);

}  // namespace lattice_flows::lax
