#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/rootdata.hpp"
#include "lattice_flows/state.hpp"

#include <functional>
#include <string_view>

namespace lattice_flows::transforms {

using Map = std::function<State(const State&)>;
using Field = std::function<Vec(const State&)>;

/// KM variables u_1..u_n to Toda variables: floor(n/2) A's, floor(n/2)+1 B's,
///   A_i = -1/2 sqrt(u_{2i} u_{2i-1}),  B_i = 1/2 (u_{2i-1} + u_{2i-2}),  u_0 = u_{n+1} = 0.
State henon_map(const State& u);

/// Rows and columns 1, 3, 5, ... (1-based) of L^2.
Mat moser_reduce(const Mat& L);

/// Volterra variables u_1..u_n, n = 2m+1 >= 5, to (a, b) with m+1 a's and m b's.
/// Accepts volterra_u or volterra_v (the same lattice under renaming).
State d_transform(const State& u);

/// Exact Jacobian of d_transform, rows ordered as the (a, b) coordinates.
Mat d_transform_jacobian(const State& u);

/// (q, p) with m degrees of freedom to (a, b):
///   a_1 = e^{-q_1}/sqrt2, a_i = 1/2 e^{(q_{i-1}-q_i)/2}, a_{m+1} = e^{q_m}/sqrt2, b_i = -p_i/2.
State sklyanin_flaschka(const State& qp);

/// a_i = 1/2 e^{(v_i, q)/2}, b_i = -p_i/2.
State toda_flaschka(const State& qp, const rootdata::Spectrum& spectrum);

/// a_i = -e^{(v_i, q)}, b_i = (v_i, p).
State generalized_flaschka(const State& qp, const rootdata::Spectrum& spectrum);

/// n+1 c's to n v's (n >= 4):
///   v_1 = 1/(c_1 c_2), v_k = 2/(c_k c_{k+1}) for 2 <= k <= n-2,
///   v_{n-1} = 1/(c_{n-1} c_n), v_n = 1/(c_{n-1} c_{n+1}).
State c_to_v(const State& c);

constexpr double kDefaultFdStep = 1e-6;

/// || J_map(s) source(s) - target(map(s)) ||, with J_map applied to source(s) by
/// differencing along the normalized direction source(s). Central differences use
/// fd_step and accept complex directions; see Differencing for the other schemes.
double pushforward_residual(const Map& map, const Field& source, const Field& target,
                            const State& s, double fd_step = kDefaultFdStep,
                            Differencing scheme = Differencing::automatic);

/// Full Jacobian of map at s, one coordinate direction at a time.
Mat jacobian_fd(const Map& map, const State& s, double fd_step = kDefaultFdStep,
                Differencing scheme = Differencing::automatic);

/// J P J^T: the image of a bivector P at s under map.
Mat pushforward_tensor(const Map& map, const Mat& P, const State& s,
                       double fd_step = kDefaultFdStep,
                       Differencing scheme = Differencing::automatic);

}  // namespace lattice_flows::transforms
