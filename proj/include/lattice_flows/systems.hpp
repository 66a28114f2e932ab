#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/rootdata.hpp"
#include "lattice_flows/state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lattice_flows::systems {

enum class Family { A, B, C, D };

char family_letter(Family family) noexcept;
Family family_from_letter(char letter);

/// Kac-van Moerbeke lattice du_i/dt = u_i (u_{i+1} - u_{i-1}), u_0 = u_{n+1} = 0.
Vec km_field(const State& u);

/// Bogoyavlensky-Volterra lattice of the given family in the edge variables u.
/// Minimum sizes: A n>=2, B n>=3, C n>=3, D n>=5.
Vec bv_field(Family family, const State& u);
Index bv_min_dimension(Family family) noexcept;

/// Cartan data of the rank-r algebra used by c_field: the k_j and the signed
/// adjacency c_ij (c_ij = 1 for an edge with i<j, -1 for i>j, else 0).
struct CartanData {
  RealVec k;
  Eigen::MatrixXi c;
};
CartanData cartan_data(Family family, Index rank);
Index c_min_rank(Family family) noexcept;

/// dc_i/dt = -sum_j k_j c_ij / c_j.
Vec c_field(Family family, const State& c);

/// Volterra D-type lattice in rescaled variables v (n >= 4).
Vec vd_field(const State& v);

/// (a, b) system with m+1 a's and m b's obtained from the D-type Volterra lattice.
Vec ab_field(const State& s);

/// Number of b's m of an (a, b) state; throws unless the state has m+1 a's.
Index ab_order(const State& s);

/// Non-periodic Toda lattice in Flaschka variables: n-1 a's, n b's.
///   da_i/dt = a_i (b_{i+1} - b_i),  db_i/dt = 2 (a_i^2 - a_{i-1}^2).
Vec toda_field(const State& s);

/// Polynomial form of an exponential-interaction system after the generalized
/// Flaschka map: da_k/dt = a_k b_k, db_k/dt = sum_i M_ki a_i. N a's and N b's.
Vec spectrum_field(const rootdata::Spectrum& spectrum, const State& s);

struct Integrals {
  Complex f1;
  Complex f2;
};

/// F1 = sum lambda_i b_i, F2 = prod a_i^lambda_i (principal branch for
/// non-integer exponents). Throws DomainError for 0 raised to a negative power.
Integrals integrals_f1_f2(const State& s, const RealVec& lambda);

enum class Hamiltonian { toda, sklyanin, sklyanin_full };

/// Boundary couplings of the four-parameter Sklyanin Hamiltonian
/// alpha1 e^{q1} + beta1 e^{2 q1} + alphan e^{-qn} + betan e^{-2 qn}.
struct SklyaninCouplings {
  double alpha1 = 1.0;
  double beta1 = 1.0;
  double alphan = 1.0;
  double betan = 1.0;
};

Complex hamiltonian_eval(Hamiltonian system, const State& s,
                         const SklyaninCouplings& couplings = {});

/// Hamilton's equations (dq/dt, dp/dt) = (dH/dp, -dH/dq) with analytic partials.
Vec qp_field(Hamiltonian system, const State& s, const SklyaninCouplings& couplings = {});

/// H = |p|^2/2 + sum_i exp((v_i, q)) for an arbitrary spectrum, and its flow.
Complex exponential_hamiltonian(const rootdata::Spectrum& spectrum, const State& s);
Vec exponential_qp_field(const rootdata::Spectrum& spectrum, const State& s);

using Field = std::function<Vec(const State&)>;
using ScalarFunction = std::function<Complex(const State&)>;

struct NamedInvariant {
  std::string name;
  ScalarFunction evaluate;
};

/// An identified vector field with the bookkeeping needed to simulate it.
struct LatticeSystem {
  std::string id;
  Chart chart = Chart::volterra_u;
  Index dimension = 0;
  Field field;
  // Coordinates must keep a strictly positive real part along trajectories.
  bool positive_domain = false;
  std::vector<NamedInvariant> invariants;
};

}  // namespace lattice_flows::systems
