#pragma once

#include "lattice_flows/rootdata.hpp"
#include "lattice_flows/systems.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lattice_flows::registry {

/// Size and parameters of a system. `n` is the number of variables for km, bv-*,
/// c-* and vd, and the number of particles for toda; `m` is the order of ab,
/// sklyanin and sklyanin-full. toda runs in (q, p) or in Flaschka (a, b)
/// depending on `chart`.
struct SystemParams {
  Index n = 0;
  Index m = 0;
  std::optional<rootdata::Spectrum> spectrum;
  systems::SklyaninCouplings couplings;
  Chart chart = Chart::flaschka_ab;
};

const std::vector<std::string>& system_ids();

/// Throws UnsupportedDimension for unknown ids or sizes below the system's minimum.
///
/// Invariants by system:
///   km: H1..H{n+1} = tr(L^k)/k.
///   vd: H2, H4, .., H{n-1} with H_k = tr(L^{2k})/(2k) (degree k in v), F, h.
///   ab: H2, H4, .., H{2m} = tr(L^k)/k, C, h2.
///   toda: H1..Hn traces in (a, b), or the Hamiltonian H in (q, p).
///   sklyanin: H, plus H2..H{2m}, C and h2 evaluated on the Flaschka image.
///   sklyanin-full: H.   spectrum: F1, F2 (lambda from the first null combination).
///   c-*: Hlog = sum_j k_j log c_j.
systems::LatticeSystem make_system(std::string_view id, const SystemParams& params);

/// Looks up invariants by name; throws DimensionError naming the first unknown one.
std::vector<systems::NamedInvariant> select_invariants(const systems::LatticeSystem& system,
                                                       const std::vector<std::string>& names);

}  // namespace lattice_flows::registry
