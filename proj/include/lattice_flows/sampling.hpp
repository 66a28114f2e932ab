#pragma once

#include "lattice_flows/core.hpp"
#include "lattice_flows/state.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace lattice_flows::sampling {

inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Seeded generator with a platform-independent mapping to doubles, so that
/// identical seeds give identical states (and byte-identical reports) everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits of one draw.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  RealVec uniform_vector(Index n, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

inline constexpr double kPositiveLo = 0.1;
inline constexpr double kPositiveHi = 2.0;
inline constexpr double kSignedLo = -1.0;
inline constexpr double kSignedHi = 1.0;

/// Coordinates in [0.1, 2] (positive) or [-1, 1].
State random_u(Rng& rng, Index n);
State random_v(Rng& rng, Index n);
State random_c(Rng& rng, Index r);
State random_qp(Rng& rng, Index n);
/// m+1 a's and m b's in [-1, 1], or in [0.1, 2] when positive.
State random_ab(Rng& rng, Index m, bool positive = false);
/// n-1 a's and n b's in [-1, 1].
State random_toda_ab(Rng& rng, Index n);

}  // namespace lattice_flows::sampling
