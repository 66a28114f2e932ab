#include "lattice_flows/sampling.hpp"

namespace lattice_flows::sampling {

RealVec Rng::uniform_vector(Index n, double lo, double hi) {
  RealVec x(n);
  for (Index i = 0; i < n; ++i) x(i) = uniform(lo, hi);
  return x;
}

State random_u(Rng& rng, Index n) {
  return State::volterra_u(to_complex(rng.uniform_vector(n, kPositiveLo, kPositiveHi)));
}

State random_v(Rng& rng, Index n) {
  return State::volterra_v(to_complex(rng.uniform_vector(n, kPositiveLo, kPositiveHi)));
}

// c-variables appear in denominators; they are drawn from the positive range.
State random_c(Rng& rng, Index r) {
  return State::c_vars(to_complex(rng.uniform_vector(r, kPositiveLo, kPositiveHi)));
}

State random_qp(Rng& rng, Index n) {
  const Vec q = to_complex(rng.uniform_vector(n, kSignedLo, kSignedHi));
  const Vec p = to_complex(rng.uniform_vector(n, kSignedLo, kSignedHi));
  return State::qp(q, p);
}

State random_ab(Rng& rng, Index m, bool positive) {
  const double lo = positive ? kPositiveLo : kSignedLo;
  const double hi = positive ? kPositiveHi : kSignedHi;
  const Vec a = to_complex(rng.uniform_vector(m + 1, lo, hi));
  const Vec b = to_complex(rng.uniform_vector(m, lo, hi));
  return State::ab(a, b);
}

State random_toda_ab(Rng& rng, Index n) {
  const Vec a = to_complex(rng.uniform_vector(n - 1, kSignedLo, kSignedHi));
  const Vec b = to_complex(rng.uniform_vector(n, kSignedLo, kSignedHi));
  return State::ab(a, b);
}

}  // namespace lattice_flows::sampling
