#pragma once

#include "lattice_flows/sampling.hpp"
#include "lattice_flows/state.hpp"
#include "lattice_flows/transforms.hpp"

#include <cmath>

namespace lattice_flows::testing {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& x) {
  return x.size() == 0 ? 0.0 : static_cast<double>(x.cwiseAbs().maxCoeff());
}

inline Vec complex_vec(std::initializer_list<Complex> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

inline State u_state(std::initializer_list<Complex> xs) { return State::volterra_u(complex_vec(xs)); }
inline State v_state(std::initializer_list<Complex> xs) { return State::volterra_v(complex_vec(xs)); }
inline State c_state(std::initializer_list<Complex> xs) { return State::c_vars(complex_vec(xs)); }
inline State ab_state(std::initializer_list<Complex> a, std::initializer_list<Complex> b) {
  return State::ab(complex_vec(a), complex_vec(b));
}

// Inverse of d_transform, solved from the last variable backwards:
// u1 from a_{m+1}, then alternately b_j and a_j, and u_n, u_{n-1} from b_1 and a_1.
inline State d_transform_preimage(const State& ab) {
  const Index m = ab.size() - ab.split();
  const Index n = 2 * m + 1;
  const Vec a = ab.head();
  const Vec b = ab.tail();
  Vec u(n);
  auto U = [&](Index k) -> Complex& { return u(k - 1); };
  U(1) = -2.0 * kI * a(m);
  for (Index j = m; j >= 2; --j) {
    U(n - 2 * j + 1) = -2.0 * b(j - 1) - U(n - 2 * j);
    U(n - 2 * j + 2) = 4.0 * a(j - 1) * a(j - 1) / U(n - 2 * j + 1);
  }
  const Complex sum = -2.0 * b(0) - U(n - 2);
  const Complex diff = -2.0 * kI * a(0);
  U(n) = 0.5 * (sum + diff);
  U(n - 1) = 0.5 * (sum - diff);
  return State::volterra_v(u);
}

// Complex vd states whose flow is bounded: preimages of Sklyanin images of real (q, p).
inline State bounded_vd_state(sampling::Rng& rng, Index m) {
  return d_transform_preimage(transforms::sklyanin_flaschka(sampling::random_qp(rng, m)));
}

}  // namespace lattice_flows::testing
