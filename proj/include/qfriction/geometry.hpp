#ifndef QFRICTION_GEOMETRY_HPP
#define QFRICTION_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>

#include "qfriction/constants.hpp"
#include "qfriction/units.hpp"

namespace qfriction {

// Dipole-orientation geometry factors
//   Phi_n = C(2n,n) [a_n axx + b_n ayy + azz] / (2^{2n+3} pi eps0),
// a_n = (2n+1)/(2(n+1)), b_n = 1/(2(n+1)), with axx.. the diagonal
// polarizability components in the motion frame (x = direction of motion,
// z = surface normal).

namespace detail {

inline void check_phi_index(int n) {
  if (n < 0 || n > 2) throw std::domain_error("geometry: n must be 0, 1 or 2");
}

inline double binom_2n_n(int n) {
  constexpr double v[3] = {1.0, 2.0, 6.0};
  return v[n];
}

inline double phi_a(int n) { return (2.0 * n + 1.0) / (2.0 * (n + 1.0)); }
inline double phi_b(int n) { return 1.0 / (2.0 * (n + 1.0)); }

inline double phi_prefactor(int n) {
  // C(2n,n) / (2^{2n+3} pi eps0)
  const double denom = std::pow(2.0, 2 * n + 3) * constants::pi *
                       constants::vacuum_permittivity;
  return binom_2n_n(n) / denom;
}

}  // namespace detail

inline double phi_n_from_diag(int n, double axx, double ayy, double azz) {
  detail::check_phi_index(n);
  return detail::phi_prefactor(n) *
         (detail::phi_a(n) * axx + detail::phi_b(n) * ayy + azz);
}

// Fixed-orientation Phi_n with the rank-one tensor alpha = 3 alpha0 d d
// (so that alpha0 = Tr[alpha]/3). Averaged-mode atoms must use the
// pair-averaged moments instead.
inline double phi_n(int n, const AtomParams& atom) {
  detail::check_phi_index(n);
  if (atom.orientation.mode != DipoleOrientation::Mode::fixed)
    throw std::domain_error("phi_n: fixed orientation required (use phi_pair_averaged)");
  const auto& d = atom.orientation.direction;
  const double a3 = 3.0 * atom.alpha0;
  return phi_n_from_diag(n, a3 * d[0] * d[0], a3 * d[1] * d[1], a3 * d[2] * d[2]);
}

// <Phi_n Phi_m> over uniformly random dipole direction, using the exact
// fourth moments <d_i^2 d_j^2> = 1/15 (i != j) and <d_i^4> = 1/5. The
// average is taken over the product, not factor by factor; only the product
// average reproduces the 29/35 local force ratio.
inline double phi_pair_averaged(int n, int m, double alpha0) {
  detail::check_phi_index(n);
  detail::check_phi_index(m);
  if (!(alpha0 >= 0.0)) throw std::domain_error("phi_pair_averaged: alpha0 must be >= 0");
  const double an = detail::phi_a(n), bn = detail::phi_b(n);
  const double am = detail::phi_a(m), bm = detail::phi_b(m);
  const double moment = (an * am + bn * bm + 1.0) / 5.0 +
                        (an * bm + am * bn + an + am + bn + bm) / 15.0;
  return detail::phi_prefactor(n) * detail::phi_prefactor(m) * 9.0 * alpha0 * alpha0 *
         moment;
}

// <Phi_n> singleton; by linearity this equals Phi_n of the isotropic tensor
// alpha_ii = alpha0 and evaluates to 2 K_n alpha0 since a_n + b_n = 1.
inline double phi_averaged(int n, double alpha0) {
  detail::check_phi_index(n);
  return phi_n_from_diag(n, alpha0, alpha0, alpha0);
}

}  // namespace qfriction

#endif
