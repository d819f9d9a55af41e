#ifndef QFRICTION_UNITS_HPP
#define QFRICTION_UNITS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "qfriction/constants.hpp"

namespace qfriction {

// Internal unit system is SI throughout, with angular frequencies in rad/s.
// eV and c-fraction inputs are converted at the construction boundary.

inline double ev_to_angular(double energy_ev) {
  return energy_ev * constants::electron_volt / constants::hbar;
}

inline double angular_to_ev(double omega) {
  return omega * constants::hbar / constants::electron_volt;
}

// Diagnostic flags attached to computed results. Computation proceeds; the
// caller decides whether to surface them.
namespace warn {
inline constexpr unsigned short_distance = 1u << 0;   // z_a below 1 Angstrom
inline constexpr unsigned high_velocity = 1u << 1;    // v_x above v_F/10
inline constexpr unsigned beyond_fermi_scale = 1u << 2;  // dominant p above k_F/10
inline constexpr unsigned outside_asymptotic_validity = 1u << 3;  // p*ell < 1
}  // namespace warn

struct MetalParams {
  double omega_p = 0.0;  // plasma frequency, rad/s
  double gamma = 0.0;    // collision rate, rad/s
  double v_f = 0.0;      // Fermi velocity, m/s

  static MetalParams from_ev(double omega_p_ev, double gamma_ev, double v_f_over_c) {
    MetalParams m{ev_to_angular(omega_p_ev), ev_to_angular(gamma_ev),
                  v_f_over_c * constants::speed_of_light};
    m.validate();
    return m;
  }

  void validate() const {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p))
      throw std::invalid_argument("MetalParams: omega_p must be positive and finite");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
      throw std::invalid_argument("MetalParams: gamma must be non-negative and finite");
    if (!(v_f > 0.0) || !(v_f < constants::speed_of_light))
      throw std::invalid_argument("MetalParams: v_f must satisfy 0 < v_f < c");
  }
};

// Derived length and wavevector scales of the metal.
struct LengthScales {
  double ell = 0.0;        // electron mean free path v_F/gamma; +inf when gamma = 0
  double lambda_tf = 0.0;  // Thomas-Fermi screening length v_F/(sqrt(3) omega_p)
  double v_f = 0.0;
  double gamma = 0.0;

  std::complex<double> kappa_f_at(double omega) const {
    return {omega / v_f, gamma / v_f};
  }
};

inline LengthScales derived_scales(const MetalParams& m) {
  m.validate();
  LengthScales s;
  s.ell = m.gamma > 0.0 ? m.v_f / m.gamma : std::numeric_limits<double>::infinity();
  s.lambda_tf = m.v_f / (std::sqrt(3.0) * m.omega_p);
  s.v_f = m.v_f;
  s.gamma = m.gamma;
  return s;
}

inline double thomas_fermi_length(const MetalParams& m) {
  return m.v_f / (std::sqrt(3.0) * m.omega_p);
}

inline double mean_free_path(const MetalParams& m) {
  return m.gamma > 0.0 ? m.v_f / m.gamma : std::numeric_limits<double>::infinity();
}

// Semiclassical validity scale: the description holds for p well below k_F.
inline double fermi_wavevector(const MetalParams& m) {
  return constants::electron_mass * m.v_f / constants::hbar;
}

// Local-optics resistivity Gamma/(eps0 omega_p^2), the reference scale for rho(p).
inline double rho_local(const MetalParams& m) {
  return m.gamma / (constants::vacuum_permittivity * m.omega_p * m.omega_p);
}

struct DipoleOrientation {
  enum class Mode { fixed, averaged };
  Mode mode = Mode::averaged;
  std::array<double, 3> direction{0.0, 0.0, 1.0};  // unit vector, fixed mode only

  static DipoleOrientation averaged() { return {}; }

  static DipoleOrientation along(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n))
      throw std::invalid_argument("DipoleOrientation: direction must be a nonzero vector");
    return {Mode::fixed, {x / n, y / n, z / n}};
  }
};

struct AtomParams {
  double alpha0 = 0.0;   // static polarizability Tr[alpha]/3, SI (C m^2/V)
  double omega_a = 0.0;  // dipolar resonance frequency, rad/s
  DipoleOrientation orientation = DipoleOrientation::averaged();

  void validate() const {
    if (!(alpha0 >= 0.0) || !std::isfinite(alpha0))
      throw std::invalid_argument("AtomParams: alpha0 must be non-negative and finite");
    if (!(omega_a > 0.0) || !std::isfinite(omega_a))
      throw std::invalid_argument("AtomParams: omega_a must be positive and finite");
  }
};

// Artifact defaults: the reference parameter set used by the CLI and the
// validation suite. Metal: omega_p = 9 eV, Gamma = 30 meV, v_F = c/137
// (gold-like). Atom: alpha0 = 4 pi eps0 x 47.3 A^3, omega_a = 1.6 eV
// (rubidium-scale); the atom only enters absolute forces, never the
// normalized ratios.
inline MetalParams default_metal() { return MetalParams::from_ev(9.0, 0.030, 1.0 / 137.0); }

inline AtomParams default_atom() {
  AtomParams a;
  a.alpha0 = 4.0 * constants::pi * constants::vacuum_permittivity * 47.3e-30;
  a.omega_a = ev_to_angular(1.6);
  a.orientation = DipoleOrientation::averaged();
  return a;
}

}  // namespace qfriction

#endif
