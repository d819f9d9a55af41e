#ifndef QFRICTION_FRICTION_HPP
#define QFRICTION_FRICTION_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qfriction/constants.hpp"
#include "qfriction/geometry.hpp"
#include "qfriction/quadrature.hpp"
#include "qfriction/response.hpp"
#include "qfriction/units.hpp"

namespace qfriction {

// Surface moments of the low-frequency loss against the near-field kernel,
//   D_n(z_a) = Int_0^inf dp p^{2(n+1)} e^{-2 z_a p} r'_I(0, p),  n = 0, 1, 2.

struct DnResult {
  double value = 0.0;
  bool converged = true;
  unsigned warnings = 0;
};

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Local-optics closed form 2 (Gamma/omega_p^2) (2n+2)! / (2 z_a)^{2n+3}.
inline double d_n_local(int n, double z_a, const MetalParams& m) {
  if (n < 0 || n > 2) throw std::domain_error("d_n_local: n must be 0, 1 or 2");
  if (!(z_a > 0.0)) throw std::domain_error("d_n_local: z_a must be positive");
  return 2.0 * (m.gamma / (m.omega_p * m.omega_p)) * factorial(2 * n + 2) /
         std::pow(2.0 * z_a, 2 * n + 3);
}

// Numerical constants of the spatially dispersive asymptotics:
//   B_n = 4 exp(gamma_E - f_n), f_n = 7/3, 167/60, 433/140
//   C_n = (pi^2 - 4)/h_n,       h_n = 6, 10, 14
//   B0_tilde = sqrt(2) exp(gamma_E)
struct AsymptoticConstants {
  double B[3];
  double C[3];
  double B0_tilde;
};

inline AsymptoticConstants asymptotic_constants() {
  const double fn[3] = {7.0 / 3.0, 167.0 / 60.0, 433.0 / 140.0};
  const double hn[3] = {6.0, 10.0, 14.0};
  AsymptoticConstants k{};
  for (int n = 0; n < 3; ++n) {
    k.B[n] = 4.0 * std::exp(constants::euler_gamma - fn[n]);
    k.C[n] = (constants::pi * constants::pi - 4.0) / hn[n];
  }
  k.B0_tilde = std::sqrt(2.0) * std::exp(constants::euler_gamma);
  return k;
}

enum class DistanceBranch {
  beyond_screening_length,  // lambda_TF << z_a (< ell)
  below_screening_length    // z_a << lambda_TF
};

// Closed-form asymptotics of D_n in the spatially dispersive region; the
// caller selects the branch by comparing z_a with lambda_TF.
inline double d_n_nonlocal_asymptotic(int n, double z_a, const MetalParams& m,
                                      DistanceBranch branch) {
  if (n < 0 || n > 2) throw std::domain_error("d_n_nonlocal_asymptotic: n must be 0, 1 or 2");
  if (!(z_a > 0.0)) throw std::domain_error("d_n_nonlocal_asymptotic: z_a must be positive");
  const auto k = asymptotic_constants();
  const double lam = thomas_fermi_length(m);
  const double ell = mean_free_path(m);
  const double sqrt3 = std::sqrt(3.0);

  if (branch == DistanceBranch::beyond_screening_length) {
    const double L = std::log(k.B[n] * z_a / lam) + k.C[n] * z_a / ell;
    if (n == 0) return 4.0 * sqrt3 * lam / std::pow(2.0 * z_a, 4) * L / m.omega_p;
    return 2.0 * lam / sqrt3 * factorial(2 * n + 3) / std::pow(2.0 * z_a, 2 * n + 4) * L /
           m.omega_p;
  }
  if (n == 0) {
    const double L = std::log(k.B0_tilde * z_a / lam) -
                     constants::pi * z_a / (std::sqrt(2.0) * lam);
    return -L / (3.0 * sqrt3 * lam * lam * lam * m.omega_p);
  }
  return factorial(2 * n - 1) /
         (3.0 * sqrt3 * lam * lam * lam * std::pow(2.0 * z_a, 2 * n) * m.omega_p);
}

namespace detail {

inline unsigned distance_warnings(int n, double z_a, const MetalParams& m) {
  unsigned w = 0;
  if (z_a < 1e-10) w |= warn::short_distance;
  // kernel p^{2n+2} e^{-2 z p} peaks at p = (n+1)/z_a
  if ((n + 1.0) / z_a > 0.1 * fermi_wavevector(m)) w |= warn::beyond_fermi_scale;
  return w;
}

}  // namespace detail

inline DnResult d_n(int n, double z_a, const ResponseModel& model,
                    const QuadratureConfig& cfg) {
  if (n < 0 || n > 2) throw std::domain_error("d_n: n must be 0, 1 or 2");
  if (!(z_a > 0.0)) throw std::domain_error("d_n: z_a must be positive");

  DnResult out;
  out.warnings = detail::distance_warnings(n, z_a, model.metal);

  if (model.kind == SurfaceModel::drude_local) {
    // r'_I is exactly p-independent; only the Gamma integral is numerical
    const double rp = 2.0 * model.metal.gamma / (model.metal.omega_p * model.metal.omega_p);
    auto f = [n, z_a](double p) {
      return std::pow(p, 2 * (n + 1)) * std::exp(-2.0 * z_a * p);
    };
    auto r = integrate_semi_infinite(f, 1.0 / (2.0 * z_a), cfg);
    out.value = rp * r.value;
    out.converged = r.converged;
    return out;
  }

  bool inner_ok = true;
  auto f = [&](double p) {
    if (p <= 0.0) return 0.0;
    auto rp = r_prime_i(p, model, cfg);
    inner_ok = inner_ok && rp.converged;
    return std::pow(p, 2 * (n + 1)) * std::exp(-2.0 * z_a * p) * rp.value;
  };
  auto r = integrate_semi_infinite(f, 1.0 / (2.0 * z_a), cfg);
  out.value = r.value;
  out.converged = r.converged && inner_ok;
  return out;
}

// Static frequency shift Delta(0,0) (rad^2/s^2) from the near-field Green
// tensor at zero frequency. After the angular integration,
//   Delta(0,0) = omega_a^2 C_alpha/(4 pi eps0) Int dp p^2 e^{-2 z p} r(0, p),
// with C_alpha = (axx + ayy)/2 + azz in the motion frame.
inline RealResult delta_static(double z_a, const AtomParams& atom,
                               const ResponseModel& model, const QuadratureConfig& cfg) {
  if (!(z_a > 0.0)) throw std::domain_error("delta_static: z_a must be positive");
  atom.validate();
  if (atom.alpha0 == 0.0) return {0.0, true};

  double c_alpha;
  if (atom.orientation.mode == DipoleOrientation::Mode::fixed) {
    const auto& d = atom.orientation.direction;
    c_alpha = 3.0 * atom.alpha0 * (0.5 * (d[0] * d[0] + d[1] * d[1]) + d[2] * d[2]);
  } else {
    c_alpha = 2.0 * atom.alpha0;  // isotropic tensor
  }

  bool inner_ok = true;
  auto f = [&](double p) {
    if (p <= 0.0) return 0.0;
    auto r = reflection(0.0, p, model, cfg);
    inner_ok = inner_ok && r.converged;
    return p * p * std::exp(-2.0 * z_a * p) * r.value.real();
  };
  auto r = integrate_semi_infinite(f, 1.0 / (2.0 * z_a), cfg);
  const double delta = atom.omega_a * atom.omega_a * c_alpha /
                       (4.0 * constants::pi * constants::vacuum_permittivity) * r.value;
  return {delta, r.converged && inner_ok};
}

// Static radiative damping gamma(0,0) = omega_a^2 Phi_0 D_0(z_a).
inline RealResult gamma_static(double z_a, const AtomParams& atom,
                               const ResponseModel& model, const QuadratureConfig& cfg) {
  if (!(z_a > 0.0)) throw std::domain_error("gamma_static: z_a must be positive");
  atom.validate();
  const double phi0 = atom.orientation.mode == DipoleOrientation::Mode::fixed
                          ? phi_n(0, atom)
                          : phi_averaged(0, atom.alpha0);
  auto d0 = d_n(0, z_a, model, cfg);
  return {atom.omega_a * atom.omega_a * phi0 * d0.value, d0.converged};
}

struct DampingKind {
  enum class Kind { radiative, intrinsic };
  Kind kind = Kind::radiative;
  double gamma_int = 0.0;  // rad/s, intrinsic mode only

  static DampingKind radiative() { return {}; }
  static DampingKind intrinsic(double g) {
    if (!(g > 0.0)) throw std::invalid_argument("DampingKind: gamma_int must be positive");
    return {Kind::intrinsic, g};
  }
};

// Low-velocity force breakdown at one (z_a, v_x). Friction opposes the
// motion: all force values are negative for v_x > 0. In intrinsic-damping
// mode the nonequilibrium J-term is outside the treatment and reported as
// not applicable.
struct ForceBreakdown {
  double f_lte = 0.0;                 // N
  std::optional<double> f_j;          // N; absent in intrinsic mode
  double f_total = 0.0;               // N
  double f_lte_local_ref = 0.0;       // local-optics LTE normalization, N
  double ratio_total = 0.0;           // f_total / f_lte_local_ref
  std::optional<double> ratio_j_lte;  // f_j / f_lte; absent in intrinsic mode
  double correction_factor = 1.0;     // [1 - Delta(0,0)/omega_a^2]^{-2}
  bool converged = true;
  unsigned warnings = 0;
};

// Closed-form local-optics, orientation-averaged LTE force
//   -hbar (189 / 2 pi^3) (alpha0 Gamma / (eps0 omega_p^2))^2 v^3 / (2 z)^10.
inline double f_lte_local_closed_form(double z_a, double v_x, double alpha0,
                                      const MetalParams& m) {
  const double coupling = alpha0 * m.gamma /
                          (constants::vacuum_permittivity * m.omega_p * m.omega_p);
  return -constants::hbar * (189.0 / (2.0 * std::pow(constants::pi, 3))) * coupling *
         coupling * std::pow(v_x, 3) / std::pow(2.0 * z_a, 10);
}

inline ForceBreakdown force_lowv(double z_a, double v_x, const AtomParams& atom,
                                 const ResponseModel& model, const DampingKind& damping,
                                 const QuadratureConfig& cfg,
                                 bool include_static_shift = true) {
  if (!(z_a > 0.0)) throw std::domain_error("force_lowv: z_a must be positive");
  if (!(v_x > 0.0)) throw std::domain_error("force_lowv: v_x must be positive");
  atom.validate();

  ForceBreakdown out;
  if (z_a < 1e-10) out.warnings |= warn::short_distance;
  if (v_x > 0.1 * model.metal.v_f) out.warnings |= warn::high_velocity;

  const bool fixed = atom.orientation.mode == DipoleOrientation::Mode::fixed;
  const double vcube = v_x * v_x * v_x;
  const double pref = 2.0 * constants::hbar * vcube / constants::pi;

  if (damping.kind == DampingKind::Kind::intrinsic) {
    // F = -2 hbar v^3/pi (Phi_2/3)(gamma_int/omega_a^2) D_2; the frequency
    // shift vanishes by definition of this damping model. Normalized against
    // the same expression with the local-optics D_2.
    const double phi2 = fixed ? phi_n(2, atom) : phi_averaged(2, atom.alpha0);
    const double strength = phi2 / 3.0 * damping.gamma_int / (atom.omega_a * atom.omega_a);
    auto d2 = d_n(2, z_a, model, cfg);
    out.warnings |= d2.warnings;
    out.f_lte = -pref * strength * d2.value;
    out.f_total = out.f_lte;
    out.f_lte_local_ref = -pref * strength * d_n_local(2, z_a, model.metal);
    out.ratio_total = out.f_total / out.f_lte_local_ref;
    out.correction_factor = 1.0;
    out.converged = d2.converged;
    return out;
  }

  const double phi02 = fixed ? phi_n(0, atom) * phi_n(2, atom)
                             : phi_pair_averaged(0, 2, atom.alpha0);
  const double phi11 = fixed ? phi_n(1, atom) * phi_n(1, atom)
                             : phi_pair_averaged(1, 1, atom.alpha0);

  auto d0 = d_n(0, z_a, model, cfg);
  auto d1 = d_n(1, z_a, model, cfg);
  auto d2 = d_n(2, z_a, model, cfg);
  out.warnings |= d0.warnings | d1.warnings | d2.warnings;
  bool ok = d0.converged && d1.converged && d2.converged;

  double corr = 1.0;
  if (include_static_shift) {
    auto ds = delta_static(z_a, atom, model, cfg);
    ok = ok && ds.converged;
    const double x = 1.0 - ds.value / (atom.omega_a * atom.omega_a);
    corr = 1.0 / (x * x);
  }
  out.correction_factor = corr;

  out.f_lte = -pref * (phi02 / 3.0) * d0.value * d2.value * corr;
  out.f_j = -pref * phi11 * d1.value * d1.value * corr;
  out.f_total = out.f_lte + *out.f_j;
  out.f_lte_local_ref = f_lte_local_closed_form(z_a, v_x, atom.alpha0, model.metal);
  out.ratio_total = out.f_total / out.f_lte_local_ref;
  out.ratio_j_lte = *out.f_j / out.f_lte;
  out.converged = ok;
  return out;
}

// Closed-form distance asymptotics of the normalized force in the window
// lambda_TF << z_a < ell.
struct ForceRatioAsymptotic {
  double lte = 0.0;            // F_LTE / F_LTE_local
  std::optional<double> j;     // F_J / F_LTE_local; absent in intrinsic mode
  double total() const { return lte + j.value_or(0.0); }
};

inline ForceRatioAsymptotic force_ratio_asymp(double z_a, const MetalParams& m,
                                              const DampingKind& damping) {
  if (!(z_a > 0.0)) throw std::domain_error("force_ratio_asymp: z_a must be positive");
  const auto k = asymptotic_constants();
  const double lam = thomas_fermi_length(m);
  const double ell = mean_free_path(m);
  const double x = 2.0 * z_a / lam;
  auto L = [&](int n) { return std::log(k.B[n] * z_a / lam) + k.C[n] * z_a / ell; };

  ForceRatioAsymptotic out;
  if (damping.kind == DampingKind::Kind::intrinsic) {
    out.lte = 7.0 / std::sqrt(3.0) * (m.omega_p / m.gamma) * L(2) / x;
    return out;
  }
  const double wg2 = (m.omega_p / m.gamma) * (m.omega_p / m.gamma);
  out.lte = wg2 * L(0) * L(2) / (x * x / 7.0);
  // The J-term coefficient is 145/21: it follows from the D_n asymptotics
  // together with the product-averaged orientation moments, and it is the
  // value consistent with both the local 29/35 ratio and the numerically
  // computed force in the overlap window.
  out.j = (145.0 / 21.0) * wg2 * (L(1) / x) * (L(1) / x);
  return out;
}

}  // namespace qfriction

#endif
