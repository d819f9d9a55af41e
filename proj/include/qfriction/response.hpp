#ifndef QFRICTION_RESPONSE_HPP
#define QFRICTION_RESPONSE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfriction/constants.hpp"
#include "qfriction/quadrature.hpp"
#include "qfriction/units.hpp"

namespace qfriction {

struct ComplexResult {
  std::complex<double> value{};
  bool converged = true;
};

struct RealResult {
  double value = 0.0;
  bool converged = true;
};

enum class SurfaceModel { scib, drude_local, thomas_fermi_static, nonlocal_asymptotic };

// Tagged choice of surface response used by the reflection coefficient.
struct ResponseModel {
  SurfaceModel kind = SurfaceModel::scib;
  MetalParams metal;

  static ResponseModel scib(const MetalParams& m) { return {SurfaceModel::scib, m}; }
  static ResponseModel drude_local(const MetalParams& m) {
    return {SurfaceModel::drude_local, m};
  }
  static ResponseModel thomas_fermi_static(const MetalParams& m) {
    return {SurfaceModel::thomas_fermi_static, m};
  }
  static ResponseModel nonlocal_asymptotic(const MetalParams& m) {
    return {SurfaceModel::nonlocal_asymptotic, m};
  }
};

inline const char* to_string(SurfaceModel m) {
  switch (m) {
    case SurfaceModel::scib: return "scib";
    case SurfaceModel::drude_local: return "drude_local";
    case SurfaceModel::thomas_fermi_static: return "thomas_fermi_static";
    case SurfaceModel::nonlocal_asymptotic: return "nonlocal_asymptotic";
  }
  return "?";
}

namespace detail {

// Log[(u+1)/(u-1)], principal branch. For real u inside the pair-excitation
// interval |u| < 1 the boundary value is the Im u -> 0+ limit, where the
// argument of the logarithm approaches the negative real axis from below,
// hence the -i pi branch.
inline std::complex<double> lindhard_log_term(std::complex<double> u) {
  if (u.imag() == 0.0) {
    const double x = u.real();
    const double ax = std::abs(x);
    if (ax == 1.0) throw std::domain_error("lindhard_f: u = +-1 is a branch point");
    if (ax < 1.0) {
      const double lr = std::log(std::abs((x + 1.0) / (x - 1.0)));
      return {lr, -constants::pi};
    }
    return {std::log((x + 1.0) / (x - 1.0)), 0.0};
  }
  const std::complex<double> one{1.0, 0.0};
  return std::log((u + one) / (u - one));
}

inline std::complex<double> lindhard_f_log_form(std::complex<double> u) {
  return 1.0 - 0.5 * u * lindhard_log_term(u);
}

// Large-|u| series  f(u) = -sum_{n>=1} u^{-2n}/(2n+1); the direct form loses
// all significant digits there through cancellation against 1.
inline std::complex<double> lindhard_f_series(std::complex<double> u) {
  const std::complex<double> s = 1.0 / (u * u);
  std::complex<double> acc{0.0, 0.0};
  for (int n = 14; n >= 1; --n) acc = s * (1.0 / (2.0 * n + 1.0) + acc);
  return -acc;
}

inline constexpr double lindhard_series_threshold = 4.0;

// f(u) - 1 without cancellation: the log form gives it as a pure product.
inline std::complex<double> lindhard_f_minus_one(std::complex<double> u) {
  if (std::abs(u) >= lindhard_series_threshold) return lindhard_f_series(u) - 1.0;
  return -0.5 * u * lindhard_log_term(u);
}

}  // namespace detail

// Longitudinal Lindhard function of the semiclassical electron gas.
inline std::complex<double> lindhard_f(std::complex<double> u) {
  if (u == std::complex<double>(1.0, 0.0) || u == std::complex<double>(-1.0, 0.0))
    throw std::domain_error("lindhard_f: u = +-1 is a branch point");
  if (std::abs(u) >= detail::lindhard_series_threshold) return detail::lindhard_f_series(u);
  return detail::lindhard_f_log_form(u);
}

// Semiclassical (Boltzmann-Lindhard) longitudinal dielectric function,
// u = (omega + i Gamma)/(v_F k). Valid for k well below the Fermi
// wavevector. At omega = 0 it reduces exactly to the Thomas-Fermi form
// 1 + 1/(k lambda_TF)^2 for any Gamma >= 0.
inline std::complex<double> epsilon_l(double omega, double k, const MetalParams& m) {
  if (!(k > 0.0)) throw std::domain_error("epsilon_l: k must be positive (use epsilon_drude)");
  const double lam = thomas_fermi_length(m);
  if (omega == 0.0) {
    const double kl = k * lam;
    return {1.0 + 1.0 / (kl * kl), 0.0};
  }
  const std::complex<double> w{omega, m.gamma};
  const std::complex<double> u = w / (m.v_f * k);
  const std::complex<double> fl = lindhard_f(u);
  return 1.0 + (m.omega_p * m.omega_p / w) * 3.0 * u * u * fl /
                   (omega + std::complex<double>(0.0, m.gamma) * fl);
}

// Same dielectric function through the factorized route
//   eps = eps_TF(k) * [1 + (f-1) x / ((1 + k^2 lam^2)(x + i f))],
// with x = omega ell / v_F (the collisionless limit drops the x-ratio).
// Used as an independent algebraic cross-check of epsilon_l.
inline std::complex<double> epsilon_l_factored(double omega, double k, const MetalParams& m) {
  if (!(k > 0.0)) throw std::domain_error("epsilon_l_factored: k must be positive");
  const double lam = thomas_fermi_length(m);
  const double kl2 = (k * lam) * (k * lam);
  const double eps_tf = 1.0 + 1.0 / kl2;
  if (omega == 0.0 && m.gamma == 0.0) return {eps_tf, 0.0};
  const std::complex<double> u = std::complex<double>(omega, m.gamma) / (m.v_f * k);
  const std::complex<double> fm1 = detail::lindhard_f_minus_one(u);
  std::complex<double> mixing;
  if (m.gamma == 0.0) {
    mixing = fm1 / (1.0 + kl2);
  } else {
    const double x = omega / m.gamma;  // = kappa_F ell - i, purely real
    const std::complex<double> f = fm1 + 1.0;
    mixing = fm1 * x / ((1.0 + kl2) * (x + std::complex<double>(0.0, 1.0) * f));
  }
  return eps_tf * (1.0 + mixing);
}

// Local Drude permittivity 1 - omega_p^2 / (omega (omega + i Gamma)).
inline std::complex<double> epsilon_drude(double omega, const MetalParams& m) {
  if (omega == 0.0) throw std::domain_error("epsilon_drude: pole at omega = 0");
  const std::complex<double> w{omega, m.gamma};
  return 1.0 - m.omega_p * m.omega_p / (omega * w);
}

// Analytic closed form of the Landau-damping weight function
//   Q(a,b) = a^2(a^2+1)/sqrt(3) * Int_0^1 dx (1+bx)/sqrt(1-x^2) x^3/(a^2+x^2)^2.
// The a -> 0 limit is 0; below 1e-8 the logarithmic small-a branch is used.
inline double q_function(double a, double b) {
  if (!(a > 0.0)) throw std::domain_error("q_function: requires a > 0 (limit at a=0 is 0)");
  if (!(b >= 0.0)) throw std::domain_error("q_function: requires b >= 0");
  const double sqrt3 = std::sqrt(3.0);
  if (a < 1e-8) {
    return -(2.0 / sqrt3) * 0.5 * a * a *
           (std::log(0.5 * a) + 0.5 * (1.0 - constants::pi * b));
  }
  const double s = std::sqrt(a * a + 1.0);
  const double term_log = (a * a + 2.0) / s * std::asinh(1.0 / a);
  const double term_b = (a * a + 1.0 - a * (a * a + 1.5) / s) * constants::pi * b;
  return a * a / (2.0 * sqrt3) * (term_log - 1.0 + term_b);
}

// Direct quadrature of the defining integral; testing companion of q_function.
inline RealResult q_function_quadrature(double a, double b, const QuadratureConfig& cfg) {
  if (!(a > 0.0)) throw std::domain_error("q_function_quadrature: requires a > 0");
  auto integrand = [a, b](double x) {
    return (1.0 + b * x) / std::sqrt((1.0 - x) * (1.0 + x)) * x * x * x /
           ((a * a + x * x) * (a * a + x * x));
  };
  auto r = integrate_finite(integrand, 0.0, 1.0, cfg);
  return {a * a * (a * a + 1.0) / std::sqrt(3.0) * r.value, r.converged};
}

// Transverse-magnetic surface impedance ratio Z/Z0 in the non-retarded limit.
//
// SCIB evaluates (2/pi) Int_0^inf dq p / (k^2 eps_l(omega, k)), k^2 = p^2+q^2.
// The q axis is pre-split at the Landau branch point |u| = 1, i.e. at
// q* = sqrt(|kappa_F|^2 - p^2) when positive (for Gamma -> 0 the integrand has
// a genuine interior log singularity there), and at geometric multiples of p
// below q* so the k ~ p knee of the integrand is never missed by the first
// coarse panels.
inline ComplexResult impedance_ratio(double omega, double p, const ResponseModel& model,
                                     const QuadratureConfig& cfg) {
  if (!(p > 0.0)) throw std::domain_error("impedance_ratio: p must be positive");
  const MetalParams& m = model.metal;
  const double lam = thomas_fermi_length(m);

  switch (model.kind) {
    case SurfaceModel::drude_local: {
      if (omega == 0.0) return {{0.0, 0.0}, true};  // 1/eps_D -> 0
      return {1.0 / epsilon_drude(omega, m), true};
    }
    case SurfaceModel::thomas_fermi_static: {
      const double a = p * lam;
      return {{a / std::sqrt(1.0 + a * a), 0.0}, true};
    }
    case SurfaceModel::nonlocal_asymptotic: {
      const double a = p * lam;
      const double ell = mean_free_path(m);
      const double b = (constants::pi * constants::pi - 4.0) / (2.0 * constants::pi * p * ell);
      const double re = a / std::sqrt(1.0 + a * a);
      const double im = -(omega / m.omega_p) * q_function(a, b) / (a * (1.0 + a * a));
      return {{re, im}, true};
    }
    case SurfaceModel::scib:
      break;
  }

  auto integrand = [omega, p, &m](double q) {
    const double k = std::hypot(p, q);
    return p / (k * k * epsilon_l(omega, k, m));
  };

  const double kappa = std::hypot(omega, m.gamma) / m.v_f;
  std::complex<double> total{0.0, 0.0};
  bool converged = true;

  double tail_start = 0.0;
  if (kappa > p) {
    const double qstar = std::sqrt((kappa - p) * (kappa + p));
    std::vector<double> edges{0.0};
    for (double e = p; e < 0.5 * qstar; e *= 10.0) edges.push_back(e);
    edges.push_back(qstar);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      auto r = integrate_finite(integrand, edges[i], edges[i + 1], cfg);
      total += r.value;
      converged = converged && r.converged;
    }
    tail_start = qstar;
  }
  auto tail = [&integrand, tail_start](double s) { return integrand(tail_start + s); };
  auto rt = integrate_semi_infinite(tail, std::max(p, std::max(kappa, 1e-30)), cfg);
  total += rt.value;
  converged = converged && rt.converged;

  return {(2.0 / constants::pi) * total, converged};
}

// r = (1 - Z/Z0) / (1 + Z/Z0).
inline std::complex<double> reflection_from_impedance(std::complex<double> z_ratio) {
  return (1.0 - z_ratio) / (1.0 + z_ratio);
}

inline ComplexResult reflection(double omega, double p, const ResponseModel& model,
                                const QuadratureConfig& cfg) {
  auto z = impedance_ratio(omega, p, model, cfg);
  return {reflection_from_impedance(z.value), z.converged};
}

// Wavevector-dependent resistivity rho(p) from the Ohmic low-frequency form
// r_I(omega, p) = 2 omega eps0 rho(p). Derived in the spatially dispersive
// regime; the validity flag marks p ell >= 1.
struct ResistivityPoint {
  double rho = 0.0;            // Ohm m
  bool nonlocal_regime = true;  // p * ell >= 1, where the expression was derived
};

inline ResistivityPoint rho_p(double p, const MetalParams& m) {
  if (!(p > 0.0)) throw std::domain_error("rho_p: p must be positive");
  const double lam = thomas_fermi_length(m);
  const double ell = mean_free_path(m);
  const double a = p * lam;
  const double b = (constants::pi * constants::pi - 4.0) / (2.0 * constants::pi * p * ell);
  const double denom = constants::vacuum_permittivity * m.omega_p * a *
                       (std::sqrt(1.0 + a * a) + a) * (std::sqrt(1.0 + a * a) + a);
  return {q_function(a, b) / denom, p * ell >= 1.0};
}

// d r_I / d omega at omega = 0. Exact for the local Drude model; otherwise a
// Richardson ladder on the reflection coefficient with step anchored to the
// smallest physical frequency scale at this wavevector.
inline RealResult r_prime_i(double p, const ResponseModel& model,
                            const QuadratureConfig& cfg) {
  if (!(p > 0.0)) throw std::domain_error("r_prime_i: p must be positive");
  const MetalParams& m = model.metal;
  if (model.kind == SurfaceModel::drude_local)
    return {2.0 * m.gamma / (m.omega_p * m.omega_p), true};

  const double scale = m.gamma > 0.0 ? std::min(m.gamma, m.v_f * p) : m.v_f * p;
  const double h0 = 1e-3 * scale;
  bool inner_ok = true;
  auto r_imag = [&](double w) {
    auto r = reflection(w, p, model, cfg);
    inner_ok = inner_ok && r.converged;
    return r.value.imag();
  };
  auto d = deriv_at_zero_plus(r_imag, h0);
  return {d.value, d.converged && inner_ok};
}

}  // namespace qfriction

#endif
