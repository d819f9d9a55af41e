#ifndef QFRICTION_QUADRATURE_HPP
#define QFRICTION_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace qfriction {

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;  // floor in integrand units
  int max_subdivisions = 2000;
};

template <class T>
struct IntegralResult {
  T value{};
  T error_estimate{};  // per-component for complex values
  long evaluations = 0;
  bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1]. Open rule: no endpoint evaluation,
// so integrable endpoint singularities (log, inverse square root) are fine.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights belong to the odd-index Kronrod nodes (1, 3, 5, 7).
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class T>
inline constexpr int component_count = std::is_same_v<T, std::complex<double>> ? 2 : 1;

inline double component(double v, int) { return v; }
inline double component(const std::complex<double>& v, int i) {
  return i == 0 ? v.real() : v.imag();
}

inline void set_component(double& v, int, double x) { v = x; }
inline void set_component(std::complex<double>& v, int i, double x) {
  if (i == 0)
    v.real(x);
  else
    v.imag(x);
}

template <class T>
struct Panel {
  double a = 0.0, b = 0.0;
  T integral{};
  T err{};
  double worst = 0.0;  // max component error, heap priority
};

// One Gauss-Kronrod 7/15 application with a QUADPACK-style error estimate,
// computed per component so that real and imaginary parts carry their own
// error bars on a shared subdivision.
template <class T, class F>
Panel<T> gk15_panel(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(mid - half * kXgk[j]);
    fv[14 - j] = f(mid + half * kXgk[j]);
  }
  fv[7] = f(mid);

  Panel<T> panel;
  panel.a = a;
  panel.b = b;

  constexpr int nc = component_count<T>;
  const double uflow = std::numeric_limits<double>::min();
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();

  for (int c = 0; c < nc; ++c) {
    double g[15];
    for (int j = 0; j < 15; ++j) g[j] = component(fv[j], c);

    double resk = kWgk[7] * g[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
      resk += kWgk[j] * (g[j] + g[14 - j]);
      resabs += kWgk[j] * (std::abs(g[j]) + std::abs(g[14 - j]));
    }
    double resg = kWg[3] * g[7];
    for (int j = 0; j < 3; ++j) resg += kWg[j] * (g[2 * j + 1] + g[13 - 2 * j]);

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(g[7] - reskh);
    for (int j = 0; j < 7; ++j)
      resasc += kWgk[j] * (std::abs(g[j] - reskh) + std::abs(g[14 - j] - reskh));

    resabs *= half;
    resasc *= half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / eps50) err = std::max(eps50 * resabs, err);

    set_component(panel.integral, c, resk * half);
    set_component(panel.err, c, err);
    panel.worst = std::max(panel.worst, err);
  }
  return panel;
}

template <class T>
bool totals_within_tol(const T& value, const T& err, const QuadratureConfig& cfg) {
  for (int c = 0; c < component_count<T>; ++c) {
    const double bound =
        std::max(cfg.rel_tol * std::abs(component(value, c)), cfg.abs_tol);
    if (!(component(err, c) <= bound)) return false;
  }
  return true;
}

}  // namespace detail

// Globally adaptive quadrature on a finite interval: bisect the panel with
// the largest local error until every component of the accumulated error
// estimate meets max(rel_tol * |value|, abs_tol) or the subdivision budget
// is exhausted. Never returns a silent wrong answer: converged is false
// whenever the tolerance contract was not met.
template <class F, class T = std::decay_t<std::invoke_result_t<F&, double>>>
IntegralResult<T> integrate_finite(F&& f, double a, double b,
                                   const QuadratureConfig& cfg = {}) {
  if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a < b");
  if (!(cfg.rel_tol > 0.0) || cfg.max_subdivisions < 1)
    throw std::invalid_argument("integrate_finite: invalid QuadratureConfig");

  using detail::Panel;
  std::vector<Panel<T>> heap;
  heap.reserve(64);
  auto by_worst = [](const Panel<T>& x, const Panel<T>& y) { return x.worst < y.worst; };

  IntegralResult<T> out;
  heap.push_back(detail::gk15_panel<T>(f, a, b));
  out.evaluations = 15;

  auto accumulate = [&heap](T& value, T& err) {
    value = T{};
    err = T{};
    for (const auto& p : heap) {
      value += p.integral;
      err += p.err;
    }
  };

  accumulate(out.value, out.error_estimate);
  while (!detail::totals_within_tol(out.value, out.error_estimate, cfg)) {
    if (static_cast<int>(heap.size()) >= cfg.max_subdivisions) {
      out.converged = false;
      return out;
    }
    std::pop_heap(heap.begin(), heap.end(), by_worst);
    Panel<T> worst = heap.back();
    heap.pop_back();
    if (worst.worst == 0.0 || !(worst.b - worst.a > 0.0) ||
        0.5 * (worst.a + worst.b) <= worst.a || 0.5 * (worst.a + worst.b) >= worst.b) {
      // interval no longer splittable at double precision
      heap.push_back(worst);
      out.converged = false;
      return out;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    heap.push_back(detail::gk15_panel<T>(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), by_worst);
    heap.push_back(detail::gk15_panel<T>(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), by_worst);
    out.evaluations += 30;
    accumulate(out.value, out.error_estimate);
  }
  out.converged = true;
  return out;
}

// Integral over [0, inf) via the rational map s = scale * t / (1 - t).
// scale is the caller-supplied physical decay length of the integrand;
// the t = 1 endpoint is never evaluated (open rule).
template <class F, class T = std::decay_t<std::invoke_result_t<F&, double>>>
IntegralResult<T> integrate_semi_infinite(F&& f, double scale,
                                          const QuadratureConfig& cfg = {}) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("integrate_semi_infinite: scale must be positive and finite");
  auto mapped = [&f, scale](double t) {
    const double om = 1.0 - t;
    const double s = scale * t / om;
    const double jac = scale / (om * om);
    return f(s) * jac;
  };
  return integrate_finite(mapped, 0.0, 1.0, cfg);
}

struct DerivResult {
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
};

// One-sided derivative at 0+ of a smooth f with f(0) = 0, from difference
// quotients f(h)/h on the geometric ladder h0, h0/2, ... with Richardson
// extrapolation. Stops when successive diagonal estimates agree to 1e-8
// relative, or after 8 rungs (reported via the converged flag).
template <class F>
DerivResult deriv_at_zero_plus(F&& f, double h0) {
  if (!(h0 > 0.0) || !std::isfinite(h0))
    throw std::invalid_argument("deriv_at_zero_plus: h0 must be positive and finite");

  constexpr int max_rungs = 8;
  constexpr double agree_tol = 1e-8;
  double table[max_rungs][max_rungs];

  DerivResult out;
  double h = h0;
  double prev_diag = 0.0;
  for (int i = 0; i < max_rungs; ++i, h *= 0.5) {
    table[i][0] = f(h) / h;
    ++out.evaluations;
    double p2 = 1.0;
    for (int j = 1; j <= i; ++j) {
      p2 *= 2.0;
      table[i][j] = (p2 * table[i][j - 1] - table[i - 1][j - 1]) / (p2 - 1.0);
    }
    const double diag = table[i][i];
    if (i > 0 &&
        std::abs(diag - prev_diag) <=
            agree_tol * std::max(std::abs(diag), std::numeric_limits<double>::min())) {
      out.value = diag;
      out.converged = true;
      return out;
    }
    prev_diag = diag;
  }
  out.value = prev_diag;
  out.converged = false;
  return out;
}

}  // namespace qfriction

#endif
