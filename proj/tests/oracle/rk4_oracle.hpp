#pragma once

// Test-only reference path for the phase-plane intercept and the semi-wave
// speed: classical fixed-step RK4 on dp/dq and plain bisection. Shares no
// code with the library beyond the problem statement, and is restricted to
// the logistic family u(1 - u/K).

#include <cmath>

namespace oracle {

struct Medium {
  double d;
  double beta;
  double mu;
};

// drift_sign: +1 for the leftward frame (c + beta), -1 for rightward
// (c - beta), 0 for the advection-free problem.
inline double drift(double c, const Medium& m, int drift_sign) { return c + drift_sign * m.beta; }

inline double logistic(double u, double capacity) { return u * (1.0 - u / capacity); }

/// P(0) by RK4 with step h in q, departing the saddle at q = K - delta.
/// Returns 0 if p reaches zero before q = 0.
inline double intercept(double a, double d, double capacity = 1.0, double h = 1e-6,
                        double delta = 1e-8) {
  // dp/dq = a/d - f(q)/(d p); linearization at (K, 0) with f'(K) = -1.
  const double stable = (a - std::sqrt(a * a + 4.0 * d)) / (2.0 * d);
  double q = capacity - delta;
  double p = -stable * delta;
  const auto rhs = [&](double qq, double pp) { return a / d - logistic(qq, capacity) / (d * pp); };
  while (q > 0.0) {
    const double step = std::min(h, q);
    const double k1 = rhs(q, p);
    const double k2 = rhs(q - 0.5 * step, p - 0.5 * step * k1);
    const double k3 = rhs(q - 0.5 * step, p - 0.5 * step * k2);
    const double k4 = rhs(q - step, p - step * k3);
    p -= step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    q -= step;
    if (!(p > 0.0)) return 0.0;
    if (q < step * 1e-6) q = 0.0;
  }
  return p;
}

/// Root of P(c) - c/mu on [0, ceiling - 1e-9] by bisection to width tol.
inline double speed(const Medium& m, int drift_sign, double capacity = 1.0, double tol = 1e-12,
                    double h = 1e-6) {
  const double ceiling = 2.0 * std::sqrt(m.d) - drift_sign * m.beta;
  double lo = 0.0;
  double hi = ceiling - 1e-9;
  const auto zeta = [&](double c) {
    return intercept(drift(c, m, drift_sign), m.d, capacity, h) - c / m.mu;
  };
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (zeta(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
