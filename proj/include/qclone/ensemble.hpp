#pragma once

// State-ensemble parametrizations and the averaged objectives G(zeta, nu):
// the 6-dimensional pure-two-qubit-state average and the Bloch-ball average,
// each by deterministic Monte Carlo and by Gauss-Legendre product quadrature.
//
// Pure ensemble (angle box, weight sin^2 th1 sin th2, normalizer 1/pi^5):
//   a00 = cos th1,                    a01 = e^{i g1} sin th1 cos th2,
//   a10 = e^{i g2} sin th1 sin th2 cos th3,
//   a11 = e^{i g3} sin th1 sin th2 sin th3,
//   th in [0, pi/2], g in [0, 2pi).
// Mixed ensemble (Bloch ball, weight r^2 sin th, normalizer 3/(4 pi)):
//   A = (1 + r cos th)/2, |B| = r sin th / 2.
//
// The distance W is a quadratic polynomial in |B|^2 and the phase angles
// enter only through |B|, so both averages admit reduced quadratures (phases
// integrated analytically) that the full-dimensional forms must reproduce.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qclone/qcm.hpp"
#include "qclone/qstate.hpp"
#include "qclone/rng.hpp"

namespace qclone {

struct PureParam {
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0;
};

inline Amplitudes2Q pure_param_to_state(const PureParam& q) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  if (!in(q.theta1, 0.0, half_pi) || !in(q.theta2, 0.0, half_pi) || !in(q.theta3, 0.0, half_pi))
    throw std::invalid_argument("PureParam: theta outside [0, pi/2]");
  if (!in(q.gamma1, 0.0, two_pi) || !in(q.gamma2, 0.0, two_pi) || !in(q.gamma3, 0.0, two_pi))
    throw std::invalid_argument("PureParam: gamma outside [0, 2pi]");
  const double s1 = std::sin(q.theta1), c1 = std::cos(q.theta1);
  const double s2 = std::sin(q.theta2), c2 = std::cos(q.theta2);
  const double s3 = std::sin(q.theta3), c3 = std::cos(q.theta3);
  Amplitudes2Q psi;
  psi.a00 = c1;
  psi.a01 = std::polar(s1 * c2, q.gamma1);
  psi.a10 = std::polar(s1 * s2 * c3, q.gamma2);
  psi.a11 = std::polar(s1 * s2 * s3, q.gamma3);
  return psi;
}

enum class Method { monte_carlo, quadrature };
enum class EnsembleKind { pure, mixed };

struct AveragingScheme {
  Method method = Method::quadrature;
  std::uint64_t samples = 1'000'000;   // Monte Carlo
  std::size_t points_per_axis = 12;    // quadrature
  std::uint64_t seed = 42;             // Monte Carlo
  bool reduce_pure_phases = true;      // pure quadrature: integrate phases analytically
  bool reduce_mixed_phi = false;       // mixed quadrature: drop the exact phi axis
  unsigned threads = 0;                // 0 = hardware concurrency

  static AveragingScheme monte_carlo(std::uint64_t samples = 1'000'000,
                                     std::uint64_t seed = 42) {
    AveragingScheme s;
    s.method = Method::monte_carlo;
    s.samples = samples;
    s.seed = seed;
    return s;
  }
  static AveragingScheme quadrature(std::size_t points_per_axis = 12) {
    AveragingScheme s;
    s.method = Method::quadrature;
    s.points_per_axis = points_per_axis;
    return s;
  }
};

inline void ensure_scheme(const AveragingScheme& s) {
  if (s.method == Method::monte_carlo && s.samples < 1)
    throw std::invalid_argument("AveragingScheme: samples must be >= 1");
  if (s.method == Method::quadrature && (s.points_per_axis < 2 || s.points_per_axis > 256))
    throw std::invalid_argument("AveragingScheme: points_per_axis must be in [2, 256]");
}

struct ObjectiveEstimate {
  double value = 0.0;
  double std_error = 0.0;  // Monte Carlo only, 0 for quadrature
  std::uint64_t evaluations = 0;
  EnsembleKind ensemble = EnsembleKind::pure;
};

namespace detail {

struct QuadRule {
  std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton on the recurrence.
inline QuadRule gauss_legendre(std::size_t n) {
  QuadRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double p = 1.0, pm1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p = 1.0;
      pm1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / static_cast<double>(k);
        pm1 = p;
        p = pk;
      }
      const double dp = static_cast<double>(n) * (x * p - pm1) / (x * x - 1.0);
      const double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing pass after convergence
        p = 1.0;
        pm1 = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / static_cast<double>(k);
          pm1 = p;
          p = pk;
        }
        break;
      }
    }
    const double dp = static_cast<double>(n) * (x * p - pm1) / (x * x - 1.0);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    const double weight = 2.0 / ((1.0 - x * x) * dp * dp);
    r.w[i] = weight;
    r.w[n - 1 - i] = weight;
  }
  return r;
}

inline QuadRule scaled_rule(std::size_t n, double lo, double hi) {
  QuadRule r = gauss_legendre(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < n; ++i) {
    r.x[i] = mid + half * r.x[i];
    r.w[i] *= half;
  }
  return r;
}

// (A, |B|^2) of the reduced signal-qubit state at a pure-ensemble point;
// matches reduce_first(pure_param_to_state(q)) identically.
struct PurePoint {
  double a, b2;
};
inline PurePoint pure_point(double th1, double th2, double th3, double g1, double g2,
                            double g3) {
  const double s1 = std::sin(th1), c1 = std::cos(th1);
  const double s2 = std::sin(th2), c2 = std::cos(th2);
  const double s3 = std::sin(th3), c3 = std::cos(th3);
  const double t1 = c1 * s1 * s2 * c3;
  const double t2 = s1 * s1 * c2 * s2 * s3;
  const double a = c1 * c1 + s1 * s1 * c2 * c2;
  const double b2 = t1 * t1 + t2 * t2 + 2.0 * t1 * t2 * std::cos(g1 + g2 - g3);
  return {a, b2};
}

// Phase-averaged moments: E[|B|^2] = t1^2+t2^2, E[|B|^4] = (t1^2+t2^2)^2 + 2 t1^2 t2^2.
struct PureMoments {
  double a, b2, b4;
};
inline PureMoments pure_phase_avg(double th1, double th2, double th3) {
  const double s1 = std::sin(th1), c1 = std::cos(th1);
  const double s2 = std::sin(th2), c2 = std::cos(th2);
  const double s3 = std::sin(th3), c3 = std::cos(th3);
  const double t1 = c1 * s1 * s2 * c3;
  const double t2 = s1 * s1 * c2 * s2 * s3;
  const double a = c1 * c1 + s1 * s1 * c2 * c2;
  const double sum = t1 * t1 + t2 * t2;
  return {a, sum, sum * sum + 2.0 * t1 * t1 * t2 * t2};
}

// f(A, |B|^2, |B|^4) -> double is the averaged quantity (the distance W, or 1
// for the measure self-check).
template <class F>
ObjectiveEstimate average_pure(F&& f, const AveragingScheme& s) {
  ensure_scheme(s);
  constexpr double half_pi = std::numbers::pi / 2.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  ObjectiveEstimate est;
  est.ensemble = EnsembleKind::pure;

  if (s.method == Method::monte_carlo) {
    const auto mv = chunked_mean(s.samples, s.threads, [&](std::uint64_t i) {
      SampleRng rng(s.seed, i);
      const double th1 = rng.uniform() * half_pi;
      const double th2 = rng.uniform() * half_pi;
      const double th3 = rng.uniform() * half_pi;
      const double g1 = rng.uniform() * two_pi;
      const double g2 = rng.uniform() * two_pi;
      const double g3 = rng.uniform() * two_pi;
      const PurePoint pt = pure_point(th1, th2, th3, g1, g2, g3);
      const double s1 = std::sin(th1), s2 = std::sin(th2);
      // weight * f * (box volume / pi^5) = weight * f * pi
      return s1 * s1 * s2 * f(pt.a, pt.b2, pt.b2 * pt.b2) * std::numbers::pi;
    });
    est.value = mv.mean;
    est.std_error = mv.std_error;
    est.evaluations = s.samples;
    return est;
  }

  const std::size_t n = s.points_per_axis;
  const QuadRule th = scaled_rule(n, 0.0, half_pi);
  if (s.reduce_pure_phases) {
    // phases integrated exactly; 3 theta axes remain, normalizer (2pi)^3/pi^5
    const std::uint64_t total = static_cast<std::uint64_t>(n) * n * n;
    const double sum = chunked_sum(total, s.threads, [&](std::uint64_t idx) {
      const std::size_t i3 = idx % n;
      const std::size_t i2 = (idx / n) % n;
      const std::size_t i1 = idx / (n * n);
      const PureMoments m = pure_phase_avg(th.x[i1], th.x[i2], th.x[i3]);
      const double s1 = std::sin(th.x[i1]), s2 = std::sin(th.x[i2]);
      return th.w[i1] * th.w[i2] * th.w[i3] * s1 * s1 * s2 * f(m.a, m.b2, m.b4);
    });
    est.value = sum * 8.0 / (std::numbers::pi * std::numbers::pi);
    est.evaluations = total;
    return est;
  }

  const QuadRule ga = scaled_rule(n, 0.0, two_pi);
  const std::uint64_t n64 = n;
  const std::uint64_t total = n64 * n64 * n64 * n64 * n64 * n64;
  const double pi5 = std::pow(std::numbers::pi, 5);
  const double sum = chunked_sum(total, s.threads, [&](std::uint64_t idx) {
    const std::size_t i6 = idx % n64;
    const std::size_t i5 = (idx / n64) % n64;
    const std::size_t i4 = (idx / (n64 * n64)) % n64;
    const std::size_t i3 = (idx / (n64 * n64 * n64)) % n64;
    const std::size_t i2 = (idx / (n64 * n64 * n64 * n64)) % n64;
    const std::size_t i1 = idx / (n64 * n64 * n64 * n64 * n64);
    const PurePoint pt =
        pure_point(th.x[i1], th.x[i2], th.x[i3], ga.x[i4], ga.x[i5], ga.x[i6]);
    const double s1 = std::sin(th.x[i1]), s2 = std::sin(th.x[i2]);
    return th.w[i1] * th.w[i2] * th.w[i3] * ga.w[i4] * ga.w[i5] * ga.w[i6] * s1 * s1 * s2 *
           f(pt.a, pt.b2, pt.b2 * pt.b2);
  });
  est.value = sum / pi5;
  est.evaluations = total;
  return est;
}

template <class F>
ObjectiveEstimate average_mixed(F&& f, const AveragingScheme& s) {
  ensure_scheme(s);
  constexpr double pi = std::numbers::pi;
  ObjectiveEstimate est;
  est.ensemble = EnsembleKind::mixed;

  auto ball_point = [](double r, double theta) {
    const double a = 0.5 * (1.0 + r * std::cos(theta));
    const double b = 0.5 * r * std::sin(theta);
    return std::pair<double, double>{a, b * b};
  };

  if (s.method == Method::monte_carlo) {
    const auto mv = chunked_mean(s.samples, s.threads, [&](std::uint64_t i) {
      SampleRng rng(s.seed, i);
      const double r = rng.uniform();
      const double theta = rng.uniform() * pi;
      (void)rng.uniform();  // phi slot, kept so the draw layout is fixed
      const auto [a, b2] = ball_point(r, theta);
      // weight * f * (box volume * 3/(4pi)) = weight * f * 3pi/2
      return r * r * std::sin(theta) * f(a, b2, b2 * b2) * (1.5 * pi);
    });
    est.value = mv.mean;
    est.std_error = mv.std_error;
    est.evaluations = s.samples;
    return est;
  }

  const std::size_t n = s.points_per_axis;
  const QuadRule rr = scaled_rule(n, 0.0, 1.0);
  const QuadRule th = scaled_rule(n, 0.0, pi);
  if (s.reduce_mixed_phi) {
    // phi integral is exactly 2pi times the phi=0 slice
    const std::uint64_t total = static_cast<std::uint64_t>(n) * n;
    const double sum = chunked_sum(total, s.threads, [&](std::uint64_t idx) {
      const std::size_t it = idx % n;
      const std::size_t ir = idx / n;
      const auto [a, b2] = ball_point(rr.x[ir], th.x[it]);
      return rr.w[ir] * th.w[it] * rr.x[ir] * rr.x[ir] * std::sin(th.x[it]) *
             f(a, b2, b2 * b2);
    });
    est.value = sum * 2.0 * pi * 3.0 / (4.0 * pi);
    est.evaluations = total;
    return est;
  }

  const QuadRule ph = scaled_rule(n, 0.0, 2.0 * pi);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * n * n;
  const double sum = chunked_sum(total, s.threads, [&](std::uint64_t idx) {
    const std::size_t ip = idx % n;
    const std::size_t it = (idx / n) % n;
    const std::size_t ir = idx / (n * n);
    // |B| = r sin(th)/2 e^{-i phi} in magnitude; phi contributes measure only
    const auto [a, b2] = ball_point(rr.x[ir], th.x[it]);
    return rr.w[ir] * th.w[it] * ph.w[ip] * rr.x[ir] * rr.x[ir] * std::sin(th.x[it]) *
           f(a, b2, b2 * b2);
  });
  est.value = sum * 3.0 / (4.0 * pi);
  est.evaluations = total;
  return est;
}

}  // namespace detail

inline ObjectiveEstimate g_pure(const ClonerParams& p, const AveragingScheme& s) {
  ensure_params(p);
  return detail::average_pure(
      [&p](double a, double b2, double b4) { return detail::w_poly(p, a, b2, b4); }, s);
}

inline ObjectiveEstimate g_mixed(const ClonerParams& p, const AveragingScheme& s) {
  ensure_params(p);
  return detail::average_mixed(
      [&p](double a, double b2, double b4) { return detail::w_poly(p, a, b2, b4); }, s);
}

inline ObjectiveEstimate g_objective(EnsembleKind kind, const ClonerParams& p,
                                     const AveragingScheme& s) {
  return kind == EnsembleKind::pure ? g_pure(p, s) : g_mixed(p, s);
}

// Runs the corresponding average with integrand 1; must come back as 1, which
// validates the 1/pi^5 and 3/(4pi) normalizers against the weights.
inline double measure_selfcheck(EnsembleKind kind, const AveragingScheme& s) {
  auto one = [](double, double, double) { return 1.0; };
  return (kind == EnsembleKind::pure ? detail::average_pure(one, s)
                                     : detail::average_mixed(one, s))
      .value;
}

}  // namespace qclone
