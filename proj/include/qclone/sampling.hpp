#pragma once

// Seeded generators for random states, densities, unitaries and machine
// parameters. Used by the verification suite and the tests; everything is
// driven by SampleRng so runs are reproducible.

#include <cmath>
#include <numbers>

#include "qclone/linmath.hpp"
#include "qclone/qcm.hpp"
#include "qclone/qstate.hpp"
#include "qclone/rng.hpp"

namespace qclone {

inline double gaussian(SampleRng& rng) {
  // Box-Muller; one value per call keeps the draw layout simple
  const double u1 = std::max(rng.uniform(), 1e-300);
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Haar-ish random two-qubit pure state: 8 Gaussians, normalized, canonical phase.
inline Amplitudes2Q random_pure_state(SampleRng& rng) {
  cplx a[4];
  double n2 = 0.0;
  for (cplx& z : a) {
    z = cplx(gaussian(rng), gaussian(rng));
    n2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(n2);
  return Amplitudes2Q::canonical(a[0] * inv, a[1] * inv, a[2] * inv, a[3] * inv, 1e-9);
}

// Uniform over the Bloch ball: isotropic direction, radius ~ u^(1/3).
inline QubitDensity random_density(SampleRng& rng) {
  double x = gaussian(rng), y = gaussian(rng), z = gaussian(rng);
  const double len = std::sqrt(x * x + y * y + z * z);
  const double r = std::cbrt(rng.uniform());
  if (len < 1e-12) return {0.5, 0.0};
  const double scale = r / len;
  x *= scale;
  y *= scale;
  z *= scale;
  return {0.5 * (1.0 + z), cplx(0.5 * x, -0.5 * y)};
}

// Random 2x2 unitary: U = e^{i d} [[ cos a e^{i b},  sin a e^{i c}],
//                                   [-sin a e^{-i c}, cos a e^{-i b}]]
inline CMatrix random_unitary2(SampleRng& rng) {
  const double alpha = std::asin(std::sqrt(rng.uniform()));
  const double beta = rng.uniform() * 2.0 * std::numbers::pi;
  const double gamma = rng.uniform() * 2.0 * std::numbers::pi;
  const double delta = rng.uniform() * 2.0 * std::numbers::pi;
  const cplx ph = std::polar(1.0, delta);
  CMatrix u(2, 2);
  u(0, 0) = ph * std::polar(std::cos(alpha), beta);
  u(0, 1) = ph * std::polar(std::sin(alpha), gamma);
  u(1, 0) = ph * -std::polar(std::sin(alpha), -gamma);
  u(1, 1) = ph * std::polar(std::cos(alpha), -beta);
  return u;
}

inline ClonerParams random_params(SampleRng& rng) {
  return {rng.uniform(), rng.uniform()};
}

}  // namespace qclone
