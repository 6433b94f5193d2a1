#pragma once

// Qubit / two-qubit state model: two-partite amplitudes, reduced density
// matrices in (A, B) form, Bloch coordinates, purification and the two
// state-comparison metrics (Uhlmann fidelity, squared Hilbert-Schmidt
// distance).

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qclone/linmath.hpp"

namespace qclone {

inline constexpr double kNormTol = 1e-12;

// Pure state of the qubit pair (signal qubit, spectator qubit):
//   |psi> = a00|00> + a01|01> + a10|10> + a11|11>,
// first index = signal qubit, second = spectator.
struct Amplitudes2Q {
  cplx a00{1.0}, a01{}, a10{}, a11{};

  double norm_sq() const {
    return std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
  }

  // Rescales to unit norm and removes the global phase so that the first
  // nonzero amplitude (preferring a00) is real and nonnegative.
  static Amplitudes2Q canonical(cplx a00, cplx a01, cplx a10, cplx a11,
                                double norm_tol = 1e-6) {
    const double n2 = std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
    if (!(std::abs(n2 - 1.0) <= norm_tol))
      throw std::invalid_argument("Amplitudes2Q: state not normalized");
    const double inv = 1.0 / std::sqrt(n2);
    cplx lead = a00;
    if (std::abs(lead) == 0.0) lead = std::abs(a01) > 0 ? a01 : (std::abs(a10) > 0 ? a10 : a11);
    const cplx phase = std::abs(lead) > 0 ? std::conj(lead) / std::abs(lead) : cplx(1.0);
    Amplitudes2Q s{phase * inv * a00, phase * inv * a01, phase * inv * a10, phase * inv * a11};
    if (std::abs(s.a00) > 0.0) s.a00 = cplx(std::abs(s.a00));
    return s;
  }

  CVector to_vector() const { return CVector{a00, a01, a10, a11}; }
};

inline void ensure_normalized(const Amplitudes2Q& psi, double tol = kNormTol) {
  if (std::abs(psi.norm_sq() - 1.0) > tol)
    throw std::invalid_argument("Amplitudes2Q: state not normalized");
}

// One-qubit density matrix  [[A, B], [conj(B), 1-A]]; Hermitian and trace-1
// by construction, PSD iff |B|^2 <= A(1-A).
struct QubitDensity {
  double A = 1.0;
  cplx B{};

  double C() const { return 1.0 - A; }
  bool is_psd(double tol = kPsdTol) const { return std::norm(B) <= A * (1.0 - A) + tol; }

  CMatrix to_matrix() const {
    return CMatrix(2, 2, {cplx(A), B, std::conj(B), cplx(1.0 - A)});
  }
  static QubitDensity from_matrix(const CMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2 || !m.is_hermitian())
      throw std::invalid_argument("QubitDensity: need 2x2 Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-10)
      throw std::invalid_argument("QubitDensity: trace != 1");
    return {m(0, 0).real(), m(0, 1)};
  }
};

inline void ensure_psd(const QubitDensity& rho) {
  if (!rho.is_psd())
    throw std::domain_error("QubitDensity: not positive semidefinite");
}

// Spherical Bloch coordinates; r in [0,1], theta in [0,pi], phi in [0,2pi).
struct BlochPoint {
  double r = 0.0, theta = 0.0, phi = 0.0;
};

// rho = Tr_spectator |psi><psi|
inline QubitDensity reduce_first(const Amplitudes2Q& psi) {
  ensure_normalized(psi);
  return {std::norm(psi.a00) + std::norm(psi.a01),
          psi.a00 * std::conj(psi.a10) + psi.a01 * std::conj(psi.a11)};
}

// Purification with the principal-square-root amplitude matrix: a_{ik} = sqrt(rho)[i][k].
// Automatically canonical (a00 real >= 0) since sqrt(rho) is Hermitian PSD.
inline Amplitudes2Q purify(const QubitDensity& rho) {
  ensure_psd(rho);
  const CMatrix m = sqrt_psd2(rho.to_matrix());
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

// Purification freedom: right-multiply the amplitude matrix by a unitary on
// the spectator factor. reduce_first is invariant under any such v.
inline Amplitudes2Q alt_purify(const QubitDensity& rho, const CMatrix& v) {
  if (v.rows() != 2 || v.cols() != 2) throw std::invalid_argument("alt_purify: need 2x2 unitary");
  if (max_abs_diff(v.adjoint() * v, CMatrix::identity(2)) > 1e-12)
    throw std::invalid_argument("alt_purify: matrix not unitary");
  ensure_psd(rho);
  const CMatrix m = sqrt_psd2(rho.to_matrix()) * v;
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

inline QubitDensity bloch_to_density(const BlochPoint& p) {
  if (!(p.r >= 0.0) || p.r > 1.0 + 1e-12)
    throw std::invalid_argument("bloch_to_density: radius outside [0,1]");
  if (!(p.theta >= -1e-12 && p.theta <= std::numbers::pi + 1e-12))
    throw std::invalid_argument("bloch_to_density: theta outside [0,pi]");
  const double A = 0.5 * (1.0 + p.r * std::cos(p.theta));
  const cplx B = 0.5 * p.r * std::sin(p.theta) * std::exp(cplx(0.0, -p.phi));
  return {A, B};
}

// Inverse map; degenerate angles resolve to 0 (theta and phi at r = 0,
// phi on the poles).
inline BlochPoint density_to_bloch(const QubitDensity& rho) {
  ensure_psd(rho);
  const double p3 = 2.0 * rho.A - 1.0;
  const double p1 = 2.0 * rho.B.real();
  const double p2 = -2.0 * rho.B.imag();
  const double rxy = std::hypot(p1, p2);
  const double r = std::min(std::hypot(rxy, p3), 1.0);
  if (r < 1e-15) return {0.0, 0.0, 0.0};
  const double theta = std::atan2(rxy, p3);
  double phi = rxy < 1e-15 ? 0.0 : std::atan2(p2, p1);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {r, theta, phi};
}

// Uhlmann fidelity, qubit closed form F = Tr(rho1 rho2) + 2 sqrt(det1 det2).
inline double fidelity(const QubitDensity& rho1, const QubitDensity& rho2) {
  ensure_psd(rho1);
  ensure_psd(rho2);
  const double tr = rho1.A * rho2.A + rho1.C() * rho2.C() +
                    2.0 * (rho1.B * std::conj(rho2.B)).real();
  const double det1 = std::max(rho1.A * rho1.C() - std::norm(rho1.B), 0.0);
  const double det2 = std::max(rho2.A * rho2.C() - std::norm(rho2.B), 0.0);
  return tr + 2.0 * std::sqrt(det1 * det2);
}

// Definitional route [Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2; kept as the
// independent check of the closed form above.
inline double fidelity_definitional(const QubitDensity& rho1, const QubitDensity& rho2) {
  ensure_psd(rho1);
  ensure_psd(rho2);
  const CMatrix s = sqrt_psd2(rho1.to_matrix());
  CMatrix inner_m = s * rho2.to_matrix() * s;
  inner_m(1, 0) = std::conj(inner_m(0, 1));
  inner_m(0, 0) = inner_m(0, 0).real();
  inner_m(1, 1) = inner_m(1, 1).real();
  const double tr = sqrt_psd2(inner_m).trace().real();
  return tr * tr;
}

// Tr[(m1-m2)^2] for Hermitian arguments = sum of |entry difference|^2.
inline double hs_dist_sq(const CMatrix& m1, const CMatrix& m2) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols() || !m1.square())
    throw std::invalid_argument("hs_dist_sq: need equal square shapes");
  if (!m1.is_hermitian() || !m2.is_hermitian())
    throw std::invalid_argument("hs_dist_sq: arguments must be Hermitian");
  double s = 0.0;
  for (std::size_t i = 0; i < m1.rows(); ++i)
    for (std::size_t j = 0; j < m1.cols(); ++j) s += std::norm(m1(i, j) - m2(i, j));
  return s;
}

}  // namespace qclone
