#pragma once

// The symmetric partial cloning machine. Copies the signal qubit of a
// two-qubit state into a blank qubit, using a 4-dimensional ancilla.
//
// Layout of the full space: clone1 (x) clone2 (x) spectator (x) ancilla,
// dimensions 2,2,2,4, composite index ((i1*2+i2)*2+i3)*4+i4 per the global
// convention in linmath.hpp. The machine is defined on the symmetric
// two-clone subspace spanned by
//   phi1 = |00>,  phi2 = (|10>+|01>)/sqrt(2),  phi3 = |11>,
// with machine parameters (zeta, nu) fixing the ancilla frame.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qclone/linmath.hpp"
#include "qclone/qstate.hpp"

namespace qclone {

struct ClonerParams {
  double zeta = 0.5;
  double nu = 1.0;
};

inline void ensure_params(const ClonerParams& p) {
  if (!(p.zeta >= 0.0 && p.zeta <= 1.0))
    throw std::invalid_argument("ClonerParams: zeta outside [0,1]");
  if (!(p.nu >= 0.0 && p.nu <= 1.0))
    throw std::invalid_argument("ClonerParams: nu outside [0,1]");
}

// Symmetric-subspace basis of the two clone qubits (dim-4 vectors), plus the
// antisymmetric singlet used by the structure checks.
inline const CVector& sym_phi1() {
  static const CVector v{1.0, 0.0, 0.0, 0.0};
  return v;
}
inline const CVector& sym_phi2() {
  static const CVector v{0.0, 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, 0.0};
  return v;
}
inline const CVector& sym_phi3() {
  static const CVector v{0.0, 0.0, 0.0, 1.0};
  return v;
}
inline const CVector& antisym_singlet() {
  static const CVector v{0.0, -1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, 0.0};
  return v;
}

// Concrete ancilla vectors realizing the frame constraints
//   <q0|q0> = <q1|q1> = zeta,      <y0|y0> = <y1|y1> = 1 - zeta,
//   <q0|q1> = <y0|y1> = <q0|y0> = <q1|y1> = 0,
//   <y1|q0> = <q1|y0> = nu sqrt((1-zeta) zeta).
// Dimension 4 is the smallest that satisfies all of them for every (zeta, nu);
// at nu = 1 the pairs (q0, y1) and (q1, y0) become parallel.
struct AncillaFrame {
  CVector q0, q1, y0, y1;
  ClonerParams params;
};

inline AncillaFrame build_ancilla_frame(const ClonerParams& p) {
  ensure_params(p);
  const double sz = std::sqrt(p.zeta);
  const double sy = std::sqrt(1.0 - p.zeta);
  const double snu = std::sqrt(std::max(0.0, 1.0 - p.nu * p.nu));
  AncillaFrame f;
  f.q0 = CVector{sz, 0.0, 0.0, 0.0};
  f.q1 = CVector{0.0, sz, 0.0, 0.0};
  f.y0 = CVector{0.0, sy * p.nu, sy * snu, 0.0};
  f.y1 = CVector{sy * p.nu, 0.0, 0.0, sy * snu};
  f.params = p;
  return f;
}

// Worst violation of the eight frame constraints.
inline double frame_deviation(const AncillaFrame& f) {
  const double zeta = f.params.zeta;
  const double cross = f.params.nu * std::sqrt((1.0 - zeta) * zeta);
  double worst = 0.0;
  auto track = [&worst](cplx actual, double expected) {
    worst = std::max(worst, std::abs(actual - cplx(expected)));
  };
  track(inner(f.q0, f.q0), zeta);
  track(inner(f.q1, f.q1), zeta);
  track(inner(f.y0, f.y0), 1.0 - zeta);
  track(inner(f.y1, f.y1), 1.0 - zeta);
  track(inner(f.q0, f.q1), 0.0);
  track(inner(f.y0, f.y1), 0.0);
  track(inner(f.q0, f.y0), 0.0);
  track(inner(f.q1, f.y1), 0.0);
  track(inner(f.y1, f.q0), cross);
  track(inner(f.q1, f.y0), cross);
  return worst;
}

inline void ensure_frame(const AncillaFrame& f) {
  if (f.q0.dim() != 4 || f.q1.dim() != 4 || f.y0.dim() != 4 || f.y1.dim() != 4)
    throw std::invalid_argument("AncillaFrame: ancilla vectors must have dimension 4");
  ensure_params(f.params);
  if (frame_deviation(f) > kHermTol)
    throw std::invalid_argument("AncillaFrame: frame constraints violated");
}

// Full output state |Xi> (dim 32) of the machine on clone1 (x) clone2 (x)
// spectator (x) ancilla, by linear extension of
//   U|0,0,0a> = phi1 q0 + phi2 y0,    U|1,0,0a> = phi3 q1 + phi2 y1,
// the spectator qubit riding along untouched.
inline CVector apply_qcm(const Amplitudes2Q& psi, const AncillaFrame& frame) {
  ensure_normalized(psi);
  ensure_frame(frame);
  const std::array<std::array<cplx, 2>, 2> amp{{{psi.a00, psi.a01}, {psi.a10, psi.a11}}};
  CVector xi(32);
  for (std::size_t k = 0; k < 2; ++k) {
    const CVector spectator = CVector::basis(2, k);
    xi += amp[0][k] * tensor(tensor(sym_phi1(), spectator), frame.q0);
    xi += amp[0][k] * tensor(tensor(sym_phi2(), spectator), frame.y0);
    xi += amp[1][k] * tensor(tensor(sym_phi3(), spectator), frame.q1);
    xi += amp[1][k] * tensor(tensor(sym_phi2(), spectator), frame.y1);
  }
  return xi;
}

namespace detail {
// Outer products of the symmetric basis, materialized once.
struct SymProjectors {
  CMatrix p11, p22, p33, p12, p23;
  SymProjectors()
      : p11(outer(sym_phi1(), sym_phi1())),
        p22(outer(sym_phi2(), sym_phi2())),
        p33(outer(sym_phi3(), sym_phi3())),
        p12(outer(sym_phi1(), sym_phi2())),
        p23(outer(sym_phi2(), sym_phi3())) {}
};
inline const SymProjectors& sym_projectors() {
  static const SymProjectors p;
  return p;
}
}  // namespace detail

// Two-clone output state, closed form:
//   rho12 = A zeta phi1><phi1 + (1-A) zeta phi3><phi3 + (1-zeta) phi2><phi2
//         + B nu sqrt(zeta(1-zeta)) (phi1><phi2 + phi2><phi3) + h.c.
inline CMatrix joint_output(const QubitDensity& rho, const ClonerParams& p) {
  ensure_psd(rho);
  ensure_params(p);
  const auto& sp = detail::sym_projectors();
  const double s = p.nu * std::sqrt(p.zeta * (1.0 - p.zeta));
  CMatrix out = (rho.A * p.zeta) * sp.p11;
  out += ((1.0 - rho.A) * p.zeta) * sp.p33;
  out += (1.0 - p.zeta) * sp.p22;
  CMatrix cross = (rho.B * s) * (sp.p12 + sp.p23);
  out += cross;
  out += cross.adjoint();
  return out;
}

// Single-clone output state: A~ = 1/2 - zeta(1/2 - A), B~ = B nu sqrt(2 zeta(1-zeta)).
inline QubitDensity single_output(const QubitDensity& rho, const ClonerParams& p) {
  ensure_psd(rho);
  ensure_params(p);
  const double a_out = 0.5 - p.zeta * (0.5 - rho.A);
  const cplx b_out = rho.B * p.nu * std::sqrt(2.0 * p.zeta * (1.0 - p.zeta));
  return {a_out, b_out};
}

namespace detail {
// Distance polynomial in x = |B|^2; the fourth moment enters separately so
// the phase-averaged ensemble path can reuse the same expression.
inline double w_poly(const ClonerParams& p, double a, double b2, double b4) {
  const double c = 1.0 - a;
  const double s = p.nu * std::sqrt((1.0 - p.zeta) * p.zeta);
  const double da = std::numbers::sqrt2 * a - s;
  const double dc = std::numbers::sqrt2 * c - s;
  return a * a * (a - p.zeta) * (a - p.zeta) + c * c * (c - p.zeta) * (c - p.zeta) +
         (1.0 - p.zeta) * (1.0 - p.zeta) + 2.0 * (a * a * c * c + 2.0 * b4) +
         2.0 * b2 * (da * da + dc * dc) - 2.0 * (1.0 - p.zeta) * (a * c + b2);
}
}  // namespace detail

// Squared Hilbert-Schmidt distance between rho (x) rho and the two-clone
// output, closed form. Depends on the input only through (A, |B|).
inline double w_closed(const ClonerParams& p, double a, double abs_b) {
  ensure_params(p);
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("w_closed: A outside [0,1]");
  if (!(abs_b >= 0.0)) throw std::invalid_argument("w_closed: |B| negative");
  if (abs_b * abs_b > a * (1.0 - a) + kPsdTol)
    throw std::domain_error("w_closed: |B|^2 > A(1-A), state not PSD");
  const double b2 = abs_b * abs_b;
  return detail::w_poly(p, a, b2, b2 * b2);
}

inline double w_closed(const ClonerParams& p, const QubitDensity& rho) {
  return w_closed(p, rho.A, std::abs(rho.B));
}

// Brute-force route: assemble rho (x) rho and the closed-form joint output as
// matrices and take the trace distance directly. The construction is the
// authoritative definition; w_closed is the fast path checked against it.
inline double w_oracle(const QubitDensity& rho, const ClonerParams& p) {
  ensure_psd(rho);
  const CMatrix m = rho.to_matrix();
  return hs_dist_sq(tensor(m, m), joint_output(rho, p));
}

}  // namespace qclone
