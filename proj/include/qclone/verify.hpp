#pragma once

// Self-verification suite: every cross-check the machine construction is
// supposed to satisfy, runnable at any case count. Each check reports its
// worst deviation against a fixed tolerance; the first failing case is kept
// with enough detail to reproduce it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qclone/ensemble.hpp"
#include "qclone/qcm.hpp"
#include "qclone/qstate.hpp"
#include "qclone/sampling.hpp"

namespace qclone {

struct VerifyCheck {
  std::string name;
  std::uint64_t cases = 0;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string first_failure;  // empty when passing
};

namespace detail {

class CheckRecorder {
 public:
  CheckRecorder(std::string name, double tol) {
    check_.name = std::move(name);
    check_.tol = tol;
  }
  template <class Describe>
  void record(double deviation, Describe&& describe) {
    ++check_.cases;
    if (deviation > check_.worst) check_.worst = deviation;
    if (deviation > check_.tol && check_.first_failure.empty())
      check_.first_failure = describe();
  }
  VerifyCheck finish() {
    check_.pass = check_.first_failure.empty();
    return check_;
  }

 private:
  VerifyCheck check_;
};

inline std::string describe_rho_params(const QubitDensity& rho, const ClonerParams& p) {
  std::ostringstream os;
  os << "A=" << rho.A << " B=(" << rho.B.real() << "," << rho.B.imag() << ") zeta=" << p.zeta
     << " nu=" << p.nu;
  return os.str();
}

inline std::string describe_psi(const Amplitudes2Q& psi, const ClonerParams& p) {
  std::ostringstream os;
  os << "psi=(" << psi.a00 << "," << psi.a01 << "," << psi.a10 << "," << psi.a11
     << ") zeta=" << p.zeta << " nu=" << p.nu;
  return os.str();
}

// swap of the two clone factors on the dim-4 space
inline const CMatrix& clone_swap() {
  static const CMatrix s(4, 4,
                         {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  return s;
}

}  // namespace detail

// Runs all checks with `cases` random draws each (structured sweeps keep
// their own natural sizes). Deterministic in `seed`.
inline std::vector<VerifyCheck> run_verification(std::uint64_t cases, std::uint64_t seed,
                                                 unsigned threads = 0) {
  std::vector<VerifyCheck> out;
  std::uint64_t stream = 0;  // distinct sub-stream per check

  {  // the eight ancilla frame constraints, corners plus random parameters
    detail::CheckRecorder rec("ancilla frame constraints", 1e-12);
    std::vector<ClonerParams> params = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0},
                                        {0.5, 1.0}, {1.0, 0.5}, {0.0, 0.5}, {0.5, 0.0}};
    SampleRng rng(seed, stream++);
    for (std::uint64_t i = 8; i < cases; ++i) params.push_back(random_params(rng));
    for (const ClonerParams& p : params)
      rec.record(frame_deviation(build_ancilla_frame(p)), [&] {
        std::ostringstream os;
        os << "zeta=" << p.zeta << " nu=" << p.nu;
        return os.str();
      });
    out.push_back(rec.finish());
  }

  {  // norm preservation of the full output state
    detail::CheckRecorder rec("output state norm preservation", 1e-12);
    SampleRng rng(seed, stream++);
    for (std::uint64_t i = 0; i < cases; ++i) {
      const Amplitudes2Q psi = random_pure_state(rng);
      const ClonerParams p = random_params(rng);
      const CVector xi = apply_qcm(psi, build_ancilla_frame(p));
      rec.record(std::abs(xi.norm_sq() - 1.0), [&] { return detail::describe_psi(psi, p); });
    }
    out.push_back(rec.finish());
  }

  {  // closed-form two-clone output vs partial trace of the full channel
    detail::CheckRecorder rec("joint output vs channel trace", 1e-12);
    SampleRng rng(seed, stream++);
    for (std::uint64_t i = 0; i < cases; ++i) {
      const Amplitudes2Q psi = random_pure_state(rng);
      const ClonerParams p = random_params(rng);
      const CVector xi = apply_qcm(psi, build_ancilla_frame(p));
      const CMatrix traced = partial_trace(outer(xi, xi), {2, 2, 2, 4}, {0, 1});
      const CMatrix closed = joint_output(reduce_first(psi), p);
      rec.record(max_abs_diff(traced, closed), [&] { return detail::describe_psi(psi, p); });
    }
    out.push_back(rec.finish());
  }

  {  // single-clone closed form vs marginal of the two-clone output
    detail::CheckRecorder rec("single output vs joint marginal", 1e-12);
    SampleRng rng(seed, stream++);
    for (std::uint64_t i = 0; i < cases; ++i) {
      const QubitDensity rho = random_density(rng);
      const ClonerParams p = random_params(rng);
      const CMatrix marg = partial_trace(joint_output(rho, p), {2, 2}, {0});
      rec.record(max_abs_diff(marg, single_output(rho, p).to_matrix()),
                 [&] { return detail::describe_rho_params(rho, p); });
    }
    out.push_back(rec.finish());
  }

  {  // two-clone output: swap symmetry, no singlet component, equal marginals
    detail::CheckRecorder rec("output symmetry and singlet exclusion", 1e-12);
    SampleRng rng(seed, stream++);
    const CMatrix& swap = detail::clone_swap();
    for (std::uint64_t i = 0; i < cases; ++i) {
      const QubitDensity rho = random_density(rng);
      const ClonerParams p = random_params(rng);
      const CMatrix joint = joint_output(rho, p);
      double dev = max_abs_diff(swap * joint * swap, joint);
      const CVector& singlet = antisym_singlet();
      dev = std::max(dev, std::abs(inner(singlet, joint * singlet)));
      dev = std::max(dev, max_abs_diff(partial_trace(joint, {2, 2}, {0}),
                                       partial_trace(joint, {2, 2}, {1})));
      rec.record(dev, [&] { return detail::describe_rho_params(rho, p); });
    }
    out.push_back(rec.finish());
  }

  {  // closed-form distance vs brute-force trace construction
    detail::CheckRecorder rec("distance closed form vs trace oracle", 1e-9);
    SampleRng rng(seed, stream++);
    for (std::uint64_t i = 0; i < cases; ++i) {
      const QubitDensity rho = random_density(rng);
      const ClonerParams p = random_params(rng);
      rec.record(std::abs(w_closed(p, rho) - w_oracle(rho, p)),
                 [&] { return detail::describe_rho_params(rho, p); });
    }
    out.push_back(rec.finish());
  }

  {  // output independent of which purification represents the input
    detail::CheckRecorder rec("purification independence", 1e-10);
    SampleRng rng(seed, stream++);
    for (std::uint64_t i = 0; i < cases; ++i) {
      const QubitDensity rho = random_density(rng);
      const ClonerParams p = random_params(rng);
      const CMatrix v = random_unitary2(rng);
      const AncillaFrame frame = build_ancilla_frame(p);
      const CVector xi_a = apply_qcm(purify(rho), frame);
      const CVector xi_b = apply_qcm(alt_purify(rho, v), frame);
      const CMatrix out_a = partial_trace(outer(xi_a, xi_a), {2, 2, 2, 4}, {0, 1});
      const CMatrix out_b = partial_trace(outer(xi_b, xi_b), {2, 2, 2, 4}, {0, 1});
      rec.record(max_abs_diff(out_a, out_b), [&] { return detail::describe_rho_params(rho, p); });
    }
    out.push_back(rec.finish());
  }

  {  // qubit fidelity: closed form vs definitional square-root route
    detail::CheckRecorder rec("fidelity closed form vs definition", 1e-10);
    SampleRng rng(seed, stream++);
    for (std::uint64_t i = 0; i < cases; ++i) {
      const QubitDensity r1 = random_density(rng);
      const QubitDensity r2 = random_density(rng);
      rec.record(std::abs(fidelity(r1, r2) - fidelity_definitional(r1, r2)), [&] {
        std::ostringstream os;
        os << "rho1: A=" << r1.A << " B=(" << r1.B.real() << "," << r1.B.imag()
           << ")  rho2: A=" << r2.A << " B=(" << r2.B.real() << "," << r2.B.imag() << ")";
        return os.str();
      });
    }
    out.push_back(rec.finish());
  }

  {  // quadrature measure normalizers
    detail::CheckRecorder rec("measure normalization (quadrature)", 1e-8);
    AveragingScheme q = AveragingScheme::quadrature(12);
    q.threads = threads;
    for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed})
      rec.record(std::abs(measure_selfcheck(kind, q) - 1.0), [&] {
        return std::string(kind == EnsembleKind::pure ? "pure ensemble" : "mixed ensemble");
      });
    out.push_back(rec.finish());
  }

  {  // Monte Carlo measure normalizers, 3 std-errors
    VerifyCheck check;
    check.name = "measure normalization (monte carlo)";
    check.tol = 3.0;  // in std-error units
    AveragingScheme mc = AveragingScheme::monte_carlo(1'000'000, seed);
    mc.threads = threads;
    auto one = [](double, double, double) { return 1.0; };
    for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed}) {
      const ObjectiveEstimate est = kind == EnsembleKind::pure
                                        ? detail::average_pure(one, mc)
                                        : detail::average_mixed(one, mc);
      const double sigmas = std::abs(est.value - 1.0) / est.std_error;
      ++check.cases;
      if (sigmas > check.worst) check.worst = sigmas;
      if (sigmas > check.tol && check.first_failure.empty()) {
        std::ostringstream os;
        os << (kind == EnsembleKind::pure ? "pure" : "mixed") << " ensemble: estimate "
           << est.value << " +- " << est.std_error;
        check.first_failure = os.str();
      }
    }
    check.pass = check.first_failure.empty();
    out.push_back(check);
  }

  return out;
}

inline bool all_passed(const std::vector<VerifyCheck>& checks) {
  for (const VerifyCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace qclone
