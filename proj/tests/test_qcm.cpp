#include <catch2/catch.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "qclone/qcm.hpp"
#include "qclone/sampling.hpp"

using namespace qclone;

TEST_CASE("ancilla frame at the boundaries", "[qcm]") {
  // zeta = 1: the y vectors vanish, the machine keeps both clones sharp
  for (double nu : {0.0, 0.3, 1.0}) {
    const AncillaFrame f = build_ancilla_frame({1.0, nu});
    CHECK(f.y0.norm() == 0.0);
    CHECK(f.y1.norm() == 0.0);
    CHECK(std::abs(inner(f.q0, f.q0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(inner(f.q0, f.q1)) < 1e-15);
    CHECK(frame_deviation(f) < 1e-12);
  }

  // nu = 1: (q0, y1) and (q1, y0) are parallel
  const AncillaFrame f = build_ancilla_frame({0.5, 1.0});
  const double overlap01 = std::abs(inner(f.q0, f.y1));
  CHECK(overlap01 == Approx(f.q0.norm() * f.y1.norm()).margin(1e-14));
  const double overlap10 = std::abs(inner(f.q1, f.y0));
  CHECK(overlap10 == Approx(f.q1.norm() * f.y0.norm()).margin(1e-14));

  CHECK_THROWS_AS(build_ancilla_frame({1.2, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(build_ancilla_frame({0.5, -0.1}), std::invalid_argument);
}

TEST_CASE("ancilla frame constraints hold across parameter space", "[qcm]") {
  const AncillaFrame f = build_ancilla_frame({0.3, 0.4});
  CHECK(frame_deviation(f) < 1e-12);

  SampleRng rng(42);
  for (int rep = 0; rep < 200; ++rep)
    CHECK(frame_deviation(build_ancilla_frame(random_params(rng))) < 1e-12);
}

TEST_CASE("machine output on basis inputs at zeta=1", "[qcm]") {
  const AncillaFrame f = build_ancilla_frame({1.0, 1.0});

  // |0> signal: Xi = phi1 (x) |0_spec> (x) e0, up to the sqrt(zeta)=1 factor
  const CVector xi0 = apply_qcm({1, 0, 0, 0}, f);
  CHECK(std::abs(xi0.norm_sq() - 1.0) < 1e-14);
  const CVector expected0 = tensor(tensor(sym_phi1(), CVector::basis(2, 0)), CVector::basis(4, 0));
  CHECK(max_abs_diff(xi0, expected0) < 1e-14);

  // |1> signal goes to phi3 with the other ancilla direction
  const CVector xi1 = apply_qcm({0, 0, 1, 0}, f);
  const CVector expected1 = tensor(tensor(sym_phi3(), CVector::basis(2, 0)), CVector::basis(4, 1));
  CHECK(max_abs_diff(xi1, expected1) < 1e-14);
}

TEST_CASE("machine preserves the norm for any input and parameters", "[qcm]") {
  SampleRng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const Amplitudes2Q psi = random_pure_state(rng);
    const AncillaFrame f = build_ancilla_frame(random_params(rng));
    CHECK(std::abs(apply_qcm(psi, f).norm_sq() - 1.0) < 1e-12);
  }
}

TEST_CASE("joint output closed form vs partial trace of the channel", "[qcm]") {
  SampleRng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const Amplitudes2Q psi = random_pure_state(rng);
    const ClonerParams p = random_params(rng);
    const CVector xi = apply_qcm(psi, build_ancilla_frame(p));
    const CMatrix traced = partial_trace(outer(xi, xi), {2, 2, 2, 4}, {0, 1});
    CHECK(max_abs_diff(traced, joint_output(reduce_first(psi), p)) < 1e-12);
  }
}

TEST_CASE("joint output special cases", "[qcm]") {
  // A=1, B=0, zeta=1: the perfect |00> projector
  const CMatrix sharp = joint_output({1.0, 0.0}, {1.0, 1.0});
  CHECK(max_abs_diff(sharp, outer(sym_phi1(), sym_phi1())) < 1e-15);

  // A=1, B=0, general zeta: zeta phi1 + (1-zeta) phi2
  const double zeta = 0.37;
  const CMatrix partial = joint_output({1.0, 0.0}, {zeta, 0.8});
  CMatrix expected = zeta * outer(sym_phi1(), sym_phi1());
  expected += (1.0 - zeta) * outer(sym_phi2(), sym_phi2());
  CHECK(max_abs_diff(partial, expected) < 1e-15);

  SampleRng rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    const CMatrix joint = joint_output(random_density(rng), random_params(rng));
    CHECK(joint.is_hermitian());
    CHECK(std::abs(joint.trace() - cplx(1.0)) < 1e-14);
  }

  CHECK_THROWS_AS(joint_output({0.5, cplx(0.7, 0)}, {0.5, 0.5}), std::domain_error);
}

TEST_CASE("joint output is symmetric and avoids the singlet", "[qcm]") {
  const CMatrix swap(4, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  SampleRng rng(42);
  for (int rep = 0; rep < 100; ++rep) {
    const CMatrix joint = joint_output(random_density(rng), random_params(rng));
    CHECK(max_abs_diff(swap * joint * swap, joint) < 1e-12);
    CHECK(std::abs(inner(antisym_singlet(), joint * antisym_singlet())) < 1e-12);
    // both clones see the same marginal
    CHECK(max_abs_diff(partial_trace(joint, {2, 2}, {0}), partial_trace(joint, {2, 2}, {1})) <
          1e-12);
  }
}

TEST_CASE("single output closed form and its fixed point", "[qcm]") {
  // maximally mixed input is reproduced exactly, any parameters
  SampleRng rng(16);
  for (int rep = 0; rep < 20; ++rep) {
    const ClonerParams p = random_params(rng);
    const QubitDensity out = single_output({0.5, 0.0}, p);
    CHECK(out.A == Approx(0.5).margin(1e-15));
    CHECK(std::abs(out.B) < 1e-15);
    CHECK(fidelity({0.5, 0.0}, out) == Approx(1.0).margin(1e-14));
  }

  // zeta = 1 keeps the populations and kills the coherence
  for (int rep = 0; rep < 20; ++rep) {
    const QubitDensity rho = random_density(rng);
    const QubitDensity out = single_output(rho, {1.0, rng.uniform()});
    CHECK(out.A == Approx(rho.A).margin(1e-15));
    CHECK(std::abs(out.B) < 1e-15);
  }
}

TEST_CASE("single output equals the marginal of the joint output", "[qcm]") {
  SampleRng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const QubitDensity rho = random_density(rng);
    const ClonerParams p = random_params(rng);
    const CMatrix marginal = partial_trace(joint_output(rho, p), {2, 2}, {0});
    CHECK(max_abs_diff(marginal, single_output(rho, p).to_matrix()) < 1e-12);
  }
}

TEST_CASE("distance closed form: pinned values", "[qcm]") {
  // A=1, B=0: W = 2 (1-zeta)^2 for any nu
  for (double zeta : {0.0, 0.3, 0.725, 1.0})
    for (double nu : {0.0, 0.5, 1.0}) {
      const double expected = 2.0 * (1.0 - zeta) * (1.0 - zeta);
      CHECK(w_closed({zeta, nu}, 1.0, 0.0) == Approx(expected).margin(1e-14));
    }

  // A=1/2, B=0: W = (1/2)(1/2-zeta)^2 + (1-zeta)^2 + 1/8 - (1-zeta)/2
  for (double zeta : {0.0, 0.4, 0.715, 1.0}) {
    const double expected = 0.5 * (0.5 - zeta) * (0.5 - zeta) +
                            (1.0 - zeta) * (1.0 - zeta) + 0.125 - 0.5 * (1.0 - zeta);
    CHECK(w_closed({zeta, 0.9}, 0.5, 0.0) == Approx(expected).margin(1e-14));
  }

  CHECK_THROWS_AS(w_closed({0.5, 0.5}, 0.5, 0.6), std::domain_error);
  CHECK_THROWS_AS(w_closed({0.5, 0.5}, 1.4, 0.0), std::invalid_argument);
}

TEST_CASE("distance closed form equals the trace oracle", "[qcm]") {
  // perfect cloning of |0> at zeta=1
  CHECK(w_oracle({1.0, 0.0}, {1.0, 1.0}) == Approx(0.0).margin(1e-15));

  // maximally mixed at zeta=1: diagonal arithmetic gives 1/4
  CHECK(w_oracle({0.5, 0.0}, {1.0, 0.7}) == Approx(0.25).margin(1e-14));

  SampleRng rng(42);
  for (int rep = 0; rep < 500; ++rep) {
    const QubitDensity rho = random_density(rng);
    const ClonerParams p = random_params(rng);
    const double oracle = w_oracle(rho, p);
    CHECK(oracle >= 0.0);
    CHECK(std::abs(w_closed(p, rho) - oracle) < 1e-9);
  }
}

TEST_CASE("distance depends on the state only through (A, |B|)", "[qcm]") {
  SampleRng rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const QubitDensity rho = random_density(rng);
    const ClonerParams p = random_params(rng);
    const double phase = rng.uniform() * 2.0 * std::numbers::pi;
    const QubitDensity rotated{rho.A, rho.B * std::polar(1.0, phase)};
    CHECK(std::abs(w_oracle(rho, p) - w_oracle(rotated, p)) < 1e-9);
  }
}

TEST_CASE("output state is independent of the purification", "[qcm]") {
  SampleRng rng(42);
  for (int rep = 0; rep < 100; ++rep) {
    const QubitDensity rho = random_density(rng);
    const ClonerParams p = random_params(rng);
    const CMatrix v = random_unitary2(rng);
    const AncillaFrame f = build_ancilla_frame(p);
    const CVector xi_a = apply_qcm(purify(rho), f);
    const CVector xi_b = apply_qcm(alt_purify(rho, v), f);
    const CMatrix out_a = partial_trace(outer(xi_a, xi_a), {2, 2, 2, 4}, {0, 1});
    const CMatrix out_b = partial_trace(outer(xi_b, xi_b), {2, 2, 2, 4}, {0, 1});
    CHECK(max_abs_diff(out_a, out_b) < 1e-10);
  }
}
