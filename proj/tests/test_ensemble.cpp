#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "qclone/ensemble.hpp"
#include "qclone/sampling.hpp"

using namespace qclone;

TEST_CASE("pure-state parametrization", "[ensemble]") {
  const Amplitudes2Q north = pure_param_to_state({0, 0, 0, 0, 0, 0});
  CHECK(std::abs(north.a00 - cplx(1.0)) < 1e-15);
  CHECK(std::abs(north.a01) + std::abs(north.a10) + std::abs(north.a11) < 1e-15);

  constexpr double half_pi = std::numbers::pi / 2.0;
  const Amplitudes2Q second = pure_param_to_state({half_pi, 0, 0, 0, 0, 0});
  CHECK(std::abs(second.a01 - cplx(1.0)) < 1e-15);
  CHECK(std::abs(second.a00) < 1e-15);

  constexpr double quarter_pi = std::numbers::pi / 4.0;
  const Amplitudes2Q mid = pure_param_to_state({quarter_pi, quarter_pi, quarter_pi, 0, 0, 0});
  CHECK(mid.a00.real() == Approx(std::numbers::sqrt2 / 2.0).margin(1e-15));
  CHECK(mid.a01.real() == Approx(0.5).margin(1e-15));
  CHECK(mid.a10.real() == Approx(std::numbers::sqrt2 / 4.0).margin(1e-15));
  CHECK(mid.a11.real() == Approx(std::numbers::sqrt2 / 4.0).margin(1e-15));
  CHECK(std::abs(mid.norm_sq() - 1.0) < 1e-14);

  CHECK_THROWS_AS(pure_param_to_state({-0.1, 0, 0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(pure_param_to_state({0, 0, 0, 7.0, 0, 0}), std::invalid_argument);
}

TEST_CASE("reduced-state shortcut matches the state pipeline", "[ensemble]") {
  SampleRng rng(42);
  constexpr double half_pi = std::numbers::pi / 2.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int rep = 0; rep < 200; ++rep) {
    const PureParam q{rng.uniform() * half_pi, rng.uniform() * half_pi,
                      rng.uniform() * half_pi, rng.uniform() * two_pi,
                      rng.uniform() * two_pi,  rng.uniform() * two_pi};
    const auto pt = detail::pure_point(q.theta1, q.theta2, q.theta3, q.gamma1, q.gamma2,
                                       q.gamma3);
    const QubitDensity rho = reduce_first(pure_param_to_state(q));
    CHECK(pt.a == Approx(rho.A).margin(1e-14));
    CHECK(pt.b2 == Approx(std::norm(rho.B)).margin(1e-14));
  }
}

TEST_CASE("measure self-checks return unity", "[ensemble]") {
  const AveragingScheme quad = AveragingScheme::quadrature(12);
  CHECK(measure_selfcheck(EnsembleKind::pure, quad) == Approx(1.0).margin(1e-8));
  CHECK(measure_selfcheck(EnsembleKind::mixed, quad) == Approx(1.0).margin(1e-8));

  // the direct 6-dim pure quadrature validates the same normalizer
  AveragingScheme direct = quad;
  direct.reduce_pure_phases = false;
  direct.points_per_axis = 8;
  CHECK(measure_selfcheck(EnsembleKind::pure, direct) == Approx(1.0).margin(1e-8));

  const AveragingScheme mc = AveragingScheme::monte_carlo(1'000'000, 42);
  auto one = [](double, double, double) { return 1.0; };
  const ObjectiveEstimate pure_mc = detail::average_pure(one, mc);
  CHECK(std::abs(pure_mc.value - 1.0) <= 3.0 * pure_mc.std_error);
  const ObjectiveEstimate mixed_mc = detail::average_mixed(one, mc);
  CHECK(std::abs(mixed_mc.value - 1.0) <= 3.0 * mixed_mc.std_error);
}

TEST_CASE("Monte Carlo converges to quadrature", "[ensemble]") {
  const AveragingScheme quad = AveragingScheme::quadrature(12);
  const AveragingScheme mc = AveragingScheme::monte_carlo(1'000'000, 42);
  for (const ClonerParams p :
       {ClonerParams{0.7, 1.0}, {0.3, 0.2}, {0.5, 0.5}, {0.9, 0.8}, {0.1, 0.9},
        {0.725, 1.0}, {0.0, 0.4}, {1.0, 0.6}, {0.66, 0.0}}) {
    const double qp = g_pure(p, quad).value;
    const ObjectiveEstimate mp = g_pure(p, mc);
    CHECK(std::abs(mp.value - qp) <= 3.0 * mp.std_error);

    const double qm = g_mixed(p, quad).value;
    const ObjectiveEstimate mm = g_mixed(p, mc);
    CHECK(std::abs(mm.value - qm) <= 3.0 * mm.std_error);
  }
}

TEST_CASE("phase-reduced pure quadrature equals the direct 6-dim rule", "[ensemble]") {
  AveragingScheme reduced = AveragingScheme::quadrature(12);
  AveragingScheme direct = reduced;
  direct.reduce_pure_phases = false;
  for (const ClonerParams p : {ClonerParams{0.7, 1.0}, {0.4, 0.6}}) {
    const ObjectiveEstimate r = g_pure(p, reduced);
    const ObjectiveEstimate d = g_pure(p, direct);
    CHECK(std::abs(r.value - d.value) < 1e-8);
    CHECK(r.evaluations == 12ull * 12 * 12);
    CHECK(d.evaluations == 12ull * 12 * 12 * 12 * 12 * 12);
  }
}

TEST_CASE("phi-reduced mixed quadrature equals the full 3-dim rule", "[ensemble]") {
  AveragingScheme full = AveragingScheme::quadrature(12);
  AveragingScheme reduced = full;
  reduced.reduce_mixed_phi = true;
  SampleRng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const ClonerParams p = random_params(rng);
    CHECK(std::abs(g_mixed(p, full).value - g_mixed(p, reduced).value) < 1e-10);
  }
}

TEST_CASE("objective estimates are deterministic across runs and threads", "[ensemble]") {
  const ClonerParams p{0.66, 0.92};
  for (Method method : {Method::monte_carlo, Method::quadrature}) {
    AveragingScheme one;
    one.method = method;
    one.samples = 200'000;
    one.seed = 42;
    one.threads = 1;
    AveragingScheme four = one;
    four.threads = 4;

    const ObjectiveEstimate a = g_pure(p, one);
    const ObjectiveEstimate b = g_pure(p, one);
    const ObjectiveEstimate c = g_pure(p, four);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.value == c.value);
    CHECK(a.std_error == c.std_error);

    const ObjectiveEstimate ma = g_mixed(p, one);
    const ObjectiveEstimate mc4 = g_mixed(p, four);
    CHECK(ma.value == mc4.value);
  }

  // different seeds move a Monte Carlo estimate
  const AveragingScheme s42 = AveragingScheme::monte_carlo(100'000, 42);
  const AveragingScheme s43 = AveragingScheme::monte_carlo(100'000, 43);
  CHECK(g_pure(p, s42).value != g_pure(p, s43).value);
}

TEST_CASE("objectives are finite and nonnegative over the square", "[ensemble]") {
  const AveragingScheme quad = AveragingScheme::quadrature(8);
  for (double zeta : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (double nu : {0.0, 0.5, 1.0}) {
      const double gp = g_pure({zeta, nu}, quad).value;
      const double gm = g_mixed({zeta, nu}, quad).value;
      CHECK(std::isfinite(gp));
      CHECK(std::isfinite(gm));
      CHECK(gp >= 0.0);
      CHECK(gm >= 0.0);
    }
}

TEST_CASE("ball average matches its analytic closed form", "[ensemble]") {
  // Averaging the distance polynomial over the uniform ball by hand
  // (moments E[u^2]=1/5, E[u^4]=3/35 for u = r cos(theta), E[|B|^2]=1/10,
  // E[|B|^4]=1/70, ...) collapses to
  //   G = 37/35 - (11/5) z + (8/5) z^2 + (2/5) s^2 - (2 sqrt(2)/5) s,
  // with s = nu sqrt(z(1-z)). Its minimum over nu in [0,1] is at nu = 1,
  // and then over z at z = 2/3 with G = 13/105.
  auto analytic = [](double zeta, double nu) {
    const double s = nu * std::sqrt(zeta * (1.0 - zeta));
    return 37.0 / 35.0 - 2.2 * zeta + 1.6 * zeta * zeta + 0.4 * s * s -
           2.0 * std::numbers::sqrt2 / 5.0 * s;
  };
  const AveragingScheme quad = AveragingScheme::quadrature(12);
  for (double zeta : {0.0, 0.2, 0.5, 2.0 / 3.0, 0.715, 0.9, 1.0})
    for (double nu : {0.0, 0.3, 0.7, 1.0})
      CHECK(g_mixed({zeta, nu}, quad).value == Approx(analytic(zeta, nu)).margin(1e-10));

  CHECK(g_mixed({2.0 / 3.0, 1.0}, quad).value == Approx(13.0 / 105.0).margin(1e-12));
}

TEST_CASE("averaged objectives dip at their reported optima", "[ensemble]") {
  const AveragingScheme quad = AveragingScheme::quadrature(12);
  const double pure_opt = g_pure({0.725, 1.0}, quad).value;
  CHECK(pure_opt < g_pure({0.6, 1.0}, quad).value);
  CHECK(pure_opt < g_pure({0.85, 1.0}, quad).value);

  const double mixed_ref = g_mixed({0.715, 1.0}, quad).value;
  CHECK(mixed_ref < g_mixed({0.6, 1.0}, quad).value);
  CHECK(mixed_ref < g_mixed({0.85, 1.0}, quad).value);

  // the exact minimizer of the ball average sits at zeta = 2/3, below both
  CHECK(g_mixed({2.0 / 3.0, 1.0}, quad).value < mixed_ref);
}

TEST_CASE("scheme validation", "[ensemble]") {
  AveragingScheme bad_mc = AveragingScheme::monte_carlo(0);
  CHECK_THROWS_AS(g_pure({0.5, 0.5}, bad_mc), std::invalid_argument);
  AveragingScheme bad_quad = AveragingScheme::quadrature(1);
  CHECK_THROWS_AS(g_mixed({0.5, 0.5}, bad_quad), std::invalid_argument);
  AveragingScheme huge_quad = AveragingScheme::quadrature(100'000);
  CHECK_THROWS_AS(g_mixed({0.5, 0.5}, huge_quad), std::invalid_argument);
  const AveragingScheme quad = AveragingScheme::quadrature(8);
  CHECK_THROWS_AS(g_pure({1.5, 0.5}, quad), std::invalid_argument);
}
