#include <catch2/catch.hpp>

#include <cmath>

#include "qclone/search.hpp"

using namespace qclone;

namespace {

Objective quadratic_bowl(double z0, double n0) {
  return [z0, n0](double zeta, double nu) {
    ObjectiveEstimate est;
    est.value = (zeta - z0) * (zeta - z0) + (nu - n0) * (nu - n0);
    return est;
  };
}

}  // namespace

TEST_CASE("finds the minimum of a synthetic bowl", "[search]") {
  const SearchResult res = minimize(quadratic_bowl(0.3, 0.6), 0.05, 0.002);
  CHECK(res.converged);
  CHECK(std::abs(res.zeta_star - 0.3) <= 0.002);
  CHECK(std::abs(res.nu_star - 0.6) <= 0.002);
  CHECK(res.g_star <= 1e-5);
}

TEST_CASE("boundary optima are reported at the boundary", "[search]") {
  // decreasing in nu: optimum on the nu = 1 edge
  const Objective edge = [](double zeta, double nu) {
    ObjectiveEstimate est;
    est.value = (zeta - 0.4) * (zeta - 0.4) + (1.0 - nu);
    return est;
  };
  const SearchResult res = minimize(edge, 0.05, 0.002);
  CHECK(res.nu_star == 1.0);
  CHECK(std::abs(res.zeta_star - 0.4) <= 0.002);

  const Objective corner = [](double zeta, double nu) {
    ObjectiveEstimate est;
    est.value = zeta + nu;
    return est;
  };
  const SearchResult at_zero = minimize(corner, 0.05, 0.002);
  CHECK(at_zero.zeta_star == 0.0);
  CHECK(at_zero.nu_star == 0.0);
}

TEST_CASE("reported value is the best of the whole trace", "[search]") {
  const SearchResult res = minimize(quadratic_bowl(0.52, 0.13), 0.1, 0.004);
  for (const SearchPoint& pt : res.trace) CHECK(res.g_star <= pt.g);
  // and it is the evaluation at the reported point
  bool found = false;
  for (const SearchPoint& pt : res.trace)
    if (pt.zeta == res.zeta_star && pt.nu == res.nu_star && pt.g == res.g_star) found = true;
  CHECK(found);
}

TEST_CASE("search input validation and diagnostics", "[search]") {
  CHECK_THROWS_AS(minimize(quadratic_bowl(0.5, 0.5), 0.3, 0.002), std::invalid_argument);
  CHECK_THROWS_AS(minimize(quadratic_bowl(0.5, 0.5), 0.05, 0.05), std::invalid_argument);

  const Objective bad = [](double zeta, double nu) {
    ObjectiveEstimate est;
    est.value = (zeta > 0.59 && zeta < 0.61 && nu > 0.39 && nu < 0.41)
                    ? std::numeric_limits<double>::quiet_NaN()
                    : 1.0;
    return est;
  };
  CHECK_THROWS_WITH(minimize(bad, 0.05, 0.002),
                    Catch::Matchers::Contains("zeta=0.6") && Catch::Matchers::Contains("nu=0.4"));
}

TEST_CASE("pure-ensemble optimum under quadrature", "[search]") {
  const SearchResult res = minimize(EnsembleKind::pure, AveragingScheme::quadrature(12));
  CHECK(res.converged);
  CHECK(res.nu_star == 1.0);
  CHECK(std::abs(res.zeta_star - 0.725) <= 0.01);

  // monotonicity just outside the reported optimum
  const AveragingScheme quad = AveragingScheme::quadrature(12);
  for (double dz : {-0.004, 0.004}) {
    const double z = res.zeta_star + dz;
    CHECK(g_pure({z, res.nu_star}, quad).value >= res.g_star);
  }
}

TEST_CASE("mixed-ensemble optimum under quadrature", "[search]") {
  const SearchResult res = minimize(EnsembleKind::mixed, AveragingScheme::quadrature(12));
  CHECK(res.converged);
  CHECK(res.nu_star == 1.0);
  // the ball-uniform average has its exact minimum at zeta = 2/3
  CHECK(std::abs(res.zeta_star - 2.0 / 3.0) <= 0.005);

  const AveragingScheme quad = AveragingScheme::quadrature(12);
  for (double dz : {-0.004, 0.004})
    CHECK(g_mixed({res.zeta_star + dz, res.nu_star}, quad).value >= res.g_star);
}

TEST_CASE("search is deterministic, including with Monte Carlo objectives", "[search]") {
  AveragingScheme mc = AveragingScheme::monte_carlo(50'000, 42);
  mc.threads = 1;
  const SearchResult a = minimize(EnsembleKind::mixed, mc, 0.1, 0.004);
  AveragingScheme mc4 = mc;
  mc4.threads = 4;
  const SearchResult b = minimize(EnsembleKind::mixed, mc4, 0.1, 0.004);
  CHECK(a.zeta_star == b.zeta_star);
  CHECK(a.nu_star == b.nu_star);
  CHECK(a.g_star == b.g_star);
  CHECK(a.trace.size() == b.trace.size());
  CHECK(a.converged == b.converged);
  CHECK(a.diagnostic == b.diagnostic);
}

TEST_CASE("Monte Carlo refinement stops at the statistical floor", "[search]") {
  // tiny sample count: huge noise, refinement cannot resolve 0.002 brackets
  const AveragingScheme mc = AveragingScheme::monte_carlo(200, 42);
  const SearchResult res = minimize(EnsembleKind::mixed, mc, 0.25, 0.002);
  CHECK_FALSE(res.converged);
  CHECK_FALSE(res.diagnostic.empty());
}
