#pragma once

// Derivative-free minimization of G(zeta, nu) over the unit square:
// coarse grid, then alternating per-coordinate interval-thirds refinement.
// Deterministic by construction (fixed scan order, cached evaluations), so
// repeated runs with the same scheme are bit-identical.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qclone/ensemble.hpp"

namespace qclone {

struct SearchPoint {
  double zeta, nu, g;
};

struct SearchResult {
  double zeta_star = 0.0, nu_star = 0.0, g_star = 0.0;
  std::vector<SearchPoint> trace;  // every distinct evaluation, in order
  bool converged = false;
  std::string diagnostic;  // set when refinement stops early
};

using Objective = std::function<ObjectiveEstimate(double zeta, double nu)>;

namespace detail {

class CachedObjective {
 public:
  explicit CachedObjective(const Objective& g, std::vector<SearchPoint>& trace)
      : g_(g), trace_(trace) {}

  ObjectiveEstimate operator()(double zeta, double nu) {
    const auto key = std::make_pair(zeta, nu);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const ObjectiveEstimate est = g_(zeta, nu);
    if (!std::isfinite(est.value)) {
      std::ostringstream msg;
      msg << "minimize: objective not finite at zeta=" << zeta << " nu=" << nu;
      throw std::runtime_error(msg.str());
    }
    cache_.emplace(key, est);
    trace_.push_back({zeta, nu, est.value});
    return est;
  }

 private:
  const Objective& g_;
  std::vector<SearchPoint>& trace_;
  std::map<std::pair<double, double>, ObjectiveEstimate> cache_;
};

}  // namespace detail

inline SearchResult minimize(const Objective& objective, double grid_step = 0.05,
                             double refine_tol = 0.002) {
  if (!(grid_step > 0.0 && grid_step <= 0.25))
    throw std::invalid_argument("minimize: grid_step outside (0, 0.25]");
  if (!(refine_tol > 0.0 && refine_tol < grid_step))
    throw std::invalid_argument("minimize: refine_tol outside (0, grid_step)");

  SearchResult result;
  detail::CachedObjective eval(objective, result.trace);

  // coarse grid, zeta ascending outer / nu ascending inner; strict improvement
  // only, so ties stay with the smaller zeta
  std::vector<double> grid;
  const auto n_steps = static_cast<std::size_t>(std::floor(1.0 / grid_step + 1e-9));
  for (std::size_t k = 0; k <= n_steps; ++k) grid.push_back(static_cast<double>(k) * grid_step);
  if (grid.back() < 1.0 - 1e-12)
    grid.push_back(1.0);
  else
    grid.back() = 1.0;

  double best_z = grid.front(), best_n = grid.front();
  double best_g = std::numeric_limits<double>::infinity();
  for (double z : grid)
    for (double n : grid) {
      const double g = eval(z, n).value;
      if (g < best_g) {
        best_g = g;
        best_z = z;
        best_n = n;
      }
    }

  // interval-thirds refinement of one coordinate; keeps the left sub-bracket
  // on ties. With Monte Carlo schemes the pass stops once the probe values
  // are indistinguishable at their combined std-error.
  bool stat_limited = false;
  auto refine_coord = [&](double center, double half_width, bool is_zeta, double other) {
    double lo = std::max(0.0, center - half_width);
    double hi = std::min(1.0, center + half_width);
    auto at = [&](double x) { return is_zeta ? eval(x, other) : eval(other, x); };
    at(lo);
    at(hi);
    while (hi - lo > refine_tol) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (!(m1 > lo && m2 < hi && m1 < m2)) break;  // bracket exhausted in double precision
      const ObjectiveEstimate f1 = at(m1);
      const ObjectiveEstimate f2 = at(m2);
      const double noise = 2.0 * std::hypot(f1.std_error, f2.std_error);
      if (noise > 0.0 && std::abs(f1.value - f2.value) <= noise) {
        stat_limited = true;
        if (result.diagnostic.empty()) {
          std::ostringstream msg;
          msg << "refinement of " << (is_zeta ? "zeta" : "nu")
              << " stopped at the statistical floor: bracket width " << (hi - lo)
              << " > refine_tol " << refine_tol << ", std_error " << std::max(f1.std_error, f2.std_error);
          result.diagnostic = msg.str();
        }
        break;
      }
      if (f1.value <= f2.value)
        hi = m2;
      else
        lo = m1;
    }
    // best evaluated point along this line inside [lo0, hi0]
    double x = lo, g = at(lo).value;
    for (const double cand : {hi, (lo + hi) / 2.0}) {
      const double gc = at(cand).value;
      if (gc < g) {
        g = gc;
        x = cand;
      }
    }
    return x;
  };

  double z = best_z, n = best_n;
  double width = grid_step;
  bool stable = false;
  for (int round = 0; round < 3 && !stable && !stat_limited; ++round) {
    const double z_before = z, n_before = n;
    z = refine_coord(z, width, true, n);
    n = refine_coord(n, width, false, z);
    stable = std::abs(z - z_before) <= refine_tol && std::abs(n - n_before) <= refine_tol;
    width = std::max(2.0 * refine_tol, width / 4.0);
  }

  // report the argmin of everything evaluated; g_star is that evaluation
  const SearchPoint* best = &result.trace.front();
  for (const SearchPoint& pt : result.trace)
    if (pt.g < best->g) best = &pt;
  result.zeta_star = best->zeta;
  result.nu_star = best->nu;
  result.g_star = best->g;
  result.converged = stable && !stat_limited;
  if (!result.converged && result.diagnostic.empty())
    result.diagnostic = "coordinate refinement did not stabilize";
  return result;
}

inline SearchResult minimize(EnsembleKind kind, const AveragingScheme& scheme,
                             double grid_step = 0.05, double refine_tol = 0.002) {
  ensure_scheme(scheme);
  const Objective g = [kind, scheme](double zeta, double nu) {
    return g_objective(kind, {zeta, nu}, scheme);
  };
  return minimize(g, grid_step, refine_tol);
}

}  // namespace qclone
