#pragma once

#include <utility>
#include <vector>

#include "fjsig/lp.hpp"
#include "fjsig/model.hpp"

namespace fjsig::oracle {

/// Posterior grid: all m-tuples of nonnegative integers summing to the
/// resolution, divided by it, plus force-included extra points.
struct GridSpec {
  int resolution = 1;
  std::vector<std::vector<double>> extra_points;
};

/// Default resolutions: 240 for two states, 20 for three, 10 for four,
/// 4 beyond that.
int default_resolution(int m);

/// Exact transformed endpoints of every reachable range for two-state
/// instances, as posterior coordinates of the second state.
std::vector<double> two_state_breakpoints(const FJInstance& inst);

/// Grid including the default resolution and, for two states, all exact
/// breakpoints as extra points.
GridSpec default_grid(const FJInstance& inst);

struct OracleResult {
  double value = 0.0;
  SignalingScheme scheme;
};

/// Best scheme supported on the grid posteriors: an LP over point weights
/// averaging to the prior. A lower bound witness on the optimum; exact when
/// every optimal posterior lies on the grid. Minimizes instead of maximizing
/// for convex objectives with sense min.
OracleResult grid_oracle(const FJInstance& inst, const GridSpec& grid);

/// Scans all posterior pairs on a step grid plus exact breakpoints for
/// two-state instances, against no-signaling.
double exhaustive_two_signal(const FJInstance& inst, double step);

/// All basic feasible solutions by exhaustive basis enumeration. Throws
/// TooLargeError above 8 variables.
std::vector<std::vector<double>> enumerate_lp_vertices(const lp::Problem& p);

/// Exact maximum independent set by branching with a remaining-vertex bound.
/// Throws TooLargeError above 20 vertices.
std::pair<int, std::vector<int>> max_independent_set(const std::vector<std::vector<bool>>& adjacency);

}  // namespace fjsig::oracle
