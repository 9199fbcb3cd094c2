#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fjsig/lp.hpp"
#include "fjsig/model.hpp"

namespace fjsig::opt {

enum class RangeStatus { Below, In, Above };

/// Linear constraint over the m posterior coordinates.
struct PosteriorConstraint {
  std::vector<double> coeffs;
  lp::Rel rel = lp::Rel::Le;
  double rhs = 0.0;
};

/// One feasible range-status assignment. Cells are the closures of the
/// full-dimensional status regions, plus the equality cells forced by point
/// ranges; at shared boundaries the master LP may use whichever overlapping
/// cell has the larger value.
struct Cell {
  std::vector<RangeStatus> statuses;  // per flattened range, (agent, index) order
  HitSet hits;                        // ranges with status In
  double value = 0.0;
  std::vector<PosteriorConstraint> constraints;  // closed polytope in posterior space
};

struct FamilyEntry {
  HitSet set;
  double value = 0.0;
};

struct SolveReport {
  SignalingScheme scheme;
  double value = 0.0;
  std::string method;
  int cells_or_combos = 0;
  double no_signal_value = 0.0;
  double full_revelation_value = 0.0;
  bool approximation = false;
  bool subadditivity_warning = false;
};

SignalingScheme no_signal_scheme(const FJInstance& inst);
SignalingScheme full_revelation_scheme(const FJInstance& inst);

/// No-signaling for minimization, full revelation for maximization. Throws
/// WrongObjectiveKindError on range-based objectives.
SolveReport optimize_convex(const FJInstance& inst);

/// Depth-first status assignment with LP-feasibility pruning of prefixes,
/// expressed in the reduced coordinates of the full-revelation factorization
/// plus the simplex-image constraints. Every posterior on the simplex
/// satisfies the constraints of at least one returned cell.
std::vector<Cell> enumerate_cells(const FJInstance& inst);

/// Master LP with one signal per cell; cell constraints are scaled against the
/// joint signal probabilities. Exact for monotone g.
SolveReport optimize_constant_rank(const FJInstance& inst);

/// Breakpoint search for two-state instances; exact. Throws
/// WrongStateCountError when m != 2.
SolveReport optimize_two_state(const FJInstance& inst);

/// LP over one signal per valued range combination plus a dummy signal; exact
/// when the family lists all non-zero-value combinations of a monotone g.
SolveReport optimize_nonzero_combinations(const FJInstance& inst,
                                          const std::vector<FamilyEntry>& family);

/// Prefix hit-sets for agents ordered by pointwise non-increasing rows of Z,
/// each holding a single threshold range [a_u, 1] with a_{u-1} <= a_u.
/// Empty optional when the structure is absent.
std::optional<std::vector<FamilyEntry>> build_monotone_family(const FJInstance& inst);

/// Prefix-plus-suffix hit-sets for rows decreasing up to a pivot and
/// increasing after it.
std::optional<std::vector<FamilyEntry>> build_bitonic_family(const FJInstance& inst);

/// Per-agent exact subproblems, best scheme under the full objective;
/// an n-approximation for subadditive g.
SolveReport approximate_subadditive(const FJInstance& inst);

/// Method dispatch over all solution paths.
SolveReport solve_auto(const FJInstance& inst);

/// Two-state value function sampled for reporting: breakpoints and the
/// cell values between them.
struct TwoStateProfile {
  std::vector<double> breakpoints;       // sorted, includes 0, 1 and the prior
  std::vector<double> segment_values;    // one per consecutive breakpoint pair
  std::vector<double> breakpoint_values; // cell-max value at each breakpoint
  double prior = 0.0;
};

TwoStateProfile two_state_profile(const FJInstance& inst);

}  // namespace fjsig::opt
