#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fjsig {

struct FJInstance;
struct SignalingScheme;

enum class Sense { Min, Max };

enum class ObjectiveKind {
  NormDistance,
  Polarization,
  Disagreement,
  MaxPolarization,
  MaxDisagreement,
  RangeBased,
};

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

enum class GKind { Count, Threshold, WeightedSets };

/// One valued range combination: a set of (agent, range index) indicators.
struct WeightedSet {
  std::vector<std::pair<int, int>> members;
  double value = 0.0;
};

/// Monotone set function over range indicators. Count is the number of
/// distinct agents with a hit; Threshold is 1 once that count reaches tau;
/// WeightedSets evaluates by monotone closure, the maximum value of a listed
/// set contained in the hit set.
struct GSpec {
  GKind kind = GKind::Count;
  int tau = 0;
  std::vector<WeightedSet> sets;
};

struct Objective {
  ObjectiveKind kind = ObjectiveKind::RangeBased;
  Sense sense = Sense::Max;
  int p = 2;  // norm order; 0 encodes the infinity norm
  std::vector<double> target;
  std::vector<Edge> edges;
  GSpec g;
};

inline bool is_convex_kind(ObjectiveKind k) { return k != ObjectiveKind::RangeBased; }

/// Set of satisfied (agent, range index) indicators.
struct HitSet {
  std::set<std::pair<int, int>> members;

  bool contains(int agent, int range) const { return members.count({agent, range}) > 0; }
  bool contains_all(const std::vector<std::pair<int, int>>& s) const {
    for (const auto& m : s)
      if (!members.count(m)) return false;
    return true;
  }
};

/// Indicators whose closed range contains the opinion, with slack eps.
HitSet hit_set(const FJInstance& inst, const std::vector<double>& z, double eps = 1e-9);

double eval_g(const GSpec& g, const HitSet& hits);

/// Value of the configured objective at one opinion vector. Sense is ignored;
/// this is evaluation only.
double eval_objective(const FJInstance& inst, const std::vector<double>& z);

/// Mass-weighted objective value over all signals of the scheme.
double expected_value(const FJInstance& inst, const SignalingScheme& scheme);

}  // namespace fjsig
