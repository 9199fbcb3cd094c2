#include "fjsig/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "fjsig/model.hpp"

namespace fjsig {

HitSet hit_set(const FJInstance& inst, const std::vector<double>& z, double eps) {
  HitSet out;
  for (int u = 0; u < inst.n; ++u) {
    for (size_t r = 0; r < inst.ranges[u].size(); ++r) {
      const Interval& iv = inst.ranges[u][r];
      if (iv.lo - eps <= z[u] && z[u] <= iv.hi + eps)
        out.members.insert({u, static_cast<int>(r)});
    }
  }
  return out;
}

double eval_g(const GSpec& g, const HitSet& hits) {
  switch (g.kind) {
    case GKind::Count:
    case GKind::Threshold: {
      std::set<int> agents;
      for (const auto& [agent, range] : hits.members) agents.insert(agent);
      const int count = static_cast<int>(agents.size());
      if (g.kind == GKind::Count) return count;
      return count >= g.tau ? 1.0 : 0.0;
    }
    case GKind::WeightedSets: {
      double best = 0.0;
      for (const auto& ws : g.sets)
        if (hits.contains_all(ws.members)) best = std::max(best, ws.value);
      return best;
    }
  }
  return 0.0;
}

double eval_objective(const FJInstance& inst, const std::vector<double>& z) {
  const Objective& obj = inst.objective;
  switch (obj.kind) {
    case ObjectiveKind::NormDistance: {
      if (obj.p == 0) {  // infinity norm
        double best = 0.0;
        for (int u = 0; u < inst.n; ++u) best = std::max(best, std::abs(z[u] - obj.target[u]));
        return best;
      }
      double s = 0.0;
      for (int u = 0; u < inst.n; ++u) s += std::pow(std::abs(z[u] - obj.target[u]), obj.p);
      return std::pow(s, 1.0 / obj.p);
    }
    case ObjectiveKind::Polarization: {
      double mean = 0.0;
      for (double v : z) mean += v;
      mean /= inst.n;
      double s = 0.0;
      for (double v : z) s += (v - mean) * (v - mean);
      return s;
    }
    case ObjectiveKind::Disagreement: {
      double s = 0.0;
      for (const Edge& e : obj.edges) s += e.w * (z[e.u] - z[e.v]) * (z[e.u] - z[e.v]);
      return s;
    }
    case ObjectiveKind::MaxPolarization: {
      double lo = z[0], hi = z[0];
      for (double v : z) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return hi - lo;
    }
    case ObjectiveKind::MaxDisagreement: {
      double best = 0.0;
      for (const Edge& e : obj.edges) best = std::max(best, std::abs(z[e.u] - z[e.v]));
      return best;
    }
    case ObjectiveKind::RangeBased:
      return eval_g(obj.g, hit_set(inst, z));
  }
  return 0.0;
}

double expected_value(const FJInstance& inst, const SignalingScheme& scheme) {
  const Matrix z = full_revelation(inst).z;
  double total = 0.0;
  for (const Posterior& sig : scheme.signals)
    total += sig.mass * eval_objective(inst, multiply(z, sig.distribution));
  return total;
}

}  // namespace fjsig
