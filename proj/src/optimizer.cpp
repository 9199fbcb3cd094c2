#include "fjsig/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fjsig/errors.hpp"

namespace fjsig::opt {

namespace {

constexpr double kMarginEps = 1e-7;  // interior slack certifying a full-dimensional cell
constexpr double kTieEps = 1e-9;

struct RangeRef {
  int agent = 0;
  int index = 0;
  double lo = 0.0;
  double hi = 0.0;
};

std::vector<RangeRef> flatten_ranges(const FJInstance& inst) {
  std::vector<RangeRef> out;
  for (int u = 0; u < inst.n; ++u)
    for (size_t r = 0; r < inst.ranges[u].size(); ++r)
      out.push_back({u, static_cast<int>(r), inst.ranges[u][r].lo, inst.ranges[u][r].hi});
  return out;
}

double baseline_no_signal(const FJInstance& inst) {
  return expected_value(inst, no_signal_scheme(inst));
}

double baseline_full_revelation(const FJInstance& inst) {
  return expected_value(inst, full_revelation_scheme(inst));
}

SolveReport make_report(const FJInstance& inst, SignalingScheme scheme, std::string method,
                        int count) {
  SolveReport rep;
  rep.scheme = std::move(scheme);
  rep.value = expected_value(inst, rep.scheme);
  rep.method = std::move(method);
  rep.cells_or_combos = count;
  rep.no_signal_value = baseline_no_signal(inst);
  rep.full_revelation_value = baseline_full_revelation(inst);
  return rep;
}

// ---- cell enumeration -------------------------------------------------------

// Feasibility LP in the reduced coordinates: variables y (d, free), the
// posterior p (m, >= 0) with y = C p and sum p = 1, and the shared interior
// margin t. Status rows bound B_u . y with margin t; point ranges pin it.
struct CellSearch {
  const FJInstance& inst;
  Matrix z;
  Matrix basis;   // n x d
  Matrix coeffs;  // d x m
  int d = 0;
  std::vector<RangeRef> ranges;
  std::vector<lp::Constraint> rows;  // accumulated status rows
  std::vector<RangeStatus> statuses;
  std::vector<Cell> cells;

  explicit CellSearch(const FJInstance& instance) : inst(instance) {
    FullRevelation fr = full_revelation(inst);
    z = fr.z;
    basis = fr.factorization.basis;
    coeffs = fr.factorization.coefficients;
    d = fr.factorization.d;
    ranges = flatten_ranges(inst);
  }

  int num_vars() const { return d + inst.m + 1; }  // y, p, t

  lp::Problem base_problem() const {
    lp::Problem p;
    p.num_vars = num_vars();
    p.objective.assign(p.num_vars, 0.0);
    p.objective.back() = 1.0;  // maximize the margin
    p.nonneg.assign(p.num_vars, 1);
    for (int j = 0; j < d; ++j) p.nonneg[j] = 0;

    std::vector<double> row(p.num_vars, 0.0);
    for (int t = 0; t < inst.m; ++t) row[d + t] = 1.0;
    p.add(row, lp::Rel::Eq, 1.0);
    for (int j = 0; j < d; ++j) {
      std::vector<double> link(p.num_vars, 0.0);
      link[j] = 1.0;
      for (int t = 0; t < inst.m; ++t) link[d + t] = -coeffs(j, t);
      p.add(link, lp::Rel::Eq, 0.0);
    }
    std::vector<double> cap(p.num_vars, 0.0);
    cap.back() = 1.0;
    p.add(cap, lp::Rel::Le, 1.0);
    for (const auto& r : rows) p.constraints.push_back(r);
    return p;
  }

  lp::Constraint status_row(const RangeRef& r, RangeStatus st, bool first, bool with_margin) const {
    std::vector<double> row(num_vars(), 0.0);
    for (int j = 0; j < d; ++j) row[j] = basis(r.agent, j);
    const double margin = with_margin ? 1.0 : 0.0;
    const bool point = r.hi - r.lo <= 1e-15;
    switch (st) {
      case RangeStatus::Below:
        row.back() = margin;
        return {row, lp::Rel::Le, r.lo};
      case RangeStatus::Above:
        row.back() = -margin;
        return {row, lp::Rel::Ge, r.hi};
      case RangeStatus::In:
        if (point) return {row, lp::Rel::Eq, r.lo};
        if (first) {
          row.back() = -margin;
          return {row, lp::Rel::Ge, r.lo};
        }
        row.back() = margin;
        return {row, lp::Rel::Le, r.hi};
    }
    return {row, lp::Rel::Le, 0.0};
  }

  // In contributes two rows for interval ranges, one equality for points.
  std::vector<lp::Constraint> branch_rows(const RangeRef& r, RangeStatus st, bool margin) const {
    std::vector<lp::Constraint> out;
    out.push_back(status_row(r, st, true, margin));
    if (st == RangeStatus::In && r.hi - r.lo > 1e-15)
      out.push_back(status_row(r, st, false, margin));
    return out;
  }

  bool branch_viable(const std::vector<lp::Constraint>& extra, bool need_margin) {
    lp::Problem p = base_problem();
    for (const auto& c : extra) p.constraints.push_back(c);
    const lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) return false;
    return !need_margin || sol.value >= kMarginEps;
  }

  void emit_cell() {
    Cell cell;
    cell.statuses = statuses;
    for (size_t i = 0; i < ranges.size(); ++i) {
      const RangeRef& r = ranges[i];
      std::vector<double> zr = z.row(r.agent);
      if (statuses[i] == RangeStatus::In) {
        cell.hits.members.insert({r.agent, r.index});
        cell.constraints.push_back({zr, lp::Rel::Ge, r.lo});
        cell.constraints.push_back({zr, lp::Rel::Le, r.hi});
      } else if (statuses[i] == RangeStatus::Below) {
        cell.constraints.push_back({zr, lp::Rel::Le, r.lo});
      } else {
        cell.constraints.push_back({zr, lp::Rel::Ge, r.hi});
      }
    }
    cell.value = eval_g(inst.objective.g, cell.hits);
    cells.push_back(std::move(cell));
  }

  void dfs(size_t i) {
    if (i == ranges.size()) {
      emit_cell();
      return;
    }
    const RangeRef& r = ranges[i];
    static constexpr RangeStatus order[3] = {RangeStatus::Below, RangeStatus::In,
                                             RangeStatus::Above};
    bool any = false;
    for (bool margin : {true, false}) {
      for (RangeStatus st : order) {
        const auto extra = branch_rows(r, st, margin);
        if (!branch_viable(extra, margin)) continue;
        any = true;
        statuses.push_back(st);
        for (const auto& c : extra) rows.push_back(c);
        dfs(i + 1);
        rows.resize(rows.size() - extra.size());
        statuses.pop_back();
      }
      if (any) break;  // closed statuses are a fallback for pinned ranges only
    }
  }
};

// ---- master LP over signal specifications ----------------------------------

struct SignalSpecLP {
  std::vector<PosteriorConstraint> constraints;
  double value = 0.0;
};

// One block of joint variables x_{theta,i} per signal; every posterior-space
// constraint alpha . p rel beta becomes sum_theta (alpha_theta - beta) x <= 0
// after scaling by the signal mass.
SignalingScheme solve_master_lp(const FJInstance& inst, const std::vector<SignalSpecLP>& specs) {
  const int m = inst.m;
  const int s = static_cast<int>(specs.size());
  lp::Problem p;
  p.num_vars = s * m;
  p.objective.assign(p.num_vars, 0.0);
  for (int i = 0; i < s; ++i)
    for (int t = 0; t < m; ++t) p.objective[i * m + t] = specs[i].value;

  for (int t = 0; t < m; ++t) {
    std::vector<double> row(p.num_vars, 0.0);
    for (int i = 0; i < s; ++i) row[i * m + t] = 1.0;
    p.add(row, lp::Rel::Eq, inst.prior[t]);
  }
  for (int i = 0; i < s; ++i) {
    for (const auto& c : specs[i].constraints) {
      std::vector<double> row(p.num_vars, 0.0);
      for (int t = 0; t < m; ++t) row[i * m + t] = c.coeffs[t] - c.rhs;
      p.add(row, c.rel, 0.0);
    }
  }

  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal)
    throw NumericalFailureError("master signal LP did not solve to optimality");

  std::vector<std::vector<double>> joints;
  for (int i = 0; i < s; ++i)
    joints.emplace_back(sol.x.begin() + i * m, sol.x.begin() + (i + 1) * m);
  return scheme_from_joints(inst, std::move(joints));
}

void require_range_objective(const FJInstance& inst) {
  if (inst.objective.kind != ObjectiveKind::RangeBased)
    throw WrongObjectiveKindError("a range-based objective is required");
}

// ---- two-state machinery ----------------------------------------------------

struct TransformedRange {
  double a = 0.0;
  double b = 0.0;
  int agent = 0;
  int index = 0;
  bool point = false;
};

struct TwoStateData {
  double q = 0.0;
  HitSet always;
  std::vector<TransformedRange> ranges;
  std::vector<double> breakpoints;
  std::vector<double> seg_values;
  std::vector<std::pair<double, double>> point_cells;  // x -> cell value
};

bool same_x(double a, double b) { return std::abs(a - b) <= 1e-12; }

TwoStateData build_two_state(const FJInstance& inst) {
  if (inst.m != 2) throw WrongStateCountError();
  TwoStateData data;
  data.q = inst.prior[1];
  const Matrix z = full_revelation(inst).z;

  for (int u = 0; u < inst.n; ++u) {
    const double z1 = z(u, 0), z2 = z(u, 1);
    for (size_t r = 0; r < inst.ranges[u].size(); ++r) {
      const Interval& iv = inst.ranges[u][r];
      if (std::abs(z2 - z1) <= 1e-12) {
        if (iv.lo - 1e-9 <= z1 && z1 <= iv.hi + 1e-9)
          data.always.members.insert({u, static_cast<int>(r)});
        continue;
      }
      double lo = (iv.lo - z1) / (z2 - z1);
      double hi = (iv.hi - z1) / (z2 - z1);
      if (z2 < z1) std::swap(lo, hi);
      if (hi < 0.0 || lo > 1.0) continue;  // never reachable
      TransformedRange tr;
      tr.a = std::max(0.0, lo);
      tr.b = std::min(1.0, hi);
      tr.agent = u;
      tr.index = static_cast<int>(r);
      tr.point = tr.b - tr.a <= 1e-15;
      data.ranges.push_back(tr);
    }
  }

  std::vector<double> pts = {0.0, 1.0, data.q};
  for (const auto& tr : data.ranges) {
    pts.push_back(tr.a);
    pts.push_back(tr.b);
  }
  std::sort(pts.begin(), pts.end());
  for (double x : pts) {
    if (data.breakpoints.empty() || !same_x(data.breakpoints.back(), x))
      data.breakpoints.push_back(x);
  }

  auto value_at = [&](const HitSet& hits) { return eval_g(inst.objective.g, hits); };

  for (size_t i = 0; i + 1 < data.breakpoints.size(); ++i) {
    const double mid = 0.5 * (data.breakpoints[i] + data.breakpoints[i + 1]);
    HitSet hits = data.always;
    for (const auto& tr : data.ranges)
      if (tr.a - 1e-12 <= mid && mid <= tr.b + 1e-12) hits.members.insert({tr.agent, tr.index});
    data.seg_values.push_back(value_at(hits));
  }

  // point ranges carve zero-width cells of their own
  std::set<double> point_positions;
  for (const auto& tr : data.ranges)
    if (tr.point) point_positions.insert(tr.a);
  for (double x0 : point_positions) {
    HitSet hits = data.always;
    for (const auto& tr : data.ranges) {
      if (tr.point && same_x(tr.a, x0))
        hits.members.insert({tr.agent, tr.index});
      else if (!tr.point && tr.a + 1e-12 < x0 && x0 < tr.b - 1e-12)
        hits.members.insert({tr.agent, tr.index});
    }
    data.point_cells.push_back({x0, value_at(hits)});
  }
  return data;
}

// Cell value at a breakpoint: the best adjacent segment or point cell.
double breakpoint_value(const TwoStateData& data, size_t i) {
  double best = 0.0;
  if (i > 0) best = std::max(best, data.seg_values[i - 1]);
  if (i < data.seg_values.size()) best = std::max(best, data.seg_values[i]);
  for (const auto& [x0, v] : data.point_cells)
    if (same_x(x0, data.breakpoints[i])) best = std::max(best, v);
  return best;
}

}  // namespace

SignalingScheme no_signal_scheme(const FJInstance& inst) {
  Matrix phi(inst.m, 1);
  for (int t = 0; t < inst.m; ++t) phi(t, 0) = 1.0;
  return make_scheme(inst, phi);
}

SignalingScheme full_revelation_scheme(const FJInstance& inst) {
  return make_scheme(inst, Matrix::identity(inst.m));
}

SolveReport optimize_convex(const FJInstance& inst) {
  if (!is_convex_kind(inst.objective.kind))
    throw WrongObjectiveKindError("optimize_convex requires a convex objective kind");
  const bool minimize = inst.objective.sense == Sense::Min;
  SignalingScheme scheme = minimize ? no_signal_scheme(inst) : full_revelation_scheme(inst);
  return make_report(inst, std::move(scheme),
                     minimize ? "convex/no-signal" : "convex/full-revelation", 0);
}

std::vector<Cell> enumerate_cells(const FJInstance& inst) {
  require_range_objective(inst);
  CellSearch search(inst);
  search.dfs(0);
  return search.cells;
}

SolveReport optimize_constant_rank(const FJInstance& inst) {
  require_range_objective(inst);
  if (inst.total_ranges() == 0)
    return make_report(inst, no_signal_scheme(inst), "constant-rank", 0);

  const std::vector<Cell> cells = enumerate_cells(inst);
  std::vector<SignalSpecLP> specs;
  specs.reserve(cells.size());
  for (const Cell& c : cells) specs.push_back({c.constraints, c.value});
  SignalingScheme scheme = solve_master_lp(inst, specs);
  return make_report(inst, std::move(scheme), "constant-rank", static_cast<int>(cells.size()));
}

SolveReport optimize_two_state(const FJInstance& inst) {
  require_range_objective(inst);
  const TwoStateData data = build_two_state(inst);
  const size_t nb = data.breakpoints.size();
  std::vector<double> fval(nb);
  for (size_t i = 0; i < nb; ++i) fval[i] = breakpoint_value(data, i);

  size_t qi = 0;
  for (size_t i = 0; i < nb; ++i)
    if (same_x(data.breakpoints[i], data.q)) qi = i;

  double best = fval[qi];
  bool best_no_signal = true;
  double best_width = 0.0;
  size_t bi = qi, bj = qi;
  for (size_t i = 0; i < nb && data.breakpoints[i] <= data.q + 1e-12; ++i) {
    for (size_t j = i + 1; j < nb; ++j) {
      const double x1 = data.breakpoints[i], x2 = data.breakpoints[j];
      if (x2 < data.q - 1e-12) continue;
      const double width = x2 - x1;
      const double line = ((x2 - data.q) * fval[i] + (data.q - x1) * fval[j]) / width;
      if (line > best + kTieEps) {
        best = line;
        best_no_signal = false;
        best_width = width;
        bi = i;
        bj = j;
      } else if (!best_no_signal && line > best - kTieEps && width < best_width - 1e-12) {
        best_width = width;
        bi = i;
        bj = j;
      }
    }
  }

  SignalingScheme scheme;
  if (best_no_signal) {
    scheme = no_signal_scheme(inst);
  } else {
    const double x1 = data.breakpoints[bi], x2 = data.breakpoints[bj];
    const double m1 = (x2 - data.q) / (x2 - x1);
    const double m2 = (data.q - x1) / (x2 - x1);
    std::vector<std::vector<double>> joints = {{m1 * (1 - x1), m1 * x1}, {m2 * (1 - x2), m2 * x2}};
    scheme = scheme_from_joints(inst, std::move(joints));
  }
  const int count = static_cast<int>(data.seg_values.size() + data.point_cells.size());
  return make_report(inst, std::move(scheme), "two-state", count);
}

SolveReport optimize_nonzero_combinations(const FJInstance& inst,
                                          const std::vector<FamilyEntry>& family) {
  require_range_objective(inst);
  const Matrix z = full_revelation(inst).z;
  std::vector<SignalSpecLP> specs;
  for (const FamilyEntry& fe : family) {
    if (fe.value <= 0) continue;
    SignalSpecLP spec;
    spec.value = fe.value;
    for (const auto& [agent, index] : fe.set.members) {
      const Interval& iv = inst.ranges[agent][index];
      std::vector<double> zr = z.row(agent);
      spec.constraints.push_back({zr, lp::Rel::Ge, iv.lo});
      spec.constraints.push_back({zr, lp::Rel::Le, iv.hi});
    }
    specs.push_back(std::move(spec));
  }
  const int combos = static_cast<int>(specs.size());
  specs.push_back({{}, 0.0});  // dummy signal completes the decomposition
  SignalingScheme scheme = solve_master_lp(inst, specs);
  return make_report(inst, std::move(scheme), "combinations", combos);
}

namespace {

// Per-agent single threshold ranges [a_u, 1]; empty when the structure is absent.
std::optional<std::vector<double>> threshold_structure(const FJInstance& inst) {
  std::vector<double> a(inst.n);
  for (int u = 0; u < inst.n; ++u) {
    if (inst.ranges[u].size() != 1) return std::nullopt;
    if (inst.ranges[u][0].hi < 1.0 - 1e-12) return std::nullopt;
    a[u] = inst.ranges[u][0].lo;
  }
  return a;
}

HitSet prefix_suffix_set(int n, int prefix_len, int suffix_start) {
  HitSet out;
  for (int u = 0; u < prefix_len; ++u) out.members.insert({u, 0});
  for (int u = suffix_start; u < n; ++u) out.members.insert({u, 0});
  return out;
}

}  // namespace

std::optional<std::vector<FamilyEntry>> build_monotone_family(const FJInstance& inst) {
  const auto thresholds = threshold_structure(inst);
  if (!thresholds) return std::nullopt;
  for (int u = 1; u < inst.n; ++u)
    if ((*thresholds)[u - 1] > (*thresholds)[u] + 1e-12) return std::nullopt;

  const Matrix z = full_revelation(inst).z;
  for (int u = 1; u < inst.n; ++u)
    for (int t = 0; t < inst.m; ++t)
      if (z(u - 1, t) < z(u, t) - 1e-12) return std::nullopt;

  std::vector<FamilyEntry> family;
  for (int j = 1; j <= inst.n; ++j) {
    FamilyEntry fe;
    fe.set = prefix_suffix_set(inst.n, j, inst.n);
    fe.value = eval_g(inst.objective.g, fe.set);
    if (fe.value > 0) family.push_back(std::move(fe));
  }
  return family;
}

std::optional<std::vector<FamilyEntry>> build_bitonic_family(const FJInstance& inst) {
  const auto thresholds = threshold_structure(inst);
  if (!thresholds) return std::nullopt;
  const Matrix z = full_revelation(inst).z;

  auto valid_pivot = [&](int k) {
    for (int u = 1; u < k; ++u)
      for (int t = 0; t < inst.m; ++t)
        if (z(u - 1, t) < z(u, t) - 1e-12) return false;
    for (int u = k; u < inst.n; ++u)
      for (int t = 0; t < inst.m; ++t)
        if (z(u - 1, t) > z(u, t) + 1e-12) return false;
    for (int u = 1; u < k; ++u)
      if ((*thresholds)[u - 1] > (*thresholds)[u] + 1e-12) return false;
    for (int u = k; u < inst.n; ++u)
      if ((*thresholds)[u - 1] < (*thresholds)[u] - 1e-12) return false;
    return true;
  };

  int pivot = -1;
  for (int k = inst.n; k >= 1; --k) {
    if (valid_pivot(k)) {
      pivot = k;
      break;
    }
  }
  if (pivot < 0) return std::nullopt;

  std::set<std::set<std::pair<int, int>>> seen;
  std::vector<FamilyEntry> family;
  for (int i = 0; i <= pivot; ++i) {
    for (int j = pivot + 1; j <= inst.n + 1; ++j) {
      FamilyEntry fe;
      fe.set = prefix_suffix_set(inst.n, i, j - 1);
      if (!seen.insert(fe.set.members).second) continue;
      fe.value = eval_g(inst.objective.g, fe.set);
      if (fe.value > 0) family.push_back(std::move(fe));
    }
  }
  return family;
}

SolveReport approximate_subadditive(const FJInstance& inst) {
  require_range_objective(inst);
  const GKind gk = inst.objective.g.kind;

  bool warn = gk == GKind::Threshold;
  if (gk == GKind::WeightedSets)
    for (const auto& ws : inst.objective.g.sets)
      if (ws.members.size() > 1) warn = true;

  SolveReport best = make_report(inst, no_signal_scheme(inst), "approx", 0);
  int tried = 0;
  for (int u = 0; u < inst.n; ++u) {
    if (inst.ranges[u].empty()) continue;
    FJInstance sub = inst;
    for (int v = 0; v < inst.n; ++v)
      if (v != u) sub.ranges[v].clear();

    if (gk == GKind::WeightedSets) {
      std::vector<WeightedSet> kept;
      for (const auto& ws : inst.objective.g.sets) {
        bool own = !ws.members.empty();
        for (const auto& [agent, index] : ws.members) own = own && agent == u;
        if (own) kept.push_back(ws);
      }
      sub.objective.g.sets = std::move(kept);
    } else {
      // overlapping ranges of one agent merge into maximal disjoint unions
      std::vector<Interval> sorted = inst.ranges[u];
      std::sort(sorted.begin(), sorted.end(),
                [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
      std::vector<Interval> merged;
      for (const Interval& iv : sorted) {
        if (!merged.empty() && iv.lo <= merged.back().hi + 1e-12)
          merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
          merged.push_back(iv);
      }
      sub.ranges[u] = std::move(merged);
    }

    SolveReport rep = optimize_constant_rank(sub);
    const double full_value = expected_value(inst, rep.scheme);
    ++tried;
    if (full_value > best.value + kTieEps) {
      best.scheme = std::move(rep.scheme);
      best.value = full_value;
    }
  }
  best.method = "approx";
  best.cells_or_combos = tried;
  best.approximation = true;
  best.subadditivity_warning = warn;
  return best;
}

SolveReport solve_auto(const FJInstance& inst) {
  bool all_fdg = inst.n > 0;
  for (double l : inst.susceptibility)
    if (std::abs(l - 1.0) > 1e-12) all_fdg = false;
  if (all_fdg) {
    SolveReport rep = solve_auto(fdg_induced_instance(inst));
    rep.method = "fdg/" + rep.method;
    return rep;
  }

  if (is_convex_kind(inst.objective.kind)) return optimize_convex(inst);

  const int k = inst.total_ranges();
  if (k == 0) return make_report(inst, no_signal_scheme(inst), "no-signal", 0);
  if (inst.m == 2) return optimize_two_state(inst);

  const int d = full_revelation(inst).factorization.d;
  if (d <= 4 || (k <= 10 && d <= 6)) return optimize_constant_rank(inst);

  if (inst.objective.g.kind == GKind::WeightedSets && !inst.objective.g.sets.empty() &&
      inst.objective.g.sets.size() <= 10000) {
    std::vector<FamilyEntry> family;
    for (const auto& ws : inst.objective.g.sets) {
      FamilyEntry fe;
      for (const auto& mref : ws.members) fe.set.members.insert(mref);
      fe.value = ws.value;
      family.push_back(std::move(fe));
    }
    return optimize_nonzero_combinations(inst, family);
  }

  if (auto family = build_monotone_family(inst)) {
    SolveReport rep = optimize_nonzero_combinations(inst, *family);
    rep.method = "monotone-combinations";
    return rep;
  }
  if (auto family = build_bitonic_family(inst)) {
    SolveReport rep = optimize_nonzero_combinations(inst, *family);
    rep.method = "bitonic-combinations";
    return rep;
  }
  return approximate_subadditive(inst);
}

TwoStateProfile two_state_profile(const FJInstance& inst) {
  require_range_objective(inst);
  const TwoStateData data = build_two_state(inst);
  TwoStateProfile out;
  out.breakpoints = data.breakpoints;
  out.segment_values = data.seg_values;
  out.prior = data.q;
  out.breakpoint_values.resize(data.breakpoints.size());
  for (size_t i = 0; i < data.breakpoints.size(); ++i)
    out.breakpoint_values[i] = breakpoint_value(data, i);
  return out;
}

}  // namespace fjsig::opt
