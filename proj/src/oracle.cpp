#include "fjsig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fjsig/errors.hpp"
#include "fjsig/objectives.hpp"

namespace fjsig::oracle {

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<double>> grid_points(const FJInstance& inst, const GridSpec& grid) {
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(grid.resolution, inst.m, cur, comps);

  std::vector<std::vector<double>> points;
  std::map<std::vector<long long>, bool> seen;
  auto add = [&](const std::vector<double>& p) {
    std::vector<long long> key(p.size());
    for (size_t i = 0; i < p.size(); ++i) key[i] = llround(p[i] * 1e12);
    if (seen.emplace(std::move(key), true).second) points.push_back(p);
  };
  for (const auto& c : comps) {
    std::vector<double> p(inst.m);
    for (int t = 0; t < inst.m; ++t) p[t] = static_cast<double>(c[t]) / grid.resolution;
    add(p);
  }
  for (const auto& p : grid.extra_points) add(p);
  return points;
}

}  // namespace

int default_resolution(int m) {
  switch (m) {
    case 2:
      return 240;
    case 3:
      return 20;
    case 4:
      return 10;
    default:
      return 4;
  }
}

std::vector<double> two_state_breakpoints(const FJInstance& inst) {
  if (inst.m != 2) return {};
  const Matrix z = full_revelation(inst).z;
  std::vector<double> out;
  for (int u = 0; u < inst.n; ++u) {
    const double z1 = z(u, 0), z2 = z(u, 1);
    if (std::abs(z2 - z1) <= 1e-12) continue;
    for (const Interval& iv : inst.ranges[u]) {
      double lo = (iv.lo - z1) / (z2 - z1);
      double hi = (iv.hi - z1) / (z2 - z1);
      if (z2 < z1) std::swap(lo, hi);
      if (hi < 0.0 || lo > 1.0) continue;
      out.push_back(std::max(0.0, lo));
      out.push_back(std::min(1.0, hi));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
            out.end());
  return out;
}

GridSpec default_grid(const FJInstance& inst) {
  GridSpec grid;
  grid.resolution = default_resolution(inst.m);
  for (double x : two_state_breakpoints(inst)) grid.extra_points.push_back({1.0 - x, x});
  return grid;
}

OracleResult grid_oracle(const FJInstance& inst, const GridSpec& grid) {
  const std::vector<std::vector<double>> points = grid_points(inst, grid);
  const Matrix z = full_revelation(inst).z;
  const bool minimize =
      is_convex_kind(inst.objective.kind) && inst.objective.sense == Sense::Min;

  lp::Problem p;
  p.num_vars = static_cast<int>(points.size());
  p.objective.resize(p.num_vars);
  for (int i = 0; i < p.num_vars; ++i) {
    const double f = eval_objective(inst, multiply(z, points[i]));
    p.objective[i] = minimize ? -f : f;
  }
  for (int t = 0; t < inst.m; ++t) {
    std::vector<double> row(p.num_vars);
    for (int i = 0; i < p.num_vars; ++i) row[i] = points[i][t];
    p.add(row, lp::Rel::Eq, inst.prior[t]);
  }
  p.add(std::vector<double>(p.num_vars, 1.0), lp::Rel::Eq, 1.0);

  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal) throw InfeasibleGridError();

  std::vector<std::vector<double>> joints;
  for (int i = 0; i < p.num_vars; ++i) {
    if (sol.x[i] <= 1e-9) continue;
    std::vector<double> joint(inst.m);
    for (int t = 0; t < inst.m; ++t) joint[t] = sol.x[i] * points[i][t];
    joints.push_back(std::move(joint));
  }
  OracleResult out;
  out.scheme = scheme_from_joints(inst, std::move(joints));
  out.value = expected_value(inst, out.scheme);
  return out;
}

double exhaustive_two_signal(const FJInstance& inst, double step) {
  if (inst.m != 2) throw WrongStateCountError();
  const Matrix z = full_revelation(inst).z;
  const double q = inst.prior[1];
  auto f = [&](double x) {
    return eval_objective(inst, multiply(z, std::vector<double>{1.0 - x, x}));
  };

  std::vector<double> pts;
  for (double x = 0.0; x < 1.0 + 1e-12; x += step) pts.push_back(std::min(x, 1.0));
  for (double x : two_state_breakpoints(inst)) pts.push_back(x);
  pts.push_back(q);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
            pts.end());

  double best = f(q);
  for (double x1 : pts) {
    if (x1 > q + 1e-12) break;
    for (double x2 : pts) {
      if (x2 < q - 1e-12 || x2 <= x1 + 1e-12) continue;
      const double line = ((x2 - q) * f(x1) + (q - x1) * f(x2)) / (x2 - x1);
      best = std::max(best, line);
    }
  }
  return best;
}

std::vector<std::vector<double>> enumerate_lp_vertices(const lp::Problem& p) {
  if (p.num_vars > 8) throw TooLargeError("vertex enumeration caps at 8 variables");

  // standardized equality system over nonnegative columns
  auto is_nonneg = [&](int j) { return p.nonneg.empty() ? true : p.nonneg[j] != 0; };
  std::vector<std::pair<int, int>> var_cols(p.num_vars);
  int cols = 0;
  for (int j = 0; j < p.num_vars; ++j) {
    var_cols[j] = {cols, is_nonneg(j) ? -1 : cols + 1};
    cols += is_nonneg(j) ? 1 : 2;
  }
  const int m = static_cast<int>(p.constraints.size());
  std::vector<int> slack(m, -1);
  for (int i = 0; i < m; ++i)
    if (p.constraints[i].rel != lp::Rel::Eq) slack[i] = cols++;

  Matrix a(m, cols);
  std::vector<double> b(m);
  for (int i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    for (int j = 0; j < p.num_vars; ++j) {
      a(i, var_cols[j].first) += c.coeffs[j];
      if (var_cols[j].second >= 0) a(i, var_cols[j].second) -= c.coeffs[j];
    }
    if (slack[i] >= 0) a(i, slack[i]) = c.rel == lp::Rel::Le ? 1.0 : -1.0;
    b[i] = c.rhs;
  }

  std::vector<std::vector<double>> vertices;
  std::map<std::vector<long long>, bool> seen;
  std::vector<int> pick;
  auto try_basis = [&](const std::vector<int>& basis) {
    Matrix bm(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) bm(i, j) = a(i, basis[j]);
    Matrix inv;
    try {
      inv = invert(bm);
    } catch (const SingularMatrixError&) {
      return;
    }
    const std::vector<double> xb = multiply(inv, b);
    for (double v : xb)
      if (v < -1e-9) return;
    std::vector<double> ext(cols, 0.0);
    for (int j = 0; j < m; ++j) ext[basis[j]] = xb[j];
    std::vector<double> x(p.num_vars);
    for (int j = 0; j < p.num_vars; ++j) {
      x[j] = ext[var_cols[j].first];
      if (var_cols[j].second >= 0) x[j] -= ext[var_cols[j].second];
    }
    std::vector<long long> key(x.size());
    for (size_t j = 0; j < x.size(); ++j) key[j] = llround(x[j] * 1e9);
    if (seen.emplace(std::move(key), true).second) vertices.push_back(std::move(x));
  };

  std::vector<int> basis;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(basis.size()) == m) {
      try_basis(basis);
      return;
    }
    for (int c = start; c < cols; ++c) {
      basis.push_back(c);
      self(self, c + 1);
      basis.pop_back();
    }
  };
  rec(rec, 0);
  return vertices;
}

namespace {

void mis_search(const std::vector<std::vector<bool>>& adj, std::vector<int>& remaining,
                std::vector<int>& chosen, std::pair<int, std::vector<int>>& best) {
  if (static_cast<int>(chosen.size() + remaining.size()) <= best.first) return;
  if (remaining.empty()) {
    if (static_cast<int>(chosen.size()) > best.first)
      best = {static_cast<int>(chosen.size()), chosen};
    return;
  }
  const int v = remaining.back();
  remaining.pop_back();

  std::vector<int> filtered;
  for (int u : remaining)
    if (!adj[v][u]) filtered.push_back(u);
  chosen.push_back(v);
  mis_search(adj, filtered, chosen, best);
  chosen.pop_back();

  mis_search(adj, remaining, chosen, best);
  remaining.push_back(v);
}

}  // namespace

std::pair<int, std::vector<int>> max_independent_set(const std::vector<std::vector<bool>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n > 20) throw TooLargeError("independent set search caps at 20 vertices");
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = n - 1 - i;
  std::vector<int> chosen;
  std::pair<int, std::vector<int>> best{0, {}};
  mis_search(adjacency, remaining, chosen, best);
  std::sort(best.second.begin(), best.second.end());
  return best;
}

}  // namespace fjsig::oracle
