#include "fjsig/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fjsig/errors.hpp"

namespace fjsig::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-8;
constexpr long kMaxPivots = 1000000;

// Standard-form workspace: equality rows with rhs >= 0 over nonnegative
// columns. Free variables are split into a positive and a negative part.
struct Tableau {
  int rows = 0;
  int cols = 0;  // structural + slack columns, artificials appended after
  int num_art = 0;
  std::vector<double> a;    // rows x (cols + num_art)
  std::vector<double> rhs;  // rows
  std::vector<int> basis;   // column index of the basic variable per row

  // map from original variable to (plus column, minus column or -1)
  std::vector<std::pair<int, int>> var_cols;

  double& at(int r, int c) { return a[static_cast<size_t>(r) * (cols + num_art) + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * (cols + num_art) + c]; }
  int total_cols() const { return cols + num_art; }
};

Tableau build(const Problem& p) {
  const int m = static_cast<int>(p.constraints.size());
  Tableau t;
  t.rows = m;

  auto is_nonneg = [&](int j) { return p.nonneg.empty() ? true : p.nonneg[j] != 0; };

  int col = 0;
  t.var_cols.resize(p.num_vars);
  for (int j = 0; j < p.num_vars; ++j) {
    if (is_nonneg(j)) {
      t.var_cols[j] = {col, -1};
      col += 1;
    } else {
      t.var_cols[j] = {col, col + 1};
      col += 2;
    }
  }
  const int struct_cols = col;

  // one slack per inequality row
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (p.constraints[i].rel != Rel::Eq) slack_col[i] = col++;
  }
  t.cols = col;

  // artificials assigned after sign normalization below
  std::vector<double> row_sign(m, 1.0);
  std::vector<Rel> rel(m);
  t.rhs.resize(m);
  for (int i = 0; i < m; ++i) {
    rel[i] = p.constraints[i].rel;
    double b = p.constraints[i].rhs;
    if (b < 0) {
      row_sign[i] = -1.0;
      b = -b;
      if (rel[i] == Rel::Le)
        rel[i] = Rel::Ge;
      else if (rel[i] == Rel::Ge)
        rel[i] = Rel::Le;
    }
    t.rhs[i] = b;
  }

  int art = 0;
  std::vector<int> art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (rel[i] != Rel::Le) art_col[i] = t.cols + art++;
  }
  t.num_art = art;

  t.a.assign(static_cast<size_t>(m) * t.total_cols(), 0.0);
  t.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    for (int j = 0; j < p.num_vars; ++j) {
      const double v = row_sign[i] * c.coeffs[j];
      if (v == 0.0) continue;
      t.at(i, t.var_cols[j].first) += v;
      if (t.var_cols[j].second >= 0) t.at(i, t.var_cols[j].second) -= v;
    }
    if (slack_col[i] >= 0) t.at(i, slack_col[i]) = (rel[i] == Rel::Le) ? 1.0 : -1.0;
    if (rel[i] == Rel::Le) {
      t.basis[i] = slack_col[i];
    } else {
      t.at(i, art_col[i]) = 1.0;
      t.basis[i] = art_col[i];
    }
  }
  (void)struct_cols;
  return t;
}

// Maximizes obj over the tableau in place. Returns false when unbounded.
bool run_simplex(Tableau& t, std::vector<double>& obj_row, double& obj_val, int usable_cols,
                 long& pivots) {
  const int m = t.rows;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < usable_cols; ++j) {
      if (obj_row[j] > kPivotTol) {
        enter = j;  // Bland: lowest index
        break;
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double aij = t.at(i, enter);
      if (aij > kPivotTol) {
        const double ratio = t.rhs[i] / aij;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave < 0 || t.basis[i] < t.basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded

    if (++pivots > kMaxPivots) throw NumericalFailureError("simplex pivot cap exceeded");

    const double piv = t.at(leave, enter);
    const int tc = t.total_cols();
    for (int j = 0; j < tc; ++j) t.at(leave, j) /= piv;
    t.rhs[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = t.at(i, enter);
      if (f == 0.0) continue;
      for (int j = 0; j < tc; ++j) t.at(i, j) -= f * t.at(leave, j);
      t.rhs[i] -= f * t.rhs[leave];
      if (t.rhs[i] < 0 && t.rhs[i] > -1e-11) t.rhs[i] = 0.0;
    }
    const double f = obj_row[enter];
    if (f != 0.0) {
      for (int j = 0; j < tc; ++j) obj_row[j] -= f * t.at(leave, j);
      obj_val += f * t.rhs[leave];
    }
    t.basis[leave] = enter;
  }
}

// Phase 1: returns true when a feasible basis was found (artificials driven to zero).
bool phase_one(Tableau& t, long& pivots) {
  const int tc = t.total_cols();
  std::vector<double> obj(tc, 0.0);
  for (int j = t.cols; j < tc; ++j) obj[j] = -1.0;
  double val = 0.0;
  // price out the initially basic artificials
  for (int i = 0; i < t.rows; ++i) {
    if (t.basis[i] >= t.cols) {
      for (int j = 0; j < tc; ++j) obj[j] += t.at(i, j);
      val -= t.rhs[i];
    }
  }
  run_simplex(t, obj, val, tc, pivots);  // bounded by construction
  if (val < -kFeasTol) return false;

  // pivot remaining artificials out of the basis where possible
  for (int i = 0; i < t.rows; ++i) {
    if (t.basis[i] < t.cols) continue;
    int enter = -1;
    for (int j = 0; j < t.cols; ++j) {
      if (std::abs(t.at(i, j)) > 1e-7) {
        enter = j;
        break;
      }
    }
    if (enter < 0) continue;  // redundant row; artificial stays basic at zero
    const double piv = t.at(i, enter);
    for (int j = 0; j < tc; ++j) t.at(i, j) /= piv;
    t.rhs[i] /= piv;
    for (int r = 0; r < t.rows; ++r) {
      if (r == i) continue;
      const double f = t.at(r, enter);
      if (f == 0.0) continue;
      for (int j = 0; j < tc; ++j) t.at(r, j) -= f * t.at(i, j);
      t.rhs[r] -= f * t.rhs[i];
    }
    t.basis[i] = enter;
  }
  return true;
}

}  // namespace

Solution solve(const Problem& p) {
  Tableau t = build(p);
  long pivots = 0;
  Solution sol;
  if (!phase_one(t, pivots)) {
    sol.status = Status::Infeasible;
    return sol;
  }

  // phase 2 objective over structural columns; artificials are barred by
  // leaving their objective at zero and never letting them re-enter
  const int tc = t.total_cols();
  std::vector<double> obj(tc, 0.0);
  for (int j = 0; j < p.num_vars; ++j) {
    obj[t.var_cols[j].first] += p.objective[j];
    if (t.var_cols[j].second >= 0) obj[t.var_cols[j].second] -= p.objective[j];
  }
  double val = 0.0;
  for (int i = 0; i < t.rows; ++i) {
    const int b = t.basis[i];
    if (b >= 0 && obj[b] != 0.0) {
      const double f = obj[b];
      for (int j = 0; j < tc; ++j) obj[j] -= f * t.at(i, j);
      val += f * t.rhs[i];
    }
  }
  if (!run_simplex(t, obj, val, t.cols, pivots)) {
    sol.status = Status::Unbounded;
    return sol;
  }

  std::vector<double> ext(tc, 0.0);
  for (int i = 0; i < t.rows; ++i)
    if (t.basis[i] >= 0) ext[t.basis[i]] = t.rhs[i];
  sol.x.assign(p.num_vars, 0.0);
  for (int j = 0; j < p.num_vars; ++j) {
    sol.x[j] = ext[t.var_cols[j].first];
    if (t.var_cols[j].second >= 0) sol.x[j] -= ext[t.var_cols[j].second];
  }
  sol.value = 0.0;
  for (int j = 0; j < p.num_vars; ++j) sol.value += p.objective[j] * sol.x[j];
  sol.status = Status::Optimal;
  return sol;
}

bool feasible(const Problem& p) {
  if (p.constraints.empty()) return true;
  Tableau t = build(p);
  long pivots = 0;
  return phase_one(t, pivots);
}

}  // namespace fjsig::lp
