#pragma once

#include <vector>

namespace fjsig::lp {

enum class Rel { Le, Eq, Ge };

struct Constraint {
  std::vector<double> coeffs;
  Rel rel = Rel::Le;
  double rhs = 0.0;
};

/// Linear program: maximize objective . x subject to the constraints.
/// Variables are nonnegative unless flagged otherwise in nonneg (empty
/// nonneg means all nonnegative).
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<char> nonneg;

  void add(std::vector<double> coeffs, Rel rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double value = 0.0;
};

/// Two-phase dense-tableau simplex with Bland's rule. Deterministic; optimal
/// solutions are basic feasible solutions. Throws NumericalFailureError if the
/// pivot cap (1e6) trips.
Solution solve(const Problem& p);

/// True iff the phase-1 optimum is zero within 1e-8.
bool feasible(const Problem& p);

}  // namespace fjsig::lp
