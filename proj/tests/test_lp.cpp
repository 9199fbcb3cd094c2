#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "fjsig/lp.hpp"

using namespace fjsig;

namespace {

lp::Problem box_problem() {
  lp::Problem p;
  p.num_vars = 2;
  p.objective = {1.0, 1.0};
  p.add({1.0, 0.0}, lp::Rel::Le, 1.0);
  p.add({0.0, 1.0}, lp::Rel::Le, 1.0);
  return p;
}

// Random bounded LP: a few <= rows plus per-variable upper bounds.
lp::Problem random_bounded(std::mt19937& rng, int vars, int extra_rows) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.2, 2.0);
  lp::Problem p;
  p.num_vars = vars;
  p.objective.resize(vars);
  for (double& v : p.objective) v = unif(rng);
  for (int r = 0; r < extra_rows; ++r) {
    std::vector<double> row(vars);
    for (double& v : row) v = unif(rng);
    p.add(row, lp::Rel::Le, pos(rng));
  }
  for (int j = 0; j < vars; ++j) {
    std::vector<double> row(vars, 0.0);
    row[j] = 1.0;
    p.add(row, lp::Rel::Le, pos(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("box maximum") {
  const lp::Solution sol = lp::solve(box_problem());
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("two-customer combination program reaches three quarters coverage") {
  // signal variables x_{state,T} for the single valued combination, plus a dummy
  lp::Problem p;
  p.num_vars = 4;  // x1T, x2T, x1D, x2D
  p.objective = {2.0, 2.0, 0.0, 0.0};
  p.add({1.0, 0.0, 1.0, 0.0}, lp::Rel::Eq, 0.5);
  p.add({0.0, 1.0, 0.0, 1.0}, lp::Rel::Eq, 0.5);
  // agent opinions of the valued signal stay inside [0.6, 1]
  p.add({0.1 - 0.6, 0.9 - 0.6, 0.0, 0.0}, lp::Rel::Ge, 0.0);
  p.add({0.1 - 1.0, 0.9 - 1.0, 0.0, 0.0}, lp::Rel::Le, 0.0);
  p.add({0.2 - 0.6, 0.8 - 0.6, 0.0, 0.0}, lp::Rel::Ge, 0.0);
  p.add({0.2 - 1.0, 0.8 - 1.0, 0.0, 0.0}, lp::Rel::Le, 0.0);
  const lp::Solution sol = lp::solve(p);
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(sol.x[0] + sol.x[1] == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("feasibility") {
  lp::Problem p;
  p.num_vars = 1;
  p.objective = {0.0};
  p.add({1.0}, lp::Rel::Ge, 2.0);
  p.add({1.0}, lp::Rel::Le, 1.0);
  CHECK_FALSE(lp::feasible(p));

  lp::Problem empty;
  empty.num_vars = 1;
  empty.objective = {0.0};
  CHECK(lp::feasible(empty));
}

TEST_CASE("prefix polytope with a point range is feasible") {
  // posterior (p1, p2) on the simplex, agent-1 opinion p2 in [0, 0.7],
  // agent-3 opinion p2 pinned to 0.3
  lp::Problem p;
  p.num_vars = 2;
  p.objective = {0.0, 0.0};
  p.add({1.0, 1.0}, lp::Rel::Eq, 1.0);
  p.add({0.0, 1.0}, lp::Rel::Le, 0.7);
  p.add({0.0, 1.0}, lp::Rel::Ge, 0.0);
  p.add({0.0, 1.0}, lp::Rel::Eq, 0.3);
  CHECK(lp::feasible(p));
}

TEST_CASE("unbounded detection") {
  lp::Problem p;
  p.num_vars = 1;
  p.objective = {1.0};
  const lp::Solution sol = lp::solve(p);
  CHECK(sol.status == lp::Status::Unbounded);
}

TEST_CASE("infeasible equality system") {
  lp::Problem p;
  p.num_vars = 2;
  p.objective = {1.0, 0.0};
  p.add({1.0, 1.0}, lp::Rel::Eq, 1.0);
  p.add({1.0, 1.0}, lp::Rel::Eq, 2.0);
  CHECK(lp::solve(p).status == lp::Status::Infeasible);
}

TEST_CASE("free variables") {
  lp::Problem p;
  p.num_vars = 2;
  p.objective = {-1.0, 1.0};
  p.nonneg = {0, 1};  // first variable free
  p.add({1.0, 1.0}, lp::Rel::Ge, -3.0);
  p.add({1.0, 0.0}, lp::Rel::Ge, -5.0);
  p.add({0.0, 1.0}, lp::Rel::Le, 2.0);
  const lp::Solution sol = lp::solve(p);
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.value == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(sol.x[0] == doctest::Approx(-5.0));
}

TEST_CASE("constraints hold and value matches the objective at the optimum") {
  std::mt19937 rng(23);
  for (int it = 0; it < 100; ++it) {
    const lp::Problem p = random_bounded(rng, 4, 3);
    const lp::Solution sol = lp::solve(p);
    REQUIRE(sol.status == lp::Status::Optimal);
    double cx = 0.0;
    for (int j = 0; j < p.num_vars; ++j) cx += p.objective[j] * sol.x[j];
    CHECK(std::abs(cx - sol.value) <= 1e-7);
    for (const auto& c : p.constraints) {
      double lhs = 0.0;
      for (int j = 0; j < p.num_vars; ++j) lhs += c.coeffs[j] * sol.x[j];
      if (c.rel == lp::Rel::Le) CHECK(lhs <= c.rhs + 1e-7);
      if (c.rel == lp::Rel::Ge) CHECK(lhs >= c.rhs - 1e-7);
      if (c.rel == lp::Rel::Eq) CHECK(std::abs(lhs - c.rhs) <= 1e-7);
    }
  }
}

TEST_CASE("duality gap vanishes on random feasible bounded problems") {
  std::mt19937 rng(29);
  for (int it = 0; it < 50; ++it) {
    const int vars = 3 + static_cast<int>(rng() % 3);
    lp::Problem primal = random_bounded(rng, vars, 2);
    const lp::Solution psol = lp::solve(primal);
    REQUIRE(psol.status == lp::Status::Optimal);

    // dual of max c x s.t. A x <= b, x >= 0: min b y s.t. A^T y >= c, y >= 0
    const int rows = static_cast<int>(primal.constraints.size());
    lp::Problem dual;
    dual.num_vars = rows;
    dual.objective.resize(rows);
    for (int i = 0; i < rows; ++i) dual.objective[i] = -primal.constraints[i].rhs;
    for (int j = 0; j < vars; ++j) {
      std::vector<double> row(rows);
      for (int i = 0; i < rows; ++i) row[i] = primal.constraints[i].coeffs[j];
      dual.add(row, lp::Rel::Ge, primal.objective[j]);
    }
    const lp::Solution dsol = lp::solve(dual);
    REQUIRE(dsol.status == lp::Status::Optimal);
    CHECK(std::abs(-dsol.value - psol.value) <= 1e-6);
  }
}

TEST_CASE("deterministic output") {
  std::mt19937 rng(31);
  const lp::Problem p = random_bounded(rng, 5, 4);
  const lp::Solution a = lp::solve(p);
  const lp::Solution b = lp::solve(p);
  REQUIRE(a.x.size() == b.x.size());
  CHECK(std::memcmp(a.x.data(), b.x.data(), a.x.size() * sizeof(double)) == 0);
  CHECK(a.value == b.value);
}

TEST_CASE("row scaling leaves the optimum unchanged") {
  std::mt19937 rng(37);
  for (int it = 0; it < 20; ++it) {
    lp::Problem p = random_bounded(rng, 4, 3);
    const double base = lp::solve(p).value;
    for (double& v : p.constraints[0].coeffs) v *= 10.0;
    p.constraints[0].rhs *= 10.0;
    CHECK(std::abs(lp::solve(p).value - base) <= 1e-7);
  }
}
