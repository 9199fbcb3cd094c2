#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fjsig/errors.hpp"
#include "fjsig/model.hpp"
#include "fjsig/objectives.hpp"
#include "test_util.hpp"

using namespace fjsig;
using namespace testutil;

TEST_CASE("validate accepts the two-customer instance") {
  CHECK(validate(example1_norm()).empty());
  CHECK(validate(example1_range()).empty());
  CHECK(validate(example2()).empty());
}

TEST_CASE("validate flags a broken prior") {
  FJInstance inst = example1_norm();
  inst.prior = {0.6, 0.6};
  const auto violations = validate(inst);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("prior") != std::string::npos);
}

TEST_CASE("validate flags a periodic fully susceptible network") {
  FJInstance inst = example1_norm();
  inst.susceptibility = {1.0, 1.0};
  const auto violations = validate(inst);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("spectral") != std::string::npos);
}

TEST_CASE("posterior of the constant signal is the prior") {
  const Posterior p = posterior_of_signal(example1_norm(), {1.0, 1.0});
  CHECK(p.mass == doctest::Approx(1.0));
  CHECK(p.distribution[0] == doctest::Approx(0.5));
  CHECK(p.distribution[1] == doctest::Approx(0.5));
}

TEST_CASE("posterior of a state indicator is degenerate") {
  const Posterior p = posterior_of_signal(example1_norm(), {1.0, 0.0});
  CHECK(p.distribution[0] == doctest::Approx(1.0));
  CHECK(p.distribution[1] == doctest::Approx(0.0));
  CHECK(p.mass == doctest::Approx(0.5));
}

TEST_CASE("posterior of the optimal first signal") {
  const Posterior p = posterior_of_signal(example1_norm(), {0.5, 1.0});
  CHECK(p.joint[0] == doctest::Approx(0.25));
  CHECK(p.joint[1] == doctest::Approx(0.5));
  CHECK(p.mass == doctest::Approx(0.75));
  CHECK(p.distribution[0] == doctest::Approx(1.0 / 3.0));
  CHECK(p.distribution[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("zero-mass signals are rejected") {
  CHECK_THROWS_AS(posterior_of_signal(example1_norm(), {0.0, 0.0}), ZeroMassSignalError);
}

TEST_CASE("equilibrium of the two-customer instance") {
  const FJInstance inst = example1_norm();
  const auto z1 = equilibrium(inst, {0.0, 0.3});
  CHECK(z1[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(z1[1] == doctest::Approx(0.2).epsilon(1e-12));
  const auto z2 = equilibrium(inst, {1.0, 0.7});
  CHECK(z2[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(z2[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("fully stubborn agents keep their preconceptions") {
  FJInstance inst = example1_norm();
  inst.susceptibility = {0.0, 0.0};
  const auto z = equilibrium(inst, {0.4, 0.9});
  CHECK(z[0] == doctest::Approx(0.4));
  CHECK(z[1] == doctest::Approx(0.9));
}

TEST_CASE("iterated dynamics reach the closed-form equilibrium") {
  const FJInstance inst = example1_norm();
  const DynamicsResult res = iterate_dynamics(inst, {0.0, 0.3}, 10000, 1e-10);
  CHECK(std::abs(res.z[0] - 0.1) <= 1e-9);
  CHECK(std::abs(res.z[1] - 0.2) <= 1e-9);
}

TEST_CASE("stubborn dynamics settle in one round") {
  FJInstance inst = example1_norm();
  inst.susceptibility = {0.0, 0.0};
  const DynamicsResult res = iterate_dynamics(inst, {0.4, 0.9}, 100, 1e-12);
  CHECK(res.rounds == 1);
}

TEST_CASE("dynamics agree with the closed form on random instances") {
  std::mt19937 rng(41);
  for (int it = 0; it < 20; ++it) {
    const FJInstance inst = random_instance(rng, 4, 3);
    const std::vector<double> s = {0.1, 0.9, 0.4, 0.6};
    const DynamicsResult res = iterate_dynamics(inst, s, 100000, 1e-12);
    const auto z = equilibrium(inst, s);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(res.z[i] - z[i]) <= 1e-8);
  }
}

TEST_CASE("dynamics report the last iterate when cut off") {
  FJInstance inst = example1_norm();
  inst.susceptibility = {0.95, 0.95};
  try {
    iterate_dynamics(inst, {0.0, 1.0}, 2, 1e-14);
    FAIL("expected NotConvergedError");
  } catch (const NotConvergedError& e) {
    CHECK(e.rounds == 2);
    CHECK(e.last_iterate.size() == 2);
  }
}

TEST_CASE("full revelation matrix of the two-customer instance") {
  const FullRevelation fr = full_revelation(example1_norm());
  CHECK(fr.z(0, 0) == doctest::Approx(0.1));
  CHECK(fr.z(1, 0) == doctest::Approx(0.2));
  CHECK(fr.z(0, 1) == doctest::Approx(0.9));
  CHECK(fr.z(1, 1) == doctest::Approx(0.8));
}

TEST_CASE("full revelation of stubborn agents is the preconception matrix") {
  const FullRevelation fr = full_revelation(example2());
  CHECK(inf_norm_diff(fr.z, example2().preconceptions) <= 1e-12);
  CHECK(fr.factorization.d == 2);
}

TEST_CASE("planted rank-one preconceptions give rank-one revelation") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  FJInstance inst = random_instance(rng, 4, 3);
  std::vector<double> base(4), alpha(3);
  for (double& v : base) v = unif(rng);
  for (double& v : alpha) v = unif(rng);
  for (int i = 0; i < 4; ++i)
    for (int t = 0; t < 3; ++t) inst.preconceptions(i, t) = base[i] * alpha[t];
  CHECK(full_revelation(inst).factorization.d == 1);
}

TEST_CASE("normalization freezes the revelation matrix as preconceptions") {
  const FJInstance inst = example1_norm();
  const FJInstance norm = normalize(inst);
  CHECK(norm.preconceptions(0, 0) == doctest::Approx(0.1));
  CHECK(norm.preconceptions(1, 0) == doctest::Approx(0.2));
  CHECK(norm.preconceptions(0, 1) == doctest::Approx(0.9));
  CHECK(norm.preconceptions(1, 1) == doctest::Approx(0.8));
  for (double l : norm.susceptibility) CHECK(l == 0.0);

  // an already-normal instance keeps its preconceptions
  const FJInstance again = normalize(norm);
  CHECK(inf_norm_diff(again.preconceptions, norm.preconceptions) <= 1e-12);
}

TEST_CASE("normalization preserves per-signal equilibria and objective values") {
  std::mt19937 rng(47);
  for (int it = 0; it < 100; ++it) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int m = 2 + static_cast<int>(rng() % 3);
    FJInstance inst = random_instance(rng, n, m);
    inst.objective.kind = ObjectiveKind::Polarization;
    inst.objective.sense = Sense::Max;
    const FJInstance norm = normalize(inst);
    const Matrix z = full_revelation(inst).z;
    const Matrix zn = full_revelation(norm).z;
    for (int rep = 0; rep < 20; ++rep) {
      const Matrix phi = random_scheme_phi(rng, m, 2);
      const SignalingScheme a = make_scheme(inst, phi);
      const SignalingScheme b = make_scheme(norm, phi);
      REQUIRE(a.signals.size() == b.signals.size());
      for (size_t s = 0; s < a.signals.size(); ++s) {
        const auto za = multiply(z, a.signals[s].distribution);
        const auto zb = multiply(zn, b.signals[s].distribution);
        for (int i = 0; i < n; ++i) CHECK(std::abs(za[i] - zb[i]) <= 1e-7);
      }
      CHECK(std::abs(expected_value(inst, a) - expected_value(norm, b)) <= 1e-7);
    }
  }
}

TEST_CASE("preconception and revelation matrices share their rank") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const int rank = 1 + static_cast<int>(rng() % 4);
    const int n = rank + 1 + static_cast<int>(rng() % 2);
    const int m = rank + static_cast<int>(rng() % 2);
    FJInstance inst = random_instance(rng, n, m);
    // plant S = B C with B in [0,1] and column-stochastic C
    Matrix b(n, rank), c(rank, m);
    for (double& v : b.data) v = unif(rng);
    for (int j = 0; j < m; ++j) {
      double sum = 0.0;
      for (int i = 0; i < rank; ++i) sum += (c(i, j) = unif(rng) + 1e-3);
      for (int i = 0; i < rank; ++i) c(i, j) /= sum;
    }
    inst.preconceptions = multiply(b, c);
    const int rs = rank_factorize(inst.preconceptions).d;
    const int rz = full_revelation(inst).factorization.d;
    CHECK(rs == rz);
  }
}

TEST_CASE("schemes satisfy Bayes plausibility") {
  std::mt19937 rng(59);
  for (int it = 0; it < 50; ++it) {
    const FJInstance inst = random_instance(rng, 3, 3);
    const SignalingScheme scheme = make_scheme(inst, random_scheme_phi(rng, 3, 3));
    std::vector<double> total(3, 0.0);
    for (const auto& sig : scheme.signals)
      for (int t = 0; t < 3; ++t) total[t] += sig.joint[t];
    for (int t = 0; t < 3; ++t) CHECK(std::abs(total[t] - inst.prior[t]) <= 1e-9);
  }
}

TEST_CASE("per-signal equilibria are revelation-matrix combinations") {
  std::mt19937 rng(61);
  for (int it = 0; it < 50; ++it) {
    const FJInstance inst = random_instance(rng, 4, 3);
    const Matrix z = full_revelation(inst).z;
    const std::vector<double> p = random_simplex(rng, 3);
    const std::vector<double> s = multiply(inst.preconceptions, p);
    const auto via_dynamics = equilibrium(inst, s);
    const auto via_matrix = multiply(z, p);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(via_dynamics[i] - via_matrix[i]) <= 1e-8);
  }
}

TEST_CASE("one-issue expansion is the embedded instance") {
  MultiDimInstance md;
  md.n = 2;
  md.q = 1;
  md.m = 2;
  md.influence = Matrix{{0.0, 1.0}, {1.0, 0.0}};
  md.susceptibility = {0.5, 0.5};
  md.coupling = {Matrix{{1.0}}, Matrix{{1.0}}};
  md.preconceptions = {Matrix{{0.0, 1.0}}, Matrix{{0.3, 0.7}}};
  md.prior = {0.5, 0.5};
  md.ranges = {{{}}, {{}}};
  md.objective.kind = ObjectiveKind::Polarization;

  const FJInstance flat = expand_multidimensional(md);
  const FJInstance direct = example1(md.objective);
  CHECK(inf_norm_diff(flat.influence, direct.influence) <= 1e-15);
  CHECK(inf_norm_diff(flat.preconceptions, direct.preconceptions) <= 1e-15);
}

TEST_CASE("independent issues decouple into per-issue dynamics") {
  MultiDimInstance md;
  md.n = 2;
  md.q = 2;
  md.m = 2;
  md.influence = Matrix{{0.2, 0.8}, {0.6, 0.4}};
  md.susceptibility = {0.5, 0.7};
  md.coupling = {Matrix::identity(2), Matrix::identity(2)};
  md.preconceptions = {Matrix{{0.1, 0.9}, {0.4, 0.2}}, Matrix{{0.8, 0.3}, {0.5, 0.6}}};
  md.prior = {0.4, 0.6};
  md.ranges = {{{}, {}}, {{}, {}}};
  md.objective.kind = ObjectiveKind::Polarization;

  const FJInstance flat = expand_multidimensional(md);
  REQUIRE(flat.n == 4);
  CHECK(validate(flat).empty());

  // solve each issue separately as the oracle
  for (int issue = 0; issue < 2; ++issue) {
    FJInstance single;
    single.n = 2;
    single.m = 2;
    single.influence = md.influence;
    single.susceptibility = md.susceptibility;
    single.preconceptions = Matrix(2, 2);
    for (int u = 0; u < 2; ++u)
      for (int t = 0; t < 2; ++t) single.preconceptions(u, t) = md.preconceptions[u](issue, t);
    single.prior = md.prior;
    single.ranges = {{}, {}};
    single.objective = md.objective;

    for (int t = 0; t < 2; ++t) {
      const auto zs = equilibrium(single, single.preconceptions.col(t));
      const auto zf = equilibrium(flat, flat.preconceptions.col(t));
      for (int u = 0; u < 2; ++u) CHECK(std::abs(zf[u * 2 + issue] - zs[u]) <= 1e-10);
    }
  }
}

TEST_CASE("coupled issues match a hand-built four-agent system") {
  MultiDimInstance md;
  md.n = 2;
  md.q = 2;
  md.m = 2;
  md.influence = Matrix{{0.3, 0.7}, {0.5, 0.5}};
  md.susceptibility = {0.6, 0.8};
  md.coupling = {Matrix{{0.5, 0.5}, {0.5, 0.5}}, Matrix{{0.5, 0.5}, {0.5, 0.5}}};
  md.preconceptions = {Matrix{{0.1, 0.9}, {0.4, 0.2}}, Matrix{{0.8, 0.3}, {0.5, 0.6}}};
  md.prior = {0.4, 0.6};
  md.ranges = {{{}, {}}, {{}, {}}};
  md.objective.kind = ObjectiveKind::Polarization;

  const FJInstance flat = expand_multidimensional(md);
  Matrix a(4, 4);
  for (int u = 0; u < 2; ++u)
    for (int h = 0; h < 2; ++h)
      for (int v = 0; v < 2; ++v)
        for (int h2 = 0; h2 < 2; ++h2) a(u * 2 + h, v * 2 + h2) = md.influence(u, v) * 0.5;
  CHECK(inf_norm_diff(flat.influence, a) <= 1e-15);

  for (int t = 0; t < 2; ++t) {
    const auto zf = equilibrium(flat, flat.preconceptions.col(t));
    // direct closed form on the hand-built system
    FJInstance direct = flat;
    direct.influence = a;
    const auto zd = equilibrium(direct, flat.preconceptions.col(t));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(zf[i] - zd[i]) <= 1e-12);
  }
}

TEST_CASE("consensus reduction of the symmetric mixer") {
  FJInstance inst = example1_norm();
  inst.influence = Matrix{{0.5, 0.5}, {0.5, 0.5}};
  inst.susceptibility = {1.0, 1.0};
  const FdgReduction red = fdg_reduce(inst);
  CHECK(red.pi[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(red.pi[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(red.consensus[0] == doctest::Approx(0.15).epsilon(1e-9));
  CHECK(red.consensus[1] == doctest::Approx(0.85).epsilon(1e-9));

  // stationarity and the rank-1 induced instance
  double pw0 = red.pi[0] * inst.influence(0, 0) + red.pi[1] * inst.influence(1, 0);
  CHECK(std::abs(pw0 - red.pi[0]) <= 1e-8);
  const FJInstance induced = fdg_induced_instance(inst);
  CHECK(full_revelation(induced).factorization.d == 1);
}

TEST_CASE("identity influence never mixes") {
  FJInstance inst = example1_norm();
  inst.influence = Matrix::identity(2);
  inst.susceptibility = {1.0, 1.0};
  CHECK_THROWS_AS(fdg_reduce(inst), NoConsensusError);
}

TEST_CASE("periodic swap never mixes") {
  FJInstance inst = example1_norm();
  inst.susceptibility = {1.0, 1.0};  // influence is already the swap matrix
  CHECK_THROWS_AS(fdg_reduce(inst), NoConsensusError);
}
