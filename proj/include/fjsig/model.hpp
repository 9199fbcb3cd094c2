#pragma once

#include <string>
#include <vector>

#include "fjsig/linalg.hpp"
#include "fjsig/objectives.hpp"

namespace fjsig {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A sender-persuasion instance over a Friedkin-Johnsen network: row-stochastic
/// influence matrix A, susceptibilities lambda, per-state preconceptions S,
/// prior over states, desired opinion ranges, and the sender objective.
struct FJInstance {
  int n = 0;  // agents
  int m = 0;  // states
  Matrix influence;               // n x n
  std::vector<double> susceptibility;  // n, in [0,1]
  Matrix preconceptions;          // n x m, entries in [0,1]
  std::vector<double> prior;      // m, simplex
  std::vector<std::vector<Interval>> ranges;  // per agent
  Objective objective;

  Matrix social_weight() const;  // W = diag(lambda) A
  Matrix stubbornness() const;   // D = I - diag(lambda)
  int total_ranges() const;
};

/// Posterior induced by one signal: send probability (mass), distribution over
/// states, and the joint vector mass * distribution.
struct Posterior {
  double mass = 0.0;
  std::vector<double> distribution;
  std::vector<double> joint;
};

/// Per-state distributions over signals (phi, one row per state) together with
/// the derived posteriors. Zero-mass signals are dropped from the posterior
/// list; columns records the surviving phi column of each posterior.
struct SignalingScheme {
  Matrix phi;  // m x num_signals
  std::vector<Posterior> signals;
  std::vector<int> columns;
};

struct FullRevelation {
  Matrix z;  // n x m equilibrium opinions per state
  RankFactorization factorization;
};

/// Vector-valued opinions: q issues per agent, per-issue preconceptions and a
/// row-stochastic issue-mixing matrix per agent.
struct MultiDimInstance {
  int n = 0;
  int q = 0;  // issues
  int m = 0;  // states
  Matrix influence;                    // n x n
  std::vector<double> susceptibility;  // n
  std::vector<Matrix> coupling;        // n matrices, q x q row-stochastic
  std::vector<Matrix> preconceptions;  // n matrices, q x m
  std::vector<double> prior;           // m
  std::vector<std::vector<std::vector<Interval>>> ranges;  // [agent][issue]
  Objective objective;
};

/// Empty iff all instance invariants hold; each violation names the failed
/// invariant and offending index.
std::vector<std::string> validate(const FJInstance& inst);

Posterior posterior_of_signal(const FJInstance& inst, const std::vector<double>& phi_column);

/// Builds the scheme for a phi matrix (m x num_signals, rows stochastic).
SignalingScheme make_scheme(const FJInstance& inst, const Matrix& phi);

/// Builds a scheme from per-signal joint vectors; signals with mass <= 1e-9
/// are dropped and their mass redistributed proportionally per state.
SignalingScheme scheme_from_joints(const FJInstance& inst, std::vector<std::vector<double>> joints);

/// Equilibrium (I - W)^-1 D s for one preconception vector.
std::vector<double> equilibrium(const FJInstance& inst, const std::vector<double>& s);

struct DynamicsResult {
  std::vector<double> z;
  int rounds = 0;
};

/// Simultaneous best-response updates from z0 = s until the sup-norm step
/// falls below tol. Throws NotConvergedError with the last iterate when
/// max_rounds is exhausted.
DynamicsResult iterate_dynamics(const FJInstance& inst, const std::vector<double>& s,
                                int max_rounds, double tol);

FullRevelation full_revelation(const FJInstance& inst);

/// Equivalent instance with preconceptions Z, identity influence, lambda = 0.
FJInstance normalize(const FJInstance& inst);

/// One auxiliary agent per (agent, issue) pair; index (u,h) -> u*q + h.
FJInstance expand_multidimensional(const MultiDimInstance& mdinst);

struct FdgReduction {
  std::vector<double> pi;         // stationary influence weights, sums to 1
  std::vector<double> consensus;  // consensus opinion per state, pi * S
};

/// Consensus reduction for fully susceptible agents (lambda = 1). Requires
/// W^t to converge to a rank-1 matrix; throws NoConsensusError otherwise.
FdgReduction fdg_reduce(const FJInstance& inst);

/// Rank-1 FJ instance equivalent to a consensus-reaching instance: all agents
/// share the consensus opinion row, lambda = 0.
FJInstance fdg_induced_instance(const FJInstance& inst);

}  // namespace fjsig
