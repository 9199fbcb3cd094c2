#include "fjsig/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fjsig/errors.hpp"

namespace fjsig {

namespace {
constexpr double kSumTol = 1e-9;
constexpr double kZeroMass = 1e-12;
constexpr double kDropMass = 1e-9;
constexpr double kSpectralMargin = 1e-6;
}  // namespace

Matrix FJInstance::social_weight() const {
  Matrix w = influence;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) *= susceptibility[i];
  return w;
}

Matrix FJInstance::stubbornness() const {
  Matrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = 1.0 - susceptibility[i];
  return d;
}

int FJInstance::total_ranges() const {
  int k = 0;
  for (const auto& r : ranges) k += static_cast<int>(r.size());
  return k;
}

std::vector<std::string> validate(const FJInstance& inst) {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& msg) { out.push_back(msg); };
  std::ostringstream os;

  if (inst.influence.rows != inst.n || inst.influence.cols != inst.n)
    fail("influence matrix is not n x n");
  if (static_cast<int>(inst.susceptibility.size()) != inst.n)
    fail("susceptibility length differs from agent count");
  if (inst.preconceptions.rows != inst.n || inst.preconceptions.cols != inst.m)
    fail("preconception matrix is not n x m");
  if (static_cast<int>(inst.prior.size()) != inst.m) fail("prior length differs from state count");
  if (static_cast<int>(inst.ranges.size()) != inst.n) fail("ranges list length differs from agent count");
  if (!out.empty()) return out;  // dimension errors make the rest meaningless

  for (int i = 0; i < inst.n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < inst.n; ++j) {
      if (inst.influence(i, j) < 0) {
        os.str("");
        os << "influence entry (" << i << "," << j << ") is negative";
        fail(os.str());
      }
      sum += inst.influence(i, j);
    }
    if (std::abs(sum - 1.0) > kSumTol) {
      os.str("");
      os << "influence row " << i << " sums to " << sum;
      fail(os.str());
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    const double l = inst.susceptibility[i];
    if (l < 0 || l > 1) {
      os.str("");
      os << "susceptibility " << i << " outside [0,1]";
      fail(os.str());
    }
  }
  double psum = 0.0;
  for (int t = 0; t < inst.m; ++t) {
    if (inst.prior[t] < 0) {
      os.str("");
      os << "prior entry " << t << " is negative";
      fail(os.str());
    }
    psum += inst.prior[t];
  }
  if (std::abs(psum - 1.0) > kSumTol) {
    os.str("");
    os << "prior sums to " << psum;
    fail(os.str());
  }
  for (int i = 0; i < inst.n; ++i) {
    for (int t = 0; t < inst.m; ++t) {
      const double s = inst.preconceptions(i, t);
      if (s < -1e-12 || s > 1 + 1e-12) {
        os.str("");
        os << "preconception (" << i << "," << t << ") outside [0,1]";
        fail(os.str());
      }
    }
  }
  for (int i = 0; i < inst.n; ++i) {
    for (size_t r = 0; r < inst.ranges[i].size(); ++r) {
      const auto& iv = inst.ranges[i][r];
      if (!(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1.0)) {
        os.str("");
        os << "range " << r << " of agent " << i << " violates 0 <= a <= b <= 1";
        fail(os.str());
      }
    }
  }
  const double rho = spectral_radius_bound(inst.social_weight());
  if (rho > 1.0 - kSpectralMargin) {
    os.str("");
    os << "spectral radius of W is " << rho << ", above the 1 - 1e-6 threshold";
    fail(os.str());
  }

  const Objective& obj = inst.objective;
  if (obj.kind == ObjectiveKind::NormDistance) {
    if (static_cast<int>(obj.target.size()) != inst.n) fail("norm target length differs from agent count");
    if (obj.p < 0) fail("norm order must be >= 1 or 0 for infinity");
  }
  if (obj.kind == ObjectiveKind::Disagreement || obj.kind == ObjectiveKind::MaxDisagreement) {
    for (size_t e = 0; e < obj.edges.size(); ++e) {
      const Edge& ed = obj.edges[e];
      if (ed.u < 0 || ed.u >= inst.n || ed.v < 0 || ed.v >= inst.n) {
        os.str("");
        os << "edge " << e << " references a missing agent";
        fail(os.str());
      }
      if (ed.w < 0) {
        os.str("");
        os << "edge " << e << " has negative weight";
        fail(os.str());
      }
    }
  }
  if (obj.kind == ObjectiveKind::RangeBased) {
    if (obj.sense == Sense::Min) fail("range-based objectives support maximization only");
    if (obj.g.kind == GKind::WeightedSets) {
      for (size_t s = 0; s < obj.g.sets.size(); ++s) {
        const auto& ws = obj.g.sets[s];
        if (ws.value < 0) {
          os.str("");
          os << "weighted set " << s << " has negative value";
          fail(os.str());
        }
        for (const auto& [agent, range] : ws.members) {
          if (agent < 0 || agent >= inst.n || range < 0 ||
              range >= static_cast<int>(inst.ranges[agent].size())) {
            os.str("");
            os << "weighted set " << s << " references a missing range";
            fail(os.str());
          }
        }
      }
    }
    if (obj.g.kind == GKind::Threshold && obj.g.tau < 0) fail("threshold tau must be nonnegative");
  }
  return out;
}

Posterior posterior_of_signal(const FJInstance& inst, const std::vector<double>& phi_column) {
  Posterior p;
  p.joint.resize(inst.m);
  double mass = 0.0;
  for (int t = 0; t < inst.m; ++t) {
    p.joint[t] = phi_column[t] * inst.prior[t];
    mass += p.joint[t];
  }
  if (mass <= kZeroMass) throw ZeroMassSignalError();
  p.mass = mass;
  p.distribution.resize(inst.m);
  for (int t = 0; t < inst.m; ++t) p.distribution[t] = p.joint[t] / mass;
  return p;
}

SignalingScheme make_scheme(const FJInstance& inst, const Matrix& phi) {
  for (int t = 0; t < phi.rows; ++t) {
    double sum = 0.0;
    for (int s = 0; s < phi.cols; ++s) {
      if (phi(t, s) < -1e-9) throw Error("phi entry is negative");
      sum += phi(t, s);
    }
    if (std::abs(sum - 1.0) > 1e-6) throw Error("phi row is not a distribution over signals");
  }
  SignalingScheme scheme;
  scheme.phi = phi;
  for (int s = 0; s < phi.cols; ++s) {
    std::vector<double> joint(inst.m);
    double mass = 0.0;
    for (int t = 0; t < inst.m; ++t) {
      joint[t] = phi(t, s) * inst.prior[t];
      mass += joint[t];
    }
    if (mass <= kZeroMass) continue;  // zero-mass signals are dropped
    Posterior p;
    p.mass = mass;
    p.joint = joint;
    p.distribution.resize(inst.m);
    for (int t = 0; t < inst.m; ++t) p.distribution[t] = joint[t] / mass;
    scheme.signals.push_back(std::move(p));
    scheme.columns.push_back(s);
  }
  return scheme;
}

SignalingScheme scheme_from_joints(const FJInstance& inst, std::vector<std::vector<double>> joints) {
  std::vector<std::vector<double>> kept;
  for (auto& j : joints) {
    double mass = 0.0;
    for (double v : j) mass += v;
    if (mass > kDropMass) kept.push_back(std::move(j));
  }
  if (kept.empty()) kept.push_back(inst.prior);

  // rescale per state so the joints decompose the prior exactly
  for (int t = 0; t < inst.m; ++t) {
    double total = 0.0;
    for (const auto& j : kept) total += j[t];
    if (total > 1e-300) {
      const double f = inst.prior[t] / total;
      for (auto& j : kept) j[t] *= f;
    } else if (inst.prior[t] > 0) {
      kept.front()[t] = inst.prior[t];
    }
  }

  Matrix phi(inst.m, static_cast<int>(kept.size()));
  for (int t = 0; t < inst.m; ++t) {
    if (inst.prior[t] > 0) {
      for (size_t s = 0; s < kept.size(); ++s) phi(t, static_cast<int>(s)) = kept[s][t] / inst.prior[t];
    } else {
      phi(t, 0) = 1.0;
    }
  }
  return make_scheme(inst, phi);
}

std::vector<double> equilibrium(const FJInstance& inst, const std::vector<double>& s) {
  const Matrix iw = subtract(Matrix::identity(inst.n), inst.social_weight());
  const Matrix inv = invert(iw);
  std::vector<double> ds(inst.n);
  for (int i = 0; i < inst.n; ++i) ds[i] = (1.0 - inst.susceptibility[i]) * s[i];
  return multiply(inv, ds);
}

DynamicsResult iterate_dynamics(const FJInstance& inst, const std::vector<double>& s,
                                int max_rounds, double tol) {
  const Matrix w = inst.social_weight();
  std::vector<double> ds(inst.n);
  for (int i = 0; i < inst.n; ++i) ds[i] = (1.0 - inst.susceptibility[i]) * s[i];

  std::vector<double> z = s;
  for (int round = 1; round <= max_rounds; ++round) {
    std::vector<double> next = multiply(w, z);
    double diff = 0.0;
    for (int i = 0; i < inst.n; ++i) {
      next[i] += ds[i];
      diff = std::max(diff, std::abs(next[i] - z[i]));
    }
    z = std::move(next);
    if (diff < tol) return {z, round};
  }
  throw NotConvergedError(z, max_rounds);
}

FullRevelation full_revelation(const FJInstance& inst) {
  const Matrix iw = subtract(Matrix::identity(inst.n), inst.social_weight());
  const Matrix inv = invert(iw);
  const Matrix ds = multiply(inv, multiply(inst.stubbornness(), inst.preconceptions));
  FullRevelation out;
  out.z = ds;
  out.factorization = rank_factorize(ds);
  return out;
}

FJInstance normalize(const FJInstance& inst) {
  FJInstance out = inst;
  out.preconceptions = full_revelation(inst).z;
  out.influence = Matrix::identity(inst.n);
  out.susceptibility.assign(inst.n, 0.0);
  return out;
}

FJInstance expand_multidimensional(const MultiDimInstance& md) {
  const int big = md.n * md.q;
  FJInstance out;
  out.n = big;
  out.m = md.m;
  out.influence = Matrix(big, big);
  out.susceptibility.resize(big);
  out.preconceptions = Matrix(big, md.m);
  out.prior = md.prior;
  out.ranges.resize(big);
  out.objective = md.objective;

  for (int u = 0; u < md.n; ++u) {
    for (int h = 0; h < md.q; ++h) {
      const int row = u * md.q + h;
      out.susceptibility[row] = md.susceptibility[u];
      for (int v = 0; v < md.n; ++v)
        for (int h2 = 0; h2 < md.q; ++h2)
          out.influence(row, v * md.q + h2) = md.influence(u, v) * md.coupling[u](h, h2);
      for (int t = 0; t < md.m; ++t) out.preconceptions(row, t) = md.preconceptions[u](h, t);
      out.ranges[row] = md.ranges[u][h];
    }
  }
  return out;
}

FdgReduction fdg_reduce(const FJInstance& inst) {
  for (double l : inst.susceptibility)
    if (std::abs(l - 1.0) > 1e-12) throw Error("fdg_reduce requires susceptibility 1 for all agents");

  // W^4096 via repeated squaring, then the doubling and row-equality checks
  Matrix p = inst.social_weight();
  for (int i = 0; i < 12; ++i) p = multiply(p, p);
  const Matrix p2 = multiply(p, p);
  if (inf_norm_diff(p2, p) > 1e-8) throw NoConsensusError();
  for (int i = 1; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j)
      if (std::abs(p(i, j) - p(0, j)) > 1e-8) throw NoConsensusError("limit is not rank 1");

  FdgReduction out;
  out.pi.resize(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    double s = 0.0;
    for (int i = 0; i < inst.n; ++i) s += p(i, j);
    out.pi[j] = s / inst.n;
  }
  out.consensus.resize(inst.m);
  for (int t = 0; t < inst.m; ++t) {
    double s = 0.0;
    for (int u = 0; u < inst.n; ++u) s += out.pi[u] * inst.preconceptions(u, t);
    out.consensus[t] = s;
  }
  return out;
}

FJInstance fdg_induced_instance(const FJInstance& inst) {
  const FdgReduction red = fdg_reduce(inst);
  FJInstance out = inst;
  out.influence = Matrix::identity(inst.n);
  out.susceptibility.assign(inst.n, 0.0);
  out.preconceptions = Matrix(inst.n, inst.m);
  for (int u = 0; u < inst.n; ++u)
    for (int t = 0; t < inst.m; ++t) out.preconceptions(u, t) = red.consensus[t];
  return out;
}

}  // namespace fjsig
