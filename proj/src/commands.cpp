#include "fjsig/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "fjsig/errors.hpp"
#include "fjsig/hardness.hpp"
#include "fjsig/io.hpp"
#include "fjsig/optimizer.hpp"
#include "fjsig/oracle.hpp"

namespace fjsig::commands {

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kValidationError = 2;
constexpr int kPreconditionError = 3;

int report_violations(const std::vector<std::string>& violations) {
  for (const auto& v : violations) std::cerr << "validation: " << v << "\n";
  return kValidationError;
}

FJInstance load_checked(const std::string& path, int& status) {
  FJInstance inst = io::load_instance(path);
  const auto violations = validate(inst);
  bool all_fdg = inst.n > 0;
  for (double l : inst.susceptibility)
    if (std::abs(l - 1.0) > 1e-12) all_fdg = false;
  if (!violations.empty() && !all_fdg) {
    status = report_violations(violations);
  } else {
    status = kOk;
  }
  return inst;
}

opt::SolveReport dispatch(const FJInstance& inst, const std::string& method) {
  if (method == "auto") return opt::solve_auto(inst);
  if (method == "convex") return opt::optimize_convex(inst);
  if (method == "two-state") return opt::optimize_two_state(inst);
  if (method == "constant-rank") return opt::optimize_constant_rank(inst);
  if (method == "combinations") {
    if (inst.objective.kind != ObjectiveKind::RangeBased ||
        inst.objective.g.kind != GKind::WeightedSets)
      throw WrongObjectiveKindError("combinations needs a weighted-sets objective");
    std::vector<opt::FamilyEntry> family;
    for (const auto& ws : inst.objective.g.sets) {
      opt::FamilyEntry fe;
      for (const auto& mref : ws.members) fe.set.members.insert(mref);
      fe.value = ws.value;
      family.push_back(std::move(fe));
    }
    return opt::optimize_nonzero_combinations(inst, family);
  }
  if (method == "monotone") {
    auto family = opt::build_monotone_family(inst);
    if (!family) throw WrongObjectiveKindError("instance is not monotone");
    auto rep = opt::optimize_nonzero_combinations(inst, *family);
    rep.method = "monotone-combinations";
    return rep;
  }
  if (method == "bitonic") {
    auto family = opt::build_bitonic_family(inst);
    if (!family) throw WrongObjectiveKindError("instance is not bitonic");
    auto rep = opt::optimize_nonzero_combinations(inst, *family);
    rep.method = "bitonic-combinations";
    return rep;
  }
  if (method == "approx") return opt::approximate_subadditive(inst);
  throw Error("unknown method: " + method);
}

}  // namespace

int cmd_solve(const std::string& instance_path, const std::string& method,
              const std::string& out_path, const Options& opts) {
  try {
    int status = kOk;
    const FJInstance inst = load_checked(instance_path, status);
    if (status != kOk) return status;
    opt::SolveReport rep;
    try {
      rep = dispatch(inst, method);
    } catch (const WrongObjectiveKindError& e) {
      std::cerr << "precondition: " << e.what() << "\n";
      return kPreconditionError;
    } catch (const WrongStateCountError& e) {
      std::cerr << "precondition: " << e.what() << "\n";
      return kPreconditionError;
    } catch (const NoConsensusError& e) {
      std::cerr << "precondition: " << e.what() << "\n";
      return kPreconditionError;
    }
    if (!out_path.empty()) io::save_scheme(inst, rep, out_path);
    if (!opts.quiet) {
      std::cout << "method: " << rep.method << "\n";
      std::cout << "value: " << rep.value << "\n";
      std::cout << "no_signal: " << rep.no_signal_value
                << "  full_revelation: " << rep.full_revelation_value << "\n";
      if (rep.approximation) std::cout << "note: approximation (guarantee value >= OPT / n)\n";
      if (rep.subadditivity_warning)
        std::cout << "note: subadditivity not verified for this objective\n";
    }
    return kOk;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int cmd_eval(const std::string& instance_path, const std::string& scheme_path,
             const Options& opts) {
  try {
    int status = kOk;
    const FJInstance inst = load_checked(instance_path, status);
    if (status != kOk) return status;
    io::SchemeFile sf;
    try {
      sf = io::load_scheme(inst, scheme_path);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "parse: " << e.what() << "\n";
      return kIoError;
    } catch (const Error& e) {
      // dimension mismatch or a phi invariant breach is a validation failure
      const std::string what = e.what();
      if (what.find("cannot open") != std::string::npos) {
        std::cerr << "error: " << what << "\n";
        return kIoError;
      }
      std::cerr << "validation: " << what << "\n";
      return kValidationError;
    }
    double prob_sum = 0.0;
    for (const auto& sig : sf.scheme.signals) prob_sum += sig.mass;
    if (std::abs(prob_sum - 1.0) > opts.tol) {
      std::cerr << "validation: signal probabilities sum to " << prob_sum << "\n";
      return kValidationError;
    }
    const double value = expected_value(inst, sf.scheme);
    std::cout << "expected_value: " << value << "\n";
    if (!opts.quiet && sf.expected_value != 0.0)
      std::cout << "recorded: " << sf.expected_value << "\n";
    return kOk;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int cmd_oracle(const std::string& instance_path, int resolution, const Options& opts) {
  try {
    int status = kOk;
    const FJInstance inst = load_checked(instance_path, status);
    if (status != kOk) return status;
    oracle::GridSpec grid = oracle::default_grid(inst);
    if (resolution > 0) grid.resolution = resolution;
    const oracle::OracleResult res = oracle::grid_oracle(inst, grid);
    const opt::SolveReport rep = opt::solve_auto(inst);
    std::cout << "oracle_value: " << res.value << "\n";
    if (!opts.quiet) {
      std::cout << "solver_value: " << rep.value << " (" << rep.method << ")\n";
      std::cout << "gap: " << res.value - rep.value << "\n";
    }
    return kOk;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int cmd_report(const std::string& instance_path, const std::string& out_csv,
               const Options& opts) {
  try {
    int status = kOk;
    const FJInstance inst = load_checked(instance_path, status);
    if (status != kOk) return status;
    if (inst.m != 2 || inst.objective.kind != ObjectiveKind::RangeBased) {
      std::cerr << "precondition: report needs a two-state range-based instance\n";
      return kPreconditionError;
    }
    const opt::TwoStateProfile profile = opt::two_state_profile(inst);
    const opt::SolveReport rep = opt::optimize_two_state(inst);

    std::vector<std::pair<double, double>> rows;
    for (size_t i = 0; i < profile.breakpoints.size(); ++i) {
      rows.push_back({profile.breakpoints[i], profile.breakpoint_values[i]});
      if (i + 1 < profile.breakpoints.size()) {
        const double mid = 0.5 * (profile.breakpoints[i] + profile.breakpoints[i + 1]);
        rows.push_back({mid, profile.segment_values[i]});
      }
    }
    auto value_at = [&](double x) {
      for (size_t i = 0; i < profile.breakpoints.size(); ++i)
        if (std::abs(profile.breakpoints[i] - x) <= 1e-12) return profile.breakpoint_values[i];
      for (size_t i = 0; i + 1 < profile.breakpoints.size(); ++i)
        if (profile.breakpoints[i] < x && x < profile.breakpoints[i + 1])
          return profile.segment_values[i];
      return 0.0;
    };
    rows.push_back({profile.prior, value_at(profile.prior)});  // prior marker
    for (const auto& sig : rep.scheme.signals)
      rows.push_back({sig.distribution[1], value_at(sig.distribution[1])});

    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const auto& a, const auto& b) {
                             return std::abs(a.first - b.first) <= 1e-12;
                           }),
               rows.end());

    std::ofstream out(out_csv);
    if (!out) throw Error("cannot write report file: " + out_csv);
    out << "x,F\n";
    char buf[64];
    for (const auto& [x, f] : rows) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, f);
      out << buf;
    }
    if (!opts.quiet) std::cout << "wrote " << rows.size() << " rows to " << out_csv << "\n";
    return kOk;
  } catch (const WrongStateCountError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int cmd_gen_hardness(const std::string& graph_path, const std::string& out_instance_path,
                     const Options& opts) {
  try {
    const hardness::Graph graph = hardness::read_graph(graph_path);
    const hardness::HardnessInstance hi = hardness::generate(graph);
    io::save_instance(hi.instance, out_instance_path);
    if (!opts.quiet) {
      // spot-check the independent-set correspondence on random posteriors
      std::mt19937 rng(opts.seed);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      int checked = 0, ok = 0;
      for (int it = 0; it < 1000; ++it) {
        std::vector<double> p(graph.n);
        double sum = 0.0;
        for (double& v : p) sum += (v = -std::log(1.0 - unif(rng)));
        for (double& v : p) v /= sum;
        ++checked;
        if (hardness::verify_correspondence(hi, p)) ++ok;
      }
      std::cout << "agents: " << graph.n << ", states: " << graph.n << "\n";
      std::cout << "correspondence check: " << ok << "/" << checked << " posteriors\n";
    }
    return kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace fjsig::commands
