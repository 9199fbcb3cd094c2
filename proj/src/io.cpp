#include "fjsig/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fjsig/errors.hpp"

namespace fjsig::io {

using nlohmann::json;

namespace {

json objective_to_json(const Objective& obj) {
  json j;
  const char* sense = obj.sense == Sense::Min ? "min" : "max";
  switch (obj.kind) {
    case ObjectiveKind::NormDistance:
      j["kind"] = "norm_distance";
      if (obj.p == 0)
        j["p"] = "inf";
      else
        j["p"] = obj.p;
      j["target"] = obj.target;
      j["sense"] = sense;
      break;
    case ObjectiveKind::Polarization:
      j["kind"] = "polarization";
      j["sense"] = sense;
      break;
    case ObjectiveKind::Disagreement:
    case ObjectiveKind::MaxDisagreement: {
      j["kind"] = obj.kind == ObjectiveKind::Disagreement ? "disagreement" : "max_disagreement";
      j["sense"] = sense;
      json edges = json::array();
      for (const Edge& e : obj.edges) edges.push_back({e.u, e.v, e.w});
      j["edge_weights"] = edges;
      break;
    }
    case ObjectiveKind::MaxPolarization:
      j["kind"] = "max_polarization";
      j["sense"] = sense;
      break;
    case ObjectiveKind::RangeBased:
      switch (obj.g.kind) {
        case GKind::Count:
          j["kind"] = "range_count";
          break;
        case GKind::Threshold:
          j["kind"] = "range_threshold";
          j["tau"] = obj.g.tau;
          break;
        case GKind::WeightedSets: {
          j["kind"] = "range_weighted";
          json sets = json::array();
          for (const WeightedSet& ws : obj.g.sets) {
            json members = json::array();
            for (const auto& [agent, range] : ws.members) members.push_back({agent, range});
            sets.push_back({{"members", members}, {"value", ws.value}});
          }
          j["sets"] = sets;
          break;
        }
      }
      break;
  }
  return j;
}

Objective objective_from_json(const json& j) {
  Objective obj;
  const std::string kind = j.at("kind").get<std::string>();
  auto parse_sense = [&]() {
    const std::string s = j.value("sense", "max");
    if (s == "min") return Sense::Min;
    if (s == "max") return Sense::Max;
    throw Error("objective sense must be 'min' or 'max'");
  };
  auto parse_edges = [&]() {
    std::vector<Edge> out;
    for (const auto& e : j.value("edge_weights", json::array()))
      out.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                     e.size() > 2 ? e.at(2).get<double>() : 1.0});
    return out;
  };

  if (kind == "norm_distance") {
    obj.kind = ObjectiveKind::NormDistance;
    if (j.at("p").is_string()) {
      if (j.at("p").get<std::string>() != "inf") throw Error("norm order must be a number or 'inf'");
      obj.p = 0;
    } else {
      obj.p = j.at("p").get<int>();
      if (obj.p < 1) throw Error("norm order must be >= 1");
    }
    obj.target = j.at("target").get<std::vector<double>>();
    obj.sense = parse_sense();
  } else if (kind == "polarization") {
    obj.kind = ObjectiveKind::Polarization;
    obj.sense = parse_sense();
  } else if (kind == "disagreement") {
    obj.kind = ObjectiveKind::Disagreement;
    obj.sense = parse_sense();
    obj.edges = parse_edges();
  } else if (kind == "max_polarization") {
    obj.kind = ObjectiveKind::MaxPolarization;
    obj.sense = parse_sense();
  } else if (kind == "max_disagreement") {
    obj.kind = ObjectiveKind::MaxDisagreement;
    obj.sense = parse_sense();
    obj.edges = parse_edges();
  } else if (kind == "range_count") {
    obj.kind = ObjectiveKind::RangeBased;
    obj.sense = Sense::Max;
    obj.g.kind = GKind::Count;
  } else if (kind == "range_threshold") {
    obj.kind = ObjectiveKind::RangeBased;
    obj.sense = Sense::Max;
    obj.g.kind = GKind::Threshold;
    obj.g.tau = j.at("tau").get<int>();
  } else if (kind == "range_weighted") {
    obj.kind = ObjectiveKind::RangeBased;
    obj.sense = Sense::Max;
    obj.g.kind = GKind::WeightedSets;
    for (const auto& s : j.at("sets")) {
      WeightedSet ws;
      ws.value = s.at("value").get<double>();
      for (const auto& mref : s.at("members"))
        ws.members.push_back({mref.at(0).get<int>(), mref.at(1).get<int>()});
      obj.g.sets.push_back(std::move(ws));
    }
  } else {
    throw Error("unknown objective kind: " + kind);
  }
  return obj;
}

Matrix matrix_from_json(const json& j) {
  Matrix m;
  m.rows = static_cast<int>(j.size());
  m.cols = m.rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
  for (const auto& row : j) {
    if (static_cast<int>(row.size()) != m.cols) throw Error("ragged matrix rows");
    for (const auto& v : row) m.data.push_back(v.get<double>());
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json j = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m(i, c));
    j.push_back(row);
  }
  return j;
}

}  // namespace

FJInstance instance_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  FJInstance inst;
  inst.n = j.at("agents").get<int>();
  inst.m = j.at("states").get<int>();
  inst.prior = j.at("prior").get<std::vector<double>>();
  inst.influence = matrix_from_json(j.at("influence"));
  inst.susceptibility = j.at("susceptibility").get<std::vector<double>>();
  inst.preconceptions = matrix_from_json(j.at("preconceptions"));
  for (const auto& agent_ranges : j.at("ranges")) {
    std::vector<Interval> rs;
    for (const auto& iv : agent_ranges)
      rs.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
    inst.ranges.push_back(std::move(rs));
  }
  inst.objective = objective_from_json(j.at("objective"));
  return inst;
}

std::string instance_to_json_text(const FJInstance& inst) {
  json j;
  j["agents"] = inst.n;
  j["states"] = inst.m;
  j["prior"] = inst.prior;
  j["influence"] = matrix_to_json(inst.influence);
  j["susceptibility"] = inst.susceptibility;
  j["preconceptions"] = matrix_to_json(inst.preconceptions);
  json ranges = json::array();
  for (const auto& rs : inst.ranges) {
    json agent = json::array();
    for (const Interval& iv : rs) agent.push_back({iv.lo, iv.hi});
    ranges.push_back(agent);
  }
  j["ranges"] = ranges;
  j["objective"] = objective_to_json(inst.objective);
  return j.dump(2);
}

FJInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json_text(buf.str());
}

void save_instance(const FJInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file: " + path);
  out << instance_to_json_text(inst) << "\n";
}

void save_scheme(const FJInstance& inst, const opt::SolveReport& report, const std::string& path) {
  const Matrix z = full_revelation(inst).z;
  json j;
  j["expected_value"] = report.value;
  j["method"] = report.method;
  json signals = json::array();
  for (size_t i = 0; i < report.scheme.signals.size(); ++i) {
    const Posterior& sig = report.scheme.signals[i];
    const int col = report.scheme.columns[i];
    std::vector<double> phi_col(inst.m);
    for (int t = 0; t < inst.m; ++t) phi_col[t] = report.scheme.phi(t, col);
    const std::vector<double> zq = multiply(z, sig.distribution);
    signals.push_back({{"prob", sig.mass},
                       {"posterior", sig.distribution},
                       {"phi_column", phi_col},
                       {"equilibrium", zq},
                       {"value", eval_objective(inst, zq)}});
  }
  j["signals"] = signals;
  std::ofstream out(path);
  if (!out) throw Error("cannot write scheme file: " + path);
  out << j.dump(2) << "\n";
}

SchemeFile load_scheme(const FJInstance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scheme file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const json j = json::parse(buf.str());

  SchemeFile out;
  out.expected_value = j.at("expected_value").get<double>();
  out.method = j.value("method", "");
  const json& signals = j.at("signals");
  Matrix phi(inst.m, static_cast<int>(signals.size()));
  int col = 0;
  for (const auto& s : signals) {
    const auto phi_col = s.at("phi_column").get<std::vector<double>>();
    if (static_cast<int>(phi_col.size()) != inst.m)
      throw Error("scheme phi column length differs from state count");
    for (int t = 0; t < inst.m; ++t) phi(t, col) = phi_col[t];
    ++col;
  }
  out.scheme = make_scheme(inst, phi);
  return out;
}

}  // namespace fjsig::io
