#pragma once

#include <string>
#include <vector>

#include "fjsig/model.hpp"

namespace fjsig::hardness {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<bool>> adjacency;
};

/// Text format: header "n <count>", then one 0-indexed edge "u v" per line.
/// Self-loops are rejected.
Graph read_graph(const std::string& path);
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges);

/// Signaling instance of the independent-set reduction: one state per vertex,
/// uniform prior, no network influence, diagonal preconceptions 3/4, zero for
/// edges, 1/2 - 1/(8n) elsewhere, desired range [0.5, 1] for every agent.
struct HardnessInstance {
  Graph graph;
  FJInstance instance;
};

HardnessInstance generate(const Graph& graph);

/// Uniform posterior over the states of a vertex set, mass |set| / n.
Posterior signal_for_set(const HardnessInstance& hi, const std::vector<int>& vertex_set);

/// True iff the agents with opinion in [0.5, 1] under this posterior form an
/// independent set of the graph.
bool verify_correspondence(const HardnessInstance& hi, const std::vector<double>& posterior);

}  // namespace fjsig::hardness
