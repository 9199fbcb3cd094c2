#include "fjsig/hardness.hpp"

#include <fstream>
#include <sstream>

#include "fjsig/errors.hpp"
#include "fjsig/objectives.hpp"

namespace fjsig::hardness {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.n = n;
  g.adjacency.assign(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw Error("edge references a missing vertex");
    if (u == v) throw Error("self-loops are not allowed");
    if (g.adjacency[u][v]) continue;
    g.adjacency[u][v] = g.adjacency[v][u] = true;
    g.edges.push_back({u, v});
  }
  return g;
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "n") throw Error("graph file must start with 'n <count>'");
  std::vector<std::pair<int, int>> edges;
  int u, v;
  while (in >> u >> v) edges.push_back({u, v});
  return make_graph(n, edges);
}

HardnessInstance generate(const Graph& graph) {
  const int n = graph.n;
  if (n < 2) throw Error("the reduction needs at least two vertices");
  HardnessInstance hi;
  hi.graph = graph;

  FJInstance& inst = hi.instance;
  inst.n = n;
  inst.m = n;
  inst.influence = Matrix::identity(n);
  inst.susceptibility.assign(n, 0.0);
  inst.prior.assign(n, 1.0 / n);
  inst.preconceptions = Matrix(n, n);
  const double filler = 0.5 - 1.0 / (8.0 * n);
  for (int u = 0; u < n; ++u) {
    for (int t = 0; t < n; ++t) {
      if (u == t)
        inst.preconceptions(u, t) = 0.75;
      else if (graph.adjacency[u][t])
        inst.preconceptions(u, t) = 0.0;
      else
        inst.preconceptions(u, t) = filler;
    }
  }
  inst.ranges.assign(n, {Interval{0.5, 1.0}});
  inst.objective.kind = ObjectiveKind::RangeBased;
  inst.objective.sense = Sense::Max;
  inst.objective.g.kind = GKind::Count;
  return hi;
}

Posterior signal_for_set(const HardnessInstance& hi, const std::vector<int>& vertex_set) {
  if (vertex_set.empty()) throw Error("vertex set must be nonempty");
  const int n = hi.instance.n;
  Posterior p;
  p.mass = static_cast<double>(vertex_set.size()) / n;
  p.distribution.assign(n, 0.0);
  for (int v : vertex_set) p.distribution[v] = 1.0 / vertex_set.size();
  p.joint.resize(n);
  for (int t = 0; t < n; ++t) p.joint[t] = p.mass * p.distribution[t];
  return p;
}

bool verify_correspondence(const HardnessInstance& hi, const std::vector<double>& posterior) {
  const std::vector<double> z = multiply(hi.instance.preconceptions, posterior);
  std::vector<int> hit;
  for (int u = 0; u < hi.instance.n; ++u)
    if (z[u] >= 0.5 - 1e-12) hit.push_back(u);
  for (size_t i = 0; i < hit.size(); ++i)
    for (size_t j = i + 1; j < hit.size(); ++j)
      if (hi.graph.adjacency[hit[i]][hit[j]]) return false;
  return true;
}

}  // namespace fjsig::hardness
