#pragma once

/* Naive baseline: materialize the terminals' metric completion with one
 * uniform-cost sweep per terminal (stopping once every other terminal is
 * settled), then run Kruskal over the pairwise least costs.  Produces the
 * same forest totals as the heuristic solvers at far higher expansion
 * counts — the comparison anchor for the benchmarks.
 */

#include <algorithm>
#include <vector>

#include "dijkstra.hpp"
#include "grid_graph.hpp"
#include "instance.hpp"
#include "steiner_forest.hpp"
#include "steiner_solvers.hpp"
#include "types.hpp"
#include "union_find.hpp"

namespace mgpf {

struct MetricEdge {
  NodeId a = kNoNode;  // a < b
  NodeId b = kNoNode;
  Cost cost = kInfCost;
  std::vector<NodeId> path;  // witness nodes a -> b
};

struct MetricCompletion {
  std::vector<MetricEdge> edges;  // all unordered terminal pairs
  std::uint64_t expanded = 0;     // settles summed over every sweep
};

// Least costs between all terminal pairs, with witness paths.  Every terminal
// gets its own sweep; each sweep stops as soon as the other terminals are
// settled.  Unreachable pairs keep cost +inf and an empty path.
inline MetricCompletion metric_completion(const GridGraph& graph,
                                          std::vector<NodeId> terminals) {
  std::sort(terminals.begin(), terminals.end());
  MetricCompletion out;
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    std::vector<NodeId> others = terminals;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    ShortestPathTree tree = dijkstra(graph, terminals[i], others);
    out.expanded += tree.settled;
    // Record each unordered pair once, from the lower-id endpoint's sweep.
    for (std::size_t j = i + 1; j < terminals.size(); ++j) {
      MetricEdge e;
      e.a = terminals[i];
      e.b = terminals[j];
      e.cost = tree.dist[e.b];
      if (is_finite(e.cost)) e.path = tree.path_to(e.b);
      out.edges.push_back(std::move(e));
    }
  }
  return out;
}

// Kruskal over the metric completion; ties break lexicographically by
// endpoint ids.  Chosen metric edges expand into their witness paths.
inline SteinerForest kruskal_mst(const MetricCompletion& metric,
                                 const std::vector<NodeId>& terminals) {
  SteinerForest forest{terminals};
  std::vector<std::size_t> order(metric.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const MetricEdge& p = metric.edges[x];
    const MetricEdge& q = metric.edges[y];
    if (p.cost != q.cost) return p.cost < q.cost;
    if (p.a != q.a) return p.a < q.a;
    return p.b < q.b;
  });
  for (std::size_t idx : order) {
    if (forest.complete()) break;
    const MetricEdge& e = metric.edges[idx];
    if (!is_finite(e.cost) || forest.same_class(e.a, e.b)) continue;
    forest.accept(ConfirmedPath{e.a, e.b, e.cost, e.path});
  }
  return forest;
}

inline SolveResult solve_kruskal(const GridGraph& graph, const Instance& inst) {
  validate_instance(graph, inst);
  MetricCompletion metric = metric_completion(graph, inst.terminals());
  SteinerForest forest = kruskal_mst(metric, inst.terminals());
  if (!forest.complete())
    throw UnsolvableError("terminals are not mutually reachable");
  SolveStats stats;
  stats.expanded = metric.expanded;
  stats.iterations = metric.expanded;
  return SolveResult{std::move(forest), stats};
}

}  // namespace mgpf
