#pragma once

/* Plain uniform-cost search.  Serves as the least-cost oracle in tests, the
 * ALT preprocessing workhorse, and the per-terminal sweep of the naive
 * baseline.  Deliberately independent of the wavefront search kernel.
 */

#include <queue>
#include <vector>

#include "grid_graph.hpp"
#include "types.hpp"

namespace mgpf {

struct ShortestPathTree {
  NodeId source = kNoNode;
  std::vector<Cost> dist;      // kInfCost where unreachable
  std::vector<NodeId> parent;  // kNoNode at source / unreachable
  std::uint64_t settled = 0;   // nodes moved into the closed set (source incl.)

  // Path source -> target; empty when unreachable.
  std::vector<NodeId> path_to(NodeId target) const {
    if (dist[target] >= kInfCost) return {};
    std::vector<NodeId> nodes;
    for (NodeId at = target; at != kNoNode; at = parent[at])
      nodes.push_back(at);
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
  }
};

// Full sweep when `targets` is empty, otherwise stops once every target is
// settled.  Lazy-deletion binary heap; ties pop by smaller node id.
inline ShortestPathTree dijkstra(const GridGraph& graph, NodeId source,
                                 const std::vector<NodeId>& targets = {}) {
  ShortestPathTree tree;
  tree.source = source;
  tree.dist.assign(graph.node_count(), kInfCost);
  tree.parent.assign(graph.node_count(), kNoNode);
  std::vector<std::uint8_t> closed(graph.node_count(), 0);
  std::vector<std::uint8_t> wanted(graph.node_count(), 0);
  std::size_t outstanding = 0;
  for (NodeId t : targets)
    if (!wanted[t]) {
      wanted[t] = 1;
      ++outstanding;
    }
  using Entry = std::pair<Cost, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  tree.dist[source] = 0;
  open.push({0, source});
  while (!open.empty()) {
    auto [d, u] = open.top();
    open.pop();
    if (closed[u]) continue;
    closed[u] = 1;
    ++tree.settled;
    if (wanted[u] && --outstanding == 0) break;
    for (const Edge* e = graph.adj_begin(u); e != graph.adj_end(u); ++e) {
      Cost nd = d + e->cost;
      if (nd < tree.dist[e->to]) {
        tree.dist[e->to] = nd;
        tree.parent[e->to] = u;
        open.push({nd, e->to});
      }
    }
  }
  return tree;
}

// Connected components over node ids; returns component index per node and
// the list of components sorted by (-size, smallest member) so index 0 is
// always the canonical largest component.
inline std::vector<std::vector<NodeId>> connected_components(
    const GridGraph& graph) {
  std::vector<int> comp(graph.node_count(), -1);
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      for (const Edge* e = graph.adj_begin(u); e != graph.adj_end(u); ++e)
        if (comp[e->to] < 0) {
          comp[e->to] = id;
          stack.push_back(e->to);
        }
    }
  }
  for (auto& nodes : out) std::sort(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

}  // namespace mgpf
