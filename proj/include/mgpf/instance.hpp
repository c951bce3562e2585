#pragma once

/* A solve instance: origin s, destination d, and a set of goal nodes that a
 * feasible walk must visit at least once.  Terminals = {s, d} + goals, all
 * distinct.  Terminal order is fixed as [s, d, goals ascending]: component
 * ids and every tie-break derive from it.
 */

#include <algorithm>
#include <string>
#include <vector>

#include "dijkstra.hpp"
#include "grid_graph.hpp"
#include "types.hpp"

namespace mgpf {

struct Instance {
  NodeId origin = kNoNode;
  NodeId dest = kNoNode;
  std::vector<NodeId> goals;  // sorted ascending, disjoint from {origin, dest}

  std::vector<NodeId> terminals() const {
    std::vector<NodeId> t;
    t.reserve(goals.size() + 2);
    t.push_back(origin);
    t.push_back(dest);
    t.insert(t.end(), goals.begin(), goals.end());
    return t;
  }

  static Instance make(NodeId origin, NodeId dest, std::vector<NodeId> goals) {
    Instance inst;
    inst.origin = origin;
    inst.dest = dest;
    std::sort(goals.begin(), goals.end());
    inst.goals = std::move(goals);
    return inst;
  }
};

// Structural checks; throws std::invalid_argument naming the violation.
inline void validate_instance(const GridGraph& graph, const Instance& inst) {
  auto check_node = [&](NodeId n, const std::string& role) {
    if (n < 0 || n >= graph.node_count())
      throw std::invalid_argument(role + " node id out of range");
  };
  check_node(inst.origin, "origin");
  check_node(inst.dest, "dest");
  for (NodeId g : inst.goals) check_node(g, "goal");
  std::vector<NodeId> t = inst.terminals();
  std::vector<NodeId> sorted = t;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("terminals must be distinct");
  if (!std::is_sorted(inst.goals.begin(), inst.goals.end()))
    throw std::invalid_argument("goals must be sorted ascending");
}

// True when every terminal lies in one connected component.
inline bool terminals_connected(const GridGraph& graph, const Instance& inst) {
  auto t = inst.terminals();
  ShortestPathTree tree = dijkstra(graph, t[0], t);
  for (NodeId x : t)
    if (tree.dist[x] >= kInfCost) return false;
  return true;
}

}  // namespace mgpf
