#pragma once

/* Turns the Steiner forest into a feasible origin->destination walk with the
 * classic doubling argument:
 *
 *   1. Deduplicate the accepted paths' edges, prune to a spanning tree
 *      (cheapest edges kept), and trim non-terminal leaves.  The result is a
 *      Steiner tree whose cost lower-bounds the optimal walk.
 *   2. Double every tree edge, remove one copy of each edge on the tree's
 *      origin->destination path; all degrees are even except the two ends.
 *   3. Walk an Euler path origin->destination (Hierholzer, neighbors in id
 *      order) — it visits every tree node, hence every goal.
 *   4. Trim: after the last first-visit of a goal the walk only needs to get
 *      home, so the suffix is loop-erased down to the tree path.
 *
 * Walk cost <= 2*tree - (origin,destination tree path) <= 2*tree, and every
 * tree edge separates two terminals so the walk crosses it at least once:
 * the a-posteriori ratio cost/tree is always within [1, 2].
 */

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grid_graph.hpp"
#include "instance.hpp"
#include "steiner_forest.hpp"
#include "types.hpp"
#include "union_find.hpp"

namespace mgpf {

struct MgpfSolution {
  std::vector<NodeId> walk;  // origin first, destination last
  Cost cost = 0;
  Cost tree_edge_cost = 0;   // cost of the tree that was doubled
  Cost tree_path_total = 0;  // sum of accepted terminal-pair path costs
  Fraction ratio{0, 1};      // cost / tree_edge_cost
};

namespace detail {

// Minimum spanning tree of the (connected) edge subgraph; ties break by
// (cost, endpoints) so the tree is reproducible.
inline std::vector<UndirectedEdge> prune_to_tree(
    std::vector<UndirectedEdge> edges) {
  std::sort(edges.begin(), edges.end(),
            [](const UndirectedEdge& a, const UndirectedEdge& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              if (a.u != b.u) return a.u < b.u;
              return a.v < b.v;
            });
  std::map<NodeId, int> index;
  for (const UndirectedEdge& e : edges) {
    index.emplace(e.u, static_cast<int>(index.size()));
    index.emplace(e.v, static_cast<int>(index.size()));
  }
  UnionFind uf(index.size());
  std::vector<UndirectedEdge> tree;
  for (const UndirectedEdge& e : edges)
    if (uf.unite(index.at(e.u), index.at(e.v))) tree.push_back(e);
  return tree;
}

// Iteratively removes degree-1 nodes that are not terminals; a leaf subtree
// without terminals would otherwise inflate the doubled-walk bound.
inline std::vector<UndirectedEdge> trim_leaves(
    std::vector<UndirectedEdge> tree, const std::vector<NodeId>& terminals) {
  std::set<NodeId> keep(terminals.begin(), terminals.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<NodeId, int> degree;
    for (const UndirectedEdge& e : tree) {
      ++degree[e.u];
      ++degree[e.v];
    }
    std::erase_if(tree, [&](const UndirectedEdge& e) {
      bool drop = (degree.at(e.u) == 1 && !keep.count(e.u)) ||
                  (degree.at(e.v) == 1 && !keep.count(e.v));
      changed |= drop;
      return drop;
    });
  }
  return tree;
}

// Unique tree path between two nodes (DFS over the tree adjacency).
inline std::vector<NodeId> tree_path(const std::vector<UndirectedEdge>& tree,
                                     NodeId from, NodeId to) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const UndirectedEdge& e : tree) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::map<NodeId, NodeId> parent;
  parent[from] = kNoNode;
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (u == to) break;
    for (NodeId v : adj[u])
      if (!parent.count(v)) {
        parent[v] = u;
        stack.push_back(v);
      }
  }
  if (!parent.count(to))
    throw std::logic_error("tree path endpoints not connected");
  std::vector<NodeId> path;
  for (NodeId at = to; at != kNoNode; at = parent.at(at)) path.push_back(at);
  std::reverse(path.begin(), path.end());
  return path;
}

// Euler path over the doubled tree minus one copy of each origin->dest path
// edge.  Deterministic Hierholzer: multigraph adjacency kept sorted, the
// smallest unused edge is taken first.
inline std::vector<NodeId> euler_walk(const std::vector<UndirectedEdge>& tree,
                                      NodeId origin, NodeId dest) {
  if (tree.empty()) return {origin};
  std::vector<NodeId> remove = tree_path(tree, origin, dest);
  std::set<std::pair<NodeId, NodeId>> removed;
  for (std::size_t i = 0; i + 1 < remove.size(); ++i)
    removed.insert({std::min(remove[i], remove[i + 1]),
                    std::max(remove[i], remove[i + 1])});
  // Edge copies become indexed arcs; cursor-based Hierholzer.
  std::map<NodeId, std::vector<std::pair<NodeId, std::size_t>>> adj;
  std::vector<int> uses;
  std::size_t eid = 0;
  for (const UndirectedEdge& e : tree) {
    int copies = removed.count({e.u, e.v}) ? 1 : 2;
    uses.push_back(copies);
    adj[e.u].push_back({e.v, eid});
    adj[e.v].push_back({e.u, eid});
    ++eid;
  }
  for (auto& [node, list] : adj) std::sort(list.begin(), list.end());
  std::map<NodeId, std::size_t> cursor;
  std::vector<NodeId> stack{origin};
  std::vector<NodeId> walk;
  while (!stack.empty()) {
    NodeId u = stack.back();
    auto& list = adj[u];
    std::size_t& at = cursor[u];
    while (at < list.size() && uses[list[at].second] == 0) ++at;
    if (at == list.size()) {
      walk.push_back(u);
      stack.pop_back();
    } else {
      --uses[list[at].second];
      stack.push_back(list[at].first);
    }
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

// Position right after the last first-visit of a goal (0 when there are no
// goals), then loop-erase the remainder: the suffix walk lives on the tree,
// so erasing repeats leaves exactly the tree path home.
inline std::vector<NodeId> trim_walk(const std::vector<NodeId>& walk,
                                     const std::vector<NodeId>& goals) {
  std::set<NodeId> unseen(goals.begin(), goals.end());
  std::size_t keep = 0;
  for (std::size_t i = 0; i < walk.size() && !unseen.empty(); ++i)
    if (unseen.erase(walk[i])) keep = i;
  std::vector<NodeId> out(walk.begin(), walk.begin() + keep);
  std::map<NodeId, std::size_t> seen;
  std::vector<NodeId> suffix;
  for (std::size_t i = keep; i < walk.size(); ++i) {
    NodeId u = walk[i];
    auto it = seen.find(u);
    if (it != seen.end()) {
      while (suffix.size() > it->second + 1) {
        seen.erase(suffix.back());
        suffix.pop_back();
      }
    } else {
      suffix.push_back(u);
      seen[u] = suffix.size() - 1;
    }
  }
  out.insert(out.end(), suffix.begin(), suffix.end());
  return out;
}

}  // namespace detail

inline Cost walk_cost(const GridGraph& graph, const std::vector<NodeId>& walk) {
  Cost total = 0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    Cost c = graph.edge_cost(walk[i], walk[i + 1]);
    if (!is_finite(c))
      throw std::logic_error("walk uses a non-edge hop");
    total += c;
  }
  return total;
}

// Forest must span the instance terminals (|T| - 1 accepted paths).
inline MgpfSolution tree_to_walk(const GridGraph& graph,
                                 const SteinerForest& forest,
                                 const Instance& inst) {
  if (!forest.complete())
    throw std::logic_error("tree_to_walk: forest does not span the terminals");
  std::vector<UndirectedEdge> tree = detail::trim_leaves(
      detail::prune_to_tree(forest.edge_set(graph)), forest.terminals());
  MgpfSolution sol;
  sol.tree_path_total = forest.total_path_cost();
  for (const UndirectedEdge& e : tree) sol.tree_edge_cost += e.cost;
  std::vector<NodeId> walk = detail::euler_walk(tree, inst.origin, inst.dest);
  sol.walk = detail::trim_walk(walk, inst.goals);
  sol.cost = walk_cost(graph, sol.walk);
  // A zero-goal instance with adjacent terminals can have a single-edge tree;
  // the ratio denominator is the tree cost, which is then still positive.
  sol.ratio = sol.tree_edge_cost > 0 ? Fraction(sol.cost, sol.tree_edge_cost)
                                     : Fraction(1, 1);
  return sol;
}

// Named checks of every walk invariant; first element is the verdict, the
// rest are human-readable violations.
inline std::pair<bool, std::vector<std::string>> validate_solution(
    const GridGraph& graph, const Instance& inst, const MgpfSolution& sol) {
  std::vector<std::string> bad;
  if (sol.walk.empty()) {
    bad.push_back("walk is empty");
    return {false, bad};
  }
  if (sol.walk.front() != inst.origin)
    bad.push_back("walk does not start at the origin");
  if (sol.walk.back() != inst.dest)
    bad.push_back("walk does not end at the destination");
  for (NodeId g : inst.goals)
    if (std::find(sol.walk.begin(), sol.walk.end(), g) == sol.walk.end())
      bad.push_back("goal " + std::to_string(g) + " not visited");
  Cost total = 0;
  for (std::size_t i = 0; i + 1 < sol.walk.size(); ++i) {
    Cost c = graph.edge_cost(sol.walk[i], sol.walk[i + 1]);
    if (!is_finite(c)) {
      bad.push_back("non-edge hop at index " + std::to_string(i));
      continue;
    }
    total += c;
  }
  if (total != sol.cost)
    bad.push_back("recorded cost " + std::to_string(sol.cost) +
                  " != edge sum " + std::to_string(total));
  if (sol.cost > 2 * sol.tree_edge_cost)
    bad.push_back("cost exceeds twice the tree cost");
  if (sol.tree_edge_cost > 0) {
    Fraction r(sol.cost, sol.tree_edge_cost);
    if (r != sol.ratio) bad.push_back("recorded ratio is inconsistent");
    if (r < Fraction(1, 1) || Fraction(2, 1) < r)
      bad.push_back("ratio outside [1, 2]");
  }
  return {bad.empty(), bad};
}

// A-posteriori approximation guarantee of a solution.
inline Fraction aposteriori_ratio(const MgpfSolution& sol) { return sol.ratio; }

// Text record: "cost tree_cost tree_path_total ratio" header line, then one
// node id per line.  Blank lines and '#' comments are ignored on read, so
// writers may annotate the file.
inline std::string solution_to_text(const MgpfSolution& sol) {
  std::ostringstream out;
  out << sol.cost << ' ' << sol.tree_edge_cost << ' ' << sol.tree_path_total
      << ' ' << sol.ratio.to_string() << '\n';
  for (NodeId n : sol.walk) out << n << '\n';
  return out.str();
}

inline MgpfSolution parse_solution(const std::string& text) {
  auto lines = detail::split_lines(text);
  MgpfSolution sol;
  bool have_header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i][0] == '#') continue;
    if (!have_header) {
      std::istringstream in(lines[i]);
      std::string ratio;
      if (!(in >> sol.cost >> sol.tree_edge_cost >> sol.tree_path_total >>
            ratio))
        throw ParseError("expected 'cost tree_cost total ratio'",
                         static_cast<int>(i) + 1);
      sol.ratio = Fraction::parse(ratio);
      have_header = true;
      continue;
    }
    try {
      sol.walk.push_back(static_cast<NodeId>(std::stol(lines[i])));
    } catch (const std::exception&) {
      throw ParseError("expected a node id", static_cast<int>(i) + 1);
    }
  }
  if (!have_header) throw ParseError("empty solution text", 1);
  return sol;
}

}  // namespace mgpf
