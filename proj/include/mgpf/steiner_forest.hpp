#pragma once

/* Growing forest over the terminal set.  Accepted terminal-pair paths arrive
 * cheapest-first (Kruskal order); the forest tracks union-find classes, the
 * accepted paths, and the deduplicated set of graph edges they use.
 */

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "grid_graph.hpp"
#include "types.hpp"
#include "union_find.hpp"

namespace mgpf {

// A confirmed least-cost walk between two terminals.  `nodes` runs a -> b;
// consecutive nodes are graph edges and their costs sum to `cost`.
struct ConfirmedPath {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  Cost cost = 0;
  std::vector<NodeId> nodes;
};

struct UndirectedEdge {
  NodeId u = kNoNode;  // u < v
  NodeId v = kNoNode;
  Cost cost = 0;
  friend auto operator<=>(const UndirectedEdge&, const UndirectedEdge&) = default;
};

class SteinerForest {
 public:
  explicit SteinerForest(std::vector<NodeId> terminals)
      : terminals_(std::move(terminals)), classes_(terminals_.size()) {
    for (std::size_t i = 0; i < terminals_.size(); ++i)
      index_[terminals_[i]] = static_cast<int>(i);
  }

  const std::vector<NodeId>& terminals() const { return terminals_; }

  bool same_class(NodeId a, NodeId b) const {
    return classes_.same(index_of(a), index_of(b));
  }

  // Terminals currently connected to t, ascending.
  std::vector<NodeId> class_of(NodeId t) const {
    int root = classes_.find(index_of(t));
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < terminals_.size(); ++i)
      if (classes_.find(static_cast<int>(i)) == root)
        out.push_back(terminals_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  void accept(ConfirmedPath path) {
    if (!classes_.unite(index_of(path.a), index_of(path.b)))
      throw std::logic_error("accept: path joins an already-connected pair");
    accepted_.push_back(std::move(path));
  }

  bool complete() const { return accepted_.size() + 1 == terminals_.size(); }
  const std::vector<ConfirmedPath>& accepted() const { return accepted_; }

  Cost total_path_cost() const {
    Cost total = 0;
    for (const ConfirmedPath& p : accepted_) total += p.cost;
    return total;
  }

  // Deduplicated graph edges used by the accepted paths, sorted.
  std::vector<UndirectedEdge> edge_set(const GridGraph& graph) const {
    std::vector<UndirectedEdge> edges;
    for (const ConfirmedPath& p : accepted_)
      for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        NodeId u = p.nodes[i], v = p.nodes[i + 1];
        if (v < u) std::swap(u, v);
        edges.push_back(UndirectedEdge{u, v, graph.edge_cost(u, v)});
      }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
  }

  Cost edge_set_cost(const GridGraph& graph) const {
    Cost total = 0;
    for (const UndirectedEdge& e : edge_set(graph)) total += e.cost;
    return total;
  }

 private:
  int index_of(NodeId t) const {
    auto it = index_.find(t);
    if (it == index_.end())
      throw std::logic_error("forest queried for a non-terminal node");
    return it->second;
  }

  std::vector<NodeId> terminals_;
  std::map<NodeId, int> index_;
  UnionFind classes_;
  std::vector<ConfirmedPath> accepted_;
};

}  // namespace mgpf
