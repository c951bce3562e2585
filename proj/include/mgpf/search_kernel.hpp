#pragma once

/* Per-component wavefront state for the Steiner-tree searches.
 *
 * A component owns one A*-style search rooted at its terminal set: closed
 * labels carry settled g values, the open frontier lives in lazy-deletion
 * heaps keyed by f = g + h(u, D) where D is the component's destination set.
 * There is no decrease-key: relaxations push fresh entries, and destination
 * changes bump an epoch so stale f values re-price on pop.  That is sound
 * while h only grows per node (destination sets shrink); the one update that
 * can grow D rebuilds the heaps eagerly (see set_destinations).
 *
 * Summaries the confirmation criteria need — gmin (min open g), prmin (min
 * open max(f, 2g)), rmin (min g over closed nodes that still border the open
 * set) — are maintained as additional lazy heaps.  Between merges a closed
 * node's open-neighbor set only shrinks, so boundary pruning is monotone;
 * merges rebuild everything from the merged labels.
 *
 * Tie-breaks everywhere: smaller f, then smaller g, then smaller node id.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "grid_graph.hpp"
#include "heuristic.hpp"
#include "types.hpp"

namespace mgpf {

struct NodeLabel {
  Cost g = kInfCost;
  NodeId parent = kNoNode;
  NodeId root = kNoNode;  // terminal whose search produced the current g
  bool closed = false;
};

struct Nomination {
  int component = -1;
  NodeId node = kNoNode;
  Cost f = kInfCost;
  Cost g = kInfCost;

  // Global nomination order: f, then g, then node id, then component id.
  bool better_than(const Nomination& o) const {
    if (f != o.f) return f < o.f;
    if (g != o.g) return g < o.g;
    if (node != o.node) return node < o.node;
    return component < o.component;
  }
};

class Component {
 public:
  // Fresh single-terminal component.  The terminal is placed directly into
  // the closed set (that move counts as an expansion) and its neighbors are
  // relaxed into the open frontier.
  Component(int id, const GridGraph& graph, const HeuristicProvider& h,
            NodeId terminal, std::vector<NodeId> destinations,
            std::uint64_t* expanded_counter)
      : id_(id),
        graph_(&graph),
        h_(&h),
        terminals_{terminal},
        dests_(std::move(destinations)),
        expanded_(expanded_counter) {
    std::sort(dests_.begin(), dests_.end());
    NodeLabel& root = labels_[terminal];
    root.g = 0;
    root.root = terminal;
    root.closed = true;
    bump_expanded();
    boundary_.push(BoundaryEntry{0, terminal});
    for (const Edge* e = graph_->adj_begin(terminal);
         e != graph_->adj_end(terminal); ++e)
      relax(e->to, e->cost, terminal, terminal);
  }

  int id() const { return id_; }
  const std::vector<NodeId>& terminals() const { return terminals_; }
  const std::vector<NodeId>& destinations() const { return dests_; }

  Cost g_of(NodeId u) const {
    auto it = labels_.find(u);
    return it == labels_.end() ? kInfCost : it->second.g;
  }
  bool is_closed(NodeId u) const {
    auto it = labels_.find(u);
    return it != labels_.end() && it->second.closed;
  }
  NodeId root_of(NodeId u) const {
    auto it = labels_.find(u);
    return it == labels_.end() ? kNoNode : it->second.root;
  }

  // Least-f live open entry, or nullopt when the frontier is exhausted.
  // Prunes superseded and re-prices stale-epoch entries; non-destructive for
  // the returned entry (it stays on top of the heap).
  //
  // A component with no destinations left is dormant, not exhausted: every
  // terminal it could search for already has a confirmed path, so it stops
  // nominating (h over an empty destination set is a vacuous minimum, +inf)
  // and wakes only if the destination set grows back.
  std::optional<Nomination> nominate() {
    if (dests_.empty()) return std::nullopt;
    while (!open_.empty()) {
      const FEntry& e = open_.top();
      auto it = labels_.find(e.node);
      if (it == labels_.end() || it->second.closed || e.g != it->second.g) {
        open_.pop();
        continue;
      }
      if (e.epoch != epoch_) {
        FEntry fresh{it->second.g + h_of(e.node), it->second.g, e.node, epoch_};
        open_.pop();
        open_.push(fresh);
        continue;
      }
      return Nomination{id_, e.node, e.f, e.g};
    }
    return std::nullopt;
  }

  struct Relaxation {
    NodeId node;
    Cost g;
  };

  // Settles the current nomination and relaxes its neighbors.  Improvements
  // are appended to `relaxed` (callers feed them to the pair-meet table).
  // Throws when the open set is exhausted.
  NodeId expand(std::vector<Relaxation>& relaxed) {
    std::optional<Nomination> nom = nominate();
    if (!nom) throw std::logic_error("expand called on an empty open set");
    open_.pop();
    NodeLabel& label = labels_[nom->node];
    label.closed = true;
    bump_expanded();
    boundary_.push(BoundaryEntry{label.g, nom->node});
    for (const Edge* e = graph_->adj_begin(nom->node);
         e != graph_->adj_end(nom->node); ++e) {
      if (relax(e->to, label.g + e->cost, nom->node, label.root))
        relaxed.push_back(Relaxation{e->to, label.g + e->cost});
    }
    return nom->node;
  }

  // Re-prioritization: drop confirmed partners from the destination set.  An
  // empty or no-op removal leaves the epoch untouched.
  void remove_destinations(std::span<const NodeId> removed) {
    std::size_t before = dests_.size();
    for (NodeId t : removed) {
      auto it = std::lower_bound(dests_.begin(), dests_.end(), t);
      if (it != dests_.end() && *it == t) dests_.erase(it);
    }
    if (dests_.size() != before) ++epoch_;
  }

  // Wholesale destination replacement (the mandatory update after a path is
  // accepted).  Shrinking updates stay lazy; anything else rebuilds the open
  // heaps so no entry is left priced below its current f.
  void set_destinations(std::vector<NodeId> dests) {
    std::sort(dests.begin(), dests.end());
    if (dests == dests_) return;
    bool shrank = std::includes(dests_.begin(), dests_.end(), dests.begin(),
                                dests.end());
    dests_ = std::move(dests);
    ++epoch_;
    if (!shrank) rebuild_open_heaps();
  }

  Cost gmin() {
    while (!gheap_.empty()) {
      const GEntry& e = gheap_.top();
      auto it = labels_.find(e.node);
      if (it == labels_.end() || it->second.closed || e.g != it->second.g) {
        gheap_.pop();
        continue;
      }
      return e.g;
    }
    return kInfCost;
  }

  Cost prmin() {
    while (!prheap_.empty()) {
      const PrEntry& e = prheap_.top();
      auto it = labels_.find(e.node);
      if (it == labels_.end() || it->second.closed || e.g != it->second.g) {
        prheap_.pop();
        continue;
      }
      if (e.epoch != epoch_) {
        prheap_.pop();
        prheap_.push(make_pr(e.node, it->second.g));
        continue;
      }
      return e.pr;
    }
    return kInfCost;
  }

  // Min g over closed nodes that still have a neighbor in the open set;
  // +inf when the closed set has no boundary.
  Cost rmin() {
    while (!boundary_.empty()) {
      const BoundaryEntry& e = boundary_.top();
      auto it = labels_.find(e.node);
      if (it == labels_.end() || !it->second.closed || e.g != it->second.g) {
        boundary_.pop();  // only possible transiently around merges
        continue;
      }
      bool borders_open = false;
      for (const Edge* a = graph_->adj_begin(e.node);
           a != graph_->adj_end(e.node) && !borders_open; ++a) {
        auto nb = labels_.find(a->to);
        borders_open = nb != labels_.end() && !nb->second.closed;
      }
      if (borders_open) return e.g;
      boundary_.pop();
    }
    return kInfCost;
  }

  // Parent-chain walk from u back to a terminal.  Returns the node sequence
  // terminal -> u and the summed edge cost.  After merges a chain may cross
  // into the partner side's cheaper route, so the sum can undercut the
  // recorded g; it can never exceed it.
  std::pair<std::vector<NodeId>, Cost> reconstruct_path(NodeId u) const {
    auto it = labels_.find(u);
    if (it == labels_.end())
      throw std::logic_error("reconstruct_path: node has no label");
    std::vector<NodeId> nodes;
    Cost total = 0;
    NodeId at = u;
    while (true) {
      nodes.push_back(at);
      if (nodes.size() > labels_.size())
        throw std::logic_error("reconstruct_path: parent chain has a cycle");
      const NodeLabel& label = labels_.at(at);
      if (label.parent == kNoNode) break;
      Cost c = graph_->edge_cost(at, label.parent);
      if (c >= kInfCost)
        throw std::logic_error("reconstruct_path: parent chain leaves graph");
      total += c;
      at = label.parent;
    }
    if (total > it->second.g)
      throw std::logic_error("reconstruct_path: chain cost exceeds label g");
    std::reverse(nodes.begin(), nodes.end());
    return {std::move(nodes), total};
  }

  // Merged component per the component-merge rules: terminal/destination
  // union, pointwise-min g over the label union, and a node leaves the merged
  // closed set only when the other side holds it open at strictly smaller g.
  // All heaps are rebuilt against the merged destination set.
  static Component merge(int new_id, const Component& a, const Component& b) {
    if (&a == &b || a.id_ == b.id_)
      throw std::logic_error("merge: component merged with itself");
    Component m(new_id, a);
    m.terminals_ = sorted_union(a.terminals_, b.terminals_);
    m.dests_ = sorted_union(a.dests_, b.dests_);
    std::erase_if(m.dests_, [&m](NodeId t) {
      return std::binary_search(m.terminals_.begin(), m.terminals_.end(), t);
    });
    std::vector<NodeId> support;
    support.reserve(a.labels_.size() + b.labels_.size());
    for (const auto& [node, label] : a.labels_) support.push_back(node);
    for (const auto& [node, label] : b.labels_) support.push_back(node);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    m.labels_.reserve(support.size());
    for (NodeId u : support) {
      auto ia = a.labels_.find(u);
      auto ib = b.labels_.find(u);
      const NodeLabel* la = ia == a.labels_.end() ? nullptr : &ia->second;
      const NodeLabel* lb = ib == b.labels_.end() ? nullptr : &ib->second;
      NodeLabel merged;
      if (la && lb) {
        // Winner by strictly smaller g; ties prefer a settled label, then a.
        const NodeLabel* win;
        if (la->g != lb->g)
          win = la->g < lb->g ? la : lb;
        else
          win = (lb->closed && !la->closed) ? lb : la;
        merged = *win;
        bool demote_a = la->closed && !lb->closed && lb->g < la->g;
        bool demote_b = lb->closed && !la->closed && la->g < lb->g;
        merged.closed = (la->closed || lb->closed) && !demote_a && !demote_b;
      } else {
        merged = la ? *la : *lb;
      }
      m.labels_.emplace(u, merged);
      if (merged.closed)
        m.boundary_.push(BoundaryEntry{merged.g, u});
      else
        m.push_open(u, merged.g);
    }
    return m;
  }

  bool open_empty() { return !nominate().has_value(); }

  // Full-scan counterparts of the incremental summaries, for property tests.
  Cost scan_gmin() const {
    Cost best = kInfCost;
    for (const auto& [node, label] : labels_)
      if (!label.closed) best = std::min(best, label.g);
    return best;
  }
  Cost scan_prmin() const {
    Cost best = kInfCost;
    for (const auto& [node, label] : labels_)
      if (!label.closed)
        best = std::min(best, std::max(label.g + h_of(node), 2 * label.g));
    return best;
  }
  Cost scan_rmin() const {
    Cost best = kInfCost;
    for (const auto& [node, label] : labels_) {
      if (!label.closed) continue;
      for (const Edge* e = graph_->adj_begin(node); e != graph_->adj_end(node);
           ++e) {
        auto nb = labels_.find(e->to);
        if (nb != labels_.end() && !nb->second.closed) {
          best = std::min(best, label.g);
          break;
        }
      }
    }
    return best;
  }

  std::vector<NodeId> labeled_nodes_sorted() const {
    std::vector<NodeId> nodes;
    nodes.reserve(labels_.size());
    for (const auto& [node, label] : labels_) nodes.push_back(node);
    std::sort(nodes.begin(), nodes.end());
    return nodes;
  }

 private:
  struct FEntry {
    Cost f;
    Cost g;
    NodeId node;
    std::uint64_t epoch;
    bool operator>(const FEntry& o) const {
      if (f != o.f) return f > o.f;
      if (g != o.g) return g > o.g;
      return node > o.node;
    }
  };
  struct GEntry {
    Cost g;
    NodeId node;
    bool operator>(const GEntry& o) const {
      if (g != o.g) return g > o.g;
      return node > o.node;
    }
  };
  struct PrEntry {
    Cost pr;
    Cost g;
    NodeId node;
    std::uint64_t epoch;
    bool operator>(const PrEntry& o) const {
      if (pr != o.pr) return pr > o.pr;
      return node > o.node;
    }
  };
  using BoundaryEntry = GEntry;

  // Shell constructor for merge(): adopts a's graph/provider/counter only.
  Component(int id, const Component& a)
      : id_(id), graph_(a.graph_), h_(a.h_), expanded_(a.expanded_) {}

  static std::vector<NodeId> sorted_union(const std::vector<NodeId>& a,
                                          const std::vector<NodeId>& b) {
    std::vector<NodeId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
  }

  Cost h_of(NodeId u) const { return h_->h_to_set(u, dests_); }

  PrEntry make_pr(NodeId u, Cost g) const {
    return PrEntry{std::max(g + h_of(u), 2 * g), g, u, epoch_};
  }

  void push_open(NodeId u, Cost g) {
    open_.push(FEntry{g + h_of(u), g, u, epoch_});
    gheap_.push(GEntry{g, u});
    prheap_.push(make_pr(u, g));
  }

  // Relaxes edge into v; returns true when g improved.  Nodes closed in this
  // component are never touched.
  bool relax(NodeId v, Cost g, NodeId parent, NodeId root) {
    NodeLabel& label = labels_[v];
    if (label.closed || g >= label.g) return false;
    label.g = g;
    label.parent = parent;
    label.root = root;
    push_open(v, g);
    return true;
  }

  void rebuild_open_heaps() {
    open_ = {};
    gheap_ = {};
    prheap_ = {};
    for (NodeId u : labeled_nodes_sorted()) {
      const NodeLabel& label = labels_.at(u);
      if (!label.closed) push_open(u, label.g);
    }
  }

  void bump_expanded() {
    if (expanded_) ++*expanded_;
  }

  int id_;
  const GridGraph* graph_;
  const HeuristicProvider* h_;
  std::vector<NodeId> terminals_;  // sorted
  std::vector<NodeId> dests_;      // sorted, disjoint from terminals_
  std::uint64_t epoch_ = 0;
  std::unordered_map<NodeId, NodeLabel> labels_;
  std::priority_queue<FEntry, std::vector<FEntry>, std::greater<>> open_;
  std::priority_queue<GEntry, std::vector<GEntry>, std::greater<>> gheap_;
  std::priority_queue<PrEntry, std::vector<PrEntry>, std::greater<>> prheap_;
  std::priority_queue<BoundaryEntry, std::vector<BoundaryEntry>, std::greater<>>
      boundary_;
  std::uint64_t* expanded_;
};

}  // namespace mgpf
