#pragma once

/* Heuristic Steiner-tree searches over the terminal set.
 *
 * Two solver variants share the acceptance discipline: confirmed terminal
 * pair paths wait in a pending queue and are folded into the growing forest
 * cheapest-first, each acceptance gated by cost(p) <= f*, where f* lower
 * bounds the cost of any least-cost terminal-pair path not yet confirmed.
 * That ordering is what makes the accepted set a minimum spanning tree of
 * the terminals' metric completion.
 *
 * - Unmerged: one wavefront per terminal, forever.  A path is confirmed when
 *   a wavefront settles a terminal in its destination set; f* is the least
 *   open f over all wavefronts.  (A fully explored connection implies the
 *   settle already happened, so every unconfirmed pair still crosses an open
 *   frontier and is bounded by its f.)
 * - Merged: wavefronts fuse when a path between them is accepted.  Pairwise
 *   meeting costs are tracked incrementally and a configurable bidirectional
 *   stopping rule (HS / BS / MM) confirms pairs.  Because a stopping rule may
 *   leave a pair unconfirmed long after its connection is fully explored
 *   (BS under weighted-heuristic nomination does exactly that), f* is a
 *   per-pair bound: while a pair's cheapest crossing still touches both open
 *   frontiers it costs at least each side's nomination f, the open-g sum,
 *   and the boundary-radius sum rmin_A + rmin_B (disjoint balls); once fully
 *   explored, the recorded meet IS the crossing cost and caps the bound.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "grid_graph.hpp"
#include "heuristic.hpp"
#include "instance.hpp"
#include "search_kernel.hpp"
#include "steiner_forest.hpp"
#include "types.hpp"

namespace mgpf {

enum class Criterion { HS, BS, MM };

inline const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::HS: return "hs";
    case Criterion::BS: return "bs";
    case Criterion::MM: return "mm";
  }
  return "?";
}

// Everything a stopping rule may consult about a component pair.  A component
// with an exhausted frontier contributes +inf nomination f / gmin / prmin, so
// any finite meet confirms against it.
struct PairBounds {
  Cost best_meet = kInfCost;
  Cost f_nom_a = kInfCost;
  Cost f_nom_b = kInfCost;
  Cost gmin_a = kInfCost;
  Cost gmin_b = kInfCost;
  Cost prmin_a = kInfCost;
  Cost prmin_b = kInfCost;
  Cost c_min = 0;  // minimum edge cost in the graph
};

// fmin rule: the meet cannot improve once it is within both frontiers' f.
inline bool confirm_hs(const PairBounds& b) {
  return is_finite(b.best_meet) && b.best_meet <= std::max(b.f_nom_a, b.f_nom_b);
}

// gmin rule: any undiscovered meeting point costs at least gmin_a + gmin_b.
inline bool confirm_bs(const PairBounds& b) {
  return is_finite(b.best_meet) && b.best_meet <= b.gmin_a + b.gmin_b;
}

// meet-in-the-middle rule over pr(u) = max(f(u), 2 g(u)).
inline bool confirm_mm(const PairBounds& b) {
  if (!is_finite(b.best_meet)) return false;
  Cost c = std::min(b.prmin_a, b.prmin_b);
  Cost gsum = b.gmin_a >= kInfCost || b.gmin_b >= kInfCost
                  ? kInfCost
                  : b.gmin_a + b.gmin_b + b.c_min;
  Cost bound = std::max({c, b.f_nom_a, b.f_nom_b, gsum});
  return b.best_meet <= bound;
}

inline bool confirm(Criterion kind, const PairBounds& b) {
  switch (kind) {
    case Criterion::HS: return confirm_hs(b);
    case Criterion::BS: return confirm_bs(b);
    case Criterion::MM: return confirm_mm(b);
  }
  return false;
}

struct TraceEvent {
  std::uint64_t step = 0;  // 1-based loop expansion index within the run
  int component = -1;
  NodeId node = kNoNode;
  Cost g = kInfCost;
  Cost f = kInfCost;
};
using TraceSink = std::function<void(const TraceEvent&)>;

struct SolveOptions {
  bool reprioritize = false;      // drop confirmed partners from D eagerly
  bool bs_nominate_by_g = false;  // run BS heuristic-free (f := g)
  TraceSink trace;
};

struct SolveStats {
  std::uint64_t expanded = 0;    // moves into any closed set, incl. terminal init
  std::uint64_t iterations = 0;  // main-loop expansions
};

struct SolveResult {
  SteinerForest forest;
  SolveStats stats;
};

namespace detail {

// Sorted view of the pending queue: cost, then endpoints, then insertion
// order.  Classification happens against live union-find state, so a path
// accepted earlier in the pass can turn a later duplicate into a cycle.
inline std::vector<std::size_t> pending_order(
    const std::vector<ConfirmedPath>& pending) {
  std::vector<std::size_t> order(pending.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const ConfirmedPath& p = pending[x];
    const ConfirmedPath& q = pending[y];
    if (p.cost != q.cost) return p.cost < q.cost;
    if (p.a != q.a) return p.a < q.a;
    if (p.b != q.b) return p.b < q.b;
    return x < y;
  });
  return order;
}

struct UnmergedRun {
  const GridGraph& graph;
  const Instance& inst;
  const HeuristicProvider& h;
  const SolveOptions& opts;

  std::vector<NodeId> terminals = inst.terminals();
  std::vector<NodeId> sorted_terminals = [this] {
    std::vector<NodeId> t = terminals;
    std::sort(t.begin(), t.end());
    return t;
  }();
  SteinerForest forest{terminals};
  std::vector<Component> comps;
  std::map<NodeId, int> comp_of;  // terminal -> component index
  std::vector<ConfirmedPath> pending;
  SolveStats stats;

  SolveResult run() {
    validate_instance(graph, inst);
    comps.reserve(terminals.size());
    for (std::size_t i = 0; i < terminals.size(); ++i) {
      std::vector<NodeId> dests = terminals;
      std::erase(dests, terminals[i]);
      comps.emplace_back(static_cast<int>(i), graph, h, terminals[i],
                         std::move(dests), &stats.expanded);
      comp_of[terminals[i]] = static_cast<int>(i);
    }
    while (!forest.complete()) {
      std::optional<Nomination> best;
      for (Component& c : comps) {
        std::optional<Nomination> nom = c.nominate();
        if (nom && (!best || nom->better_than(*best))) best = nom;
      }
      if (!best) {
        update_tree();  // f* is +inf: flush whatever is pending
        if (!forest.complete())
          throw UnsolvableError("terminals are not mutually reachable");
        break;
      }
      Component& winner = comps[best->component];
      std::vector<Component::Relaxation> relaxed;
      NodeId u = winner.expand(relaxed);
      ++stats.iterations;
      if (opts.trace)
        opts.trace(TraceEvent{stats.iterations, best->component, u, best->g,
                              best->f});
      const std::vector<NodeId>& dests = winner.destinations();
      if (std::binary_search(dests.begin(), dests.end(), u)) {
        // Settled a live destination terminal: g is exact, emit the path.
        auto [nodes, cost] = winner.reconstruct_path(u);
        pending.push_back(
            ConfirmedPath{nodes.front(), u, cost, std::move(nodes)});
        if (opts.reprioritize) {
          NodeId mine = winner.terminals().front();
          winner.remove_destinations(std::vector<NodeId>{u});
          comps[comp_of.at(u)].remove_destinations(std::vector<NodeId>{mine});
        }
      }
      update_tree();
    }
    return SolveResult{std::move(forest), stats};
  }

  // Acceptance pass: f* = least open f over every wavefront; accepted paths
  // trigger the mandatory destination update D_t := T \ class(t) for every
  // terminal of the merged class.
  void update_tree() {
    Cost fstar = kInfCost;
    for (Component& c : comps) {
      std::optional<Nomination> nom = c.nominate();
      if (nom) fstar = std::min(fstar, nom->f);
    }
    std::vector<ConfirmedPath> retained;
    for (std::size_t idx : pending_order(pending)) {
      ConfirmedPath& p = pending[idx];
      if (forest.same_class(p.a, p.b)) continue;  // discard permanently
      if (p.cost > fstar) {
        retained.push_back(std::move(p));
        continue;
      }
      forest.accept(std::move(p));
      std::vector<NodeId> cls = forest.class_of(forest.accepted().back().a);
      std::vector<NodeId> dests;
      std::set_difference(sorted_terminals.begin(), sorted_terminals.end(),
                          cls.begin(), cls.end(), std::back_inserter(dests));
      for (NodeId t : cls) comps[comp_of.at(t)].set_destinations(dests);
    }
    pending = std::move(retained);
  }
};

struct MergedRun {
  const GridGraph& graph;
  const Instance& inst;
  const HeuristicProvider& h;
  Criterion criterion;
  const SolveOptions& opts;

  std::vector<NodeId> terminals = inst.terminals();
  SteinerForest forest{terminals};
  std::vector<std::unique_ptr<Component>> comps;  // index == component id
  std::vector<int> live;                          // ascending component ids
  std::map<NodeId, int> comp_of;                  // terminal -> live id
  struct MeetRow {
    Cost best = kInfCost;
    NodeId witness = kNoNode;
    Cost emitted = kInfCost;  // confirm at most once per pair between merges
  };
  std::map<std::pair<int, int>, MeetRow> meets;
  std::vector<ConfirmedPath> pending;
  SolveStats stats;

  static std::pair<int, int> key(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
  }

  SolveResult run() {
    validate_instance(graph, inst);
    comps.reserve(terminals.size() * 2);
    for (std::size_t i = 0; i < terminals.size(); ++i) {
      std::vector<NodeId> dests = terminals;
      std::erase(dests, terminals[i]);
      comps.push_back(std::make_unique<Component>(
          static_cast<int>(i), graph, h, terminals[i], std::move(dests),
          &stats.expanded));
      live.push_back(static_cast<int>(i));
      comp_of[terminals[i]] = static_cast<int>(i);
    }
    // Initialization already relaxed terminal neighborhoods; seed the meet
    // table from those labels (sorted for reproducible witnesses).
    for (int id : live)
      for (NodeId u : comps[id]->labeled_nodes_sorted())
        note_meet(id, u, comps[id]->g_of(u));

    while (live.size() > 1) {
      std::optional<Nomination> best;
      for (int id : live) {
        std::optional<Nomination> nom = comps[id]->nominate();
        if (nom && (!best || nom->better_than(*best))) best = nom;
      }
      if (!best) {
        // No frontier can move: everything reachable is already explored
        // (or the remaining components are dormant with all pairs pending).
        // Sweep confirmations across every live pair and flush; each merge
        // seeds fresh pair rows, so iterate until the structure stabilizes.
        while (live.size() > 1) {
          std::size_t before = live.size();
          for (std::size_t i = 0; i < live.size(); ++i)
            confirm_pairs(live[i]);
          update_tree();
          if (live.size() == before) break;
        }
        if (live.size() > 1)
          throw UnsolvableError("terminals are not mutually reachable");
        break;
      }
      Component& winner = *comps[best->component];
      std::vector<Component::Relaxation> relaxed;
      NodeId u = winner.expand(relaxed);
      ++stats.iterations;
      if (opts.trace)
        opts.trace(TraceEvent{stats.iterations, best->component, u, best->g,
                              best->f});
      for (const Component::Relaxation& r : relaxed)
        note_meet(best->component, r.node, r.g);
      confirm_pairs(best->component);
      update_tree();
    }
    return SolveResult{std::move(forest), stats};
  }

  // Incremental pair-meet maintenance: a g improvement at `node` in component
  // `a` can only lower best_meet for pairs involving a.
  void note_meet(int a, NodeId node, Cost g) {
    for (int b : live) {
      if (b == a) continue;
      Cost gb = comps[b]->g_of(node);
      if (gb >= kInfCost) continue;
      MeetRow& row = meets[key(a, b)];
      if (g + gb < row.best) {
        row.best = g + gb;
        row.witness = node;
      }
    }
  }

  // Path-confirmation check between the component that just expanded and
  // every other live component.
  void confirm_pairs(int a) {
    for (int b : live) {
      if (b == a) continue;
      auto it = meets.find(key(a, b));
      if (it == meets.end() || !is_finite(it->second.best)) continue;
      MeetRow& row = it->second;
      if (row.best >= row.emitted) continue;
      PairBounds bounds = gather_bounds(a, b, row.best);
      if (!confirm(criterion, bounds)) continue;
      emit_path(a, b, row);
      if (opts.reprioritize) {
        comps[a]->remove_destinations(comps[b]->terminals());
        comps[b]->remove_destinations(comps[a]->terminals());
      }
    }
  }

  PairBounds gather_bounds(int a, int b, Cost best_meet) {
    PairBounds bounds;
    bounds.best_meet = best_meet;
    std::optional<Nomination> na = comps[a]->nominate();
    std::optional<Nomination> nb = comps[b]->nominate();
    bounds.f_nom_a = na ? na->f : kInfCost;
    bounds.f_nom_b = nb ? nb->f : kInfCost;
    if (criterion == Criterion::BS || criterion == Criterion::MM) {
      bounds.gmin_a = comps[a]->gmin();
      bounds.gmin_b = comps[b]->gmin();
    }
    if (criterion == Criterion::MM) {
      bounds.prmin_a = comps[a]->prmin();
      bounds.prmin_b = comps[b]->prmin();
      bounds.c_min = graph.min_edge_cost();
    }
    return bounds;
  }

  // Materialize the confirmed path through the recorded witness.  The chain
  // termini are the actual endpoint terminals; their summed edge costs must
  // reproduce best_meet exactly (runtime check of the shortest-path claim).
  void emit_path(int a, int b, MeetRow& row) {
    auto [nodes_a, cost_a] = comps[a]->reconstruct_path(row.witness);
    auto [nodes_b, cost_b] = comps[b]->reconstruct_path(row.witness);
    if (cost_a + cost_b != row.best)
      throw std::logic_error(
          "confirmed path cost diverged from the recorded meet");
    ConfirmedPath path;
    path.a = nodes_a.front();
    path.b = nodes_b.front();
    path.cost = row.best;
    path.nodes = std::move(nodes_a);
    path.nodes.insert(path.nodes.end(), nodes_b.rbegin() + 1, nodes_b.rend());
    pending.push_back(std::move(path));
    row.emitted = row.best;
  }

  // f* = min over live unconfirmed pairs of a lower bound on the cost at
  // which the pair can still confirm a path; computed once per pass.
  //
  // While a pair's cheapest crossing touches both open frontiers in path
  // order, it costs at least each side's nomination f, the open-g sum, and
  // the boundary-radius sum.  Any crossing with a doubly-labeled node has a
  // meet row, and once the crossing is fully explored the recorded meet
  // equals its cost — so best_meet caps the per-pair bound.  Pairs whose
  // current best meet is already emitted sit in the pending queue and are
  // governed by cost order there, not by f*.
  Cost fstar() {
    std::vector<Cost> f_by_id(comps.size(), kInfCost);
    std::vector<Cost> g_by_id(comps.size(), kInfCost);
    std::vector<Cost> r_by_id(comps.size(), kInfCost);
    for (int id : live) {
      std::optional<Nomination> nom = comps[id]->nominate();
      f_by_id[id] = nom ? nom->f : kInfCost;
      g_by_id[id] = comps[id]->gmin();
      r_by_id[id] = comps[id]->rmin();
    }
    Cost bound = kInfCost;
    for (const auto& [pair, row] : meets) {
      if (row.best >= row.emitted) continue;  // already pending at this cost
      auto [a, b] = pair;
      Cost frontier =
          std::max({f_by_id[a], f_by_id[b], g_by_id[a] + g_by_id[b],
                    r_by_id[a] + r_by_id[b]});
      bound = std::min(bound, std::min(row.best, frontier));
    }
    // Pairs with no meet row have no doubly-labeled node on any crossing, so
    // both first-open-frontier bounds apply; cover them all at once with the
    // global minima (cheaper than enumerating pairs, and still a valid lower
    // bound on each).
    if (meets.size() < live.size() * (live.size() - 1) / 2) {
      Cost minf = kInfCost;
      Cost g1 = kInfCost, g2 = kInfCost, r1 = kInfCost, r2 = kInfCost;
      for (int id : live) {
        minf = std::min(minf, f_by_id[id]);
        Cost g = g_by_id[id];
        if (g < g1) std::swap(g, g1);
        g2 = std::min(g2, g);
        Cost r = r_by_id[id];
        if (r < r1) std::swap(r, r1);
        r2 = std::min(r2, r);
      }
      bound = std::min(bound, std::max({minf, g1 + g2, r1 + r2}));
    }
    return bound;
  }

  void update_tree() {
    Cost bound = fstar();
    std::vector<ConfirmedPath> retained;
    for (std::size_t idx : pending_order(pending)) {
      ConfirmedPath& p = pending[idx];
      if (forest.same_class(p.a, p.b)) continue;  // discard permanently
      if (p.cost > bound) {
        retained.push_back(std::move(p));
        continue;
      }
      int ia = comp_of.at(p.a);
      int ib = comp_of.at(p.b);
      forest.accept(std::move(p));
      merge_components(ia, ib);
    }
    pending = std::move(retained);
  }

  void merge_components(int ia, int ib) {
    int merged_id = static_cast<int>(comps.size());
    comps.push_back(std::make_unique<Component>(
        Component::merge(merged_id, *comps[ia], *comps[ib])));
    std::erase(live, ia);
    std::erase(live, ib);
    live.push_back(merged_id);  // ids grow, so live stays ascending
    for (NodeId t : comps[merged_id]->terminals()) comp_of[t] = merged_id;
    // Retire the merged pair's rows; seed rows for the new component by
    // pointwise min of the old ones (g of the union is the pointwise min, so
    // this is exact).  Emission marks reset: pairs are fresh after a merge.
    for (int c : live) {
      if (c == merged_id) continue;
      MeetRow seeded;
      for (int old : {ia, ib}) {
        auto it = meets.find(key(old, c));
        if (it != meets.end() && it->second.best < seeded.best) {
          seeded.best = it->second.best;
          seeded.witness = it->second.witness;
        }
      }
      if (is_finite(seeded.best)) meets[key(merged_id, c)] = seeded;
    }
    std::erase_if(meets, [&](const auto& kv) {
      return kv.first.first == ia || kv.first.first == ib ||
             kv.first.second == ia || kv.first.second == ib;
    });
    comps[ia].reset();
    comps[ib].reset();
  }
};

}  // namespace detail

// One wavefront per terminal; paths confirm when a wavefront settles a
// destination terminal.
inline SolveResult solve_unmerged(const GridGraph& graph, const Instance& inst,
                                  const HeuristicProvider& h,
                                  const SolveOptions& opts = {}) {
  detail::UnmergedRun run{graph, inst, h, opts};
  return run.run();
}

// Fusing wavefronts with a bidirectional stopping rule per component pair.
inline SolveResult solve_merged(const GridGraph& graph, const Instance& inst,
                                const HeuristicProvider& h, Criterion criterion,
                                const SolveOptions& opts = {}) {
  if (criterion == Criterion::BS && opts.bs_nominate_by_g) {
    HeuristicProvider unweighted = h.with_weight(Weight{0, 1});
    detail::MergedRun run{graph, inst, unweighted, criterion, opts};
    return run.run();
  }
  detail::MergedRun run{graph, inst, h, criterion, opts};
  return run.run();
}

}  // namespace mgpf
