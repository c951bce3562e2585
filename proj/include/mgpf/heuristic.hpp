#pragma once

/* Admissible, consistent heuristics with exact rational weighting.
 *
 * Octile on grids: h = 1000*max(dx,dy) + 414*min(dx,dy), which equals the
 * true obstacle-free cost, so it is admissible and consistent under the
 * 1000/1414 step costs.  ALT: max over landmarks of |d(L,a) - d(L,b)|, maxed
 * with octile on grids.  Exact: true distances from each terminal.
 *
 * Weighting multiplies by w = p/q in [0,1] with floor division; floor(w*h)
 * stays consistent because edge costs are integers and w <= 1.
 */

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dijkstra.hpp"
#include "grid_graph.hpp"
#include "types.hpp"

namespace mgpf {

enum class HeuristicKind { Zero, Octile, Exact, Alt };

inline const char* to_string(HeuristicKind k) {
  switch (k) {
    case HeuristicKind::Zero: return "zero";
    case HeuristicKind::Octile: return "octile";
    case HeuristicKind::Exact: return "exact";
    case HeuristicKind::Alt: return "alt";
  }
  return "?";
}

// Weight w = num/den, 0 <= w <= 1, applied as floor(h * num / den).
struct Weight {
  std::int64_t num = 1;
  std::int64_t den = 1;

  static Weight of(const Fraction& f) {
    if (f.num < 0 || f.num > f.den)
      throw std::invalid_argument("heuristic weight must lie in [0,1]");
    return Weight{f.num, f.den};
  }
  Fraction fraction() const { return Fraction(num, den); }
  Cost scale(Cost h) const {
    if (num == den || h == 0) return h;
    if (num == 0) return 0;
    if (h >= kInfCost) return kInfCost;
    return h * num / den;
  }
};

inline Cost octile_between(const GridGraph& graph, NodeId a, NodeId b) {
  if (!graph.is_grid())
    throw std::logic_error("octile estimate requires a grid graph");
  Cost dr = std::abs(graph.row_of(a) - graph.row_of(b));
  Cost dc = std::abs(graph.col_of(a) - graph.col_of(b));
  return kCardinalCost * std::max(dr, dc) +
         (kDiagonalCost - kCardinalCost) * std::min(dr, dc);
}

// Landmark distances for ALT lower bounds.  `requested` records the asked-for
// count so callers can report a shortfall when few nodes were eligible.
struct LandmarkTable {
  std::uint64_t map_hash = 0;
  std::uint64_t seed = 0;
  std::size_t requested = 0;
  std::vector<NodeId> landmarks;
  std::vector<std::vector<Cost>> dist;  // dist[i][u] from landmarks[i]

  bool shortfall() const { return landmarks.size() < requested; }

  friend bool operator==(const LandmarkTable& a, const LandmarkTable& b) {
    return a.map_hash == b.map_hash && a.seed == b.seed &&
           a.requested == b.requested && a.landmarks == b.landmarks &&
           a.dist == b.dist;
  }
};

namespace detail {

// Seeded partial Fisher-Yates over `pool`; modulo draws keep the result
// identical across standard libraries (std::shuffle is not portable).
inline std::vector<NodeId> sample_nodes(std::vector<NodeId> pool,
                                        std::size_t count,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  count = std::min(count, pool.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace detail

// Landmarks are border nodes (degree < 8) on grids — obstacle and map edges
// — and arbitrary nodes on non-grid graphs.  When fewer nodes are eligible
// than asked for, all of them are used and `requested` records the gap.
inline LandmarkTable select_landmarks(const GridGraph& graph,
                                      std::size_t count, std::uint64_t seed) {
  LandmarkTable table;
  table.map_hash = graph.content_hash();
  table.seed = seed;
  table.requested = count;
  std::vector<NodeId> eligible;
  for (NodeId u = 0; u < graph.node_count(); ++u)
    if (!graph.is_grid() || graph.degree(u) < 8) eligible.push_back(u);
  table.landmarks = detail::sample_nodes(std::move(eligible), count, seed);
  table.dist.reserve(table.landmarks.size());
  for (NodeId lm : table.landmarks)
    table.dist.push_back(dijkstra(graph, lm).dist);
  return table;
}

// max_L |d(L,a) - d(L,b)|, maxed with octile on grids.  Landmarks that do not
// reach both endpoints contribute nothing (the difference bound needs both
// distances finite).  Empty tables fall back to octile, or zero off-grid.
inline Cost alt_between(const GridGraph& graph, const LandmarkTable& table,
                        NodeId a, NodeId b) {
  Cost best = graph.is_grid() ? octile_between(graph, a, b) : 0;
  for (const auto& row : table.dist) {
    Cost da = row[a], db = row[b];
    if (da >= kInfCost || db >= kInfCost) continue;
    best = std::max(best, da > db ? da - db : db - da);
  }
  return best;
}

// Per-instance heuristic facade.  Estimates are unweighted internally; the
// weight applies where searches consume them (h_to_set / h_to).  Copies are
// cheap and share the underlying tables, so a solver can rerun with another
// weight without rebuilding anything.
class HeuristicProvider {
 public:
  static HeuristicProvider zero() {
    return HeuristicProvider(HeuristicKind::Zero, nullptr);
  }
  static HeuristicProvider octile(const GridGraph& graph) {
    if (!graph.is_grid())
      throw std::logic_error("octile heuristic requires a grid graph");
    return HeuristicProvider(HeuristicKind::Octile, &graph);
  }
  // True distances from each terminal (rows only for terminals).
  static HeuristicProvider exact(const GridGraph& graph,
                                 std::span<const NodeId> terminals) {
    HeuristicProvider p(HeuristicKind::Exact, &graph);
    auto rows = std::make_shared<std::vector<std::pair<NodeId, std::vector<Cost>>>>();
    std::vector<NodeId> sorted(terminals.begin(), terminals.end());
    std::sort(sorted.begin(), sorted.end());
    for (NodeId t : sorted) rows->push_back({t, dijkstra(graph, t).dist});
    p.exact_rows_ = std::move(rows);
    return p;
  }
  static HeuristicProvider alt(const GridGraph& graph,
                               std::shared_ptr<const LandmarkTable> table) {
    HeuristicProvider p(HeuristicKind::Alt, &graph);
    p.alt_table_ = std::move(table);
    return p;
  }

  HeuristicProvider with_weight(Weight w) const {
    HeuristicProvider p = *this;
    p.weight_ = w;
    return p;
  }

  HeuristicKind kind() const { return kind_; }
  Weight weight() const { return weight_; }

  // Unweighted estimate of cost*(u, t).
  Cost estimate(NodeId u, NodeId t) const {
    if (u == t) return 0;
    switch (kind_) {
      case HeuristicKind::Zero:
        return 0;
      case HeuristicKind::Octile:
        return octile_between(*graph_, u, t);
      case HeuristicKind::Exact: {
        auto it = std::lower_bound(
            exact_rows_->begin(), exact_rows_->end(), t,
            [](const auto& row, NodeId id) { return row.first < id; });
        if (it == exact_rows_->end() || it->first != t)
          throw std::logic_error("exact heuristic queried for a non-terminal");
        return it->second[u];
      }
      case HeuristicKind::Alt:
        return alt_between(*graph_, *alt_table_, u, t);
    }
    return 0;
  }

  // Weighted point-to-point estimate.
  Cost h_to(NodeId u, NodeId t) const { return weight_.scale(estimate(u, t)); }

  // Weighted min over a destination set; 0 when the set is empty.
  Cost h_to_set(NodeId u, std::span<const NodeId> dests) const {
    if (dests.empty()) return 0;
    Cost best = kInfCost;
    for (NodeId t : dests) {
      Cost e = estimate(u, t);
      if (e < best) best = e;
      if (best == 0) break;
    }
    return weight_.scale(best);
  }

 private:
  HeuristicProvider(HeuristicKind kind, const GridGraph* graph)
      : kind_(kind), graph_(graph) {}

  HeuristicKind kind_;
  const GridGraph* graph_;
  Weight weight_{};
  std::shared_ptr<const std::vector<std::pair<NodeId, std::vector<Cost>>>> exact_rows_;
  std::shared_ptr<const LandmarkTable> alt_table_;
};

}  // namespace mgpf
