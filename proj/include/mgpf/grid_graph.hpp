#pragma once

/* Graph model: 8-connected uniform-cost grids parsed from MAPF-style .map
 * text, plus an explicit edge-list format for non-grid fixtures.
 *
 * Node ids are dense and assigned row-major over passable cells, so a parsed
 * map always yields the same ids.  Adjacency is CSR with each node's edges
 * sorted by neighbor id; all downstream iteration order derives from that.
 */

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace mgpf {

struct Edge {
  NodeId to = kNoNode;
  Cost cost = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class GridGraph {
 public:
  GridGraph() = default;

  bool is_grid() const { return width_ > 0; }
  int width() const { return width_; }
  int height() const { return height_; }
  NodeId node_count() const { return static_cast<NodeId>(offsets_.size()) - 1; }
  std::size_t edge_count() const { return edges_.size() / 2; }  // undirected

  // Grid accessors; only meaningful when is_grid().
  bool passable(int row, int col) const {
    return row >= 0 && row < height_ && col >= 0 && col < width_ &&
           passable_[static_cast<std::size_t>(row) * width_ + col];
  }
  NodeId node_at(int row, int col) const {
    if (!passable(row, col)) return kNoNode;
    return cell_node_[static_cast<std::size_t>(row) * width_ + col];
  }
  int row_of(NodeId n) const { return node_cell_[n] / width_; }
  int col_of(NodeId n) const { return node_cell_[n] % width_; }

  std::size_t degree(NodeId n) const { return offsets_[n + 1] - offsets_[n]; }

  // Neighbors of n, sorted by neighbor id.
  const Edge* adj_begin(NodeId n) const { return edges_.data() + offsets_[n]; }
  const Edge* adj_end(NodeId n) const { return edges_.data() + offsets_[n + 1]; }

  // Cost of undirected edge (a,b); kInfCost if absent.
  Cost edge_cost(NodeId a, NodeId b) const {
    const Edge* lo = adj_begin(a);
    const Edge* hi = adj_end(a);
    const Edge* it = std::lower_bound(
        lo, hi, b, [](const Edge& e, NodeId id) { return e.to < id; });
    if (it != hi && it->to == b) return it->cost;
    return kInfCost;
  }

  Cost min_edge_cost() const { return min_edge_cost_; }

  friend bool operator==(const GridGraph& a, const GridGraph& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.passable_ == b.passable_ && a.offsets_ == b.offsets_ &&
           a.edges_ == b.edges_;
  }

  // FNV-1a over the structural content; used to key landmark cache files.
  std::uint64_t content_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    mix(static_cast<std::uint64_t>(width_));
    mix(static_cast<std::uint64_t>(height_));
    for (std::uint8_t p : passable_) mix(p);
    if (!is_grid()) {
      for (std::size_t o : offsets_) mix(o);
      for (const Edge& e : edges_) {
        mix(static_cast<std::uint64_t>(e.to));
        mix(static_cast<std::uint64_t>(e.cost));
      }
    }
    return h;
  }

  // Grid-only: emit canonical map text ('.' passable, '@' blocked).
  std::string to_map_text() const {
    if (!is_grid())
      throw std::logic_error("to_map_text: graph has no grid layout");
    std::ostringstream out;
    out << "type octile\nheight " << height_ << "\nwidth " << width_
        << "\nmap\n";
    for (int r = 0; r < height_; ++r) {
      for (int c = 0; c < width_; ++c)
        out << (passable_[static_cast<std::size_t>(r) * width_ + c] ? '.'
                                                                    : '@');
      out << '\n';
    }
    return out.str();
  }

  static GridGraph from_cells(int width, int height,
                              std::vector<std::uint8_t> passable);
  static GridGraph from_edges(NodeId node_count,
                              std::vector<std::pair<std::pair<NodeId, NodeId>, Cost>> edges);

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> passable_;   // grid cells, row-major
  std::vector<NodeId> cell_node_;        // cell -> node id or kNoNode
  std::vector<std::int32_t> node_cell_;  // node id -> cell index
  std::vector<std::size_t> offsets_;     // CSR, size node_count + 1
  std::vector<Edge> edges_;
  Cost min_edge_cost_ = kInfCost;
};

inline GridGraph GridGraph::from_cells(int width, int height,
                                       std::vector<std::uint8_t> passable) {
  GridGraph g;
  g.width_ = width;
  g.height_ = height;
  g.passable_ = std::move(passable);
  g.cell_node_.assign(g.passable_.size(), kNoNode);
  for (std::size_t cell = 0; cell < g.passable_.size(); ++cell) {
    if (g.passable_[cell]) {
      g.cell_node_[cell] = static_cast<NodeId>(g.node_cell_.size());
      g.node_cell_.push_back(static_cast<std::int32_t>(cell));
    }
  }
  const NodeId n = static_cast<NodeId>(g.node_cell_.size());
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  // Two passes: count then fill, neighbors visited in row-major order which
  // is ascending node id, so each CSR slice comes out sorted.
  auto for_each_neighbor = [&](NodeId u, auto&& fn) {
    int r = g.row_of(u), c = g.col_of(u);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        int nr = r + dr, nc = c + dc;
        if (!g.passable(nr, nc)) continue;
        if (dr != 0 && dc != 0) {
          // No corner cutting: a diagonal move needs both shared cardinal
          // cells passable.
          if (!g.passable(r, nc) || !g.passable(nr, c)) continue;
          fn(g.node_at(nr, nc), kDiagonalCost);
        } else {
          fn(g.node_at(nr, nc), kCardinalCost);
        }
      }
    }
  };
  for (NodeId u = 0; u < n; ++u) {
    std::size_t deg = 0;
    for_each_neighbor(u, [&](NodeId, Cost) { ++deg; });
    g.offsets_[u + 1] = g.offsets_[u] + deg;
  }
  g.edges_.resize(g.offsets_[n]);
  for (NodeId u = 0; u < n; ++u) {
    std::size_t at = g.offsets_[u];
    for_each_neighbor(u, [&](NodeId v, Cost c) {
      g.edges_[at++] = Edge{v, c};
      g.min_edge_cost_ = std::min(g.min_edge_cost_, c);
    });
    std::sort(g.edges_.begin() + g.offsets_[u], g.edges_.begin() + at,
              [](const Edge& a, const Edge& b) { return a.to < b.to; });
  }
  return g;
}

inline GridGraph GridGraph::from_edges(
    NodeId node_count,
    std::vector<std::pair<std::pair<NodeId, NodeId>, Cost>> edges) {
  GridGraph g;
  std::vector<std::vector<Edge>> adj(node_count);
  for (const auto& [uv, c] : edges) {
    adj[uv.first].push_back(Edge{uv.second, c});
    adj[uv.second].push_back(Edge{uv.first, c});
  }
  g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (NodeId u = 0; u < node_count; ++u) {
    auto& a = adj[u];
    std::sort(a.begin(), a.end(), [](const Edge& x, const Edge& y) {
      return x.to != y.to ? x.to < y.to : x.cost < y.cost;
    });
    // Parallel edges collapse to the cheapest copy.
    a.erase(std::unique(a.begin(), a.end(),
                        [](const Edge& x, const Edge& y) { return x.to == y.to; }),
            a.end());
    g.offsets_[u + 1] = g.offsets_[u] + a.size();
  }
  g.edges_.reserve(g.offsets_[node_count]);
  for (NodeId u = 0; u < node_count; ++u)
    for (const Edge& e : adj[u]) {
      g.edges_.push_back(e);
      g.min_edge_cost_ = std::min(g.min_edge_cost_, e.cost);
    }
  return g;
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace detail

// MAPF .map layout: "type octile", "height H", "width W", "map", then H rows
// of W characters.  '.' and 'G' are passable; '@', 'O', 'T', 'W' blocked.
inline GridGraph parse_map(const std::string& text) {
  auto lines = detail::split_lines(text);
  auto fail = [](const std::string& what, std::size_t idx) -> int {
    throw ParseError(what, static_cast<int>(idx) + 1);
  };
  if (lines.empty()) fail("empty map text", 0);
  if (lines[0] != "type octile") fail("expected 'type octile'", 0);
  int height = -1, width = -1;
  std::size_t i = 1;
  // height and width may appear in either order.
  for (; i < lines.size() && i <= 2; ++i) {
    std::istringstream in(lines[i]);
    std::string key;
    int value = -1;
    if (!(in >> key >> value) || value < 0)
      fail("expected 'height H' or 'width W'", i);
    if (key == "height" && height < 0)
      height = value;
    else if (key == "width" && width < 0)
      width = value;
    else
      fail("expected 'height H' or 'width W'", i);
  }
  if (height < 0 || width < 0) fail("missing height/width header", i);
  if (i >= lines.size() || lines[i] != "map") fail("expected 'map'", i);
  ++i;
  if (lines.size() - i < static_cast<std::size_t>(height))
    fail("map body has fewer rows than declared height", lines.size());
  std::vector<std::uint8_t> passable(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r, ++i) {
    const std::string& row = lines[i];
    if (row.size() != static_cast<std::size_t>(width))
      fail("row length does not match declared width", i);
    for (int c = 0; c < width; ++c) {
      char ch = row[c];
      if (ch == '.' || ch == 'G')
        passable[static_cast<std::size_t>(r) * width + c] = 1;
      else if (ch == '@' || ch == 'O' || ch == 'T' || ch == 'W')
        passable[static_cast<std::size_t>(r) * width + c] = 0;
      else
        fail(std::string("unknown map character '") + ch + "'", i);
    }
  }
  return GridGraph::from_cells(width, height, std::move(passable));
}

// Edge-list format: header "nodes N", then "u v cost" per line.  Undirected;
// blank lines and '#' comments allowed.
inline GridGraph parse_edge_list(const std::string& text) {
  auto lines = detail::split_lines(text);
  auto fail = [](const std::string& what, std::size_t idx) -> int {
    throw ParseError(what, static_cast<int>(idx) + 1);
  };
  std::size_t i = 0;
  while (i < lines.size() && (lines[i].empty() || lines[i][0] == '#')) ++i;
  if (i >= lines.size()) fail("missing 'nodes N' header", 0);
  NodeId n = -1;
  {
    std::istringstream in(lines[i]);
    std::string key;
    if (!(in >> key >> n) || key != "nodes" || n < 0)
      fail("expected 'nodes N'", i);
  }
  std::vector<std::pair<std::pair<NodeId, NodeId>, Cost>> edges;
  for (++i; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i][0] == '#') continue;
    std::istringstream in(lines[i]);
    NodeId u, v;
    Cost c;
    if (!(in >> u >> v >> c)) fail("expected 'u v cost'", i);
    if (u < 0 || u >= n || v < 0 || v >= n) fail("node id out of range", i);
    if (u == v) fail("self loop", i);
    if (c < 0) fail("negative edge cost", i);
    edges.push_back({{u, v}, c});
  }
  return GridGraph::from_edges(n, std::move(edges));
}

// Sniffs the two text formats by their headers.
inline GridGraph parse_graph(const std::string& text) {
  auto lines = detail::split_lines(text);
  for (const std::string& line : lines) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("type", 0) == 0) return parse_map(text);
    break;
  }
  return parse_edge_list(text);
}

}  // namespace mgpf
