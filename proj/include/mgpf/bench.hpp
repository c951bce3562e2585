#pragma once

/* Benchmark harness: deterministic instance generation, builtin synthetic
 * maps, the solver matrix runner, and CSV emission.
 *
 * Instance seeds derive from (suite seed, map, N, instance index) only, so
 * every solver/weight/flag cell of one instance sees identical terminals.
 * Runs may execute on a worker pool; results are written back by index and
 * emitted in configuration order, so the CSV is reproducible (byte-identical
 * when timing capture is disabled).
 */

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "baseline_kruskal.hpp"
#include "dijkstra.hpp"
#include "grid_graph.hpp"
#include "heuristic.hpp"
#include "instance.hpp"
#include "landmark_cache.hpp"
#include "pipeline.hpp"
#include "steiner_solvers.hpp"
#include "types.hpp"

namespace mgpf {

// Terminals are sampled uniformly without replacement from the largest
// connected component; the first draw is the origin, the second the
// destination.  The seed fully determines placement.
inline Instance generate_instance(const GridGraph& graph, int n,
                                  std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("instance needs at least 2 terminals");
  auto components = connected_components(graph);
  if (components.empty())
    throw std::invalid_argument("graph has no nodes");
  const std::vector<NodeId>& pool = components.front();
  if (static_cast<std::size_t>(n) > pool.size())
    throw std::invalid_argument(
        "largest connected component has fewer nodes than terminals");
  std::vector<NodeId> picked =
      detail::sample_nodes(pool, static_cast<std::size_t>(n), seed);
  // sample_nodes sorts its result; re-shuffle roles deterministically so the
  // origin/destination are not biased toward small ids.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (std::size_t i = 0; i + 1 < picked.size(); ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (picked.size() - i));
    std::swap(picked[i], picked[j]);
  }
  return Instance::make(picked[0], picked[1],
                        {picked.begin() + 2, picked.end()});
}

// ---- builtin synthetic maps -------------------------------------------------

inline GridGraph make_open_map(int width, int height) {
  return GridGraph::from_cells(
      width, height,
      std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 1));
}

// Fixed-seed random obstacles (about `percent`% blocked).  Instance
// generation restricts itself to the largest component, so stray pockets are
// harmless.
inline GridGraph make_random_map(int width, int height, int percent,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 1);
  for (auto& c : cells)
    c = (rng() % 100) < static_cast<std::uint64_t>(percent) ? 0 : 1;
  return GridGraph::from_cells(width, height, std::move(cells));
}

// Depth-first spanning maze carved on the odd lattice; connected by
// construction.
inline GridGraph make_maze_map(int width, int height, std::uint64_t seed) {
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 0);
  auto at = [&](int r, int c) -> std::uint8_t& {
    return cells[static_cast<std::size_t>(r) * width + c];
  };
  int rows = (height - 1) / 2, cols = (width - 1) / 2;
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(rows) * cols, 0);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  visited[0] = 1;
  at(1, 1) = 1;
  const int dr[4] = {-1, 1, 0, 0};
  const int dc[4] = {0, 0, -1, 1};
  while (!stack.empty()) {
    auto [r, c] = stack.back();
    int dirs[4] = {0, 1, 2, 3};
    for (int i = 3; i > 0; --i)
      std::swap(dirs[i], dirs[rng() % static_cast<std::uint64_t>(i + 1)]);
    bool moved = false;
    for (int k = 0; k < 4 && !moved; ++k) {
      int nr = r + dr[dirs[k]], nc = c + dc[dirs[k]];
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      if (visited[static_cast<std::size_t>(nr) * cols + nc]) continue;
      visited[static_cast<std::size_t>(nr) * cols + nc] = 1;
      at(1 + 2 * nr, 1 + 2 * nc) = 1;
      at(1 + r + nr, 1 + c + nc) = 1;  // passage cell between lattice nodes
      stack.push_back({nr, nc});
      moved = true;
    }
    if (!moved) stack.pop_back();
  }
  return GridGraph::from_cells(width, height, std::move(cells));
}

// Map specs: a filesystem path, or "builtin:<name>" with name one of
// open-32, maze-32, random-32, random-64.
inline GridGraph load_map_spec(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8);
    if (name == "open-32") return make_open_map(32, 32);
    if (name == "maze-32") return make_maze_map(32, 32, 7);
    if (name == "random-32") return make_random_map(32, 32, 20, 11);
    if (name == "random-64") return make_random_map(64, 64, 20, 13);
    throw std::invalid_argument("unknown builtin map: " + name);
  }
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open map: " + spec);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

// ---- fixtures ---------------------------------------------------------------

struct Fixture {
  GridGraph graph;
  Instance instance;
};

// Hand-built scenarios used by regression tests:
//   line-5            five-node unit path, terminals {a, c, e}
//   appendix-weak-h   obstacle grid where octile misleads both frontiers into
//                     dead-end corridors (strong-heuristic rules suffer)
//   appendix-strong-h open grid where a goal-directed search beats
//                     radius-balanced growth
inline Fixture load_fixture(const std::string& name) {
  if (name == "line-5") {
    GridGraph g = parse_edge_list(
        "nodes 5\n0 1 1000\n1 2 1000\n2 3 1000\n3 4 1000\n");
    return Fixture{std::move(g), Instance::make(0, 4, {2})};
  }
  if (name == "appendix-weak-h") {
    // Two dead-end corridors aimed at each other through the center wall;
    // octile points straight down them (constant f), so a frontier-f rule
    // walks both to the end while the true route climbs around the top.
    std::string map =
        "type octile\n"
        "height 4\n"
        "width 17\n"
        "map\n"
        ".................\n"
        ".................\n"
        ".@@@@@@@@@@@@@@@.\n"
        "........@........\n";
    GridGraph g = parse_map(map);
    Instance inst = Instance::make(g.node_at(3, 1), g.node_at(3, 15), {});
    return Fixture{std::move(g), inst};
  }
  if (name == "appendix-strong-h") {
    GridGraph g = make_open_map(14, 14);
    Instance inst = Instance::make(g.node_at(1, 1), g.node_at(12, 12), {});
    return Fixture{std::move(g), inst};
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

// ---- run matrix -------------------------------------------------------------

inline const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"unmerged", "hs", "bs", "mm",
                                              "kruskal"};
  return names;
}

struct BenchConfig {
  std::vector<std::string> maps{"builtin:open-32", "builtin:maze-32",
                                "builtin:random-32"};
  std::vector<int> n_list{10, 20, 30, 40, 50};
  std::vector<Fraction> w_list{{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}};
  std::vector<std::string> solvers = solver_names();
  std::vector<bool> reprio_list{false};
  int instances = 10;
  std::uint64_t seed = 1;
  std::size_t landmark_count = 100;
  std::string heuristic = "auto";  // auto | zero | octile | exact | alt
  bool no_timing = false;
  bool bs_nominate_by_g = false;
  bool use_landmark_cache = true;
  int jobs = 1;
};

struct RunRecord {
  std::string map;
  std::string solver;
  std::string criterion;  // hs/bs/mm for merged runs, empty otherwise
  int n = 0;
  Fraction w{0, 1};
  bool reprioritize = false;
  std::uint64_t seed = 0;
  std::uint64_t expanded = 0;
  double time_ms = 0.0;
  Cost tree_path_total = 0;
  Cost tree_edge_cost = 0;
  Cost path_cost = 0;
  Fraction ratio{0, 1};
  std::string error;
};

inline constexpr const char* kCsvHeader =
    "map,solver,criterion,N,w,reprioritize,seed,expanded,time_ms,"
    "tree_path_total,tree_edge_cost,path_cost,ratio,error";

inline std::string csv_row(const RunRecord& r) {
  std::string error = r.error;
  for (char& c : error)
    if (c == ',' || c == '\n') c = ';';
  char time_buf[32];
  std::snprintf(time_buf, sizeof(time_buf), "%.3f", r.time_ms);
  std::ostringstream out;
  out << r.map << ',' << r.solver << ',' << r.criterion << ',' << r.n << ','
      << r.w.to_string() << ',' << (r.reprioritize ? 1 : 0) << ',' << r.seed
      << ',' << r.expanded << ',' << time_buf << ',' << r.tree_path_total
      << ',' << r.tree_edge_cost << ',' << r.path_cost << ','
      << (r.error.empty() ? r.ratio.to_string() : std::string()) << ','
      << error;
  return out.str();
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t instance_seed(std::uint64_t suite_seed,
                                   const std::string& map, int n, int index) {
  std::uint64_t h = splitmix64(suite_seed);
  for (char c : map) h = splitmix64(h ^ static_cast<unsigned char>(c));
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = splitmix64(h ^ static_cast<std::uint64_t>(index));
  return h;
}

}  // namespace detail

// Resolves the provider for one run.  "auto" uses exact distances on desk
// scale maps (dimensions up to 64) and landmark lower bounds beyond that.
inline HeuristicProvider resolve_provider(
    const GridGraph& graph, const Instance& inst, const std::string& kind,
    Fraction w, std::shared_ptr<const LandmarkTable> alt_table) {
  std::string k = kind;
  if (k == "auto") {
    bool small = graph.is_grid()
                     ? graph.width() <= 64 && graph.height() <= 64
                     : graph.node_count() <= 64 * 64;
    k = small ? "exact" : "alt";
  }
  HeuristicProvider p = HeuristicProvider::zero();
  if (k == "zero")
    p = HeuristicProvider::zero();
  else if (k == "octile")
    p = HeuristicProvider::octile(graph);
  else if (k == "exact") {
    auto terminals = inst.terminals();
    p = HeuristicProvider::exact(graph, terminals);
  } else if (k == "alt") {
    if (!alt_table)
      throw std::invalid_argument("alt heuristic requested without landmarks");
    p = HeuristicProvider::alt(graph, std::move(alt_table));
  } else {
    throw std::invalid_argument("unknown heuristic kind: " + kind);
  }
  return p.with_weight(Weight::of(w));
}

// One solver cell.  Failures land in `error`; the suite keeps going.
inline RunRecord run_single(const GridGraph& graph, const std::string& map_name,
                            const Instance& inst, const std::string& solver,
                            Fraction w, bool reprioritize, std::uint64_t seed,
                            const std::string& heuristic_kind,
                            std::shared_ptr<const LandmarkTable> alt_table,
                            bool no_timing, bool bs_nominate_by_g = false) {
  RunRecord rec;
  rec.map = map_name;
  rec.solver = solver;
  rec.n = static_cast<int>(inst.terminals().size());
  rec.w = w;
  rec.reprioritize = reprioritize;
  rec.seed = seed;
  if (solver != "unmerged" && solver != "kruskal") rec.criterion = solver;
  try {
    auto start = std::chrono::steady_clock::now();
    SolveResult result = [&] {
      if (solver == "kruskal") return solve_kruskal(graph, inst);
      HeuristicProvider provider =
          resolve_provider(graph, inst, heuristic_kind, w, alt_table);
      SolveOptions opts;
      opts.reprioritize = reprioritize;
      opts.bs_nominate_by_g = bs_nominate_by_g;
      if (solver == "unmerged") return solve_unmerged(graph, inst, provider, opts);
      if (solver == "hs")
        return solve_merged(graph, inst, provider, Criterion::HS, opts);
      if (solver == "bs")
        return solve_merged(graph, inst, provider, Criterion::BS, opts);
      if (solver == "mm")
        return solve_merged(graph, inst, provider, Criterion::MM, opts);
      throw std::invalid_argument("unknown solver: " + solver);
    }();
    MgpfSolution sol = tree_to_walk(graph, result.forest, inst);
    auto stop = std::chrono::steady_clock::now();
    if (auto [ok, bad] = validate_solution(graph, inst, sol); !ok)
      throw std::logic_error("invalid solution: " + bad.front());
    rec.expanded = result.stats.expanded;
    rec.time_ms =
        no_timing ? 0.0
                  : std::chrono::duration<double, std::milli>(stop - start)
                        .count();
    rec.tree_path_total = sol.tree_path_total;
    rec.tree_edge_cost = sol.tree_edge_cost;
    rec.path_cost = sol.cost;
    rec.ratio = sol.ratio;
  } catch (const std::exception& ex) {
    rec.error = ex.what();
  }
  return rec;
}

struct SuiteResult {
  std::vector<RunRecord> records;  // configuration order
  std::string csv;                 // header + one row per record
};

// Expands the full configuration matrix, runs it (optionally on a worker
// pool), and renders the CSV in configuration order.
inline SuiteResult run_suite(const BenchConfig& config) {
  struct Task {
    const GridGraph* graph;
    std::shared_ptr<const LandmarkTable> alt;
    std::string map;
    std::shared_ptr<const Instance> inst;
    std::string solver;
    Fraction w;
    bool reprio;
    std::uint64_t seed;
  };
  std::vector<std::unique_ptr<GridGraph>> graphs;
  std::vector<Task> tasks;
  for (const std::string& map : config.maps) {
    graphs.push_back(std::make_unique<GridGraph>(load_map_spec(map)));
    const GridGraph& graph = *graphs.back();
    std::shared_ptr<const LandmarkTable> alt;
    bool wants_alt =
        config.heuristic == "alt" ||
        (config.heuristic == "auto" && graph.is_grid() &&
         (graph.width() > 64 || graph.height() > 64)) ||
        (config.heuristic == "auto" && !graph.is_grid() &&
         graph.node_count() > 64 * 64);
    if (wants_alt) {
      std::string path_hint = map.rfind("builtin:", 0) == 0 ? "" : map;
      alt = std::make_shared<LandmarkTable>(
          config.use_landmark_cache
              ? load_or_build_landmarks(graph, config.landmark_count,
                                        config.seed, path_hint)
              : select_landmarks(graph, config.landmark_count, config.seed));
    }
    for (int n : config.n_list) {
      for (int idx = 0; idx < config.instances; ++idx) {
        std::uint64_t seed = detail::instance_seed(config.seed, map, n, idx);
        auto inst = std::make_shared<const Instance>(
            generate_instance(graph, n, seed));
        for (const Fraction& w : config.w_list)
          for (const std::string& solver : config.solvers)
            for (bool reprio : config.reprio_list)
              tasks.push_back(Task{&graph, alt, map, inst, solver, w, reprio,
                                   seed});
      }
    }
  }
  std::vector<RunRecord> records(tasks.size());
  auto worker_body = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i = next.fetch_add(1); i < tasks.size();
         i = next.fetch_add(1)) {
      const Task& t = tasks[i];
      records[i] = run_single(*t.graph, t.map, *t.inst, t.solver, t.w,
                              t.reprio, t.seed, config.heuristic, t.alt,
                              config.no_timing, config.bs_nominate_by_g);
    }
  };
  std::atomic<std::size_t> next{0};
  int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker_body(next);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] { worker_body(next); });
    for (std::thread& th : pool) th.join();
  }
  SuiteResult out;
  out.records = std::move(records);
  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  for (const RunRecord& r : out.records) csv << csv_row(r) << '\n';
  out.csv = csv.str();
  return out;
}

// Per-cell means over instances, keyed (map, solver, N, w, reprioritize).
struct SummaryCell {
  std::string map, solver;
  int n = 0;
  Fraction w{0, 1};
  bool reprioritize = false;
  double mean_expanded = 0.0;
  double mean_time_ms = 0.0;
  int runs = 0;
  int errors = 0;
};

inline std::vector<SummaryCell> summarize(const std::vector<RunRecord>& records) {
  std::map<std::tuple<std::string, std::string, int, std::int64_t, std::int64_t, bool>,
           SummaryCell>
      cells;
  for (const RunRecord& r : records) {
    auto key = std::make_tuple(r.map, r.solver, r.n, r.w.num, r.w.den,
                               r.reprioritize);
    SummaryCell& cell = cells[key];
    if (cell.runs == 0) {
      cell.map = r.map;
      cell.solver = r.solver;
      cell.n = r.n;
      cell.w = r.w;
      cell.reprioritize = r.reprioritize;
    }
    ++cell.runs;
    if (!r.error.empty()) {
      ++cell.errors;
      continue;
    }
    cell.mean_expanded += static_cast<double>(r.expanded);
    cell.mean_time_ms += r.time_ms;
  }
  std::vector<SummaryCell> out;
  for (auto& [key, cell] : cells) {
    int ok = cell.runs - cell.errors;
    if (ok > 0) {
      cell.mean_expanded /= ok;
      cell.mean_time_ms /= ok;
    }
    out.push_back(cell);
  }
  return out;
}

// Text table per (map, N, reprioritize): solver rows, one column per weight,
// cells "mean expanded (mean ms)".
inline std::string summary_table(const std::vector<SummaryCell>& cells) {
  std::map<std::tuple<std::string, int, bool>,
           std::map<std::string, std::map<std::string, const SummaryCell*>>>
      blocks;
  std::vector<std::string> weights;
  for (const SummaryCell& c : cells) {
    blocks[{c.map, c.n, c.reprioritize}][c.solver][c.w.to_string()] = &c;
    if (std::find(weights.begin(), weights.end(), c.w.to_string()) ==
        weights.end())
      weights.push_back(c.w.to_string());
  }
  std::ostringstream out;
  for (const auto& [key, solvers] : blocks) {
    const auto& [map, n, reprio] = key;
    out << "== " << map << "  N=" << n << "  reprioritize=" << (reprio ? 1 : 0)
        << "  (mean expanded / mean ms)\n";
    out << "  solver";
    for (const std::string& w : weights) out << "\tw=" << w;
    out << '\n';
    for (const std::string& solver : solver_names()) {
      auto it = solvers.find(solver);
      if (it == solvers.end()) continue;
      out << "  " << solver;
      for (const std::string& w : weights) {
        auto cw = it->second.find(w);
        if (cw == it->second.end()) {
          out << "\t-";
          continue;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "\t%.1f/%.2f",
                      cw->second->mean_expanded, cw->second->mean_time_ms);
        out << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

// Aggregate CSV used by the plotting flags (expanded vs N / vs w).
inline std::string summary_csv(const std::vector<SummaryCell>& cells) {
  std::ostringstream out;
  out << "map,solver,N,w,reprioritize,mean_expanded,mean_time_ms,runs,errors\n";
  for (const SummaryCell& c : cells) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f,%.3f", c.mean_expanded,
                  c.mean_time_ms);
    out << c.map << ',' << c.solver << ',' << c.n << ',' << c.w.to_string()
        << ',' << (c.reprioritize ? 1 : 0) << ',' << buf << ',' << c.runs
        << ',' << c.errors << '\n';
  }
  return out.str();
}

}  // namespace mgpf
