// Command line front end: solve one instance, run the benchmark matrix,
// manage landmark tables, or verify a solution file.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgpf/bench.hpp"

namespace {

using nlohmann::ordered_json;

mgpf::GridGraph load_graph_arg(const std::string& spec) {
  return mgpf::load_map_spec(spec);
}

mgpf::Instance resolve_instance(const mgpf::GridGraph& graph,
                                const std::string& fixture, int origin,
                                int dest, const std::vector<int>& goals, int n,
                                std::uint64_t seed) {
  if (!fixture.empty()) return mgpf::load_fixture(fixture).instance;
  if (origin >= 0 && dest >= 0) {
    std::vector<mgpf::NodeId> g(goals.begin(), goals.end());
    return mgpf::Instance::make(origin, dest, g);
  }
  if (n >= 2) return mgpf::generate_instance(graph, n, seed);
  throw CLI::ValidationError(
      "instance", "give --origin/--dest (and --goal), or --n with --seed");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_solve(const std::string& map_spec, const std::string& fixture,
              int origin, int dest, const std::vector<int>& goals, int n,
              std::uint64_t seed, const std::string& solver,
              const std::string& w_text, const std::string& heuristic,
              bool reprioritize, bool bs_by_g, std::size_t landmark_count,
              const std::string& out_path, bool as_json, bool trace) {
  mgpf::GridGraph graph = fixture.empty() ? load_graph_arg(map_spec)
                                          : mgpf::load_fixture(fixture).graph;
  mgpf::Instance inst =
      resolve_instance(graph, fixture, origin, dest, goals, n, seed);
  mgpf::validate_instance(graph, inst);
  mgpf::Fraction w = mgpf::Fraction::parse(w_text);

  std::shared_ptr<const mgpf::LandmarkTable> alt;
  bool wants_alt = heuristic == "alt" ||
                   (heuristic == "auto" && graph.is_grid() &&
                    (graph.width() > 64 || graph.height() > 64));
  if (wants_alt) {
    std::string hint = map_spec.rfind("builtin:", 0) == 0 ? "" : map_spec;
    alt = std::make_shared<mgpf::LandmarkTable>(
        mgpf::load_or_build_landmarks(graph, landmark_count, seed, hint));
  }

  mgpf::SolveOptions opts;
  opts.reprioritize = reprioritize;
  opts.bs_nominate_by_g = bs_by_g;
  if (trace)
    opts.trace = [](const mgpf::TraceEvent& ev) {
      std::cerr << "step " << ev.step << " comp " << ev.component << " node "
                << ev.node << " g " << ev.g << " f " << ev.f << '\n';
    };

  mgpf::SolveResult result = [&] {
    if (solver == "kruskal") return mgpf::solve_kruskal(graph, inst);
    mgpf::HeuristicProvider provider =
        mgpf::resolve_provider(graph, inst, heuristic, w, alt);
    if (solver == "unmerged")
      return mgpf::solve_unmerged(graph, inst, provider, opts);
    if (solver == "hs")
      return mgpf::solve_merged(graph, inst, provider, mgpf::Criterion::HS, opts);
    if (solver == "bs")
      return mgpf::solve_merged(graph, inst, provider, mgpf::Criterion::BS, opts);
    if (solver == "mm")
      return mgpf::solve_merged(graph, inst, provider, mgpf::Criterion::MM, opts);
    throw CLI::ValidationError("--solver", "unknown solver: " + solver);
  }();
  mgpf::MgpfSolution sol = mgpf::tree_to_walk(graph, result.forest, inst);
  auto [ok, violations] = mgpf::validate_solution(graph, inst, sol);
  if (!ok) {
    for (const std::string& v : violations)
      std::cerr << "violation: " << v << '\n';
    return 2;
  }

  if (as_json) {
    ordered_json j;
    j["solver"] = solver;
    j["w"] = w.to_string();
    j["origin"] = inst.origin;
    j["dest"] = inst.dest;
    j["goals"] = inst.goals;
    j["expanded"] = result.stats.expanded;
    j["iterations"] = result.stats.iterations;
    j["tree_path_total"] = sol.tree_path_total;
    j["tree_edge_cost"] = sol.tree_edge_cost;
    j["cost"] = sol.cost;
    j["ratio"] = sol.ratio.to_string();
    j["walk"] = sol.walk;
    write_text(out_path, j.dump(2) + "\n");
  } else {
    std::ostringstream head;
    head << "# solver=" << solver << " w=" << w.to_string()
         << " expanded=" << result.stats.expanded << '\n';
    write_text(out_path, head.str() + mgpf::solution_to_text(sol));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heuristic Steiner-tree search for multi-goal path finding"};
  app.require_subcommand(1);

  // --- solve ---
  std::string map_spec = "builtin:open-32", fixture;
  int origin = -1, dest = -1, n = 0;
  std::vector<int> goals;
  std::uint64_t seed = 1;
  std::string solver = "mm", w_text = "1", heuristic = "auto", out_path = "-";
  bool reprioritize = false, bs_by_g = false, as_json = false, trace = false;
  std::size_t landmark_count = 100;
  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("--map", map_spec, "map file or builtin:<name>");
  solve->add_option("--fixture", fixture,
                    "use a named fixture instead of --map/--origin");
  solve->add_option("--origin", origin, "origin node id");
  solve->add_option("--dest", dest, "destination node id");
  solve->add_option("--goal", goals, "goal node id (repeatable)");
  solve->add_option("--n", n, "generate an instance with this many terminals");
  solve->add_option("--seed", seed, "instance seed for --n");
  solve->add_option("--solver", solver, "unmerged|hs|bs|mm|kruskal");
  solve->add_option("--w", w_text, "heuristic weight in [0,1], e.g. 1/2");
  solve->add_option("--heuristic", heuristic, "auto|zero|octile|exact|alt");
  solve->add_flag("--reprioritize", reprioritize,
                  "re-price the nominating frontier after a confirmation");
  solve->add_flag("--bs-nominate-by-g", bs_by_g,
                  "run bs nominations on g instead of f");
  solve->add_option("--landmarks", landmark_count, "landmark count for alt");
  solve->add_option("--out", out_path, "output file (- for stdout)");
  solve->add_flag("--json", as_json, "emit a JSON run record");
  solve->add_flag("--trace", trace, "log every expansion to stderr");

  // --- bench ---
  mgpf::BenchConfig config;
  std::vector<std::string> w_texts;
  std::string csv_path = "-", summary_path, fig_path;
  bool reprio_both = false;
  auto* bench = app.add_subcommand("bench", "run the solver matrix");
  bench->add_option("--map", config.maps, "map specs (repeatable)")
      ->delimiter(',');
  bench->add_option("--n", config.n_list, "terminal counts")->delimiter(',');
  bench->add_option("--w", w_texts, "heuristic weights")->delimiter(',');
  bench->add_option("--solver", config.solvers, "solver subset")
      ->delimiter(',');
  bench->add_option("--instances", config.instances, "instances per cell");
  bench->add_option("--seed", config.seed, "suite seed");
  bench->add_option("--heuristic", config.heuristic,
                    "auto|zero|octile|exact|alt");
  bench->add_option("--landmarks", config.landmark_count, "landmark count");
  bench->add_option("--jobs", config.jobs, "worker threads");
  bench->add_flag("--no-timing", config.no_timing,
                  "zero the time column for byte-stable output");
  bench->add_flag("--reprioritize-both", reprio_both,
                  "run each cell with and without re-prioritization");
  bench->add_flag("--bs-nominate-by-g", config.bs_nominate_by_g,
                  "run bs nominations on g instead of f");
  bench->add_option("--csv", csv_path, "per-run CSV (- for stdout)");
  bench->add_option("--summary", summary_path, "mean table file");
  bench->add_option("--fig", fig_path, "aggregate CSV for plotting");

  // --- landmarks ---
  std::string lm_map;
  std::size_t lm_count = 100;
  std::uint64_t lm_seed = 1;
  bool lm_rebuild = false;
  auto* landmarks = app.add_subcommand("landmarks", "build or inspect a table");
  landmarks->add_option("--map", lm_map, "map file or builtin:<name>")
      ->required();
  landmarks->add_option("--count", lm_count, "requested landmark count");
  landmarks->add_option("--seed", lm_seed, "selection seed");
  landmarks->add_flag("--rebuild", lm_rebuild, "ignore any cached table");

  // --- verify ---
  std::string v_map, v_solution, v_fixture;
  int v_origin = -1, v_dest = -1;
  std::vector<int> v_goals;
  auto* verify = app.add_subcommand("verify", "validate a solution file");
  verify->add_option("--map", v_map, "map file or builtin:<name>");
  verify->add_option("--fixture", v_fixture, "named fixture");
  verify->add_option("--origin", v_origin, "origin node id");
  verify->add_option("--dest", v_dest, "destination node id");
  verify->add_option("--goal", v_goals, "goal node id (repeatable)");
  verify->add_option("--solution", v_solution, "solution file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(map_spec, fixture, origin, dest, goals, n, seed, solver,
                       w_text, heuristic, reprioritize, bs_by_g,
                       landmark_count, out_path, as_json, trace);
    if (bench->parsed()) {
      if (!w_texts.empty()) config.w_list.clear();
      for (const std::string& t : w_texts)
        config.w_list.push_back(mgpf::Fraction::parse(t));
      if (reprio_both) config.reprio_list = {false, true};
      mgpf::SuiteResult result = mgpf::run_suite(config);
      write_text(csv_path, result.csv);
      auto cells = mgpf::summarize(result.records);
      if (!summary_path.empty())
        write_text(summary_path, mgpf::summary_table(cells));
      if (!fig_path.empty()) write_text(fig_path, mgpf::summary_csv(cells));
      int errors = 0;
      for (const mgpf::RunRecord& r : result.records)
        if (!r.error.empty()) ++errors;
      if (errors) {
        std::cerr << errors << " run(s) failed; see the error column\n";
        return 3;
      }
      return 0;
    }
    if (landmarks->parsed()) {
      mgpf::GridGraph graph = load_graph_arg(lm_map);
      std::string hint = lm_map.rfind("builtin:", 0) == 0 ? "" : lm_map;
      mgpf::LandmarkTable table = mgpf::load_or_build_landmarks(
          graph, lm_count, lm_seed, hint, lm_rebuild);
      std::cout << "landmarks " << table.landmarks.size() << " of "
                << lm_count << " requested (shortfall " << table.shortfall()
                << ")\n";
      if (!hint.empty())
        std::cout << "cache " << mgpf::landmark_cache_file(graph, lm_count,
                                                           lm_seed, hint)
                  << '\n';
      return 0;
    }
    if (verify->parsed()) {
      mgpf::GridGraph graph = v_fixture.empty()
                                  ? load_graph_arg(v_map)
                                  : mgpf::load_fixture(v_fixture).graph;
      mgpf::Instance inst = resolve_instance(graph, v_fixture, v_origin,
                                             v_dest, v_goals, 0, 0);
      mgpf::validate_instance(graph, inst);
      std::ifstream in(v_solution);
      if (!in) throw std::runtime_error("cannot open " + v_solution);
      std::stringstream buf;
      buf << in.rdbuf();
      mgpf::MgpfSolution sol = mgpf::parse_solution(buf.str());
      auto [ok, violations] = mgpf::validate_solution(graph, inst, sol);
      if (ok) {
        std::cout << "ok cost=" << sol.cost << " ratio="
                  << sol.ratio.to_string() << '\n';
        return 0;
      }
      for (const std::string& v : violations)
        std::cout << "violation: " << v << '\n';
      return 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
