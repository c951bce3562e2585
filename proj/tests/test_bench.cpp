#include <catch2/catch_amalgamated.hpp>

#include "mgpf/bench.hpp"
#include "test_support.hpp"

using namespace mgpf;

TEST_CASE("instance generation is deterministic and well formed") {
  GridGraph g = load_map_spec("builtin:random-32");
  Instance a = generate_instance(g, 8, 42);
  Instance b = generate_instance(g, 8, 42);
  CHECK(a.origin == b.origin);
  CHECK(a.dest == b.dest);
  CHECK(a.goals == b.goals);
  CHECK_NOTHROW(validate_instance(g, a));
  CHECK(terminals_connected(g, a));
  Instance c = generate_instance(g, 8, 43);
  CHECK((a.origin != c.origin || a.dest != c.dest || a.goals != c.goals));
  CHECK_THROWS_AS(generate_instance(g, 1, 1), std::invalid_argument);
}

TEST_CASE("builtin maps have the advertised shapes") {
  GridGraph open = load_map_spec("builtin:open-32");
  CHECK(open.node_count() == 32 * 32);
  GridGraph maze = load_map_spec("builtin:maze-32");
  CHECK(maze.is_grid());
  CHECK(connected_components(maze).size() == 1);  // carved mazes are connected
  GridGraph r64 = load_map_spec("builtin:random-64");
  CHECK(r64.width() == 64);
  CHECK(connected_components(r64)[0].size() >= 1000);
  CHECK_THROWS_AS(load_map_spec("builtin:nope"), std::invalid_argument);
  CHECK_THROWS_AS(load_map_spec("/no/such/file.map"), std::runtime_error);
}

TEST_CASE("fixtures load with valid instances") {
  for (const char* name : {"line-5", "appendix-weak-h", "appendix-strong-h"}) {
    Fixture fx = load_fixture(name);
    CHECK_NOTHROW(validate_instance(fx.graph, fx.instance));
    CHECK(terminals_connected(fx.graph, fx.instance));
  }
  CHECK_THROWS_AS(load_fixture("missing"), std::invalid_argument);
}

TEST_CASE("run_single produces identical results across solvers") {
  Fixture fx = load_fixture("line-5");
  for (const std::string& solver : solver_names()) {
    RunRecord rec = run_single(fx.graph, "line-5", fx.instance, solver,
                               Fraction(1, 1), false, 7, "exact", nullptr,
                               /*no_timing=*/true);
    INFO(solver << " error=" << rec.error);
    CHECK(rec.error.empty());
    CHECK(rec.path_cost == 4000);
    CHECK(rec.tree_path_total == 4000);
    CHECK(rec.ratio == Fraction(1, 1));
    CHECK(rec.time_ms == 0.0);
    CHECK(rec.expanded > 0);
  }
}

TEST_CASE("run_single captures failures in the error column") {
  GridGraph g = support::grid("..@..");
  Instance inst = Instance::make(g.node_at(0, 0), g.node_at(0, 4), {});
  RunRecord rec = run_single(g, "split", inst, "mm", Fraction(1, 1), false, 1,
                             "octile", nullptr, true);
  CHECK_FALSE(rec.error.empty());
  std::string row = csv_row(rec);
  CHECK(row.find(",mm,") != std::string::npos);
  CHECK(row.find(',') != std::string::npos);
  // the error text must not smuggle in extra columns
  CHECK(std::count(row.begin(), row.end(), ',') == 13);
}

TEST_CASE("csv header and row layout are stable") {
  CHECK(std::string(kCsvHeader) ==
        "map,solver,criterion,N,w,reprioritize,seed,expanded,time_ms,"
        "tree_path_total,tree_edge_cost,path_cost,ratio,error");
  RunRecord r;
  r.map = "m";
  r.solver = "bs";
  r.criterion = "bs";
  r.n = 4;
  r.w = Fraction(1, 2);
  r.reprioritize = true;
  r.seed = 9;
  r.expanded = 17;
  r.time_ms = 0.0;
  r.tree_path_total = 4000;
  r.tree_edge_cost = 3000;
  r.path_cost = 4000;
  r.ratio = Fraction(4, 3);
  CHECK(csv_row(r) == "m,bs,bs,4,1/2,1,9,17,0.000,4000,3000,4000,4/3,");
}

TEST_CASE("suite runs the full matrix deterministically") {
  BenchConfig config;
  config.maps = {"builtin:open-32"};
  config.n_list = {2, 4};
  config.w_list = {Fraction(0, 1), Fraction(1, 1)};
  config.solvers = {"bs", "mm", "kruskal"};
  config.instances = 2;
  config.seed = 5;
  config.no_timing = true;
  SuiteResult a = run_suite(config);
  CHECK(a.records.size() == 1 * 2 * 2 * 2 * 3 * 1);
  for (const RunRecord& r : a.records) CHECK(r.error.empty());

  SuiteResult b = run_suite(config);
  CHECK(a.csv == b.csv);  // byte identical without timing

  config.jobs = 3;
  SuiteResult c = run_suite(config);
  CHECK(a.csv == c.csv);  // worker pool preserves emission order
}

TEST_CASE("instances are shared across solver and weight cells") {
  BenchConfig config;
  config.maps = {"builtin:open-32"};
  config.n_list = {4};
  config.w_list = {Fraction(0, 1), Fraction(1, 1)};
  config.solvers = {"bs", "kruskal"};
  config.instances = 2;
  config.no_timing = true;
  SuiteResult r = run_suite(config);
  std::map<std::uint64_t, std::set<std::string>> by_seed;
  std::map<std::uint64_t, std::set<Cost>> totals;
  for (const RunRecord& rec : r.records) {
    by_seed[rec.seed].insert(rec.solver + "/" + rec.w.to_string());
    totals[rec.seed].insert(rec.tree_path_total);
  }
  CHECK(by_seed.size() == 2);  // one seed per instance index
  for (auto& [seed, cells] : by_seed) CHECK(cells.size() == 4);
  for (auto& [seed, t] : totals) CHECK(t.size() == 1);  // same instance
}

TEST_CASE("summaries aggregate means per cell") {
  BenchConfig config;
  config.maps = {"builtin:open-32"};
  config.n_list = {3};
  config.w_list = {Fraction(1, 1)};
  config.solvers = {"mm"};
  config.instances = 3;
  config.no_timing = true;
  SuiteResult r = run_suite(config);
  auto cells = summarize(r.records);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].runs == 3);
  CHECK(cells[0].errors == 0);
  double mean = 0;
  for (const RunRecord& rec : r.records) mean += double(rec.expanded);
  mean /= 3;
  CHECK(cells[0].mean_expanded == Catch::Approx(mean));
  std::string table = summary_table(cells);
  CHECK(table.find("builtin:open-32") != std::string::npos);
  CHECK(table.find("mm") != std::string::npos);
  std::string csv = summary_csv(cells);
  CHECK(csv.find("map,solver,N,w,reprioritize,mean_expanded") == 0);
}
