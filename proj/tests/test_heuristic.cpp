#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>

#include "mgpf/heuristic.hpp"
#include "mgpf/landmark_cache.hpp"
#include "test_support.hpp"

using namespace mgpf;

TEST_CASE("octile estimate on worked examples") {
  GridGraph g = support::grid(
      ".....\n"
      ".....\n"
      ".....\n"
      ".....");
  CHECK(octile_between(g, g.node_at(0, 0), g.node_at(0, 0)) == 0);
  CHECK(octile_between(g, g.node_at(0, 0), g.node_at(0, 3)) == 3000);
  CHECK(octile_between(g, g.node_at(0, 0), g.node_at(3, 3)) == 3 * 1414);
  CHECK(octile_between(g, g.node_at(0, 0), g.node_at(1, 2)) == 2414);
  // dr=2, dc=3: 3 cardinal-scale steps plus 2 diagonal surcharges
  CHECK(octile_between(g, g.node_at(2, 1), g.node_at(0, 4)) == 3828);
}

TEST_CASE("octile equals true distance on obstacle-free grids") {
  GridGraph g = support::grid(
      "......\n"
      "......\n"
      "......\n"
      "......");
  auto tree = dijkstra(g, g.node_at(1, 1));
  for (NodeId u = 0; u < g.node_count(); ++u)
    CHECK(tree.dist[u] == octile_between(g, g.node_at(1, 1), u));
}

TEST_CASE("weight scales by exact rational floor") {
  Weight half = Weight::of(Fraction(1, 2));
  CHECK(half.scale(1414) == 707);
  CHECK(half.scale(1001) == 500);  // floor
  Weight zero = Weight::of(Fraction(0, 1));
  CHECK(zero.scale(123456) == 0);
  Weight one = Weight::of(Fraction(1, 1));
  CHECK(one.scale(987) == 987);
  Weight quarter = Weight::of(Fraction(1, 4));
  CHECK(quarter.scale(1003) == 250);
  CHECK_THROWS_AS(Weight::of(Fraction(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Weight::of(Fraction(-1, 2)), std::invalid_argument);
}

TEST_CASE("fraction parsing and normalization") {
  CHECK(Fraction::parse("2/4") == Fraction(1, 2));
  CHECK(Fraction::parse("0.25") == Fraction(1, 4));
  CHECK(Fraction::parse("1") == Fraction(1, 1));
  CHECK(Fraction::parse("0.5").to_string() == "1/2");
  CHECK(Fraction(3, 1).to_string() == "3");
  CHECK(Fraction(1, 3) < Fraction(1, 2));
  CHECK_THROWS_AS(Fraction(1, 0), std::invalid_argument);
}

TEST_CASE("exact provider returns true distances for terminals only") {
  GridGraph g = support::grid(
      "....\n"
      ".@@.\n"
      "....");
  std::vector<NodeId> terminals{g.node_at(0, 0), g.node_at(2, 3)};
  auto p = HeuristicProvider::exact(g, terminals);
  auto tree = dijkstra(g, g.node_at(2, 3));
  for (NodeId u = 0; u < g.node_count(); ++u)
    CHECK(p.estimate(u, g.node_at(2, 3)) == tree.dist[u]);
  CHECK_THROWS_AS(p.estimate(0, g.node_at(1, 0)), std::logic_error);
}

TEST_CASE("heuristic dominance: zero <= octile <= alt <= exact") {
  GridGraph g = make_random_map(16, 16, 25, 3);
  auto comps = connected_components(g);
  NodeId t = comps[0].back();
  std::vector<NodeId> terminals{comps[0].front(), t};
  auto zero = HeuristicProvider::zero();
  auto octile = HeuristicProvider::octile(g);
  auto table = std::make_shared<LandmarkTable>(select_landmarks(g, 8, 42));
  auto alt = HeuristicProvider::alt(g, table);
  auto exact = HeuristicProvider::exact(g, terminals);
  auto tree = dijkstra(g, t);
  for (NodeId u : comps[0]) {
    CHECK(zero.estimate(u, t) == 0);
    CHECK(octile.estimate(u, t) >= 0);
    CHECK(octile.estimate(u, t) <= alt.estimate(u, t));
    CHECK(alt.estimate(u, t) <= exact.estimate(u, t));
    CHECK(exact.estimate(u, t) == tree.dist[u]);
  }
}

TEST_CASE("heuristics are consistent along every edge") {
  GridGraph g = make_random_map(14, 14, 20, 9);
  auto comps = connected_components(g);
  NodeId t = comps[0][comps[0].size() / 2];
  std::vector<NodeId> terminals{comps[0].front(), t};
  auto table = std::make_shared<LandmarkTable>(select_landmarks(g, 6, 1));
  std::vector<HeuristicProvider> providers{
      HeuristicProvider::octile(g), HeuristicProvider::alt(g, table),
      HeuristicProvider::exact(g, terminals)};
  for (const auto& base : providers) {
    for (Fraction w : {Fraction(1, 1), Fraction(1, 2), Fraction(3, 4)}) {
      auto p = base.with_weight(Weight::of(w));
      for (NodeId u = 0; u < g.node_count(); ++u)
        for (const Edge* e = g.adj_begin(u); e != g.adj_end(u); ++e)
          CHECK(p.h_to(u, t) <= e->cost + p.h_to(e->to, t));
    }
  }
}

TEST_CASE("h_to_set is the weighted min over destinations") {
  GridGraph g = support::grid(".....");
  auto p = HeuristicProvider::octile(g).with_weight(Weight::of(Fraction(1, 2)));
  std::vector<NodeId> dests{g.node_at(0, 3), g.node_at(0, 4)};
  // raw min is 3000 to column 3; halved = 1500
  CHECK(p.h_to_set(g.node_at(0, 0), dests) == 1500);
  CHECK(p.h_to_set(g.node_at(0, 0), {}) == 0);
  CHECK(p.h_to_set(g.node_at(0, 3), dests) == 0);
}

TEST_CASE("landmark selection is deterministic and border-only on grids") {
  GridGraph g = support::grid(
      ".....\n"
      ".....\n"
      ".....\n"
      ".....\n"
      ".....");
  LandmarkTable a = select_landmarks(g, 4, 7);
  LandmarkTable b = select_landmarks(g, 4, 7);
  CHECK(a == b);
  REQUIRE(a.landmarks.size() == 4);
  for (NodeId lm : a.landmarks) CHECK(g.degree(lm) < 8);
  LandmarkTable c = select_landmarks(g, 4, 8);
  CHECK(c.landmarks != a.landmarks);

  // Only the 16 border nodes are eligible on a 5x5 open grid.
  LandmarkTable big = select_landmarks(g, 100, 7);
  CHECK(big.landmarks.size() == 16);
  CHECK(big.shortfall());
  CHECK(big.requested == 100);
}

TEST_CASE("alt lower bound never exceeds the true distance") {
  GridGraph g = make_random_map(16, 16, 25, 17);
  auto comps = connected_components(g);
  auto table = select_landmarks(g, 10, 5);
  NodeId t = comps[0][3];
  auto tree = dijkstra(g, t);
  for (NodeId u : comps[0]) {
    Cost est = alt_between(g, table, u, t);
    CHECK(est <= tree.dist[u]);
    CHECK(est >= octile_between(g, u, t));
  }
}

TEST_CASE("landmark cache round trips and rejects mismatched keys") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mgpf-cache-test";
  fs::create_directories(dir);
  setenv("MGPF_CACHE_DIR", dir.c_str(), 1);

  GridGraph g = support::grid(
      "....\n"
      ".@..\n"
      "....");
  LandmarkTable built = select_landmarks(g, 3, 99);
  fs::path file = landmark_cache_file(g, 3, 99);
  save_landmarks(built, file);
  auto loaded = load_landmarks(file, g.content_hash(), 3, 99);
  REQUIRE(loaded.has_value());
  CHECK(*loaded == built);
  CHECK_FALSE(load_landmarks(file, g.content_hash() + 1, 3, 99).has_value());
  CHECK_FALSE(load_landmarks(file, g.content_hash(), 3, 98).has_value());
  CHECK_FALSE(load_landmarks(file, g.content_hash(), 2, 99).has_value());

  // load_or_build writes the cache on a miss and reads it back on a hit.
  fs::remove(file);
  LandmarkTable first = load_or_build_landmarks(g, 3, 99);
  CHECK(fs::exists(file));
  LandmarkTable second = load_or_build_landmarks(g, 3, 99);
  CHECK(first == second);
  unsetenv("MGPF_CACHE_DIR");
}
