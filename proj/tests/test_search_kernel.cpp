#include <catch2/catch_amalgamated.hpp>

#include "mgpf/search_kernel.hpp"
#include "mgpf/steiner_solvers.hpp"
#include "test_support.hpp"

using namespace mgpf;

namespace {

GridGraph line(int n, Cost c = 1000) {
  std::string text = "nodes " + std::to_string(n) + "\n";
  for (int i = 0; i + 1 < n; ++i)
    text += std::to_string(i) + " " + std::to_string(i + 1) + " " +
            std::to_string(c) + "\n";
  return parse_edge_list(text);
}

}  // namespace

TEST_CASE("nomination ordering breaks ties f, g, node, component") {
  Nomination a{0, 5, 100, 50};
  CHECK(Nomination{0, 5, 99, 50}.better_than(a));   // smaller f
  CHECK(Nomination{0, 5, 100, 40}.better_than(a));  // equal f, smaller g
  CHECK(Nomination{0, 4, 100, 50}.better_than(a));  // equal f,g, smaller node
  CHECK(Nomination{1, 5, 100, 50}.better_than(a) == false);
  CHECK(a.better_than(Nomination{1, 5, 100, 50}));  // smaller component wins
}

TEST_CASE("component init closes the terminal and counts one expansion") {
  GridGraph g = line(3);
  std::vector<NodeId> terminals{0, 2};
  auto h = HeuristicProvider::exact(g, terminals);
  std::uint64_t expanded = 0;
  Component comp(0, g, h, 0, {2}, &expanded);
  CHECK(expanded == 1);
  CHECK(comp.is_closed(0));
  CHECK(comp.g_of(0) == 0);
  CHECK(comp.root_of(0) == 0);
  auto nom = comp.nominate();
  REQUIRE(nom.has_value());
  CHECK(nom->node == 1);
  CHECK(nom->g == 1000);
  CHECK(nom->f == 2000);  // g + exact distance to node 2
}

TEST_CASE("expand settles the nomination and relaxes neighbors") {
  GridGraph g = line(3);
  std::vector<NodeId> terminals{0, 2};
  auto h = HeuristicProvider::exact(g, terminals);
  std::uint64_t expanded = 0;
  Component comp(0, g, h, 0, {2}, &expanded);
  std::vector<Component::Relaxation> relaxed;
  CHECK(comp.expand(relaxed) == 1);
  CHECK(expanded == 2);
  REQUIRE(relaxed.size() == 1);
  CHECK(relaxed[0].node == 2);
  CHECK(relaxed[0].g == 2000);
  auto nom = comp.nominate();
  REQUIRE(nom.has_value());
  CHECK(nom->node == 2);
  CHECK(nom->f == 2000);
  CHECK(comp.expand(relaxed) == 2);
  CHECK_FALSE(comp.nominate().has_value());
  CHECK_THROWS_AS(comp.expand(relaxed), std::logic_error);
}

TEST_CASE("adjacent terminal pair costs three expansions unmerged") {
  // Two inits plus the single loop settle that confirms the path.
  GridGraph g = support::grid("..");
  Instance inst = Instance::make(g.node_at(0, 0), g.node_at(0, 1), {});
  auto terminals = inst.terminals();
  auto h = HeuristicProvider::exact(g, terminals);
  SolveResult r = solve_unmerged(g, inst, h);
  CHECK(r.stats.expanded == 3);
  CHECK(r.forest.total_path_cost() == kCardinalCost);
}

TEST_CASE("destination removal re-prices lazily") {
  GridGraph g = line(5);
  std::vector<NodeId> terminals{0, 2, 4};
  auto h = HeuristicProvider::exact(g, terminals);
  std::uint64_t expanded = 0;
  Component comp(0, g, h, 0, {2, 4}, &expanded);
  auto before = comp.nominate();
  REQUIRE(before.has_value());
  CHECK(before->f == 2000);  // g=1000 plus 1000 to the nearer dest 2
  std::vector<NodeId> removed{2};
  comp.remove_destinations(removed);
  auto after = comp.nominate();
  REQUIRE(after.has_value());
  CHECK(after->node == 1);
  CHECK(after->f == 4000);  // now priced against dest 4 only
  CHECK(comp.destinations() == std::vector<NodeId>{4});
}

TEST_CASE("destination growth rebuilds open prices") {
  GridGraph g = line(5);
  std::vector<NodeId> terminals{0, 2, 4};
  auto h = HeuristicProvider::exact(g, terminals);
  std::uint64_t expanded = 0;
  Component comp(0, g, h, 0, {4}, &expanded);
  REQUIRE(comp.nominate()->f == 4000);
  comp.set_destinations({2, 4});
  auto nom = comp.nominate();
  REQUIRE(nom.has_value());
  CHECK(nom->f == 2000);
  // No-op replacement leaves the nomination unchanged.
  comp.set_destinations({2, 4});
  CHECK(comp.nominate()->f == 2000);
}

TEST_CASE("merge keeps the cheaper label and demotes when strictly beaten") {
  // Third terminal 3 keeps the merged destination set nonempty so the merged
  // component still nominates (empty D would make it dormant).
  GridGraph g = parse_edge_list("nodes 4\n0 1 3000\n1 2 1000\n2 3 9000\n");
  std::vector<NodeId> terminals{0, 2, 3};
  auto h = HeuristicProvider::zero();
  std::uint64_t expanded = 0;
  Component a(0, g, h, 0, {2, 3}, &expanded);
  Component b(1, g, h, 2, {0, 3}, &expanded);
  std::vector<Component::Relaxation> relaxed;
  a.expand(relaxed);  // settles node 1 at g=3000 in a
  CHECK(a.is_closed(1));
  CHECK(expanded == 3);

  Component m = Component::merge(2, a, b);
  CHECK(m.id() == 2);
  CHECK(m.terminals() == std::vector<NodeId>{0, 2});
  CHECK(m.destinations() == std::vector<NodeId>{3});
  // node 1: closed at 3000 in a, open at 1000 in b -> demoted to open.
  CHECK_FALSE(m.is_closed(1));
  CHECK(m.g_of(1) == 1000);
  CHECK(m.root_of(1) == 2);
  // both terminals stay closed at g=0
  CHECK(m.is_closed(0));
  CHECK(m.is_closed(2));
  CHECK(expanded == 3);  // merging itself never counts

  // Re-settling the demoted node counts again.
  auto nom = m.nominate();
  REQUIRE(nom.has_value());
  CHECK(nom->node == 1);
  CHECK(nom->g == 1000);
  m.expand(relaxed);
  CHECK(expanded == 4);
  CHECK(m.is_closed(1));
}

TEST_CASE("merge keeps a closed label against a dearer open one") {
  GridGraph g = line(3);
  std::vector<NodeId> terminals{0, 2};
  auto h = HeuristicProvider::zero();
  std::uint64_t expanded = 0;
  Component a(0, g, h, 0, {2}, &expanded);
  Component b(1, g, h, 2, {0}, &expanded);
  std::vector<Component::Relaxation> relaxed;
  a.expand(relaxed);  // node 1 closed at 1000 in a; open at 1000 in b (tie)
  Component m = Component::merge(2, a, b);
  CHECK(m.is_closed(1));  // equal g does not demote
  CHECK(m.g_of(1) == 1000);
  CHECK(m.root_of(1) == 0);
}

TEST_CASE("reconstruct_path walks real edges and matches g") {
  GridGraph g = support::grid(
      "....\n"
      ".@..\n"
      "....");
  NodeId s = g.node_at(0, 0), t = g.node_at(2, 3);
  std::vector<NodeId> terminals{s, t};
  auto h = HeuristicProvider::exact(g, terminals);
  std::uint64_t expanded = 0;
  Component comp(0, g, h, s, {t}, &expanded);
  std::vector<Component::Relaxation> relaxed;
  while (!comp.is_closed(t)) comp.expand(relaxed);
  auto [path, cost] = comp.reconstruct_path(t);
  CHECK(cost == comp.g_of(t));
  CHECK(cost == dijkstra(g, s).dist[t]);
  CHECK(path.front() == s);
  CHECK(path.back() == t);
  Cost sum = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    sum += g.edge_cost(path[i], path[i + 1]);
  CHECK(sum == cost);
}

TEST_CASE("settled g equals the dijkstra distance under consistent h") {
  GridGraph g = make_random_map(12, 12, 20, 21);
  auto comps = connected_components(g);
  NodeId s = comps[0].front(), t = comps[0].back();
  auto truth = dijkstra(g, s);
  std::vector<NodeId> terminals{s, t};
  for (auto& h : {HeuristicProvider::zero(), HeuristicProvider::octile(g),
                  HeuristicProvider::exact(g, terminals)}) {
    std::uint64_t expanded = 0;
    Component comp(0, g, h, s, {t}, &expanded);
    std::vector<Component::Relaxation> relaxed;
    while (!comp.is_closed(t)) comp.expand(relaxed);
    for (NodeId u : comps[0])
      if (comp.is_closed(u)) CHECK(comp.g_of(u) == truth.dist[u]);
  }
}

TEST_CASE("incremental summaries match full scans") {
  GridGraph g = make_random_map(10, 10, 20, 33);
  auto comps = connected_components(g);
  REQUIRE(comps[0].size() >= 8);
  NodeId s = comps[0][0], t = comps[0][comps[0].size() - 1];
  std::vector<NodeId> terminals{s, t};
  auto h = HeuristicProvider::exact(g, terminals);
  std::uint64_t expanded = 0;
  Component comp(0, g, h, s, {t}, &expanded);
  std::vector<Component::Relaxation> relaxed;
  for (int step = 0; step < 40 && comp.nominate().has_value(); ++step) {
    CHECK(comp.gmin() == comp.scan_gmin());
    CHECK(comp.prmin() == comp.scan_prmin());
    CHECK(comp.rmin() == comp.scan_rmin());
    comp.expand(relaxed);
  }
}

TEST_CASE("summaries stay consistent across a merge") {
  GridGraph g = make_random_map(10, 10, 15, 8);
  auto comps = connected_components(g);
  REQUIRE(comps[0].size() >= 10);
  NodeId s = comps[0][1], t = comps[0][comps[0].size() - 2];
  std::vector<NodeId> terminals{s, t};
  auto h = HeuristicProvider::octile(g);
  std::uint64_t expanded = 0;
  Component a(0, g, h, s, {t}, &expanded);
  Component b(1, g, h, t, {s}, &expanded);
  std::vector<Component::Relaxation> relaxed;
  for (int i = 0; i < 5 && a.nominate(); ++i) a.expand(relaxed);
  for (int i = 0; i < 3 && b.nominate(); ++i) b.expand(relaxed);
  Component m = Component::merge(2, a, b);
  for (int i = 0; i < 10 && m.nominate(); ++i) {
    CHECK(m.gmin() == m.scan_gmin());
    CHECK(m.prmin() == m.scan_prmin());
    CHECK(m.rmin() == m.scan_rmin());
    m.expand(relaxed);
  }
}
