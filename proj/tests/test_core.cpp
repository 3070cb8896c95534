#include <doctest.h>

#include "support/oracles.hpp"
#include "tmb/core.hpp"
#include "tmb/io.hpp"

using namespace tmb;

namespace {

Instance single_edge(Time tau, Weight w) {
  Instance inst;
  inst.graph = StaticGraph(2, {{0, 1}});
  inst.sources = {0};
  inst.traversal = TraversalSpec({w});
  inst.multiplicity = {1};
  inst.tau = tau;
  return inst;
}

InstanceDocument figure1() { return parse_instance_document(read_file(TMB_FIXTURE_DIR "/figure1.json")); }

}  // namespace

TEST_CASE("static graph rejects malformed edges") {
  CHECK_THROWS_AS(StaticGraph(2, {{0, 0}}), Error);
  CHECK_THROWS_AS(StaticGraph(2, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(StaticGraph(2, {{0, 2}}), Error);
  CHECK_THROWS_AS(StaticGraph(-1, {}), Error);
  StaticGraph g(3, {{0, 1}, {1, 2}});
  CHECK(g.is_tree());
  CHECK(g.other(0, 1) == 0);
  CHECK(*g.find_edge(2, 1) == 1);
  CHECK_FALSE(g.find_edge(0, 2));
}

TEST_CASE("path_stats of a single step") {
  Instance inst = single_edge(5, 1);
  auto st = path_stats({0, {{0, 2}}}, inst.graph, inst.traversal);
  CHECK(st.departure == 2);
  CHECK(st.arrival == 3);
  CHECK(st.duration == 1);
  CHECK(st.travel == 1);
  CHECK(st.waiting == 0);
  CHECK(st.hops == 1);
}

TEST_CASE("path_stats of M -> v3 -> v2 in the worked example") {
  auto doc = figure1();
  const auto& g = doc.instance.graph;
  // vertex ids: E=0 M=1 v1=2 v2=3 v3=4 v4=5
  TemporalPath p{1, {{*g.find_edge(1, 4), 2}, {*g.find_edge(4, 3), 4}}};
  auto st = path_stats(p, g, doc.instance.traversal);
  CHECK(st.departure == 2);
  CHECK(st.arrival == 5);
  CHECK(st.duration == 3);
  CHECK(st.travel == 2);
  CHECK(st.waiting == 1);
  CHECK(st.hops == 2);
  Labeling left = parse_labeling(read_file(TMB_FIXTURE_DIR "/figure1_left.json"), doc.instance);
  CHECK(validate_path(p, Availability(left), g, doc.instance.traversal));
}

TEST_CASE("path_stats rejects invalid paths") {
  Instance inst;
  inst.graph = StaticGraph(3, {{0, 1}, {1, 2}});
  inst.traversal = TraversalSpec({2, 1});
  CHECK_THROWS_AS(path_stats({0, {{0, 3}, {1, 4}}}, inst.graph, inst.traversal), Error);  // 3+2 > 4
  CHECK_THROWS_AS(path_stats({0, {}}, inst.graph, inst.traversal), Error);
  CHECK_THROWS_AS(path_stats({0, {{1, 3}}}, inst.graph, inst.traversal), Error);  // edge not at 0
  CHECK_NOTHROW(path_stats({0, {{0, 3}, {1, 5}}}, inst.graph, inst.traversal));
}

TEST_CASE("validate_path verdicts") {
  Instance inst;
  inst.graph = StaticGraph(3, {{0, 1}, {1, 2}});
  inst.traversal = TraversalSpec({1, 1});
  Labeling l({{2}, {1, 3}});
  CHECK_FALSE(validate_path({0, {{0, 2}, {1, 1}}}, Availability(l), inst.graph, inst.traversal));
  CHECK_FALSE(validate_path({0, {{0, 1}}}, Availability(l), inst.graph, inst.traversal));
  CHECK(validate_path({0, {{0, 2}, {1, 3}}}, Availability(l), inst.graph, inst.traversal));
  // not simple
  StaticGraph tri(3, {{0, 1}, {1, 2}, {2, 0}});
  TraversalSpec tr({1, 1, 1});
  Labeling all({{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}});
  CHECK_FALSE(validate_path({0, {{0, 1}, {1, 2}, {2, 3}}}, Availability(all), tri, tr));
}

TEST_CASE("zero weights allow several hops at one timestamp") {
  Instance inst;
  inst.graph = StaticGraph(3, {{0, 1}, {1, 2}});
  inst.traversal = TraversalSpec({0, 0});
  Labeling l({{2}, {2}});
  CHECK(validate_path({0, {{0, 2}, {1, 2}}}, Availability(l), inst.graph, inst.traversal));
}

TEST_CASE("full temporal graph availability") {
  FullTemporalGraph full = full_temporal_graph(single_edge(3, 1));
  CHECK(full.available(1));
  CHECK(full.available(3));
  CHECK_FALSE(full.available(4));
  CHECK_FALSE(full.available(0));
}

TEST_CASE("is_feasible: star with one label per spoke") {
  Instance inst;
  inst.graph = StaticGraph(4, {{0, 1}, {0, 2}, {0, 3}});
  inst.sources = {0};
  inst.traversal = TraversalSpec({1, 1, 1});
  inst.multiplicity = {1, 1, 1};
  inst.tau = 3;
  CHECK(is_feasible(inst, Labeling({{1}, {3}, {2}})));
  CHECK_FALSE(is_feasible(inst, Labeling({{1}, {}, {2}})));
  CHECK_THROWS_AS(is_feasible(inst, Labeling({{1, 2}, {3}, {2}})), Error);
  try {
    is_feasible(inst, Labeling({{1, 2}, {3}, {2}}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MultiplicityViolation);
  }
}

TEST_CASE("is_feasible: two sources on a path, all label pairs at tau = 3") {
  Instance inst;
  inst.graph = StaticGraph(3, {{0, 1}, {1, 2}});
  inst.sources = {0, 2};
  inst.traversal = TraversalSpec({1, 1});
  inst.multiplicity = {1, 1};
  inst.tau = 3;
  int feasible = 0;
  for (Time a = 1; a <= 3; ++a)
    for (Time b = 1; b <= 3; ++b) {
      Labeling l({{a}, {b}});
      bool ours = is_feasible(inst, l);
      CHECK(ours == oracle::feasible(inst, l));
      feasible += ours;
    }
  // Each source needs the far edge strictly later than the near one: impossible in both directions.
  CHECK(feasible == 0);
}

TEST_CASE("is_feasible: worked example labelings") {
  auto doc = figure1();
  for (const char* f : {"/figure1_left.json", "/figure1_center.json", "/figure1_right.json"}) {
    Labeling l = parse_labeling(read_file(std::string(TMB_FIXTURE_DIR) + f), doc.instance);
    CHECK(is_feasible(doc.instance, l));
  }
}

TEST_CASE("is_feasible matches path enumeration and is monotone") {
  oracle::Rng rng(7);
  for (int it = 0; it < 300; ++it) {
    int n = static_cast<int>(rng.uniform(2, 6));
    Time tau = rng.uniform(1, 5);
    auto g = oracle::random_connected_graph(rng, n, 8);
    Instance inst = oracle::random_instance(rng, g, static_cast<int>(rng.uniform(1, 2)), tau, tau, 2);
    Labeling l = oracle::random_labeling(rng, inst.graph.edge_count(), tau, 2);
    bool ours = is_feasible(inst, l);
    CHECK(ours == oracle::feasible(inst, l));
    Labeling bigger = l;
    for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
      if (rng.coin()) bigger.add(e, rng.uniform(1, tau));
    if (ours) CHECK(is_feasible(inst, bigger));
  }
}

TEST_CASE("departure candidates handle an override at the ready time") {
  // Default weight 1, override weight 5 at t = 2: arriving at 2 must still
  // offer the default-weight departure at 3.
  Instance inst;
  inst.graph = StaticGraph(2, {{0, 1}});
  inst.sources = {0};
  inst.traversal = TraversalSpec({1});
  inst.traversal.set_override(0, 2, 5);
  inst.multiplicity = {1};
  inst.tau = 4;
  auto net = TemporalNetwork::full(inst);
  auto d = net.departures(0, 2);
  CHECK(d == std::vector<Time>{2, 3});
}
