#include <doctest.h>

#include <set>

#include "support/oracles.hpp"
#include "tmb/reductions.hpp"
#include "tmb/solvers.hpp"

using namespace tmb;

namespace {

CnfFormula cnf(int vars, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.variable_count = vars;
  for (const auto& c : clauses) {
    std::vector<Literal> lits;
    for (int x : c) lits.push_back({std::abs(x) - 1, x > 0});
    f.clauses.push_back(lits);
  }
  return f;
}

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::vector<Time> random_set(oracle::Rng& rng, Time tau, int size) {
  std::set<Time> s;
  while (static_cast<int>(s.size()) < size) s.insert(rng.uniform(1, tau));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("tmb and reachfast conversions") {
  Instance inst;
  inst.graph = StaticGraph(3, {{0, 1}, {1, 2}});
  inst.sources = {0};
  inst.traversal = TraversalSpec({1, 2});
  inst.multiplicity = {2, 3};
  inst.tau = 5;
  ReachFastInstance rf = tmb_to_reachfast(inst);
  CHECK(rf.labels.at(0) == std::vector<Time>{1, 2});
  CHECK(rf.labels.at(1) == std::vector<Time>{1, 2, 3});
  Instance back = reachfast_to_tmb(rf);
  CHECK(back.multiplicity == inst.multiplicity);
  CHECK(back.tau == inst.tau);
  rf.labels = Labeling(std::vector<std::vector<Time>>{{4}, {}});
  CHECK(code_of([&] { reachfast_to_tmb(rf); }) == ErrorCode::ValidationError);
}

TEST_CASE("shift schedules replay to their targets") {
  oracle::Rng rng(51);
  for (int it = 0; it < 500; ++it) {
    Time tau = rng.uniform(1, 9);
    int nb = static_cast<int>(rng.uniform(1, tau));
    int na = static_cast<int>(rng.uniform(1, nb));
    auto before = random_set(rng, tau, nb);
    auto after = random_set(rng, tau, na);
    auto shifts = shift_schedule(before, after);
    // Replay by hand: keep the smallest |after| labels, then move each.
    std::vector<Time> cur(before.begin(), before.begin() + na);
    for (const Shift& s : shifts) {
      CHECK(s.delta != 0);
      auto pos = std::find(cur.begin(), cur.end(), s.from);
      REQUIRE(pos != cur.end());
      *pos = s.from + s.delta;
    }
    std::sort(cur.begin(), cur.end());
    CHECK(cur == after);
    CHECK(apply_shifts(before, after.size(), shifts) == after);
  }
  CHECK(code_of([] { shift_schedule({1}, {1, 2}); }) == ErrorCode::InvalidParams);
}

TEST_CASE("satisfiability helpers") {
  auto f = cnf(2, {{1, 2}, {-1}});
  CHECK(all_satisfying_assignments(f) == std::vector<Assignment>{{false, true}});
  CHECK(find_satisfying_assignment(f) == Assignment{false, true});
  CHECK_FALSE(find_satisfying_assignment(cnf(1, {{1}, {-1}})));
  CHECK(satisfies(f, {false, true}));
  CHECK_FALSE(satisfies(f, {true, true}));
}

TEST_CASE("single-source gadget parameters are validated") {
  auto f = cnf(2, {{1, -2}});
  CHECK(code_of([&] { gen_single_source_gadget(f, {Measure::FT, 0, 2}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { gen_single_source_gadget(f, {Measure::ST, 1, 2}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { gen_single_source_gadget(f, {Measure::MH, 2, 2}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { gen_single_source_gadget(f, {Measure::EA, 1, 2}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { gen_single_source_gadget(cnf(1, {}), {Measure::FT, 1, 2}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([&] { gen_single_source_gadget(cnf(1, {{}}), {Measure::FT, 1, 2}); }) == ErrorCode::InvalidParams);
}

TEST_CASE("single-source gadgets: structure and witness values") {
  std::vector<CnfFormula> formulas = {cnf(1, {{1}}), cnf(2, {{1, -2}, {2}}), cnf(3, {{1, 2, 3}, {-1, -2}, {-3, 1}})};
  std::vector<GadgetParams> params = {{Measure::FT, 1, 2}, {Measure::FT, 3, 2}, {Measure::ST, 2, 2},
                                      {Measure::ST, 3, 2}, {Measure::MH, 3, 2}, {Measure::MW, 1, 2},
                                      {Measure::MW, 2, 3}};
  for (const auto& f : formulas) {
    for (const auto& p : params) {
      GadgetInstance g = gen_single_source_gadget(f, p);
      const Instance& inst = g.instance;
      INFO("measure " << to_string(p.measure) << " a=" << p.a << " b=" << p.b);
      CHECK(inst.sources.size() == 1);
      CHECK(static_cast<int>(g.choice_edges.size()) == f.variable_count);
      CHECK(g.vertex_names.size() == static_cast<std::size_t>(inst.graph.vertex_count()));
      CHECK(g.metadata.at("kind") == "single-source");
      CHECK(g.yes_value < g.no_value_lower_bound);
      for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
        bool choice = std::find(g.choice_edges.begin(), g.choice_edges.end(), e) != g.choice_edges.end();
        CHECK(inst.multiplicity[e] == (choice ? 1 : inst.tau));
      }
      for (const Assignment& a : all_satisfying_assignments(f)) {
        Labeling l = gadget_labeling_from_assignment(g, a);
        CHECK(objective(inst, l, p.measure) == g.yes_value);
      }
      Assignment all_false(f.variable_count, false);
      if (!satisfies(f, all_false))
        CHECK(code_of([&] { gadget_labeling_from_assignment(g, all_false); }) == ErrorCode::UnsatisfiedClause);
    }
  }
}

TEST_CASE("single-source gadget optimum separates yes from no on a tiny formula") {
  // One variable: (x) is satisfiable, (x) and (not x) is not.
  BruteForceLimits lim;
  lim.max_edges = 64;
  lim.max_tau = 32;
  for (Time a : {1, 2}) {
    auto yes = gen_single_source_gadget(cnf(1, {{1}}), {Measure::FT, a, 2});
    auto no = gen_single_source_gadget(cnf(1, {{1}, {-1}}), {Measure::FT, a, 2});
    CHECK(brute_force(yes.instance, Measure::FT, lim).objective == 4);
    auto r = brute_force(no.instance, Measure::FT, lim);
    CHECK((!r.objective || *r.objective >= a + 4));
  }
}

TEST_CASE("two-source gadget rejects non 3-SAT input") {
  CHECK(code_of([] { gen_two_source_gadget(cnf(2, {{1, 2}})); }) == ErrorCode::NotThreeSat);
  CHECK(code_of([] { gen_two_source_gadget(cnf(2, {{1, -1, 2}})); }) == ErrorCode::ContradictoryClause);
  CHECK(code_of([] { gen_two_source_gadget(cnf(1, {{1, 1, 1}}), 1); }) == ErrorCode::InvalidParams);
}

TEST_CASE("two-source witnesses are feasible for every satisfying assignment") {
  std::vector<CnfFormula> formulas = {cnf(1, {{1, 1, 1}}), cnf(3, {{1, 2, 3}}), cnf(3, {{1, -2, 3}, {-1, 2, -3}}),
                                      cnf(2, {{1, 1, 2}, {-1, -1, -2}})};
  for (const auto& f : formulas) {
    for (int nu : {2, 3}) {
      GadgetInstance g = gen_two_source_gadget(f, nu);
      const Instance& inst = g.instance;
      REQUIRE(g.layout);
      CHECK(static_cast<int>(inst.sources.size()) == nu);
      CHECK(std::all_of(inst.multiplicity.begin(), inst.multiplicity.end(), [](Time m) { return m == 1; }));
      for (const Assignment& a : all_satisfying_assignments(f)) {
        auto path = two_source_witness_path(g, a);
        REQUIRE_FALSE(path.empty());
        Labeling l = two_source_witness_labeling(g, a);
        CHECK(is_feasible(inst, l));
        CHECK(oracle::feasible(inst, l));
      }
    }
  }
}

TEST_CASE("two-source witness for an unsatisfied assignment is refused") {
  GadgetInstance g = gen_two_source_gadget(cnf(1, {{1, 1, 1}}));
  CHECK(code_of([&] { two_source_witness_labeling(g, {false}); }) == ErrorCode::UnsatisfiedClause);
}
