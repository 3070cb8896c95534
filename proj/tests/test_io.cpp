#include <doctest.h>

#include "support/fuzz.hpp"

using namespace tmb;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

const char* kSmall = R"({
  "format_version": 1,
  "problem": "tmb",
  "vertices": {"count": 2},
  "edges": [[0, 1]],
  "sources": [0],
  "tau": 3,
  "traversal": [{"default": 1, "overrides": [[2, 4]]}],
  "multiplicity": [1]
})";

}  // namespace

TEST_CASE("parse a minimal instance") {
  Instance inst = parse_instance(kSmall);
  CHECK(inst.graph.vertex_count() == 2);
  CHECK(inst.tau == 3);
  CHECK(inst.traversal.weight(0, 1) == 1);
  CHECK(inst.traversal.weight(0, 2) == 4);
  CHECK(parse_instance(serialize_instance(inst)).tau == 3);
}

TEST_CASE("serialization is canonical") {
  InstanceDocument doc = parse_instance_document(kSmall);
  std::string text = serialize(doc);
  CHECK(text.back() == '\n');
  CHECK(text.find("  \"edges\"") != std::string::npos);
  CHECK(text.find("\"edges\"") < text.find("\"tau\""));
  CHECK(serialize(parse_instance_document(text)) == text);
}

TEST_CASE("instance validation errors") {
  auto bad = [](const std::string& from, const std::string& to) {
    std::string s = kSmall;
    s.replace(s.find(from), from.size(), to);
    return code_of([&] { parse_instance_document(s); });
  };
  CHECK(bad("\"tau\": 3", "\"tau\": 0") == ErrorCode::ValidationError);
  CHECK(bad("[[0, 1]]", "[[0, 0]]") == ErrorCode::ValidationError);
  CHECK(bad("[[0, 1]]", "[[0, 5]]") == ErrorCode::ValidationError);
  CHECK(bad("\"sources\": [0]", "\"sources\": []") == ErrorCode::ValidationError);
  CHECK(bad("\"multiplicity\": [1]", "\"multiplicity\": [0]") == ErrorCode::ValidationError);
  CHECK(bad("\"format_version\": 1", "\"format_version\": 7") == ErrorCode::ParseError);
  CHECK(bad("\"tau\": 3", "\"tau\": \"x\"") == ErrorCode::ParseError);
  CHECK(bad("\"problem\": \"tmb\"", "\"problem\": \"other\"") == ErrorCode::ParseError);
  CHECK(bad("\"default\": 1", "\"default\": -1") == ErrorCode::ValidationError);
  CHECK(code_of([] { parse_instance_document("{"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_instance_document("[]"); }) == ErrorCode::ParseError);
}

TEST_CASE("labeling documents") {
  Instance inst = parse_instance(kSmall);
  Labeling l = parse_labeling(R"({"format_version": 1, "labels": [[3, 1]]})", inst);
  CHECK(l.at(0) == std::vector<Time>{1, 3});
  CHECK(code_of([&] { parse_labeling(R"({"format_version": 1, "labels": [[4]]})", inst); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { parse_labeling(R"({"format_version": 1, "labels": [[1], [2]]})", inst); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { parse_labeling(R"({"format_version": 1, "labels": 3})", inst); }) == ErrorCode::ParseError);
  LabelingDocument doc{l, std::string("hi")};
  LabelingDocument back = parse_labeling_document(serialize(doc));
  CHECK(back.labels.at(0) == l.at(0));
  CHECK(back.note == "hi");
}

TEST_CASE("DIMACS CNF") {
  CnfFormula f = parse_cnf("c comment\np cnf 3 2\n1 -2 0\n3\n 2 0\n%\n0\n");
  CHECK(f.variable_count == 3);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[1].size() == 2);
  CHECK(f.clauses[0][1] == Literal{1, false});
  CHECK(parse_cnf(serialize_cnf(f)) == f);
  CHECK(code_of([] { parse_cnf("1 2 0\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_cnf("p cnf 1 1\n2 0\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_cnf("p cnf 1 2\n1 0\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_cnf("p cnf 1 1\n1 x 0\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("CNF serialization round trips random formulas") {
  oracle::Rng rng(61);
  for (int it = 0; it < 300; ++it) {
    CnfFormula f;
    f.variable_count = static_cast<int>(rng.uniform(1, 6));
    int m = static_cast<int>(rng.uniform(1, 5));
    for (int c = 0; c < m; ++c) {
      std::vector<Literal> clause;
      int k = static_cast<int>(rng.uniform(1, 4));
      for (int i = 0; i < k; ++i)
        clause.push_back({static_cast<int>(rng.uniform(0, f.variable_count - 1)), rng.coin()});
      f.clauses.push_back(clause);
    }
    CHECK(parse_cnf(serialize_cnf(f)) == f);
  }
}

TEST_CASE("fixture and gadget documents") {
  InstanceDocument doc = parse_instance_document(read_file(TMB_FIXTURE_DIR "/figure1.json"));
  CHECK(doc.names.size() == 6);
  CHECK(serialize(parse_instance_document(serialize(doc))) == serialize(doc));
  std::string dot = to_dot(doc);
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("\"E\"") != std::string::npos);

  CnfFormula f;
  f.variable_count = 2;
  f.clauses = {{{0, true}, {1, false}}};
  auto g = gen_single_source_gadget(f, {Measure::FT, 2, 2});
  InstanceDocument gd = gadget_document(g);
  CHECK(gd.metadata.at("kind") == "single-source");
  CHECK(parse_instance_document(serialize(gd)) == gd);
}

TEST_CASE("fuzzed documents round trip canonically") {
  oracle::Rng rng(71);
  int bad = 0, crashes = 0;
  for (int it = 0; it < 300; ++it) {
    auto o = fuzz::iteration(rng);
    bad += !o.canonical;
    crashes += o.crashed;
  }
  CHECK(bad == 0);
  CHECK(crashes == 0);
}
