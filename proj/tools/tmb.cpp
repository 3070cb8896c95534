// Command-line front end for the tmb library.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "tmb/core.hpp"
#include "tmb/distances.hpp"
#include "tmb/io.hpp"
#include "tmb/reductions.hpp"
#include "tmb/solvers.hpp"

using nlohmann::json;
using namespace tmb;

namespace {

constexpr int kExitVerdict = 6;
constexpr int kExitInternal = 70;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return 3;
    case ErrorCode::ValidationError: return 4;
    case ErrorCode::NoTractableRegime: return 5;
    case ErrorCode::SearchSpaceTooLarge: return 7;
    case ErrorCode::Unreachable: return 8;
    case ErrorCode::MultiplicityViolation: return 9;
    case ErrorCode::SameVertex: return 10;
    case ErrorCode::WrongSourceCount: return 11;
    case ErrorCode::MultiplicityTooSmall: return 12;
    case ErrorCode::NotATree: return 13;
    case ErrorCode::InvalidParams: return 14;
    case ErrorCode::UnsatisfiedClause: return 15;
    case ErrorCode::NotThreeSat: return 16;
    case ErrorCode::ContradictoryClause: return 17;
    case ErrorCode::InvalidPath: return 18;
  }
  return kExitInternal;
}

const char* kExitCodes = R"(Exit codes:
  0  success (verify: labeling feasible)
  2  usage error
  3  ParseError             4  ValidationError
  5  NoTractableRegime      6  verdict: infeasible labeling / no feasible labeling
  7  SearchSpaceTooLarge    8  Unreachable
  9  MultiplicityViolation  10 SameVertex
  11 WrongSourceCount       12 MultiplicityTooSmall
  13 NotATree               14 InvalidParams
  15 UnsatisfiedClause      16 NotThreeSat
  17 ContradictoryClause    18 InvalidPath
  70 internal error)";

Measure measure_option(const std::string& text) {
  auto m = parse_measure(text);
  if (!m) throw Error(ErrorCode::InvalidParams, "unknown measure '" + text + "'");
  return *m;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json path_json(const TemporalPath& path, const Instance& inst, const InstanceDocument& doc) {
  json steps = json::array();
  Vertex at = path.from;
  auto name = [&](Vertex v) { return doc.names.empty() ? json(v) : json(doc.names[v]); };
  for (const Step& s : path.steps) {
    Vertex next = inst.graph.other(s.edge, at);
    steps.push_back({{"edge", s.edge},
                     {"from", name(at)},
                     {"to", name(next)},
                     {"departure", s.departure},
                     {"weight", inst.traversal.weight(s.edge, s.departure)}});
    at = next;
  }
  auto st = path_stats(path, inst.graph, inst.traversal);
  return {{"steps", steps},
          {"departure", st.departure},
          {"arrival", st.arrival},
          {"duration", st.duration},
          {"travel", st.travel},
          {"waiting", st.waiting},
          {"hops", st.hops}};
}

json result_json(const SolveResult& r, Measure m) {
  json j;
  j["measure"] = std::string(to_string(m));
  j["status"] = std::string(to_string(r.status));
  j["objective"] = r.objective ? json(*r.objective) : json(nullptr);
  json labels = json::array();
  for (const auto& set : r.labeling.raw()) labels.push_back(set);
  j["labeling"] = labels;
  if (r.certificate) {
    const Bounds& b = *r.certificate;
    j["certificate"] = {{"ft_min", b.ft_min}, {"ft_max", b.ft_max}, {"mw_min", b.mw_min}, {"mw_max", b.mw_max}};
    Time lo = m == Measure::FT ? b.ft_min : b.mw_min;
    Time hi = m == Measure::FT ? b.ft_max : b.mw_max;
    j["certificate"]["optimum_at_least"] = lo;
    j["certificate"]["objective_at_most"] = hi;
  }
  return j;
}

void write_labeling(const std::string& path, const Labeling& labeling, const std::string& note) {
  if (path.empty()) return;
  write_file(path, serialize(LabelingDocument{labeling, note}));
}

Vertex vertex_option(const std::string& text, const InstanceDocument& doc, int n) {
  for (std::size_t i = 0; i < doc.names.size(); ++i)
    if (doc.names[i] == text) return static_cast<Vertex>(i);
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size() && v >= 0 && v < n) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ValidationError, "unknown vertex '" + text + "'");
}

Assignment parse_bits(const std::string& bits, int variables) {
  if (static_cast<int>(bits.size()) != variables)
    throw Error(ErrorCode::InvalidParams, "assignment needs one bit per variable (" + std::to_string(variables) + ")");
  Assignment a;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::InvalidParams, "assignment bits must be 0 or 1");
    a.push_back(c == '1');
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal multi-broadcast toolkit: distances, exact and approximate labeling solvers, "
               "brute-force oracle, reductions and gadget generators."};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  std::string in, out, labeling_path, measure_text, cnf_path, from, to, target, bits;
  bool approx = false, oracle = false;
  std::uint64_t max_labelings = BruteForceLimits{}.max_labelings;
  int max_edges = BruteForceLimits{}.max_edges;
  Time max_tau = BruteForceLimits{}.max_tau;
  Time a = 1, b = 2;
  int sources = 2;

  auto* solve = app.add_subcommand("solve", "Solve with the applicable exact regime, --approx or --oracle");
  solve->add_option("--measure", measure_text, "ea, ld, ft, st, mh or mw")->required();
  solve->add_option("--in", in, "instance document")->required();
  solve->add_option("--out", out, "write the labeling document here");
  solve->add_flag("--approx", approx, "FT/MW single-source approximation with ratio certificate");
  solve->add_flag("--oracle", oracle, "exhaustive exact search");
  solve->add_option("--max-labelings", max_labelings, "oracle limit");

  auto* orc = app.add_subcommand("oracle", "Brute-force exact solve within limits");
  orc->add_option("--measure", measure_text)->required();
  orc->add_option("--in", in)->required();
  orc->add_option("--out", out);
  orc->add_option("--max-labelings", max_labelings, "largest search space to attempt");
  orc->add_option("--max-edges", max_edges);
  orc->add_option("--max-tau", max_tau);

  auto* dist = app.add_subcommand("distance", "Single-pair distance with a witness path");
  dist->add_option("--measure", measure_text)->required();
  dist->add_option("--from", from, "vertex id or name")->required();
  dist->add_option("--to", to, "vertex id or name")->required();
  dist->add_option("--in", in)->required();
  dist->add_option("--labeling", labeling_path, "labeling document (default: full temporal graph)");

  auto* verify = app.add_subcommand("verify", "Feasibility and objective of a labeling");
  verify->add_option("--in", in)->required();
  verify->add_option("--labeling", labeling_path)->required();
  verify->add_option("--measure", measure_text)->required();

  auto* gen = app.add_subcommand("gen", "Hardness gadget generators");
  gen->require_subcommand(1);
  auto* gen_sat = gen->add_subcommand("sat", "Single-source SAT gadget for FT, ST, MH or MW");
  gen_sat->add_option("--measure", measure_text)->required();
  gen_sat->add_option("--cnf", cnf_path)->required();
  gen_sat->add_option("-a", a)->required();
  gen_sat->add_option("-b", b, "MW only");
  gen_sat->add_option("--out", out)->required();
  auto* gen_two = gen->add_subcommand("twosource", "3-SAT gadget with µ ≡ 1 and two or more sources");
  gen_two->add_option("--cnf", cnf_path)->required();
  gen_two->add_option("--sources", sources, "number of sources (>= 2)");
  gen_two->add_option("--out", out)->required();

  auto* convert = app.add_subcommand("convert", "TMB <-> ReachFast");
  convert->add_option("--to", target, "reachfast or tmb")->required()->check(CLI::IsMember({"reachfast", "tmb"}));
  convert->add_option("--in", in)->required();
  convert->add_option("--out", out)->required();

  auto* witness = app.add_subcommand("witness", "Witness labeling of a gadget from a satisfying assignment");
  witness->add_option("--cnf", cnf_path)->required();
  witness->add_option("--assignment", bits, "one 0/1 per variable, x1 first")->required();
  witness->add_option("--in", in, "gadget instance")->required();
  witness->add_option("--out", out)->required();

  auto* dot = app.add_subcommand("export-dot", "DOT rendering of the static graph");
  dot->add_option("--in", in)->required();
  dot->add_option("--labeling", labeling_path);
  dot->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve || *orc) {
      const Measure m = measure_option(measure_text);
      Instance inst = parse_instance(read_file(in));
      json j;
      SolveResult r;
      std::string solver;
      if (*orc || oracle) {
        BruteForceLimits limits;
        limits.max_labelings = max_labelings;
        limits.max_edges = max_edges;
        limits.max_tau = max_tau;
        r = brute_force(inst, m, limits);
        solver = "oracle";
      } else if (approx) {
        r = approx_ft_mw(inst, m);
        solver = "approx";
      } else {
        auto [regime, res] = solve_exact(inst, m);
        r = std::move(res);
        solver = std::string(to_string(regime));
      }
      j = result_json(r, m);
      j["regime"] = solver;
      emit(j);
      if (r.status == SolveStatus::Infeasible) {
        std::cerr << "no feasible labeling\n";
        return kExitVerdict;
      }
      write_labeling(out, r.labeling,
                     "solver=" + solver + " measure=" + std::string(to_string(m)) + " objective=" +
                         std::to_string(*r.objective));
      return 0;
    }
    if (*dist) {
      const Measure m = measure_option(measure_text);
      InstanceDocument doc = parse_instance_document(read_file(in));
      if (doc.problem != InstanceDocument::Problem::Tmb)
        throw Error(ErrorCode::ValidationError, "distance expects a tmb instance");
      const Instance& inst = doc.instance;
      Vertex u = vertex_option(from, doc, inst.graph.vertex_count());
      Vertex v = vertex_option(to, doc, inst.graph.vertex_count());
      std::optional<Labeling> labels;
      if (!labeling_path.empty()) labels = parse_labeling(read_file(labeling_path), inst);
      DistanceResult d = labels ? distance(u, v, Availability(*labels), inst, m)
                                : distance(u, v, Availability(full_temporal_graph(inst)), inst, m);
      json j{{"measure", std::string(to_string(m))}, {"from", u}, {"to", v}};
      j["value"] = d.value ? json(*d.value) : json(nullptr);
      j["witness"] = d.witness ? path_json(*d.witness, inst, doc) : json(nullptr);
      emit(j);
      return d.value ? 0 : exit_code(ErrorCode::Unreachable);
    }
    if (*verify) {
      const Measure m = measure_option(measure_text);
      Instance inst = parse_instance(read_file(in));
      Labeling l = parse_labeling(read_file(labeling_path), inst);
      bool feasible = is_feasible(inst, l);
      auto obj = objective(inst, l, m);
      json j{{"measure", std::string(to_string(m))}, {"feasible", feasible}};
      j["objective"] = obj ? json(*obj) : json(nullptr);
      emit(j);
      return feasible ? 0 : kExitVerdict;
    }
    if (*gen_sat || *gen_two) {
      CnfFormula f = parse_cnf(read_file(cnf_path));
      GadgetInstance g = *gen_sat ? gen_single_source_gadget(f, {measure_option(measure_text), a, b})
                                  : gen_two_source_gadget(f, sources);
      write_file(out, serialize(gadget_document(g)));
      json j{{"vertices", g.instance.graph.vertex_count()},
             {"edges", g.instance.graph.edge_count()},
             {"tau", g.instance.tau},
             {"metadata", g.metadata}};
      if (*gen_sat) {
        j["yes_value"] = g.yes_value;
        j["no_value_lower_bound"] = g.no_value_lower_bound;
      }
      emit(j);
      return 0;
    }
    if (*convert) {
      InstanceDocument doc = parse_instance_document(read_file(in));
      InstanceDocument outdoc = doc;
      if (target == "reachfast") {
        if (doc.problem != InstanceDocument::Problem::Tmb) throw Error(ErrorCode::ValidationError, "input is not tmb");
        outdoc.problem = InstanceDocument::Problem::ReachFast;
        outdoc.reachfast = tmb_to_reachfast(doc.instance);
        outdoc.instance = Instance{};
      } else {
        if (doc.problem != InstanceDocument::Problem::ReachFast)
          throw Error(ErrorCode::ValidationError, "input is not reachfast");
        outdoc.problem = InstanceDocument::Problem::Tmb;
        outdoc.instance = reachfast_to_tmb(doc.reachfast);
        outdoc.instance.validate();
      }
      write_file(out, serialize(outdoc));
      emit(json{{"converted_to", target}});
      return 0;
    }
    if (*witness) {
      CnfFormula f = parse_cnf(read_file(cnf_path));
      InstanceDocument doc = parse_instance_document(read_file(in));
      const auto& md = doc.metadata;
      auto kind = md.find("kind");
      if (kind == md.end()) throw Error(ErrorCode::ValidationError, "instance carries no gadget metadata");
      GadgetInstance g;
      if (kind->second == "single-source") {
        GadgetParams p{measure_option(md.at("measure")), std::stoll(md.at("a")),
                       md.contains("b") ? std::stoll(md.at("b")) : 2};
        g = gen_single_source_gadget(f, p);
      } else {
        g = gen_two_source_gadget(f, std::stoi(md.at("source_count")));
      }
      if (!(gadget_document(g) == doc))
        throw Error(ErrorCode::ValidationError, "gadget instance does not match the given formula");
      Assignment alpha = parse_bits(bits, f.variable_count);
      Labeling l = g.layout ? two_source_witness_labeling(g, alpha) : gadget_labeling_from_assignment(g, alpha);
      write_labeling(out, l, "witness assignment=" + bits);
      json j{{"feasible", is_feasible(g.instance, l)}};
      if (g.params) {
        auto obj = objective(g.instance, l, g.params->measure);
        j["objective"] = obj ? json(*obj) : json(nullptr);
        j["yes_value"] = g.yes_value;
      }
      emit(j);
      return 0;
    }
    if (*dot) {
      InstanceDocument doc = parse_instance_document(read_file(in));
      std::optional<Labeling> l;
      if (!labeling_path.empty()) {
        l = parse_labeling_document(read_file(labeling_path)).labels;
      }
      write_file(out, to_dot(doc, l ? &*l : nullptr));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
