#include "tmb/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tmb {

using nlohmann::json;

bool operator==(const InstanceDocument& a, const InstanceDocument& b) {
  if (a.problem != b.problem || a.names != b.names || a.roles != b.roles || a.metadata != b.metadata) return false;
  if (a.problem == InstanceDocument::Problem::Tmb) return a.instance == b.instance;
  const auto& x = a.reachfast;
  const auto& y = b.reachfast;
  return x.graph == y.graph && x.sources == y.sources && x.traversal == y.traversal && x.labels == y.labels &&
         x.tau == y.tau;
}

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path + "." + key, "missing field");
  return *it;
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_fail(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    parse_fail(path, "integer out of range");
  return j.get<std::int64_t>();
}

int small_integer(const json& j, const std::string& path) {
  auto v = integer(j, path);
  if (v < INT32_MIN || v > INT32_MAX) parse_fail(path, "integer out of range");
  return static_cast<int>(v);
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  return j;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    if (!j[i].is_string()) parse_fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<Time> time_list(const json& j, const std::string& path) {
  std::vector<Time> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(integer(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json traversal_json(const TraversalSpec& spec) {
  json out = json::array();
  for (EdgeId e = 0; e < spec.edge_count(); ++e) {
    json ov = json::array();
    for (const auto& [t, w] : spec.overrides(e)) ov.push_back({t, w});
    out.push_back({{"default", spec.default_weight(e)}, {"overrides", ov}});
  }
  return out;
}

TraversalSpec parse_traversal(const json& j, int edge_count) {
  array(j, "traversal");
  if (static_cast<int>(j.size()) != edge_count)
    throw Error(ErrorCode::ValidationError, "traversal must have one entry per edge");
  TraversalSpec spec(std::vector<Weight>(edge_count, 0));
  for (int e = 0; e < edge_count; ++e) {
    const std::string path = "traversal[" + std::to_string(e) + "]";
    spec.set_default(e, integer(field(j[e], "default", path), path + ".default"));
    const json& ov = array(field(j[e], "overrides", path), path + ".overrides");
    for (std::size_t k = 0; k < ov.size(); ++k) {
      const std::string opath = path + ".overrides[" + std::to_string(k) + "]";
      if (!ov[k].is_array() || ov[k].size() != 2) parse_fail(opath, "expected [time, weight]");
      Time t = integer(ov[k][0], opath + "[0]");
      if (spec.overrides(e).contains(t))
        throw Error(ErrorCode::ValidationError, opath + ": duplicate override time " + std::to_string(t));
      spec.set_override(e, t, integer(ov[k][1], opath + "[1]"));
    }
  }
  return spec;
}

json labels_json(const Labeling& labels) {
  json out = json::array();
  for (const auto& set : labels.raw()) out.push_back(set);
  return out;
}

Labeling parse_labels(const json& j, const std::string& path) {
  std::vector<std::vector<Time>> sets;
  for (std::size_t e = 0; e < array(j, path).size(); ++e) sets.push_back(time_list(j[e], path + "[" + std::to_string(e) + "]"));
  return Labeling(std::move(sets));
}

}  // namespace

InstanceDocument parse_instance_document(std::string_view text) {
  json j = parse_json(text);
  InstanceDocument doc;
  if (integer(field(j, "format_version", "$"), "format_version") != kFormatVersion)
    parse_fail("format_version", "unsupported version");
  std::string problem = "tmb";
  if (j.contains("problem")) {
    if (!j["problem"].is_string()) parse_fail("problem", "expected a string");
    problem = j["problem"].get<std::string>();
  }
  if (problem != "tmb" && problem != "reachfast") parse_fail("problem", "expected \"tmb\" or \"reachfast\"");

  const json& vertices = field(j, "vertices", "$");
  const int n = small_integer(field(vertices, "count", "vertices"), "vertices.count");
  if (vertices.contains("names")) doc.names = string_list(vertices["names"], "vertices.names");
  if (!doc.names.empty() && static_cast<int>(doc.names.size()) != n)
    throw Error(ErrorCode::ValidationError, "vertices.names must have one entry per vertex");

  std::vector<std::pair<Vertex, Vertex>> edges;
  const json& ej = array(field(j, "edges", "$"), "edges");
  for (std::size_t e = 0; e < ej.size(); ++e) {
    const std::string path = "edges[" + std::to_string(e) + "]";
    if (!ej[e].is_array() || ej[e].size() != 2) parse_fail(path, "expected [u, v]");
    edges.emplace_back(small_integer(ej[e][0], path + "[0]"), small_integer(ej[e][1], path + "[1]"));
  }
  StaticGraph graph(n, std::move(edges));

  std::vector<Vertex> sources;
  const json& sj = array(field(j, "sources", "$"), "sources");
  for (std::size_t i = 0; i < sj.size(); ++i) sources.push_back(small_integer(sj[i], "sources[" + std::to_string(i) + "]"));
  std::sort(sources.begin(), sources.end());
  if (std::adjacent_find(sources.begin(), sources.end()) != sources.end())
    throw Error(ErrorCode::ValidationError, "sources contain a duplicate");

  const Time tau = integer(field(j, "tau", "$"), "tau");
  TraversalSpec traversal = parse_traversal(field(j, "traversal", "$"), graph.edge_count());

  if (j.contains("roles")) doc.roles = string_list(j["roles"], "roles");
  if (!doc.roles.empty() && static_cast<int>(doc.roles.size()) != n)
    throw Error(ErrorCode::ValidationError, "roles must have one entry per vertex");
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) parse_fail("metadata", "expected an object");
    for (const auto& [k, v] : j["metadata"].items()) {
      if (!v.is_string()) parse_fail("metadata." + k, "expected a string");
      doc.metadata[k] = v.get<std::string>();
    }
  }

  if (problem == "tmb") {
    doc.problem = InstanceDocument::Problem::Tmb;
    std::vector<Time> mu = time_list(field(j, "multiplicity", "$"), "multiplicity");
    doc.instance = Instance{std::move(graph), std::move(sources), std::move(traversal), std::move(mu), tau};
    doc.instance.validate();
  } else {
    doc.problem = InstanceDocument::Problem::ReachFast;
    Labeling labels = parse_labels(field(j, "labels", "$"), "labels");
    doc.reachfast = ReachFastInstance{std::move(graph), std::move(sources), std::move(traversal), std::move(labels), tau};
    doc.reachfast.validate();
  }
  return doc;
}

std::string serialize(const InstanceDocument& doc) {
  const bool tmb = doc.problem == InstanceDocument::Problem::Tmb;
  const StaticGraph& g = tmb ? doc.instance.graph : doc.reachfast.graph;
  json j;
  j["format_version"] = kFormatVersion;
  j["problem"] = tmb ? "tmb" : "reachfast";
  j["vertices"] = {{"count", g.vertex_count()}};
  if (!doc.names.empty()) j["vertices"]["names"] = doc.names;
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  j["sources"] = tmb ? doc.instance.sources : doc.reachfast.sources;
  j["tau"] = tmb ? doc.instance.tau : doc.reachfast.tau;
  j["traversal"] = traversal_json(tmb ? doc.instance.traversal : doc.reachfast.traversal);
  if (tmb)
    j["multiplicity"] = doc.instance.multiplicity;
  else
    j["labels"] = labels_json(doc.reachfast.labels);
  if (!doc.roles.empty()) j["roles"] = doc.roles;
  if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
  return j.dump(2) + "\n";
}

Instance parse_instance(std::string_view text) {
  auto doc = parse_instance_document(text);
  if (doc.problem != InstanceDocument::Problem::Tmb)
    throw Error(ErrorCode::ValidationError, "expected a tmb instance, found reachfast");
  return doc.instance;
}

std::string serialize_instance(const Instance& instance) {
  InstanceDocument doc;
  doc.instance = instance;
  return serialize(doc);
}

LabelingDocument parse_labeling_document(std::string_view text) {
  json j = parse_json(text);
  if (integer(field(j, "format_version", "$"), "format_version") != kFormatVersion)
    parse_fail("format_version", "unsupported version");
  LabelingDocument doc;
  doc.labels = parse_labels(field(j, "labels", "$"), "labels");
  if (j.contains("note")) {
    if (!j["note"].is_string()) parse_fail("note", "expected a string");
    doc.note = j["note"].get<std::string>();
  }
  return doc;
}

std::string serialize(const LabelingDocument& doc) {
  json j;
  j["format_version"] = kFormatVersion;
  j["labels"] = labels_json(doc.labels);
  if (doc.note) j["note"] = *doc.note;
  return j.dump(2) + "\n";
}

Labeling parse_labeling(std::string_view text, const Instance& instance) {
  Labeling l = parse_labeling_document(text).labels;
  if (l.edge_count() != instance.graph.edge_count())
    throw Error(ErrorCode::ValidationError, "labeling has " + std::to_string(l.edge_count()) + " edges, instance has " +
                                                std::to_string(instance.graph.edge_count()));
  for (EdgeId e = 0; e < l.edge_count(); ++e)
    for (Time t : l.at(e))
      if (t < 1 || t > instance.tau)
        throw Error(ErrorCode::ValidationError, "label " + std::to_string(t) + " on edge " + std::to_string(e) +
                                                    " outside 1..tau");
  return l;
}

CnfFormula parse_cnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<std::pair<long long, long long>> header;
  CnfFormula f;
  std::vector<Literal> clause;
  auto fail = [&](const std::string& what) { throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what); };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      if (header) fail("duplicate header");
      std::string kind;
      long long vars = -1, clauses = -1;
      if (!(ls >> kind >> vars >> clauses) || kind != "cnf" || vars < 0 || clauses < 0 || vars > 1'000'000 ||
          clauses > 10'000'000)
        fail("malformed header, expected 'p cnf VARS CLAUSES'");
      if (ls >> tok) fail("trailing tokens after header");
      header = {vars, clauses};
      f.variable_count = static_cast<int>(vars);
      continue;
    }
    if (!header) fail("clause before header");
    ls.clear();
    ls.str(line);
    while (ls >> tok) {
      long long v = 0;
      std::size_t used = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        fail("expected an integer literal, got '" + tok + "'");
      }
      if (used != tok.size()) fail("expected an integer literal, got '" + tok + "'");
      if (v == 0) {
        f.clauses.push_back(std::move(clause));
        clause.clear();
        continue;
      }
      long long var = v < 0 ? -v : v;
      if (var > header->first) fail("literal " + tok + " exceeds the declared variable count");
      clause.push_back({static_cast<int>(var - 1), v > 0});
    }
  }
  if (!header) throw Error(ErrorCode::ParseError, "missing 'p cnf' header");
  if (!clause.empty()) throw Error(ErrorCode::ParseError, "last clause is not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != header->second)
    throw Error(ErrorCode::ParseError, "header declares " + std::to_string(header->second) + " clauses, found " +
                                           std::to_string(f.clauses.size()));
  return f;
}

std::string serialize_cnf(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variable_count << ' ' << formula.clauses.size() << '\n';
  for (const auto& clause : formula.clauses) {
    for (const Literal& l : clause) out << (l.positive ? l.variable + 1 : -(l.variable + 1)) << ' ';
    out << "0\n";
  }
  return out.str();
}

InstanceDocument gadget_document(const GadgetInstance& gadget) {
  InstanceDocument doc;
  doc.instance = gadget.instance;
  doc.names = gadget.vertex_names;
  doc.roles = gadget.vertex_roles;
  doc.metadata = gadget.metadata;
  return doc;
}

std::string to_dot(const InstanceDocument& doc, const Labeling* labeling) {
  const bool tmb = doc.problem == InstanceDocument::Problem::Tmb;
  const StaticGraph& g = tmb ? doc.instance.graph : doc.reachfast.graph;
  const TraversalSpec& tr = tmb ? doc.instance.traversal : doc.reachfast.traversal;
  const auto& sources = tmb ? doc.instance.sources : doc.reachfast.sources;
  if (!labeling && !tmb) labeling = &doc.reachfast.labels;
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "graph tmb {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::string name = doc.names.empty() ? std::to_string(v) : doc.names[v];
    out << "  " << v << " [label=" << quote(name) << (std::binary_search(sources.begin(), sources.end(), v) ? ", shape=doublecircle" : "")
        << "];\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::ostringstream label;
    label << "w=" << tr.default_weight(e);
    for (const auto& [t, w] : tr.overrides(e)) label << " (" << t << "," << w << ")";
    if (tmb) label << " mu=" << doc.instance.multiplicity[e];
    if (labeling && e < labeling->edge_count()) {
      label << " L={";
      for (std::size_t i = 0; i < labeling->at(e).size(); ++i) label << (i ? "," : "") << labeling->at(e)[i];
      label << "}";
    }
    out << "  " << g.endpoints(e).first << " -- " << g.endpoints(e).second << " [label=" << quote(label.str()) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ValidationError, "cannot write " + path);
  out << content;
}

}  // namespace tmb
