#include "tmb/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace tmb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::MultiplicityViolation: return "MultiplicityViolation";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::WrongSourceCount: return "WrongSourceCount";
    case ErrorCode::MultiplicityTooSmall: return "MultiplicityTooSmall";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnsatisfiedClause: return "UnsatisfiedClause";
    case ErrorCode::NotThreeSat: return "NotThreeSat";
    case ErrorCode::ContradictoryClause: return "ContradictoryClause";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NoTractableRegime: return "NoTractableRegime";
  }
  return "Unknown";
}

StaticGraph::StaticGraph(int vertex_count, std::vector<std::pair<Vertex, Vertex>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count < 0) throw Error(ErrorCode::ValidationError, "negative vertex count");
  incident_.resize(vertex_count);
  std::set<std::pair<Vertex, Vertex>> seen;
  for (EdgeId e = 0; e < edge_count(); ++e) {
    auto [u, v] = edges_[e];
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw Error(ErrorCode::ValidationError, "edge " + std::to_string(e) + " endpoint out of range");
    if (u == v) throw Error(ErrorCode::ValidationError, "edge " + std::to_string(e) + " is a self-loop");
    if (!seen.insert(std::minmax(u, v)).second)
      throw Error(ErrorCode::ValidationError, "edge " + std::to_string(e) + " duplicates an earlier edge");
    incident_[u].push_back(e);
    incident_[v].push_back(e);
  }
}

std::optional<EdgeId> StaticGraph::find_edge(Vertex u, Vertex v) const {
  for (EdgeId e : incident_[u])
    if (other(e, u) == v) return e;
  return std::nullopt;
}

bool StaticGraph::is_connected() const {
  if (vertex_count_ == 0) return true;
  std::vector<bool> seen(vertex_count_, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident_[v]) {
      Vertex w = other(e, v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertex_count_;
}

bool StaticGraph::is_tree() const {
  return vertex_count_ > 0 && edge_count() == vertex_count_ - 1 && is_connected();
}

void TraversalSpec::validate(Time tau) const {
  for (EdgeId e = 0; e < edge_count(); ++e) {
    if (defaults_[e] < 0)
      throw Error(ErrorCode::ValidationError, "negative default weight on edge " + std::to_string(e));
    for (auto [t, w] : overrides_[e]) {
      if (t < 1 || t > tau)
        throw Error(ErrorCode::ValidationError,
                    "override time " + std::to_string(t) + " on edge " + std::to_string(e) + " outside 1..tau");
      if (w < 0) throw Error(ErrorCode::ValidationError, "negative override weight on edge " + std::to_string(e));
    }
  }
}

Labeling::Labeling(std::vector<std::vector<Time>> labels) : labels_(std::move(labels)) {
  for (auto& set : labels_) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
}

bool Labeling::contains(EdgeId e, Time t) const {
  return std::binary_search(labels_[e].begin(), labels_[e].end(), t);
}

void Labeling::add(EdgeId e, Time t) {
  auto& set = labels_[e];
  auto it = std::lower_bound(set.begin(), set.end(), t);
  if (it == set.end() || *it != t) set.insert(it, t);
}

void Labeling::set(EdgeId e, std::vector<Time> times) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  labels_[e] = std::move(times);
}

std::size_t Labeling::total_labels() const {
  return std::accumulate(labels_.begin(), labels_.end(), std::size_t{0},
                         [](std::size_t acc, const auto& s) { return acc + s.size(); });
}

void Instance::validate() const {
  if (tau < 1) throw Error(ErrorCode::ValidationError, "tau must be positive");
  if (traversal.edge_count() != graph.edge_count())
    throw Error(ErrorCode::ValidationError, "traversal spec does not cover every edge");
  if (static_cast<int>(multiplicity.size()) != graph.edge_count())
    throw Error(ErrorCode::ValidationError, "multiplicity does not cover every edge");
  traversal.validate(tau);
  for (EdgeId e = 0; e < graph.edge_count(); ++e)
    if (multiplicity[e] < 1 || multiplicity[e] > tau)
      throw Error(ErrorCode::ValidationError, "multiplicity of edge " + std::to_string(e) + " outside 1..tau");
  if (sources.empty()) throw Error(ErrorCode::ValidationError, "source set is empty");
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i] < 0 || sources[i] >= graph.vertex_count())
      throw Error(ErrorCode::ValidationError, "source out of range");
    if (i > 0 && sources[i] <= sources[i - 1])
      throw Error(ErrorCode::ValidationError, "sources must be sorted and unique");
  }
}

bool Instance::respects_multiplicity(const Labeling& labeling) const {
  if (labeling.edge_count() != graph.edge_count()) return false;
  for (EdgeId e = 0; e < graph.edge_count(); ++e)
    if (static_cast<Time>(labeling.at(e).size()) > multiplicity[e]) return false;
  return true;
}

void Instance::require_multiplicity(const Labeling& labeling) const {
  if (labeling.edge_count() != graph.edge_count())
    throw Error(ErrorCode::ValidationError, "labeling edge count does not match the instance");
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (static_cast<Time>(labeling.at(e).size()) > multiplicity[e])
      throw Error(ErrorCode::MultiplicityViolation,
                  "edge " + std::to_string(e) + " carries " + std::to_string(labeling.at(e).size()) +
                      " labels, multiplicity " + std::to_string(multiplicity[e]));
    for (Time t : labeling.at(e))
      if (t < 1 || t > tau)
        throw Error(ErrorCode::ValidationError, "label " + std::to_string(t) + " outside 1..tau");
  }
}

void ReachFastInstance::validate() const {
  if (tau < 1) throw Error(ErrorCode::ValidationError, "tau must be positive");
  if (traversal.edge_count() != graph.edge_count() || labels.edge_count() != graph.edge_count())
    throw Error(ErrorCode::ValidationError, "per-edge data does not cover every edge");
  traversal.validate(tau);
  for (EdgeId e = 0; e < graph.edge_count(); ++e)
    for (Time t : labels.at(e))
      if (t < 1 || t > tau) throw Error(ErrorCode::ValidationError, "label outside 1..tau");
  for (Vertex s : sources)
    if (s < 0 || s >= graph.vertex_count()) throw Error(ErrorCode::ValidationError, "source out of range");
}

std::vector<Vertex> TemporalPath::vertices(const StaticGraph& graph) const {
  std::vector<Vertex> out{from};
  for (const Step& step : steps) {
    auto [a, b] = graph.endpoints(step.edge);
    if (a == out.back()) out.push_back(b);
    else if (b == out.back()) out.push_back(a);
    else return {};
  }
  return out;
}

Vertex TemporalPath::to(const StaticGraph& graph) const {
  auto vs = vertices(graph);
  return vs.empty() ? -1 : vs.back();
}

bool is_simple_static_path(const TemporalPath& path, const StaticGraph& graph) {
  if (path.steps.empty()) return false;
  for (const Step& s : path.steps)
    if (s.edge < 0 || s.edge >= graph.edge_count()) return false;
  if (path.from < 0 || path.from >= graph.vertex_count()) return false;
  auto vs = path.vertices(graph);
  if (vs.empty()) return false;
  std::vector<bool> seen(graph.vertex_count(), false);
  for (Vertex v : vs) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

PathStats path_stats(const TemporalPath& path, const StaticGraph& graph, const TraversalSpec& traversal) {
  if (!is_simple_static_path(path, graph))
    throw Error(ErrorCode::InvalidPath, "steps do not form a simple static path");
  const auto& steps = path.steps;
  PathStats st{};
  st.departure = steps.front().departure;
  st.hops = static_cast<Time>(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Weight w = traversal.weight(steps[i].edge, steps[i].departure);
    st.travel += w;
    if (i + 1 < steps.size()) {
      Time gap = steps[i + 1].departure - steps[i].departure - w;
      if (gap < 0) throw Error(ErrorCode::InvalidPath, "step " + std::to_string(i + 1) + " departs too early");
      st.waiting += gap;
    } else {
      st.arrival = steps[i].departure + w;
    }
  }
  st.duration = st.arrival - st.departure;
  return st;
}

bool validate_path(const TemporalPath& path, const Availability& availability, const StaticGraph& graph,
                   const TraversalSpec& traversal) {
  if (!is_simple_static_path(path, graph)) return false;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Step& s = path.steps[i];
    if (!availability.available(s.edge, s.departure)) return false;
    if (i + 1 < path.steps.size() &&
        s.departure + traversal.weight(s.edge, s.departure) > path.steps[i + 1].departure)
      return false;
  }
  return true;
}

std::vector<Time> TemporalNetwork::departures(EdgeId e, Time ready) const {
  std::vector<Time> out;
  std::vector<Weight> weights_seen;
  auto consider = [&](Time t) {
    Weight w = traversal->weight(e, t);
    if (weight_limit && w >= *weight_limit) return;
    if (std::find(weights_seen.begin(), weights_seen.end(), w) != weights_seen.end()) return;
    weights_seen.push_back(w);
    out.push_back(t);
  };
  ready = std::max<Time>(ready, 1);
  if (const Labeling* lab = availability.labeling()) {
    const auto& set = lab->at(e);
    for (auto it = std::lower_bound(set.begin(), set.end(), ready); it != set.end(); ++it) consider(*it);
    return out;
  }
  const auto& ov = traversal->overrides(e);
  Time plain = ready;
  while (ov.contains(plain)) ++plain;
  bool plain_used = plain > tau;
  for (auto it = ov.lower_bound(ready); it != ov.end() && it->first <= tau; ++it) {
    if (!plain_used && plain < it->first) {
      consider(plain);
      plain_used = true;
    }
    consider(it->first);
  }
  if (!plain_used) consider(plain);
  return out;
}

std::vector<Time> TemporalNetwork::start_times(Vertex v) const {
  std::vector<Time> out;
  if (const Labeling* lab = availability.labeling()) {
    for (EdgeId e : graph->incident(v)) out.insert(out.end(), lab->at(e).begin(), lab->at(e).end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  if (!graph->incident(v).empty()) {
    out.resize(static_cast<std::size_t>(tau));
    std::iota(out.begin(), out.end(), Time{1});
  }
  return out;
}

std::vector<bool> reachable_from(const TemporalNetwork& net, Vertex s) {
  // Earliest arrival per vertex; a vertex is reachable iff it gets a finite value.
  const auto& g = *net.graph;
  constexpr Time kNever = std::numeric_limits<Time>::max();
  std::vector<Time> best(g.vertex_count(), kNever);
  std::vector<bool> done(g.vertex_count(), false);
  best[s] = 1;
  using Item = std::pair<Time, Vertex>;
  std::set<Item> queue{{1, s}};
  while (!queue.empty()) {
    auto [a, v] = *queue.begin();
    queue.erase(queue.begin());
    if (done[v]) continue;
    done[v] = true;
    for (EdgeId e : g.incident(v)) {
      Vertex w = g.other(e, v);
      if (done[w]) continue;
      for (Time t : net.departures(e, a)) {
        Time arr = t + net.traversal->weight(e, t);
        if (arr < best[w]) {
          queue.erase({best[w], w});
          best[w] = arr;
          queue.insert({arr, w});
        }
      }
    }
  }
  std::vector<bool> out(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) out[v] = best[v] != kNever;
  return out;
}

FullTemporalGraph full_temporal_graph(const Instance& instance) { return FullTemporalGraph{instance.tau}; }

bool is_feasible(const Instance& instance, const Labeling& labeling) {
  instance.require_multiplicity(labeling);
  auto net = TemporalNetwork::labeled(instance, labeling);
  for (Vertex s : instance.sources) {
    auto reach = reachable_from(net, s);
    if (std::find(reach.begin(), reach.end(), false) != reach.end()) return false;
  }
  return true;
}

}  // namespace tmb
