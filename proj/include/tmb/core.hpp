#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tmb/error.hpp"

namespace tmb {

using Vertex = int;
using EdgeId = int;
using Time = std::int64_t;
using Weight = std::int64_t;

/// Simple undirected loopless graph with dense, stable edge ids.
class StaticGraph {
 public:
  StaticGraph() = default;
  StaticGraph(int vertex_count, std::vector<std::pair<Vertex, Vertex>> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::pair<Vertex, Vertex>& endpoints(EdgeId e) const { return edges_[e]; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  std::span<const EdgeId> incident(Vertex v) const { return incident_[v]; }

  /// Endpoint of `e` that is not `v`; `v` must be an endpoint.
  Vertex other(EdgeId e, Vertex v) const {
    return edges_[e].first == v ? edges_[e].second : edges_[e].first;
  }
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  bool is_tree() const;
  bool is_connected() const;

  friend bool operator==(const StaticGraph& a, const StaticGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// tr(e, t): a per-edge default weight with sparse per-time overrides.
class TraversalSpec {
 public:
  TraversalSpec() = default;
  explicit TraversalSpec(std::vector<Weight> defaults)
      : defaults_(std::move(defaults)), overrides_(defaults_.size()) {}

  int edge_count() const { return static_cast<int>(defaults_.size()); }
  Weight default_weight(EdgeId e) const { return defaults_[e]; }
  const std::map<Time, Weight>& overrides(EdgeId e) const { return overrides_[e]; }

  Weight weight(EdgeId e, Time t) const {
    const auto& ov = overrides_[e];
    if (auto it = ov.find(t); it != ov.end()) return it->second;
    return defaults_[e];
  }

  void set_default(EdgeId e, Weight w) { defaults_[e] = w; }
  void set_override(EdgeId e, Time t, Weight w) { overrides_[e][t] = w; }
  EdgeId add_edge(Weight default_weight) {
    defaults_.push_back(default_weight);
    overrides_.emplace_back();
    return static_cast<EdgeId>(defaults_.size() - 1);
  }

  /// Throws ValidationError if a weight is negative or an override lies outside 1..tau.
  void validate(Time tau) const;

  friend bool operator==(const TraversalSpec&, const TraversalSpec&) = default;

 private:
  std::vector<Weight> defaults_;
  std::vector<std::map<Time, Weight>> overrides_;
};

/// Per-edge sorted, duplicate-free label sets.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(int edge_count) : labels_(edge_count) {}
  explicit Labeling(std::vector<std::vector<Time>> labels);

  int edge_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<Time>& at(EdgeId e) const { return labels_[e]; }
  bool contains(EdgeId e, Time t) const;
  void add(EdgeId e, Time t);
  void set(EdgeId e, std::vector<Time> times);
  std::size_t total_labels() const;

  const std::vector<std::vector<Time>>& raw() const { return labels_; }

  friend bool operator==(const Labeling&, const Labeling&) = default;
  friend auto operator<=>(const Labeling& a, const Labeling& b) { return a.labels_ <=> b.labels_; }

 private:
  std::vector<std::vector<Time>> labels_;
};

/// Δ-TMB input (G, S, tr, µ) with an explicit horizon τ.
struct Instance {
  StaticGraph graph;
  std::vector<Vertex> sources;  // sorted, unique
  TraversalSpec traversal;
  std::vector<Time> multiplicity;
  Time tau = 1;

  /// Structural checks only; reachability is a solver concern.
  void validate() const;
  bool respects_multiplicity(const Labeling& labeling) const;
  void require_multiplicity(const Labeling& labeling) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Δ-ReachFast input (G, λ, tr, S).
struct ReachFastInstance {
  StaticGraph graph;
  std::vector<Vertex> sources;
  TraversalSpec traversal;
  Labeling labels;
  Time tau = 1;

  void validate() const;
};

/// Marker for the full temporal graph: every edge available at every time in 1..τ.
struct FullTemporalGraph {
  Time tau = 1;
  bool available(Time t) const { return t >= 1 && t <= tau; }
};

struct Step {
  EdgeId edge;
  Time departure;
  friend bool operator==(const Step&, const Step&) = default;
};

struct TemporalPath {
  Vertex from = 0;
  std::vector<Step> steps;

  /// Vertex sequence implied by walking the steps from `from`; empty if the
  /// edges do not chain.
  std::vector<Vertex> vertices(const StaticGraph& graph) const;
  Vertex to(const StaticGraph& graph) const;
};

struct PathStats {
  Time departure;
  Time arrival;
  Time duration;
  Time travel;
  Time waiting;
  Time hops;
};

/// Throws InvalidPath if the path is empty, not a simple static path, or not time-respecting.
PathStats path_stats(const TemporalPath& path, const StaticGraph& graph, const TraversalSpec& traversal);

bool is_simple_static_path(const TemporalPath& path, const StaticGraph& graph);

/// Source of edge availability: an explicit labeling or the full temporal graph.
class Availability {
 public:
  Availability(const Labeling& labeling) : labeling_(&labeling) {}  // NOLINT
  Availability(Labeling&&) = delete;
  Availability(FullTemporalGraph full) : full_(full) {}               // NOLINT

  bool is_full() const { return labeling_ == nullptr; }
  bool available(EdgeId e, Time t) const {
    return labeling_ ? labeling_->contains(e, t) : full_.available(t);
  }
  const Labeling* labeling() const { return labeling_; }
  Time tau() const { return full_.tau; }

 private:
  const Labeling* labeling_ = nullptr;
  FullTemporalGraph full_{};
};

bool validate_path(const TemporalPath& path, const Availability& availability,
                   const StaticGraph& graph, const TraversalSpec& traversal);

/// Temporal graph view shared by the distance engine and the tree builders.
/// Non-owning: the instance and labeling must outlive it.
struct TemporalNetwork {
  const StaticGraph* graph;
  const TraversalSpec* traversal;
  Time tau;
  Availability availability;
  /// When set, temporal edges with weight >= this value are treated as absent.
  std::optional<Weight> weight_limit = std::nullopt;

  bool usable(EdgeId e, Time t) const {
    return availability.available(e, t) && (!weight_limit || traversal->weight(e, t) < *weight_limit);
  }

  static TemporalNetwork labeled(const Instance& instance, const Labeling& labeling) {
    return {&instance.graph, &instance.traversal, instance.tau, Availability(labeling)};
  }
  static TemporalNetwork labeled(const Instance&, Labeling&&) = delete;
  static TemporalNetwork labeled(Instance&&, const Labeling&) = delete;
  static TemporalNetwork full(const Instance& instance) {
    return {&instance.graph, &instance.traversal, instance.tau,
            Availability(FullTemporalGraph{instance.tau})};
  }
  static TemporalNetwork labeled(const ReachFastInstance& rf) {
    return {&rf.graph, &rf.traversal, rf.tau, Availability(rf.labels)};
  }

  /// Departure times on `e` worth trying for a traveller present from
  /// `ready`: for each distinct weight, the earliest available time >= ready.
  /// Any later departure with the same weight is dominated for every measure.
  std::vector<Time> departures(EdgeId e, Time ready) const;

  /// Every time the first step out of `v` may depart at.
  std::vector<Time> start_times(Vertex v) const;
};

/// Which vertices `s` reaches by a temporal path (s itself included).
std::vector<bool> reachable_from(const TemporalNetwork& net, Vertex s);

FullTemporalGraph full_temporal_graph(const Instance& instance);

/// True iff every source reaches every other vertex. Throws MultiplicityViolation.
bool is_feasible(const Instance& instance, const Labeling& labeling);

}  // namespace tmb
