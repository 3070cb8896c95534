#include "tmb/distances.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <tuple>

namespace tmb {

namespace {

constexpr Time kNever = std::numeric_limits<Time>::max();

// Parent pointer of a search state: which state we came from and by which step.
struct Parent {
  int state = -1;
  Step step{};
};

struct ArrivalTree {
  std::vector<Time> arrival;     // kNever if unreached
  std::vector<Vertex> prev;      // previous vertex on the tree path
  std::vector<Step> via;         // step that entered the vertex
  std::vector<Time> first_departure;
};

// Earliest-arrival tree from `s` when the first step may depart no earlier than `ready`.
ArrivalTree earliest_arrival_tree(const TemporalNetwork& net, Vertex s, Time ready) {
  const auto& g = *net.graph;
  const int n = g.vertex_count();
  ArrivalTree tree{std::vector<Time>(n, kNever), std::vector<Vertex>(n, -1), std::vector<Step>(n),
                   std::vector<Time>(n, kNever)};
  std::vector<bool> done(n, false);
  tree.arrival[s] = ready;
  std::set<std::pair<Time, Vertex>> queue{{ready, s}};
  while (!queue.empty()) {
    auto [a, v] = *queue.begin();
    queue.erase(queue.begin());
    done[v] = true;
    for (EdgeId e : g.incident(v)) {
      Vertex w = g.other(e, v);
      if (done[w]) continue;
      for (Time t : net.departures(e, a)) {
        Time arr = t + net.traversal->weight(e, t);
        if (arr < tree.arrival[w]) {
          queue.erase({tree.arrival[w], w});
          tree.arrival[w] = arr;
          tree.prev[w] = v;
          tree.via[w] = Step{e, t};
          tree.first_departure[w] = v == s ? t : tree.first_departure[v];
          queue.insert({arr, w});
        }
      }
    }
  }
  tree.arrival[s] = kNever;
  return tree;
}

TemporalPath tree_path(const ArrivalTree& tree, Vertex s, Vertex v) {
  TemporalPath path{s, {}};
  for (Vertex x = v; x != s; x = tree.prev[x]) path.steps.push_back(tree.via[x]);
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

std::vector<DistanceResult> earliest_arrival(const TemporalNetwork& net, Vertex s) {
  auto tree = earliest_arrival_tree(net, s, 1);
  std::vector<DistanceResult> out(net.graph->vertex_count());
  for (Vertex v = 0; v < net.graph->vertex_count(); ++v)
    if (v != s && tree.arrival[v] != kNever) out[v] = {tree.arrival[v], tree_path(tree, s, v)};
  return out;
}

// LD and FT: sweep the first departure time and run an earliest-arrival search per start.
std::vector<DistanceResult> departure_sweep(const TemporalNetwork& net, Vertex s, Measure m) {
  const int n = net.graph->vertex_count();
  std::vector<DistanceResult> out(n);
  auto starts = net.start_times(s);
  int settled = 0;
  for (auto it = starts.rbegin(); it != starts.rend(); ++it) {
    auto tree = earliest_arrival_tree(net, s, *it);
    for (Vertex v = 0; v < n; ++v) {
      if (v == s || tree.arrival[v] == kNever) continue;
      if (m == Measure::LD) {
        if (out[v].value) continue;
        out[v] = {tree.first_departure[v], tree_path(tree, s, v)};
        ++settled;
      } else {
        Time dur = tree.arrival[v] - tree.first_departure[v];
        if (!out[v].value || dur < *out[v].value) out[v] = {dur, tree_path(tree, s, v)};
      }
    }
    if (m == Measure::LD && settled == n - 1) break;
  }
  return out;
}

// ST and MH: cost-ordered search over (vertex, arrival) states, keeping only
// states that arrive strictly earlier than every cheaper state at the same vertex.
std::vector<DistanceResult> cost_search(const TemporalNetwork& net, Vertex s, Measure m) {
  const auto& g = *net.graph;
  const int n = g.vertex_count();
  struct State {
    Vertex v;
    Time arrival;
    Time cost;
    Parent parent;
  };
  std::vector<State> states{{s, 1, 0, {}}};
  using Key = std::tuple<Time, Time, int>;  // cost, arrival, state index
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  queue.push({0, 1, 0});
  std::vector<Time> best_arrival(n, kNever);
  std::vector<DistanceResult> out(n);

  auto path_of = [&](int idx) {
    TemporalPath path{s, {}};
    for (int i = idx; states[i].parent.state >= 0; i = states[i].parent.state)
      path.steps.push_back(states[i].parent.step);
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
  };

  while (!queue.empty()) {
    auto [cost, arrival, idx] = queue.top();
    queue.pop();
    Vertex v = states[idx].v;
    if (arrival >= best_arrival[v]) continue;
    if (best_arrival[v] == kNever && v != s) out[v] = {cost, path_of(idx)};
    best_arrival[v] = arrival;
    for (EdgeId e : g.incident(v)) {
      Vertex w = g.other(e, v);
      for (Time t : net.departures(e, arrival)) {
        Weight wt = net.traversal->weight(e, t);
        Time arr = t + wt;
        if (arr >= best_arrival[w]) continue;
        Time next_cost = cost + (m == Measure::ST ? wt : 1);
        states.push_back({w, arr, next_cost, {idx, Step{e, t}}});
        queue.push({next_cost, arr, static_cast<int>(states.size()) - 1});
      }
    }
  }
  return out;
}

// Vertex subset as a bitset; MW must track visited vertices because cutting a
// cycle out of a walk can increase its waiting time.
class VertexSet {
 public:
  explicit VertexSet(int n) : words_((n + 63) / 64, 0) {}
  void insert(Vertex v) { words_[v / 64] |= std::uint64_t{1} << (v % 64); }
  bool contains(Vertex v) const { return (words_[v / 64] >> (v % 64)) & 1U; }
  bool subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<DistanceResult> waiting_search(const TemporalNetwork& net, Vertex s) {
  const auto& g = *net.graph;
  const int n = g.vertex_count();
  struct Label {
    Vertex v;
    Time arrival;
    Time wait;
    VertexSet visited;
    Parent parent;
    bool dead = false;
  };
  std::vector<Label> labels;
  std::vector<std::vector<int>> at_vertex(n);
  using Key = std::tuple<Time, Time, int>;  // wait, arrival, label index
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;

  // `a` dominates `b` if it can idle until b's arrival and still have waited
  // no longer, having used no vertex that b avoided.
  auto dominates = [](const Label& a, const Label& b) {
    return a.arrival <= b.arrival && a.wait + (b.arrival - a.arrival) <= b.wait && a.visited.subset_of(b.visited);
  };
  auto push = [&](Label label) {
    for (int i : at_vertex[label.v])
      if (!labels[i].dead && dominates(labels[i], label)) return;
    for (int i : at_vertex[label.v])
      if (!labels[i].dead && dominates(label, labels[i])) labels[i].dead = true;
    labels.push_back(std::move(label));
    int idx = static_cast<int>(labels.size()) - 1;
    at_vertex[labels[idx].v].push_back(idx);
    queue.push({labels[idx].wait, labels[idx].arrival, idx});
  };

  VertexSet start(n);
  start.insert(s);
  for (EdgeId e : g.incident(s)) {
    Vertex w = g.other(e, s);
    for (Time t : net.start_times(s)) {
      if (!net.usable(e, t)) continue;
      VertexSet visited = start;
      visited.insert(w);
      push({w, t + net.traversal->weight(e, t), 0, std::move(visited), {-1, Step{e, t}}});
    }
  }

  std::vector<DistanceResult> out(n);
  auto path_of = [&](int idx) {
    TemporalPath path{s, {}};
    for (int i = idx; i >= 0; i = labels[i].parent.state) path.steps.push_back(labels[i].parent.step);
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
  };
  while (!queue.empty()) {
    auto [wait, arrival, idx] = queue.top();
    queue.pop();
    if (labels[idx].dead) continue;
    Vertex v = labels[idx].v;
    if (!out[v].value) out[v] = {wait, path_of(idx)};
    for (EdgeId e : g.incident(v)) {
      Vertex w = g.other(e, v);
      if (labels[idx].visited.contains(w)) continue;
      for (Time t : net.departures(e, arrival)) {
        VertexSet visited = labels[idx].visited;
        visited.insert(w);
        push({w, t + net.traversal->weight(e, t), wait + (t - arrival), std::move(visited), {idx, Step{e, t}}});
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::EA: return "EA";
    case Measure::LD: return "LD";
    case Measure::FT: return "FT";
    case Measure::ST: return "ST";
    case Measure::MH: return "MH";
    case Measure::MW: return "MW";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Measure m : kAllMeasures) {
    std::string name(to_string(m));
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == lower) return m;
  }
  return std::nullopt;
}

Time statistic(const PathStats& stats, Measure m) {
  switch (m) {
    case Measure::EA: return stats.arrival;
    case Measure::LD: return stats.departure;
    case Measure::FT: return stats.duration;
    case Measure::ST: return stats.travel;
    case Measure::MH: return stats.hops;
    case Measure::MW: return stats.waiting;
  }
  return 0;
}

std::vector<DistanceResult> sssp(const TemporalNetwork& net, Vertex s, Measure m) {
  if (s < 0 || s >= net.graph->vertex_count()) throw Error(ErrorCode::ValidationError, "vertex out of range");
  switch (m) {
    case Measure::EA: return earliest_arrival(net, s);
    case Measure::LD:
    case Measure::FT: return departure_sweep(net, s, m);
    case Measure::ST:
    case Measure::MH: return cost_search(net, s, m);
    case Measure::MW: return waiting_search(net, s);
  }
  return {};
}

DistanceResult distance(const TemporalNetwork& net, Vertex u, Vertex v, Measure m) {
  if (u == v) throw Error(ErrorCode::SameVertex, "distance is defined between distinct vertices");
  if (v < 0 || v >= net.graph->vertex_count()) throw Error(ErrorCode::ValidationError, "vertex out of range");
  return sssp(net, u, m)[v];
}

DistanceResult distance(Vertex u, Vertex v, const Availability& availability, const Instance& instance, Measure m) {
  return distance(TemporalNetwork{&instance.graph, &instance.traversal, instance.tau, availability}, u, v, m);
}

std::vector<DistanceResult> sssp(Vertex s, const Availability& availability, const Instance& instance, Measure m) {
  return sssp(TemporalNetwork{&instance.graph, &instance.traversal, instance.tau, availability}, s, m);
}

std::optional<Time> worst_case(const std::vector<DistanceResult>& row, Vertex s, Measure m) {
  std::optional<Time> worst;
  for (Vertex v = 0; v < static_cast<Vertex>(row.size()); ++v) {
    if (v == s) continue;
    if (!row[v].value) return std::nullopt;
    if (!worst || better(m, *worst, *row[v].value)) worst = row[v].value;
  }
  return worst;
}

std::optional<Time> objective(const Instance& instance, const Labeling& labeling, Measure m) {
  instance.require_multiplicity(labeling);
  auto net = TemporalNetwork::labeled(instance, labeling);
  std::optional<Time> worst;
  for (Vertex s : instance.sources) {
    auto w = worst_case(sssp(net, s, m), s, m);
    if (!w) {
      if (instance.graph.vertex_count() > 1) return std::nullopt;
      continue;
    }
    if (!worst || better(m, *worst, *w)) worst = w;
  }
  return worst;
}

namespace {

// Max duration and max waiting of temporal paths along growing simple static
// paths from `s`. For the current prefix, `first[t]` is the minimum first
// departure and `base[t]` the minimum (first departure + travel before the last
// step) over time-respecting prefixes whose last step departs at t.
struct MaxPathSweep {
  const TemporalNetwork& net;
  std::vector<Time>& max_duration;
  std::vector<Time>& max_waiting;
  std::vector<bool> on_path;

  void extend(Vertex v, const std::vector<Time>& first, const std::vector<Time>& base, EdgeId via) {
    const Time tau = net.tau;
    for (Time t = 1; t <= tau; ++t) {
      if (first[t] == kNever) continue;
      Weight w = net.traversal->weight(via, t);
      max_duration[v] = std::max(max_duration[v], t + w - first[t]);
      max_waiting[v] = std::max(max_waiting[v], t - base[t]);
    }
    on_path[v] = true;
    const auto& g = *net.graph;
    for (EdgeId e : g.incident(v)) {
      Vertex w = g.other(e, v);
      if (on_path[w]) continue;
      // Best values per arrival time at v, then prefix minima over arrival <= departure.
      std::vector<Time> first_by_arrival(tau + 2, kNever), base_by_arrival(tau + 2, kNever);
      for (Time t = 1; t <= tau; ++t) {
        if (first[t] == kNever) continue;
        Weight wt = net.traversal->weight(via, t);
        Time arr = t + wt;
        if (arr > tau) continue;
        first_by_arrival[arr] = std::min(first_by_arrival[arr], first[t]);
        base_by_arrival[arr] = std::min(base_by_arrival[arr], base[t] + wt);
      }
      std::vector<Time> next_first(tau + 1, kNever), next_base(tau + 1, kNever);
      Time run_first = kNever, run_base = kNever;
      bool any = false;
      for (Time t = 1; t <= tau; ++t) {
        run_first = std::min(run_first, first_by_arrival[t]);
        run_base = std::min(run_base, base_by_arrival[t]);
        if (run_first != kNever && net.usable(e, t)) {
          next_first[t] = run_first;
          next_base[t] = run_base;
          any = true;
        }
      }
      if (any) extend(w, next_first, next_base, e);
    }
    on_path[v] = false;
  }
};

}  // namespace

Bounds ft_mw_bounds(Vertex s, const Instance& instance, BoundsOptions options) {
  auto net = TemporalNetwork::full(instance);
  if (options.exclude_horizon_weights) net.weight_limit = instance.tau;
  auto fastest = sssp(net, s, Measure::FT);
  auto waiting = sssp(net, s, Measure::MW);
  const int n = instance.graph.vertex_count();
  Bounds b;
  for (Vertex v = 0; v < n; ++v) {
    if (v == s) continue;
    if (!fastest[v].value)
      throw Error(ErrorCode::Unreachable, "vertex " + std::to_string(v) + " unreachable from " + std::to_string(s));
    b.ft_min = std::max(b.ft_min, *fastest[v].value);
    b.mw_min = std::max(b.mw_min, *waiting[v].value);
  }

  std::vector<Time> max_duration(n, 0), max_waiting(n, 0);
  MaxPathSweep sweep{net, max_duration, max_waiting, std::vector<bool>(n, false)};
  sweep.on_path[s] = true;
  const auto& g = instance.graph;
  for (EdgeId e : g.incident(s)) {
    std::vector<Time> first(instance.tau + 1, kNever), base(instance.tau + 1, kNever);
    for (Time t = 1; t <= instance.tau; ++t)
      if (net.usable(e, t)) first[t] = base[t] = t;
    sweep.extend(g.other(e, s), first, base, e);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v == s) continue;
    b.ft_max = std::max(b.ft_max, max_duration[v]);
    b.mw_max = std::max(b.mw_max, max_waiting[v]);
  }
  return b;
}

}  // namespace tmb
