#include "tmb/solvers.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tmb/tsot.hpp"

namespace tmb {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Approximate: return "approximate";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::SingleSource: return "single-source";
    case Regime::MultiplicityAtLeastSources: return "multiplicity-at-least-sources";
    case Regime::Tree: return "tree";
  }
  return "?";
}

SolveResult evaluate(const Instance& instance, const Labeling& labeling, Measure m, SolveStatus status) {
  SolveResult result;
  result.labeling = labeling;
  result.objective = objective(instance, labeling, m);
  if (!result.objective) {
    result.status = SolveStatus::Infeasible;
    return result;
  }
  result.status = status;
  auto net = TemporalNetwork::labeled(instance, result.labeling);
  for (Vertex s : instance.sources) {
    auto row = sssp(net, s, m);
    for (Vertex v = 0; v < instance.graph.vertex_count(); ++v)
      if (v != s) result.per_source_distances[{s, v}] = row[v];
  }
  return result;
}

namespace {

void require_ea_or_ld(Measure m) {
  if (m != Measure::EA && m != Measure::LD)
    throw Error(ErrorCode::InvalidParams, "exact solvers handle EA and LD only");
}

Tsot single_source_tree(const Instance& instance, Vertex s, Measure m) {
  return m == Measure::EA ? build_ea_tsot(s, instance) : build_ld_tsot(s, instance);
}

}  // namespace

SolveResult solve_single_source(const Instance& instance, Measure m) {
  require_ea_or_ld(m);
  if (instance.sources.size() != 1) throw Error(ErrorCode::WrongSourceCount, "expected exactly one source");
  auto tree = single_source_tree(instance, instance.sources.front(), m);
  return evaluate(instance, tree.labeling(instance.graph.edge_count()), m, SolveStatus::Optimal);
}

SolveResult solve_multi_full_mu(const Instance& instance, Measure m) {
  require_ea_or_ld(m);
  const auto k = static_cast<Time>(instance.sources.size());
  for (EdgeId e = 0; e < instance.graph.edge_count(); ++e)
    if (instance.multiplicity[e] < k)
      throw Error(ErrorCode::MultiplicityTooSmall, "edge " + std::to_string(e) + " has multiplicity below |S|");
  Labeling labeling(instance.graph.edge_count());
  for (Vertex s : instance.sources) {
    auto tree = single_source_tree(instance, s, m);
    for (Vertex v = 0; v < instance.graph.vertex_count(); ++v)
      if (tree.parent_edge[v] >= 0) labeling.add(tree.parent_edge[v], tree.parent_label[v]);
  }
  return evaluate(instance, labeling, m, SolveStatus::Optimal);
}

namespace {

// Parent vertex of each vertex when the tree is hung from `root`.
std::vector<Vertex> hang_tree(const StaticGraph& g, Vertex root) {
  std::vector<Vertex> parent(g.vertex_count(), -1);
  std::vector<Vertex> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(v)) {
      Vertex w = g.other(e, v);
      if (parent[w] < 0) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  return parent;
}

}  // namespace

bool tree_source_paths_have_multiplicity_two(const Instance& instance) {
  const auto& g = instance.graph;
  for (Vertex s : instance.sources) {
    auto parent = hang_tree(g, s);
    for (Vertex t : instance.sources) {
      for (Vertex x = t; x != s && parent[x] >= 0; x = parent[x])
        if (instance.multiplicity[*g.find_edge(x, parent[x])] < 2) return false;
    }
  }
  return true;
}

SolveResult solve_tree(const Instance& instance, Measure m) {
  require_ea_or_ld(m);
  const auto& g = instance.graph;
  if (!g.is_tree()) throw Error(ErrorCode::NotATree, "underlying graph is not a tree");
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (instance.multiplicity[e] < 2)
      throw Error(ErrorCode::MultiplicityTooSmall, "edge " + std::to_string(e) + " has multiplicity below 2");

  // forward[e]: max label among sources that cross e from endpoints(e).first to .second.
  std::vector<Time> forward(g.edge_count(), 0), backward(g.edge_count(), 0);
  for (Vertex s : instance.sources) {
    auto tree = single_source_tree(instance, s, m);
    auto parent = hang_tree(g, s);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      EdgeId e = tree.parent_edge[v];
      if (e < 0) continue;
      Time label = tree.parent_label[v];
      if (g.endpoints(e).first == parent[v])
        forward[e] = std::max(forward[e], label);
      else
        backward[e] = std::max(backward[e], label);
    }
  }
  Labeling labeling(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (forward[e] > 0) labeling.add(e, forward[e]);
    if (backward[e] > 0) labeling.add(e, backward[e]);
  }
  return evaluate(instance, labeling, m, SolveStatus::Optimal);
}

SolveResult approx_ft_mw(const Instance& instance, Measure m, BoundsOptions options) {
  if (m != Measure::FT && m != Measure::MW)
    throw Error(ErrorCode::InvalidParams, "approximation handles FT and MW only");
  if (instance.sources.size() != 1) throw Error(ErrorCode::WrongSourceCount, "expected exactly one source");
  Vertex s = instance.sources.front();
  auto bounds = ft_mw_bounds(s, instance, options);
  auto tree = build_ld_tsot(s, instance);
  auto result = evaluate(instance, tree.labeling(instance.graph.edge_count()), m, SolveStatus::Approximate);
  result.certificate = bounds;
  return result;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t binomial(Time n, Time k) {
  std::uint64_t r = 1;
  for (Time i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    std::uint64_t num = saturating_mul(r, static_cast<std::uint64_t>(n - k + i));
    if (num == kSaturated) return kSaturated;
    r = num / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t candidate_count(Time tau, Time k, bool maximal_only) {
  if (maximal_only) return binomial(tau, k);
  std::uint64_t total = 0;
  for (Time j = 0; j <= k; ++j) {
    std::uint64_t c = binomial(tau, j);
    if (c == kSaturated || total > kSaturated - c) return kSaturated;
    total += c;
  }
  return total;
}

void combinations(Time tau, Time k, Time from, std::vector<Time>& current, std::vector<std::vector<Time>>& out) {
  if (static_cast<Time>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (Time t = from; t <= tau; ++t) {
    current.push_back(t);
    combinations(tau, k, t + 1, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<Time>> candidate_sets(Time tau, Time k, bool maximal_only) {
  std::vector<std::vector<Time>> out;
  std::vector<Time> current;
  for (Time j = maximal_only ? k : 0; j <= k; ++j) combinations(tau, j, 1, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::uint64_t search_space_size(const Instance& instance, bool maximal_only) {
  std::uint64_t total = 1;
  for (EdgeId e = 0; e < instance.graph.edge_count(); ++e)
    total = saturating_mul(
        total, candidate_count(instance.tau, std::min(instance.multiplicity[e], instance.tau), maximal_only));
  return total;
}

SolveResult brute_force(const Instance& instance, Measure m, const BruteForceLimits& limits) {
  const auto& g = instance.graph;
  const std::uint64_t size = search_space_size(instance, limits.maximal_only);
  const std::string size_text = size == kSaturated ? "more than 2^64" : std::to_string(size);
  if (g.edge_count() > limits.max_edges || instance.tau > limits.max_tau || size > limits.max_labelings)
    throw Error(ErrorCode::SearchSpaceTooLarge, "search space has " + size_text + " labelings (m=" +
                                                    std::to_string(g.edge_count()) +
                                                    ", tau=" + std::to_string(instance.tau) + ")");

  const int m_edges = g.edge_count();
  std::vector<std::vector<std::vector<Time>>> candidates(m_edges);
  for (EdgeId e = 0; e < m_edges; ++e)
    candidates[e] = candidate_sets(instance.tau, std::min(instance.multiplicity[e], instance.tau), limits.maximal_only);

  std::vector<std::size_t> digit(m_edges, 0);
  Labeling current(m_edges);
  for (EdgeId e = 0; e < m_edges; ++e) current.set(e, candidates[e][0]);
  std::optional<Labeling> best;
  std::optional<Time> best_value;
  while (true) {
    if (auto value = objective(instance, current, m); value && (!best_value || better(m, *value, *best_value))) {
      best_value = value;
      best = current;
    }
    // Odometer with the last edge fastest, so labelings come in lexicographic order.
    int e = m_edges - 1;
    while (e >= 0 && digit[e] + 1 == candidates[e].size()) {
      digit[e] = 0;
      current.set(e, candidates[e][0]);
      --e;
    }
    if (e < 0) break;
    ++digit[e];
    current.set(e, candidates[e][digit[e]]);
  }
  if (!best) {
    SolveResult none;
    none.labeling = Labeling(m_edges);
    return none;
  }
  return evaluate(instance, *best, m, SolveStatus::Optimal);
}

Instance add_super_source(const Instance& instance) {
  if (instance.sources.size() < 2) throw Error(ErrorCode::WrongSourceCount, "super source needs at least two sources");
  const int n = instance.graph.vertex_count();
  auto edges = instance.graph.edges();
  Instance out;
  out.traversal = instance.traversal;
  out.multiplicity = instance.multiplicity;
  out.tau = instance.tau;
  for (Vertex s : instance.sources) {
    edges.emplace_back(n, s);
    out.traversal.add_edge(0);
    out.multiplicity.push_back(instance.tau);
  }
  out.graph = StaticGraph(n + 1, std::move(edges));
  out.sources = {n};
  return out;
}

std::optional<Regime> detect_regime(const Instance& instance, Measure m) {
  if (m != Measure::EA && m != Measure::LD) return std::nullopt;
  if (instance.sources.size() == 1) return Regime::SingleSource;
  const auto k = static_cast<Time>(instance.sources.size());
  const auto& mu = instance.multiplicity;
  if (std::all_of(mu.begin(), mu.end(), [k](Time x) { return x >= k; })) return Regime::MultiplicityAtLeastSources;
  if (instance.graph.is_tree() && std::all_of(mu.begin(), mu.end(), [](Time x) { return x >= 2; }))
    return Regime::Tree;
  return std::nullopt;
}

std::pair<Regime, SolveResult> solve_exact(const Instance& instance, Measure m) {
  auto regime = detect_regime(instance, m);
  if (!regime)
    throw Error(ErrorCode::NoTractableRegime,
                "no exact polynomial regime applies to measure " + std::string(to_string(m)) +
                    " (need EA/LD with one source, multiplicity >= |S|, or a tree with multiplicity >= 2)");
  switch (*regime) {
    case Regime::SingleSource: return {*regime, solve_single_source(instance, m)};
    case Regime::MultiplicityAtLeastSources: return {*regime, solve_multi_full_mu(instance, m)};
    case Regime::Tree: return {*regime, solve_tree(instance, m)};
  }
  throw Error(ErrorCode::NoTractableRegime, "unreachable regime");
}

}  // namespace tmb
