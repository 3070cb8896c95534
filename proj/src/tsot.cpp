#include "tmb/tsot.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tmb/distances.hpp"

namespace tmb {

std::vector<EdgeId> Tsot::edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e : parent_edge)
    if (e >= 0) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

Labeling Tsot::labeling(int edge_count) const {
  Labeling l(edge_count);
  for (Vertex v = 0; v < static_cast<Vertex>(parent_edge.size()); ++v)
    if (parent_edge[v] >= 0) l.add(parent_edge[v], parent_label[v]);
  return l;
}

std::optional<Time> Tsot::arrival(Vertex v, const StaticGraph& graph, const TraversalSpec& traversal) const {
  if (v == root) return std::nullopt;
  std::vector<Vertex> chain;
  for (Vertex x = v; x != root; x = graph.other(parent_edge[x], x)) {
    if (parent_edge[x] < 0 || chain.size() > parent_edge.size()) return std::nullopt;
    chain.push_back(x);
  }
  Time at = 0;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Time t = parent_label[*it];
    if (t < at) return std::nullopt;
    at = t + traversal.weight(parent_edge[*it], t);
  }
  return at;
}

namespace {

Tsot empty_tree(Vertex root, int n) { return {root, std::vector<EdgeId>(n, -1), std::vector<Time>(n, 0)}; }

[[noreturn]] void unreachable(Vertex root, Vertex v) {
  throw Error(ErrorCode::Unreachable, "vertex " + std::to_string(v) + " unreachable from " + std::to_string(root));
}

}  // namespace

Tsot build_ea_tsot(Vertex root, const TemporalNetwork& net) {
  const int n = net.graph->vertex_count();
  auto row = sssp(net, root, Measure::EA);
  Tsot tree = empty_tree(root, n);
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) continue;
    if (!row[v].witness) unreachable(root, v);
    const Step& last = row[v].witness->steps.back();
    tree.parent_edge[v] = last.edge;
    tree.parent_label[v] = last.departure;
  }
  return tree;
}

Tsot build_ea_tsot(Vertex root, const Instance& instance) {
  return build_ea_tsot(root, TemporalNetwork::full(instance));
}

Tsot build_ld_tsot(Vertex root, const TemporalNetwork& net) {
  const auto& g = *net.graph;
  const int n = g.vertex_count();
  auto row = sssp(net, root, Measure::LD);
  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) continue;
    if (!row[v].value) unreachable(root, v);
    order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return *row[a].value < *row[b].value; });

  Tsot tree = empty_tree(root, n);
  std::vector<bool> in_tree(n, false);
  in_tree[root] = true;
  auto arrival_via_parent = [&](Vertex v) {
    return tree.parent_label[v] + net.traversal->weight(tree.parent_edge[v], tree.parent_label[v]);
  };
  auto is_ancestor = [&](Vertex a, Vertex v) {
    for (Vertex x = v; x != root; x = g.other(tree.parent_edge[x], x))
      if (x == a) return true;
    return a == root;
  };

  for (Vertex u : order) {
    if (in_tree[u]) continue;
    const TemporalPath& path = *row[u].witness;
    Vertex at = root;
    for (const Step& step : path.steps) {
      Vertex next = g.other(step.edge, at);
      Time arrival = step.departure + net.traversal->weight(step.edge, step.departure);
      if (!in_tree[next]) {
        in_tree[next] = true;
        tree.parent_edge[next] = step.edge;
        tree.parent_label[next] = step.departure;
      } else if (next != root && arrival < arrival_via_parent(next)) {
        if (is_ancestor(next, at)) throw std::logic_error("LD tree replacement would close a cycle");
        tree.parent_edge[next] = step.edge;
        tree.parent_label[next] = step.departure;
      }
      at = next;
    }
  }
  return tree;
}

Tsot build_ld_tsot(Vertex root, const Instance& instance) {
  return build_ld_tsot(root, TemporalNetwork::full(instance));
}

Tsot build_ld_tsot(Vertex root, const ReachFastInstance& instance) {
  return build_ld_tsot(root, TemporalNetwork::labeled(instance));
}

}  // namespace tmb
