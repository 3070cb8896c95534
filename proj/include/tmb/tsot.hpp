#pragma once

#include <optional>
#include <vector>

#include "tmb/core.hpp"

namespace tmb {

/// Temporal spanning out-tree: a spanning tree of G with one label per tree edge.
struct Tsot {
  Vertex root = 0;
  std::vector<EdgeId> parent_edge;  // -1 for the root
  std::vector<Time> parent_label;   // label of parent_edge[v]

  std::vector<EdgeId> edges() const;
  Labeling labeling(int edge_count) const;
  /// Arrival at v along the tree path (root itself: nullopt); nullopt if the path is not time-respecting.
  std::optional<Time> arrival(Vertex v, const StaticGraph& graph, const TraversalSpec& traversal) const;
};

/// TSOT realizing every earliest-arrival distance of the network from `root`.
/// Throws Unreachable if some vertex cannot be reached.
Tsot build_ea_tsot(Vertex root, const TemporalNetwork& net);
Tsot build_ea_tsot(Vertex root, const Instance& instance);

/// TSOT whose latest departure to every vertex is at least the network's
/// worst latest-departure distance from `root`. Throws Unreachable.
Tsot build_ld_tsot(Vertex root, const TemporalNetwork& net);
Tsot build_ld_tsot(Vertex root, const Instance& instance);
Tsot build_ld_tsot(Vertex root, const ReachFastInstance& instance);

}  // namespace tmb
