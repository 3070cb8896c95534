#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tmb/core.hpp"

namespace tmb {

enum class Measure { EA, LD, FT, ST, MH, MW };

inline constexpr Measure kAllMeasures[] = {Measure::EA, Measure::LD, Measure::FT,
                                           Measure::ST, Measure::MH, Measure::MW};

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view text);

/// LD is the only measure whose per-path statistic is maximized; for it the
/// worst case over vertices is a minimum.
constexpr bool is_maximized(Measure m) { return m == Measure::LD; }

/// True iff `candidate` is strictly better than `incumbent` under the polarity of `m`.
constexpr bool better(Measure m, Time candidate, Time incumbent) {
  return is_maximized(m) ? candidate > incumbent : candidate < incumbent;
}

/// Statistic of `stats` that measure `m` optimizes.
Time statistic(const PathStats& stats, Measure m);

struct DistanceResult {
  std::optional<Time> value;
  std::optional<TemporalPath> witness;

  bool reachable() const { return value.has_value(); }
};

/// Optimum of the measure over all temporal paths u -> v, with a witness.
/// Throws SameVertex when u == v.
DistanceResult distance(const TemporalNetwork& net, Vertex u, Vertex v, Measure m);

/// Entry v holds distance(s, v); entry s is left unreachable.
std::vector<DistanceResult> sssp(const TemporalNetwork& net, Vertex s, Measure m);

DistanceResult distance(Vertex u, Vertex v, const Availability& availability, const Instance& instance, Measure m);
std::vector<DistanceResult> sssp(Vertex s, const Availability& availability, const Instance& instance, Measure m);

/// Worst case over sources and vertices (max, or min for LD); nullopt if some
/// source misses some vertex. Throws MultiplicityViolation.
std::optional<Time> objective(const Instance& instance, const Labeling& labeling, Measure m);

/// Worst case of the given single-source distance vector, ignoring `s` itself.
std::optional<Time> worst_case(const std::vector<DistanceResult>& row, Vertex s, Measure m);

struct Bounds {
  Time ft_min = 0;
  Time ft_max = 0;
  Time mw_min = 0;
  Time mw_max = 0;
};

struct BoundsOptions {
  /// Ignore temporal edges whose traversal weight is >= tau. Reduction gadgets
  /// use tau as an "unusable" weight; this reproduces their intended bounds.
  bool exclude_horizon_weights = false;
};

/// Worst-vertex min/max duration and waiting over temporal paths from `s` in
/// the full temporal graph. Max statistics range over simple paths.
/// Throws Unreachable when some vertex cannot be reached.
Bounds ft_mw_bounds(Vertex s, const Instance& instance, BoundsOptions options = {});

}  // namespace tmb
