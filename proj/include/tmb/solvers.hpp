#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "tmb/core.hpp"
#include "tmb/distances.hpp"

namespace tmb {

enum class SolveStatus { Optimal, Approximate, Infeasible };
std::string_view to_string(SolveStatus status);

struct SolveResult {
  Labeling labeling;
  std::optional<Time> objective;  // absent iff Infeasible
  std::map<std::pair<Vertex, Vertex>, DistanceResult> per_source_distances;
  SolveStatus status = SolveStatus::Infeasible;
  /// Only set by approx_ft_mw.
  std::optional<Bounds> certificate;
};

/// Evaluates `labeling` into a result with the given status (Infeasible if it is not feasible).
SolveResult evaluate(const Instance& instance, const Labeling& labeling, Measure m, SolveStatus status);

/// Throws WrongSourceCount, Unreachable, InvalidParams (measure not EA/LD).
SolveResult solve_single_source(const Instance& instance, Measure m);

/// Union of one TSOT per source. Throws MultiplicityTooSmall, Unreachable, InvalidParams.
SolveResult solve_multi_full_mu(const Instance& instance, Measure m);

/// Per-edge, per-direction maximum of the single-source tree labels.
/// Throws NotATree, MultiplicityTooSmall, Unreachable, InvalidParams.
SolveResult solve_tree(const Instance& instance, Measure m);

/// True iff every edge on a path between two sources has multiplicity >= 2;
/// the tree solver only needs this, but enforces the stronger all-edge bound.
bool tree_source_paths_have_multiplicity_two(const Instance& instance);

/// LD-TSOT with an FT/MW ratio certificate. Throws WrongSourceCount, Unreachable, InvalidParams.
SolveResult approx_ft_mw(const Instance& instance, Measure m, BoundsOptions options = {});

struct BruteForceLimits {
  int max_edges = 12;
  Time max_tau = 8;
  std::uint64_t max_labelings = 2'000'000;
  /// Enumerate only label sets of size min(µ, τ). When false every subset of
  /// size 0..min(µ, τ) is tried.
  bool maximal_only = true;
};

/// Number of labelings brute_force would enumerate, saturated at UINT64_MAX.
std::uint64_t search_space_size(const Instance& instance, bool maximal_only = true);

/// Exhaustive exact solve; ties go to the lexicographically smallest labeling.
/// Throws SearchSpaceTooLarge.
SolveResult brute_force(const Instance& instance, Measure m, const BruteForceLimits& limits = {});

/// Relaxed variant: a fresh source joined to every old source by a zero-weight,
/// fully available edge. Throws WrongSourceCount if |S| < 2.
Instance add_super_source(const Instance& instance);

enum class Regime { SingleSource, MultiplicityAtLeastSources, Tree };
std::string_view to_string(Regime regime);

/// First exact regime applicable to (instance, m), or nullopt.
std::optional<Regime> detect_regime(const Instance& instance, Measure m);

/// Dispatches to the detected regime; throws NoTractableRegime when none applies.
std::pair<Regime, SolveResult> solve_exact(const Instance& instance, Measure m);

}  // namespace tmb
