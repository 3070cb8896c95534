#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmb/core.hpp"
#include "tmb/distances.hpp"

namespace tmb {

// ---- TMB <-> ReachFast ----

/// λ(e) = {1..µ(e)}; graph and traversal unchanged.
ReachFastInstance tmb_to_reachfast(const Instance& instance);

/// µ(e) = |λ(e)|. Throws ValidationError if some λ(e) is empty, since a
/// multiplicity must be at least 1.
Instance reachfast_to_tmb(const ReachFastInstance& instance);

struct Shift {
  Time from;
  Time delta;
  friend bool operator==(const Shift&, const Shift&) = default;
};

/// Shifts turning `before` (largest surplus elements dropped) into `after`.
/// Requires |after| <= |before|; throws InvalidParams otherwise.
std::vector<Shift> shift_schedule(const std::vector<Time>& before, const std::vector<Time>& after);

/// `before` with its largest surplus elements dropped and `shifts` applied, sorted.
std::vector<Time> apply_shifts(const std::vector<Time>& before, std::size_t keep, const std::vector<Shift>& shifts);

// ---- formulas ----

struct Literal {
  int variable;  // 0-based
  bool positive;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<Literal>> clauses;
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

using Assignment = std::vector<bool>;

bool satisfies(const CnfFormula& formula, const Assignment& assignment);
/// Exhaustive search; smallest satisfying assignment in binary order (variable 0 least significant).
std::optional<Assignment> find_satisfying_assignment(const CnfFormula& formula);
std::vector<Assignment> all_satisfying_assignments(const CnfFormula& formula);

// ---- gadgets ----

struct GadgetParams {
  Measure measure = Measure::FT;
  Time a = 1;
  Time b = 2;  // MW only
};

/// Vertex sequence of one side of a variable in the two-source construction:
/// for each occurrence r, (r,1), literal vertex, (r,2).
struct VariableSide {
  std::vector<Vertex> first;    // x_{.,.,r,1}
  std::vector<Vertex> literal;  // literal vertex of occurrence r
  std::vector<Vertex> second;   // x_{.,.,r,2}
};

struct TwoSourceLayout {
  Vertex s1 = -1, s2 = -1, hub = -1;
  std::vector<VariableSide> true_side, false_side;  // per duplicated variable
  std::vector<std::array<Vertex, 3>> bridges;       // in, mid, out per variable boundary
  std::vector<int> original_variable;               // duplicated variable -> formula variable
  std::vector<Vertex> extra_sources;                // s3..s_ν'
};

struct GadgetInstance {
  Instance instance;
  Time yes_value = 0;
  Time no_value_lower_bound = 0;
  std::vector<std::string> vertex_names;
  std::vector<std::string> vertex_roles;
  std::map<std::string, std::string> metadata;
  CnfFormula formula;
  std::optional<GadgetParams> params;      // single-source gadgets
  std::vector<EdgeId> choice_edges;        // per variable, single-source gadgets
  std::vector<std::pair<Time, Time>> choice_labels;  // (label if true, label if false)
  std::optional<TwoSourceLayout> layout;   // two-source gadgets
};

/// Throws InvalidParams for parameters outside the measure's range, an empty
/// formula, or an empty clause.
GadgetInstance gen_single_source_gadget(const CnfFormula& formula, const GadgetParams& params);

/// Throws UnsatisfiedClause if `assignment` does not satisfy the formula.
Labeling gadget_labeling_from_assignment(const GadgetInstance& gadget, const Assignment& assignment);

/// Throws NotThreeSat, ContradictoryClause, InvalidParams (source_count < 2).
GadgetInstance gen_two_source_gadget(const CnfFormula& formula, int source_count = 2);

/// The source-to-source path used by the witness, as edge ids from s1 to s2.
std::vector<EdgeId> two_source_witness_path(const GadgetInstance& gadget, const Assignment& assignment);

/// Throws UnsatisfiedClause.
Labeling two_source_witness_labeling(const GadgetInstance& gadget, const Assignment& assignment);

}  // namespace tmb
