#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmb/core.hpp"
#include "tmb/reductions.hpp"

namespace tmb {

inline constexpr int kFormatVersion = 1;

/// Instance plus presentation data. Exactly one of `instance` / `reachfast`
/// is meaningful, selected by `problem`.
struct InstanceDocument {
  enum class Problem { Tmb, ReachFast };
  Problem problem = Problem::Tmb;
  Instance instance;
  ReachFastInstance reachfast;
  std::vector<std::string> names;  // empty or one per vertex
  std::vector<std::string> roles;  // empty or one per vertex
  std::map<std::string, std::string> metadata;

  friend bool operator==(const InstanceDocument& a, const InstanceDocument& b);
};

struct LabelingDocument {
  Labeling labels;
  std::optional<std::string> note;
};

/// Throws ParseError (syntax, missing or mistyped fields) or ValidationError (invariants).
InstanceDocument parse_instance_document(std::string_view text);
/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize(const InstanceDocument& doc);

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

LabelingDocument parse_labeling_document(std::string_view text);
std::string serialize(const LabelingDocument& doc);
/// Parses and checks the labeling against `instance` (edge count, labels within 1..τ).
Labeling parse_labeling(std::string_view text, const Instance& instance);

/// DIMACS CNF. Throws ParseError.
CnfFormula parse_cnf(std::string_view text);
std::string serialize_cnf(const CnfFormula& formula);

InstanceDocument gadget_document(const GadgetInstance& gadget);

/// Static graph in DOT; edges annotated with weights and, if given, labels.
std::string to_dot(const InstanceDocument& doc, const Labeling* labeling = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace tmb
