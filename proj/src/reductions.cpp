#include "tmb/reductions.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace tmb {

ReachFastInstance tmb_to_reachfast(const Instance& instance) {
  ReachFastInstance rf{instance.graph, instance.sources, instance.traversal, Labeling(instance.graph.edge_count()),
                       instance.tau};
  for (EdgeId e = 0; e < instance.graph.edge_count(); ++e)
    for (Time t = 1; t <= instance.multiplicity[e]; ++t) rf.labels.add(e, t);
  return rf;
}

Instance reachfast_to_tmb(const ReachFastInstance& rf) {
  Instance out{rf.graph, rf.sources, rf.traversal, {}, rf.tau};
  for (EdgeId e = 0; e < rf.graph.edge_count(); ++e) {
    if (rf.labels.at(e).empty())
      throw Error(ErrorCode::ValidationError, "edge " + std::to_string(e) + " has no labels; multiplicity would be 0");
    out.multiplicity.push_back(static_cast<Time>(rf.labels.at(e).size()));
  }
  return out;
}

std::vector<Shift> shift_schedule(const std::vector<Time>& before, const std::vector<Time>& after) {
  if (after.size() > before.size()) throw Error(ErrorCode::InvalidParams, "target has more labels than the source");
  std::vector<Time> kept(before.begin(), before.begin() + static_cast<std::ptrdiff_t>(after.size()));
  std::vector<Time> from, to;
  std::set_difference(kept.begin(), kept.end(), after.begin(), after.end(), std::back_inserter(from));
  std::set_difference(after.begin(), after.end(), kept.begin(), kept.end(), std::back_inserter(to));
  std::vector<Shift> out;
  for (std::size_t i = 0; i < from.size(); ++i) out.push_back({from[i], to[i] - from[i]});
  return out;
}

std::vector<Time> apply_shifts(const std::vector<Time>& before, std::size_t keep, const std::vector<Shift>& shifts) {
  std::vector<Time> out(before.begin(), before.begin() + static_cast<std::ptrdiff_t>(std::min(keep, before.size())));
  for (const Shift& s : shifts) {
    auto it = std::find(out.begin(), out.end(), s.from);
    if (it == out.end()) throw Error(ErrorCode::InvalidParams, "shift refers to a missing label");
    *it += s.delta;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool satisfies(const CnfFormula& formula, const Assignment& assignment) {
  if (static_cast<int>(assignment.size()) < formula.variable_count) return false;
  return std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const auto& clause) {
    return std::any_of(clause.begin(), clause.end(),
                       [&](const Literal& l) { return assignment[l.variable] == l.positive; });
  });
}

std::vector<Assignment> all_satisfying_assignments(const CnfFormula& formula) {
  if (formula.variable_count > 24) throw Error(ErrorCode::InvalidParams, "too many variables for exhaustive search");
  std::vector<Assignment> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << formula.variable_count); ++bits) {
    Assignment a(formula.variable_count);
    for (int i = 0; i < formula.variable_count; ++i) a[i] = (bits >> i) & 1U;
    if (satisfies(formula, a)) out.push_back(std::move(a));
  }
  return out;
}

std::optional<Assignment> find_satisfying_assignment(const CnfFormula& formula) {
  auto all = all_satisfying_assignments(formula);
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace {

// Accumulates vertices, edges and traversal data; duplicate edges are merged.
class Builder {
 public:
  Vertex vertex(std::string name, std::string role) {
    names_.push_back(std::move(name));
    roles_.push_back(std::move(role));
    return static_cast<Vertex>(names_.size()) - 1;
  }

  EdgeId edge(Vertex u, Vertex v) {
    auto key = std::minmax(u, v);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    EdgeId e = static_cast<EdgeId>(edges_.size());
    edges_.emplace_back(u, v);
    overrides_.emplace_back();
    index_[key] = e;
    return e;
  }

  EdgeId edge(Vertex u, Vertex v, Time t, Weight w) {
    EdgeId e = edge(u, v);
    overrides_[e][t] = w;
    return e;
  }

  int edge_count() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return static_cast<int>(names_.size()); }

  Time max_override_time() const {
    Time best = 0;
    for (const auto& ov : overrides_)
      for (const auto& [t, w] : ov) best = std::max(best, t);
    return best;
  }
  Weight max_override_weight() const {
    Weight best = 0;
    for (const auto& ov : overrides_)
      for (const auto& [t, w] : ov) best = std::max(best, w);
    return best;
  }

  GadgetInstance finish(Weight default_weight, std::vector<Vertex> sources, Time tau, std::vector<Time> multiplicity) {
    GadgetInstance g;
    g.instance.graph = StaticGraph(vertex_count(), edges_);
    g.instance.sources = std::move(sources);
    std::sort(g.instance.sources.begin(), g.instance.sources.end());
    g.instance.traversal = TraversalSpec(std::vector<Weight>(edges_.size(), default_weight));
    for (EdgeId e = 0; e < edge_count(); ++e)
      for (const auto& [t, w] : overrides_[e]) g.instance.traversal.set_override(e, t, w);
    g.instance.multiplicity = std::move(multiplicity);
    g.instance.tau = tau;
    g.vertex_names = names_;
    g.vertex_roles = roles_;
    g.instance.validate();
    return g;
  }

 private:
  std::vector<std::string> names_, roles_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::map<Time, Weight>> overrides_;
  std::map<std::pair<Vertex, Vertex>, EdgeId> index_;
};

void check_formula(const CnfFormula& formula) {
  if (formula.variable_count < 1 || formula.clauses.empty())
    throw Error(ErrorCode::InvalidParams, "formula needs at least one variable and one clause");
  for (const auto& clause : formula.clauses) {
    if (clause.empty()) throw Error(ErrorCode::InvalidParams, "empty clause");
    for (const Literal& l : clause)
      if (l.variable < 0 || l.variable >= formula.variable_count)
        throw Error(ErrorCode::InvalidParams, "literal variable out of range");
  }
}

std::string var_name(int i) { return "x" + std::to_string(i + 1); }

}  // namespace

GadgetInstance gen_single_source_gadget(const CnfFormula& formula, const GadgetParams& params) {
  check_formula(formula);
  const Measure m = params.measure;
  const Time a = params.a, b = params.b;
  switch (m) {
    case Measure::FT:
      if (a < 1) throw Error(ErrorCode::InvalidParams, "FT gadget needs a >= 1");
      break;
    case Measure::ST:
      if (a < 2) throw Error(ErrorCode::InvalidParams, "ST gadget needs a >= 2");
      break;
    case Measure::MH:
      if (a < 3) throw Error(ErrorCode::InvalidParams, "MH gadget needs a >= 3");
      break;
    case Measure::MW:
      if (a < 1 || b < 2) throw Error(ErrorCode::InvalidParams, "MW gadget needs a >= 1 and b >= 2");
      break;
    default: throw Error(ErrorCode::InvalidParams, "gadgets exist for FT, ST, MH and MW only");
  }

  Builder bld;
  Vertex s = bld.vertex("s", "source");
  const int p = formula.variable_count;
  std::vector<Vertex> in(p), out(p);
  std::vector<EdgeId> choice(p);
  std::pair<Time, Time> labels;

  for (int i = 0; i < p; ++i) {
    const std::string x = var_name(i);
    Vertex neg = -1;
    Vertex pos_last = -1;  // vertex adjacent to in on the "true" branch
    if (m == Measure::MH) {
      Vertex prev = s;
      for (Time k = 1; k <= a - 1; ++k) {
        Vertex v = bld.vertex(x + "_" + std::to_string(k), "variable-true");
        bld.edge(prev, v, k, 1);
        prev = v;
      }
      pos_last = prev;
    } else {
      pos_last = bld.vertex(x, "variable-true");
    }
    neg = bld.vertex("~" + x, "variable-false");
    in[i] = bld.vertex(x + "_in", "variable-in");
    out[i] = bld.vertex(x + "_out", "variable-out");
    switch (m) {
      case Measure::FT:
        bld.edge(s, pos_last, 1, 1);
        bld.edge(s, neg, a + 1, 1);
        bld.edge(pos_last, in[i], 2, 1);
        bld.edge(neg, in[i], a + 2, 1);
        labels = {3, a + 3};
        break;
      case Measure::ST:
        bld.edge(s, pos_last, 1, a);
        bld.edge(s, neg, a + 1, 1);
        bld.edge(pos_last, in[i], a + 1, 1);
        bld.edge(neg, in[i], a + 2, 1);
        labels = {a + 2, a + 3};
        break;
      case Measure::MH:
        bld.edge(pos_last, in[i], a, 1);
        bld.edge(s, neg, a, 1);
        bld.edge(neg, in[i], a + 1, 1);
        labels = {a + 1, a + 2};
        break;
      default:
        bld.edge(s, pos_last, 1, 1);
        bld.edge(s, neg, b * a + 1, 1);
        bld.edge(pos_last, in[i], 2, 1);
        bld.edge(neg, in[i], b * a + 2, 1);
        labels = {3, b * a + 3};
        break;
    }
    bld.edge(in[i], out[i], labels.first, 1);
    choice[i] = bld.edge(in[i], out[i], labels.second, 1);
  }

  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    const std::string cname = "c" + std::to_string(j + 1);
    Vertex c = bld.vertex(cname, "clause");
    for (std::size_t k = 0; k < formula.clauses[j].size(); ++k) {
      const Literal& l = formula.clauses[j][k];
      const Vertex o = out[l.variable];
      const std::string sub = var_name(l.variable) + "_" + cname + "_" + std::to_string(k + 1);
      switch (m) {
        case Measure::FT:
          bld.edge(o, c, l.positive ? 4 : a + 4, 1);
          break;
        case Measure::ST:
          if (l.positive)
            bld.edge(o, c, a + 3, 1);
          else
            bld.edge(o, c, a + 4, a);
          break;
        case Measure::MH:
          if (l.positive) {
            Vertex v = bld.vertex(sub, "subdivision");
            bld.edge(o, v, a + 2, 1);
            bld.edge(v, c, a + 3, 1);
          } else {
            Vertex prev = o;
            for (Time k2 = 1; k2 <= a - 1; ++k2) {
              Vertex v = bld.vertex(sub + "_" + std::to_string(k2), "subdivision");
              bld.edge(prev, v, a + 2 + k2, 1);
              prev = v;
            }
            bld.edge(prev, c, 2 * a + 2, 1);
          }
          break;
        default: {
          Vertex v = bld.vertex(sub, "subdivision");
          bld.edge(o, v, l.positive ? a + 4 : b * a + a + 4, 1);
          bld.edge(v, c, l.positive ? a + 5 : b * a + a + 5, 1);
          break;
        }
      }
    }
  }

  const Time tau = bld.max_override_time() + bld.max_override_weight() + 1;
  std::vector<Time> mu(bld.edge_count(), tau);
  for (EdgeId e : choice) mu[e] = 1;
  GadgetInstance g = bld.finish(tau, {s}, tau, std::move(mu));
  g.formula = formula;
  g.params = params;
  g.choice_edges = choice;
  g.choice_labels.assign(p, labels);
  switch (m) {
    case Measure::FT: g.yes_value = 4, g.no_value_lower_bound = a + 4; break;
    case Measure::ST: g.yes_value = a + 3, g.no_value_lower_bound = 2 * a + 2; break;
    case Measure::MH: g.yes_value = a + 3, g.no_value_lower_bound = 2 * a + 1; break;
    default: g.yes_value = a, g.no_value_lower_bound = a * (b + 1); break;
  }
  g.metadata["kind"] = "single-source";
  g.metadata["measure"] = std::string(to_string(m));
  g.metadata["a"] = std::to_string(a);
  if (m == Measure::MW) g.metadata["b"] = std::to_string(b);
  g.metadata["yes_value"] = std::to_string(g.yes_value);
  g.metadata["no_value_lower_bound"] = std::to_string(g.no_value_lower_bound);
  return g;
}

Labeling gadget_labeling_from_assignment(const GadgetInstance& gadget, const Assignment& assignment) {
  if (!gadget.params) throw Error(ErrorCode::InvalidParams, "not a single-source gadget");
  if (!satisfies(gadget.formula, assignment))
    throw Error(ErrorCode::UnsatisfiedClause, "assignment leaves a clause unsatisfied");
  const Instance& inst = gadget.instance;
  Labeling l(inst.graph.edge_count());
  std::vector<bool> is_choice(inst.graph.edge_count(), false);
  for (std::size_t i = 0; i < gadget.choice_edges.size(); ++i) {
    EdgeId e = gadget.choice_edges[i];
    is_choice[e] = true;
    l.add(e, assignment[i] ? gadget.choice_labels[i].first : gadget.choice_labels[i].second);
  }
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
    if (!is_choice[e])
      for (Time t = 1; t <= inst.tau; ++t) l.add(e, t);
  return l;
}

GadgetInstance gen_two_source_gadget(const CnfFormula& formula, int source_count) {
  check_formula(formula);
  if (source_count < 2) throw Error(ErrorCode::InvalidParams, "need at least two sources");
  for (const auto& clause : formula.clauses) {
    if (clause.size() != 3) throw Error(ErrorCode::NotThreeSat, "every clause must have exactly three literals");
    for (const Literal& l : clause)
      for (const Literal& r : clause)
        if (l.variable == r.variable && l.positive != r.positive)
          throw Error(ErrorCode::ContradictoryClause, "clause contains a variable and its negation");
  }

  // Compact to the variables that occur, then duplicate variables and clauses.
  std::vector<int> compact(formula.variable_count, -1);
  TwoSourceLayout layout;
  for (const auto& clause : formula.clauses)
    for (const Literal& l : clause)
      if (compact[l.variable] < 0) {
        compact[l.variable] = static_cast<int>(layout.original_variable.size());
        layout.original_variable.push_back(l.variable);
      }
  const int p = static_cast<int>(layout.original_variable.size());
  for (int i = 0; i < p; ++i) layout.original_variable.push_back(layout.original_variable[i]);
  std::vector<std::vector<Literal>> clauses;
  for (int copy = 0; copy < 2; ++copy)
    for (const auto& clause : formula.clauses) {
      std::vector<Literal> c;
      for (const Literal& l : clause) c.push_back({compact[l.variable] + copy * p, l.positive});
      clauses.push_back(std::move(c));
    }
  const int vars = 2 * p;
  auto dup_name = [&](int i) {
    return var_name(layout.original_variable[i]) + (i >= p ? "'" : "");
  };

  Builder bld;
  std::vector<Vertex> non_clause;
  layout.s1 = bld.vertex("s1", "source");
  layout.s2 = bld.vertex("s2", "source");
  non_clause = {layout.s1, layout.s2};
  layout.true_side.resize(vars);
  layout.false_side.resize(vars);

  for (std::size_t j = 0; j < clauses.size(); ++j) {
    const std::string cname = "c" + std::to_string(j % formula.clauses.size() + 1) + (j >= formula.clauses.size() ? "'" : "");
    Vertex c = bld.vertex(cname, "clause");
    for (std::size_t k = 0; k < 3; ++k) {
      const Literal& l = clauses[j][k];
      const std::string lit = cname + "_l" + std::to_string(k + 1);
      Vertex z = bld.vertex("z_" + lit, "subdivision");
      Vertex v = bld.vertex(lit, "literal");
      bld.edge(c, z);
      bld.edge(z, v);
      VariableSide& side = l.positive ? layout.false_side[l.variable] : layout.true_side[l.variable];
      const std::string tag = dup_name(l.variable) + (l.positive ? "_F" : "_T") + std::to_string(side.first.size() + 1);
      const std::string role = l.positive ? "variable-false" : "variable-true";
      Vertex first = bld.vertex(tag + "_1", role);
      Vertex second = bld.vertex(tag + "_2", role);
      bld.edge(v, first);
      bld.edge(v, second);
      if (!side.second.empty()) bld.edge(side.second.back(), first);
      side.first.push_back(first);
      side.literal.push_back(v);
      side.second.push_back(second);
      non_clause.push_back(first);
      non_clause.push_back(second);
    }
  }
  for (int i = 0; i + 1 < vars; ++i) {
    const std::string bname = "b" + std::to_string(i + 1);
    std::array<Vertex, 3> br{bld.vertex(bname + "_in", "bridge"), bld.vertex(bname + "_mid", "bridge"),
                             bld.vertex(bname + "_out", "bridge")};
    bld.edge(br[0], br[1]);
    bld.edge(br[1], br[2]);
    layout.bridges.push_back(br);
    non_clause.insert(non_clause.end(), br.begin(), br.end());
  }

  bool first_boundary = false;
  for (int i = 0; i < vars; ++i) {
    const VariableSide* sides[2] = {&layout.false_side[i], &layout.true_side[i]};
    const bool some_empty = sides[0]->first.empty() || sides[1]->first.empty();
    const Vertex entry = i == 0 ? layout.s1 : layout.bridges[i - 1][2];
    const Vertex exit = i + 1 == vars ? layout.s2 : layout.bridges[i][0];
    for (const VariableSide* side : sides) {
      if (side->first.empty()) continue;
      bld.edge(entry, side->first.front());
      bld.edge(side->second.back(), exit);
    }
    if (some_empty) {
      if (i == 0) {
        bld.edge(layout.s1, layout.bridges[0][0]);
        first_boundary = true;
      } else if (i + 1 == vars) {
        bld.edge(layout.bridges[i - 1][2], layout.s2);
      } else {
        bld.edge(layout.bridges[i - 1][2], layout.bridges[i][0]);
      }
    }
  }

  layout.hub = bld.vertex("z", "z");
  for (Vertex v : non_clause) {
    Vertex h1 = bld.vertex("h1_" + std::to_string(v), "subdivision");
    Vertex h2 = bld.vertex("h2_" + std::to_string(v), "subdivision");
    bld.edge(v, h1);
    bld.edge(h1, h2);
    bld.edge(h2, layout.hub);
  }

  std::vector<Vertex> sources{layout.s1, layout.s2};
  const int nu_ext = std::max(source_count, 6);
  if (source_count > 2) {
    // s_j is extra_sources[j - 3].
    for (int j = 3; j <= nu_ext; ++j)
      layout.extra_sources.push_back(bld.vertex("s" + std::to_string(j), j <= source_count ? "source" : "extension"));
    auto sv = [&](int j) { return j == 2 ? layout.s2 : layout.extra_sources[j - 3]; };
    bld.edge(sv(2), sv(3));
    bld.edge(sv(2), sv(4));
    bld.edge(sv(3), sv(4));
    for (int j = 5; j <= nu_ext; ++j) {
      bld.edge(sv(j), sv(3));
      bld.edge(sv(j), sv(4));
    }
    bld.edge(sv(nu_ext - 1), sv(nu_ext));
    for (int j = 3; j <= source_count; ++j) sources.push_back(sv(j));
  }

  const Time tau = bld.vertex_count() + bld.edge_count() + 2 * (nu_ext + 2);
  GadgetInstance g = bld.finish(1, sources, tau, std::vector<Time>(bld.edge_count(), 1));
  g.formula = formula;
  g.layout = std::move(layout);
  g.yes_value = 0;
  g.no_value_lower_bound = 0;
  g.metadata["kind"] = "two-source";
  g.metadata["source_count"] = std::to_string(source_count);
  g.metadata["duplicated_variables"] = std::to_string(vars);
  if (first_boundary) g.metadata["first_variable_boundary"] = "s1 joined to b1_in (no preceding bridge exists)";
  if (source_count > 2)
    g.metadata["postponement_window"] = "base labels shifted by " + std::to_string(nu_ext + 1);
  return g;
}

namespace {

const TwoSourceLayout& require_layout(const GadgetInstance& gadget, const Assignment& assignment) {
  if (!gadget.layout) throw Error(ErrorCode::InvalidParams, "not a two-source gadget");
  if (!satisfies(gadget.formula, assignment))
    throw Error(ErrorCode::UnsatisfiedClause, "assignment leaves a clause unsatisfied");
  return *gadget.layout;
}

}  // namespace

std::vector<EdgeId> two_source_witness_path(const GadgetInstance& gadget, const Assignment& assignment) {
  const TwoSourceLayout& lay = require_layout(gadget, assignment);
  const StaticGraph& g = gadget.instance.graph;
  std::vector<EdgeId> path;
  Vertex at = lay.s1;
  auto go = [&](Vertex next) {
    auto e = g.find_edge(at, next);
    if (!e) throw std::logic_error("witness path uses a missing edge");
    path.push_back(*e);
    at = next;
  };
  const int vars = static_cast<int>(lay.true_side.size());
  for (int i = 0; i < vars; ++i) {
    const bool value = assignment[lay.original_variable[i]];
    const VariableSide& side = value ? lay.true_side[i] : lay.false_side[i];
    for (std::size_t r = 0; r < side.first.size(); ++r) {
      go(side.first[r]);
      go(side.literal[r]);
      go(side.second[r]);
    }
    if (i + 1 == vars) {
      go(lay.s2);
    } else {
      for (Vertex b : lay.bridges[i]) go(b);
    }
  }
  return path;
}

Labeling two_source_witness_labeling(const GadgetInstance& gadget, const Assignment& assignment) {
  const TwoSourceLayout& lay = require_layout(gadget, assignment);
  const StaticGraph& g = gadget.instance.graph;
  const int n = g.vertex_count();
  auto path = two_source_witness_path(gadget, assignment);

  std::vector<bool> excluded(g.edge_count(), false);
  std::vector<bool> extension(n, false);
  for (Vertex v : lay.extra_sources) extension[v] = true;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (extension[u] || extension[v]) excluded[e] = true;
  }

  Labeling l(g.edge_count());
  Time t = 0;
  for (EdgeId e : path) {
    l.add(e, ++t);
    excluded[e] = true;
  }
  // Shortest-path tree from s2 on the remaining base graph.
  std::vector<int> depth(n, -1);
  depth[lay.s2] = 0;
  std::deque<Vertex> queue{lay.s2};
  int reached = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(v)) {
      if (excluded[e]) continue;
      Vertex w = g.other(e, v);
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      l.add(e, t + 1 + depth[v]);
      queue.push_back(w);
      ++reached;
    }
  }
  if (reached != n - static_cast<int>(lay.extra_sources.size()))
    throw std::logic_error("witness path disconnects the gadget");

  if (lay.extra_sources.empty()) return l;

  const int nu = static_cast<int>(lay.extra_sources.size()) + 2;
  Labeling shifted(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    for (Time x : l.at(e)) shifted.add(e, x + nu + 1);
  Time omega = 0;
  for (EdgeId e : g.incident(lay.s2))
    for (Time x : shifted.at(e)) omega = std::max(omega, x);
  auto sv = [&](int j) { return j == 2 ? lay.s2 : lay.extra_sources[j - 3]; };
  auto put = [&](int a, int b, Time x) { shifted.add(*g.find_edge(sv(a), sv(b)), x); };
  for (int j = 5; j <= nu - 2; ++j) put(j, 3, j - 4);
  put(nu - 1, 3, nu - 1);
  put(nu - 1, nu, nu - 2);
  put(3, 4, nu);
  put(2, 3, nu + 1);
  put(2, 4, omega);
  for (int j = 5; j <= nu; ++j) put(4, j, omega + (nu - j + 1));
  put(3, nu, omega + 2);
  return shifted;
}

}  // namespace tmb
