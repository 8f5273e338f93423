#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "igl/checker.hpp"
#include "igl/registry.hpp"

// Replay of equational proof chains.  A .drv file:
//
//   derivation: L2_7_item1
//   ambient: I20
//   goal: (x -> 0') -> y ≈ (x -> y') -> y
//   step: (x -> 0') -> y
//   step: ((y' -> x) -> (0' -> y)')'   by I
//   ...
//
// Semantic mode checks each consecutive pair of step terms as an identity on
// every model of the ambient variety — this is the conformance bar.
// Syntactic mode additionally demands that each step be a single-occurrence
// rewrite by its cited identity (best effort: source proofs freely compress
// several rewrites into one step).

namespace igl {

struct DerivationStep {
  TermPtr term;
  std::string justification;  // empty on the first step and on plain rewrites
  int line = 0;
};

struct Derivation {
  std::string name;
  std::vector<std::string> ambient;
  Identity goal;
  std::vector<DerivationStep> steps;
  int transitions() const { return static_cast<int>(steps.size()) - 1; }
};

class derivation_error : public std::runtime_error {
 public:
  int line;
  derivation_error(const std::string& msg, int ln)
      : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

inline Derivation parse_derivation(std::istream& in, const Registry& reg) {
  Derivation d;
  bool have_goal = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    std::string body = line.substr(a, b - a + 1);
    auto colon = body.find(':');
    if (colon == std::string::npos)
      throw derivation_error("expected 'key: value'", lineno);
    std::string key = body.substr(0, colon);
    std::string val = body.substr(colon + 1);
    size_t v = val.find_first_not_of(" \t");
    val = v == std::string::npos ? "" : val.substr(v);
    try {
      if (key == "derivation") {
        d.name = val;
      } else if (key == "ambient") {
        d.ambient.clear();
        std::istringstream ss(val);
        std::string part;
        while (std::getline(ss, part, '^'))
          if (!part.empty()) d.ambient.push_back(part);
        for (const auto& vn : d.ambient) reg.variety(vn);  // must exist
      } else if (key == "goal") {
        d.goal = parse_identity(val);
        have_goal = true;
      } else if (key == "step") {
        DerivationStep st;
        st.line = lineno;
        // an optional trailing "by <label>"
        std::string term_text = val;
        auto by = val.rfind(" by ");
        if (by != std::string::npos) {
          st.justification = val.substr(by + 4);
          size_t e = st.justification.find_last_not_of(" \t");
          st.justification = st.justification.substr(0, e + 1);
          term_text = val.substr(0, by);
          if (!reg.has_label(st.justification))
            throw derivation_error(
                "unresolved label '" + st.justification + "'", lineno);
        }
        st.term = parse_term(term_text);
        d.steps.push_back(std::move(st));
      } else {
        throw derivation_error("unknown key '" + key + "'", lineno);
      }
    } catch (const parse_error& e) {
      throw derivation_error(e.what(), lineno);
    } catch (const std::invalid_argument& e) {
      throw derivation_error(e.what(), lineno);
    }
  }
  if (!have_goal) throw derivation_error("missing goal", lineno);
  if (d.steps.size() < 2) throw derivation_error("fewer than two steps", lineno);
  if (d.ambient.empty()) d.ambient = {"I20"};
  if (!equal(d.steps.front().term, d.goal.lhs))
    throw derivation_error("first step does not match the goal's left side",
                           d.steps.front().line);
  if (!equal(d.steps.back().term, d.goal.rhs))
    throw derivation_error("last step does not match the goal's right side",
                           d.steps.back().line);
  return d;
}

inline Derivation parse_derivation_file(const std::string& path, const Registry& reg) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return parse_derivation(f, reg);
}

// ---------------------------------------------------------------------------
// Semantic step check: prev ≈ next over their free variables, on every model
// of the ambient variety in the set.

struct StepVerdict {
  bool holds = true;
  std::string model;   // violating model on failure
  Assignment witness;
};

inline StepVerdict check_step_semantic(const TermPtr& prev, const TermPtr& next,
                                       const std::vector<std::string>& ambient,
                                       const std::vector<FiniteGroupoid>& models,
                                       const Registry& reg,
                                       int var_cap = kDefaultVarCap) {
  Identity id = make_identity(prev, next);
  for (size_t i = 0; i < models.size(); ++i) {
    if (!membership(models[i], ambient, reg, var_cap).belongs) continue;
    SatResult s = satisfies(models[i], id, var_cap);
    if (!s.holds) return {false, model_label(models[i], i), s.witness};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Syntactic step check: next arises from prev by replacing exactly one
// subterm occurrence that instantiates one side of the cited identity with
// the corresponding instance of the other side.

namespace detail {

inline bool match_pattern(const TermPtr& pat, const TermPtr& t,
                          std::map<std::string, TermPtr>& binding) {
  switch (pat->kind) {
    case TermKind::Var: {
      auto it = binding.find(pat->name);
      if (it == binding.end()) {
        binding[pat->name] = t;
        return true;
      }
      return equal(it->second, t);
    }
    case TermKind::Zero:
      return t->kind == TermKind::Zero;
    case TermKind::Impl:
      return t->kind == TermKind::Impl &&
             match_pattern(pat->left, t->left, binding) &&
             match_pattern(pat->right, t->right, binding);
    default:
      throw std::logic_error("match_pattern: unexpanded pattern");
  }
}

inline bool rewrites_site(const TermPtr& from, const TermPtr& to,
                          const Identity& rule) {
  std::map<std::string, TermPtr> b;
  if (match_pattern(rule.lhs, from, b) && equal(substitute(rule.rhs, b), to))
    return true;
  b.clear();
  return match_pattern(rule.rhs, from, b) && equal(substitute(rule.lhs, b), to);
}

// Tries the rewrite at every node that covers all differences between the
// two terms: the deepest common ancestor of the diffs and its ancestors.
inline bool single_rewrite(const TermPtr& prev, const TermPtr& next,
                           const Identity& rule) {
  if (rewrites_site(prev, next, rule)) return true;
  if (prev->kind != next->kind) return false;
  switch (prev->kind) {
    case TermKind::Var:
    case TermKind::Zero:
      return false;
    case TermKind::Impl: {
      bool dl = !equal(prev->left, next->left);
      bool dr = !equal(prev->right, next->right);
      if (dl && dr) return false;  // two sites; not a single rewrite
      if (dl) return single_rewrite(prev->left, next->left, rule);
      if (dr) return single_rewrite(prev->right, next->right, rule);
      return false;  // equal terms are handled by the caller
    }
    default:
      throw std::logic_error("single_rewrite: unexpanded term");
  }
}

}  // namespace detail

inline bool check_step_syntactic(const TermPtr& prev, const TermPtr& next,
                                 const Identity& justification) {
  if (equal(prev, next)) return true;  // reflexive
  return detail::single_rewrite(prev, next, justification);
}

// ---------------------------------------------------------------------------

enum class DerivationMode { Semantic, Syntactic, Both };

struct StepReport {
  int index = 0;  // transition i: step[i] -> step[i+1]
  std::string justification;
  bool semantic_ok = true;
  bool syntactic_ok = true;
  bool syntactic_checked = false;
  std::string detail;
};

struct DerivationReport {
  std::string name;
  std::vector<StepReport> steps;
  bool semantic_ok = true;
  bool syntactic_ok = true;    // only meaningful when syntactic was checked
  bool goal_ok = true;         // goal identity itself holds on the model set
  int first_bad = -1;
};

inline DerivationReport check_derivation(const Derivation& d,
                                         const std::vector<FiniteGroupoid>& models,
                                         DerivationMode mode, const Registry& reg,
                                         int var_cap = kDefaultVarCap) {
  if (models.empty())
    throw std::invalid_argument("check_derivation: no models");
  size_t in_ambient = 0;
  for (size_t i = 0; i < models.size(); ++i)
    if (membership(models[i], d.ambient, reg, var_cap).belongs) ++in_ambient;
  if (in_ambient == 0)
    throw std::invalid_argument("check_derivation: no models in the ambient variety");

  DerivationReport rep;
  rep.name = d.name;
  const bool semantic = mode != DerivationMode::Syntactic;
  const bool syntactic = mode != DerivationMode::Semantic;
  for (int i = 0; i + 1 < static_cast<int>(d.steps.size()); ++i) {
    StepReport sr;
    sr.index = i;
    sr.justification = d.steps[i + 1].justification;
    if (semantic) {
      StepVerdict v = check_step_semantic(d.steps[i].term, d.steps[i + 1].term,
                                          d.ambient, models, reg, var_cap);
      sr.semantic_ok = v.holds;
      if (!v.holds)
        sr.detail = "fails on " + v.model + " at " + format_witness(v.witness);
    }
    if (syntactic) {
      sr.syntactic_checked = true;
      if (equal(d.steps[i].term, d.steps[i + 1].term)) {
        sr.syntactic_ok = true;
      } else if (sr.justification.empty()) {
        sr.syntactic_ok = false;
        if (sr.detail.empty()) sr.detail = "no justification label";
      } else {
        sr.syntactic_ok = check_step_syntactic(d.steps[i].term, d.steps[i + 1].term,
                                               reg.label(sr.justification));
        if (!sr.syntactic_ok && sr.detail.empty())
          sr.detail = "not a single rewrite by " + sr.justification;
      }
    }
    if ((!sr.semantic_ok || (syntactic && !sr.syntactic_ok)) && rep.first_bad < 0)
      rep.first_bad = i;
    rep.semantic_ok = rep.semantic_ok && sr.semantic_ok;
    rep.syntactic_ok = rep.syntactic_ok && sr.syntactic_ok;
    rep.steps.push_back(std::move(sr));
  }
  if (semantic) {
    StepVerdict v = check_step_semantic(d.goal.lhs, d.goal.rhs, d.ambient, models,
                                        reg, var_cap);
    rep.goal_ok = v.holds;
  }
  return rep;
}

}  // namespace igl
