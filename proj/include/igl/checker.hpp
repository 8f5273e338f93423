#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "igl/algebra.hpp"
#include "igl/registry.hpp"

// Satisfaction of identities, claims and variety membership on finite models
// by exhaustive assignment.  Assignments run in lexicographic order over the
// identity's variable list (first variable most significant), so a returned
// witness is always the lexicographically first failing assignment.

namespace igl {

inline constexpr int kDefaultVarCap = 6;

struct SatResult {
  bool holds = true;
  Assignment witness;  // first failing assignment when !holds
};

inline SatResult satisfies(const FiniteGroupoid& A, const Identity& id,
                           int var_cap = kDefaultVarCap) {
  const int k = static_cast<int>(id.vars.size());
  if (k > var_cap)
    throw std::invalid_argument("identity '" + (id.name.empty() ? print(id) : id.name) +
                                "' exceeds the variable cap (" +
                                std::to_string(k) + " > " + std::to_string(var_cap) + ")");
  std::vector<int> vals(k, 0);
  Assignment sigma;
  for (int i = 0; i < k; ++i) sigma[id.vars[i]] = 0;
  while (true) {
    for (int i = 0; i < k; ++i) sigma[id.vars[i]] = vals[i];
    if (evaluate(id.lhs, A, sigma) != evaluate(id.rhs, A, sigma))
      return {false, sigma};
    int i = k - 1;
    while (i >= 0 && vals[i] == A.size - 1) vals[i--] = 0;
    if (i < 0) break;
    ++vals[i];
  }
  return {};
}

inline std::string format_witness(const Assignment& w) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [v, e] : w) {
    if (!first) os << ", ";
    first = false;
    os << v << "=" << e;
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Variety membership: base axioms plus every effective defining identity.

struct MembershipResult {
  bool belongs = true;
  std::string failing;  // axiom name or identity label
  Assignment witness;
};

inline MembershipResult membership(const FiniteGroupoid& A, const VarietyDef& V,
                                   int var_cap = kDefaultVarCap) {
  AxiomCheck ax = validate_axioms(A);
  if (!ax.ok) {
    Assignment w;
    const char* names[] = {"x", "y", "z"};
    for (size_t i = 0; i < ax.assignment.size(); ++i) w[names[i]] = ax.assignment[i];
    return {false, ax.axiom, w};
  }
  for (const auto& id : V.effective) {
    SatResult s = satisfies(A, id, var_cap);
    if (!s.holds) return {false, id.name.empty() ? print(id) : id.name, s.witness};
  }
  return {};
}

inline MembershipResult membership(const FiniteGroupoid& A,
                                   const std::vector<std::string>& varieties,
                                   const Registry& reg,
                                   int var_cap = kDefaultVarCap) {
  for (const auto& name : varieties) {
    MembershipResult m = membership(A, reg.variety(name), var_cap);
    if (!m.belongs) return m;
  }
  if (varieties.empty()) {
    AxiomCheck ax = validate_axioms(A);
    if (!ax.ok) return {false, ax.axiom, {}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Claims.

enum class ClaimStatus { Holds, Violated, Vacuous };

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Holds:    return "holds";
    case ClaimStatus::Violated: return "violated";
    default:                    return "vacuous";
  }
}

struct ClaimVerdict {
  ClaimStatus status = ClaimStatus::Holds;
  bool hypotheses_met = true;     // conditional claims only
  std::string failing;            // identity label on violation
  Assignment witness;
  std::string detail;             // human-readable note
};

inline bool group_holds(const FiniteGroupoid& A, const std::vector<Identity>& g,
                        int var_cap, std::string* failing = nullptr,
                        Assignment* witness = nullptr) {
  for (const auto& id : g) {
    SatResult s = satisfies(A, id, var_cap);
    if (!s.holds) {
      if (failing) *failing = id.name.empty() ? print(id) : id.name;
      if (witness) *witness = s.witness;
      return false;
    }
  }
  return true;
}

inline ClaimVerdict check_claim(const FiniteGroupoid& A, const Claim& c,
                                const Registry& reg,
                                int var_cap = kDefaultVarCap) {
  ClaimVerdict v;
  if (!membership(A, c.ambient, reg, var_cap).belongs) {
    v.status = ClaimStatus::Vacuous;
    return v;
  }
  switch (c.kind) {
    case ClaimKind::Unconditional: {
      for (const auto& g : c.groups)
        if (!group_holds(A, g, var_cap, &v.failing, &v.witness)) {
          v.status = ClaimStatus::Violated;
          v.detail = v.failing + " fails at " + format_witness(v.witness);
          return v;
        }
      return v;
    }
    case ClaimKind::Conditional: {
      if (!group_holds(A, c.hypotheses, var_cap)) {
        v.hypotheses_met = false;
        return v;  // conditional holds vacuously
      }
      for (const auto& g : c.groups)
        if (!group_holds(A, g, var_cap, &v.failing, &v.witness)) {
          v.status = ClaimStatus::Violated;
          v.detail = "hypotheses hold but " + v.failing + " fails at " +
                     format_witness(v.witness);
          return v;
        }
      return v;
    }
    case ClaimKind::Equivalence: {
      std::vector<bool> truth;
      std::string last_failing;
      Assignment last_witness;
      for (const auto& g : c.groups) {
        std::string f;
        Assignment w;
        bool h = group_holds(A, g, var_cap, &f, &w);
        if (!h) { last_failing = f; last_witness = w; }
        truth.push_back(h);
      }
      for (size_t i = 1; i < truth.size(); ++i)
        if (truth[i] != truth[0]) {
          v.status = ClaimStatus::Violated;
          v.failing = last_failing;
          v.witness = last_witness;
          std::ostringstream os;
          os << "groups disagree (";
          for (size_t j = 0; j < truth.size(); ++j)
            os << (j ? "," : "") << (truth[j] ? "T" : "F");
          os << "); " << last_failing << " fails at " << format_witness(last_witness);
          v.detail = os.str();
          return v;
        }
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Suites over model sets.

struct SuiteViolation {
  size_t model_index;
  std::string model_name;  // name or table rendering
  std::string claim_id;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  size_t models_checked = 0;
  size_t claims_checked = 0;   // non-vacuous claim evaluations
  std::vector<SuiteViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline std::string model_label(const FiniteGroupoid& A, size_t index) {
  if (!A.name.empty()) return A.name;
  std::ostringstream os;
  os << "model#" << index << "(n=" << A.size << ")";
  return os.str();
}

inline SuiteReport check_suite(const std::vector<FiniteGroupoid>& models,
                               const Suite& s, const Registry& reg,
                               int var_cap = kDefaultVarCap) {
  SuiteReport rep;
  rep.suite = s.name;
  rep.models_checked = models.size();
  for (size_t i = 0; i < models.size(); ++i)
    for (const auto& c : s.claims) {
      ClaimVerdict v = check_claim(models[i], c, reg, var_cap);
      if (v.status == ClaimStatus::Vacuous) continue;
      ++rep.claims_checked;
      if (v.status == ClaimStatus::Violated)
        rep.violations.push_back({i, model_label(models[i], i), c.id, v.detail});
    }
  return rep;
}

}  // namespace igl
