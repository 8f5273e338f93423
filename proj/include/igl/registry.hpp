#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "igl/term.hpp"

// The catalog of named varieties, identities and checkable claims.  Variety
// definitions add identities on top of the base axioms (I), (I0), which every
// variety inherits implicitly.  Claims come in three kinds:
//
//   unconditional —  every group identity holds on models of the ambient;
//   conditional   —  models of the ambient satisfying all hypotheses satisfy
//                    the conclusion;
//   equivalence   —  the body is a list of identity GROUPS; on every model of
//                    the ambient all groups have the same truth value (a group
//                    is true when all its identities hold).  Singleton groups
//                    give plain per-identity equisatisfaction.

namespace igl {

struct VarietyDef {
  std::string name;
  std::vector<Identity> identities;  // own defining identities
  std::string refines;               // optional variety this one refines
  std::vector<Identity> effective;   // refines-closure + own, resolved
  std::string source;
};

enum class ClaimKind { Unconditional, Conditional, Equivalence };

struct Claim {
  std::string id;
  ClaimKind kind = ClaimKind::Unconditional;
  std::vector<std::string> ambient;  // conjunction of variety names
  std::vector<Identity> hypotheses;  // conditional only
  std::vector<std::vector<Identity>> groups;
  std::string source;
};

struct Suite {
  std::string name;
  std::vector<Claim> claims;
  std::string source;
};

class Registry {
 public:
  static const Registry& builtin();

  const VarietyDef& variety(const std::string& name) const {
    auto it = varieties_.find(name);
    if (it == varieties_.end())
      throw std::invalid_argument("unknown variety '" + name + "'");
    return it->second;
  }
  bool has_variety(const std::string& name) const {
    return varieties_.count(name) != 0;
  }
  const Suite& suite(const std::string& name) const {
    auto it = suites_.find(name);
    if (it == suites_.end())
      throw std::invalid_argument("unknown suite '" + name + "'");
    return it->second;
  }
  const std::vector<std::string>& variety_names() const { return variety_order_; }
  const std::vector<std::string>& suite_names() const { return suite_order_; }

  bool has_label(const std::string& label) const { return labels_.count(label) != 0; }
  const Identity& label(const std::string& l) const {
    auto it = labels_.find(l);
    if (it == labels_.end())
      throw std::invalid_argument("unresolved label '" + l + "'");
    return it->second;
  }

  // Every identity stored anywhere, for integrity checks.
  std::vector<Identity> all_identities() const {
    std::vector<Identity> out;
    for (const auto& n : variety_order_)
      for (const auto& id : varieties_.at(n).identities) out.push_back(id);
    for (const auto& n : suite_order_)
      for (const auto& c : suites_.at(n).claims) {
        for (const auto& h : c.hypotheses) out.push_back(h);
        for (const auto& g : c.groups)
          for (const auto& id : g) out.push_back(id);
      }
    for (const auto& [lbl, id] : user_) out.push_back(id);
    return out;
  }

  // One identity per line; '#' starts a comment.  A "name:" prefix registers
  // the line under user:name, otherwise user:line<k> is used.  Re-loading a
  // user name overrides the previous entry.
  std::vector<std::string> load_ids(std::istream& in) {
    std::vector<std::string> added;
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
      std::string name = "user:line" + std::to_string(lineno);
      auto colon = body.find(':');
      if (colon != std::string::npos) {
        std::string raw = body.substr(0, colon);
        size_t e = raw.find_last_not_of(" \t");
        name = "user:" + raw.substr(0, e == std::string::npos ? 0 : e + 1);
        body = body.substr(colon + 1);
      }
      try {
        Identity id = parse_identity(body, name);
        labels_[name] = id;
        user_[name] = id;
        added.push_back(name);
      } catch (const parse_error& e) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    return added;
  }
  std::vector<std::string> load_ids_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return load_ids(f);
  }

  const std::map<std::string, Identity>& user_identities() const { return user_; }

  // -- construction ---------------------------------------------------------

  void add_variety(const std::string& name, const std::vector<std::string>& ids,
                   const std::string& refines = "", const std::string& source = "") {
    VarietyDef v;
    v.name = name;
    v.refines = refines;
    v.source = source;
    if (!refines.empty()) v.effective = variety(refines).effective;
    for (size_t i = 0; i < ids.size(); ++i) {
      std::string lbl = ids.size() == 1 ? name : name + "." + std::to_string(i + 1);
      Identity id = parse_identity(ids[i], lbl);
      v.identities.push_back(id);
      v.effective.push_back(id);
      labels_[lbl] = id;
    }
    varieties_[name] = std::move(v);
    variety_order_.push_back(name);
  }

  void add_identity_label(const std::string& lbl, const std::string& text) {
    labels_[lbl] = parse_identity(text, lbl);
  }

  void add_suite(Suite s) {
    for (const auto& c : s.claims) {
      for (const auto& h : c.hypotheses)
        if (!h.name.empty()) labels_[h.name] = h;
      for (const auto& g : c.groups)
        for (const auto& id : g)
          if (!id.name.empty()) labels_[id.name] = id;
    }
    suite_order_.push_back(s.name);
    suites_[s.name] = std::move(s);
  }

 private:
  std::map<std::string, VarietyDef> varieties_;
  std::map<std::string, Suite> suites_;
  std::map<std::string, Identity> labels_;
  std::map<std::string, Identity> user_;
  std::vector<std::string> variety_order_;
  std::vector<std::string> suite_order_;
};

namespace detail {

inline Identity lid(const std::string& label, const std::string& text) {
  return parse_identity(text, label);
}

// One-group unconditional claim per item.
inline Suite items_suite(const std::string& name,
                         const std::vector<std::string>& ambient,
                         const std::string& source,
                         const std::vector<std::pair<std::string, std::string>>& items) {
  Suite s{name, {}, source};
  for (const auto& [item, text] : items) {
    Claim c;
    c.id = name + "." + item;
    c.kind = ClaimKind::Unconditional;
    c.ambient = ambient;
    c.groups = {{lid(c.id, text)}};
    c.source = source + "(" + item + ")";
    s.claims.push_back(std::move(c));
  }
  return s;
}

inline Registry build_registry() {
  Registry r;

  r.add_identity_label("I", "(x -> y) -> z = ((z' -> x) -> (y -> z)')'");
  r.add_identity_label("I0", "0'' = 0");

  r.add_variety("I", {}, "", "Definition 1.1");
  r.add_variety("MID", {"x /\\ x = x"});
  r.add_variety("JID", {"x \\/ x = x"});
  r.add_variety("I20", {"x'' = x"});
  r.add_variety("DM", {"(x -> y) -> x = x"});
  r.add_variety("KL", {"(x -> x) -> (y -> y) = y -> y"}, "DM");
  r.add_variety("BA", {"x -> x = 0'"}, "DM");
  r.add_variety("SCP", {"x -> y = y' -> x'"});
  r.add_variety("MC", {"x /\\ y = y /\\ x"});
  r.add_variety("Z", {"x -> y = 0"});
  r.add_variety("C", {"x -> y = y -> x"});
  r.add_variety("CP", {"x -> y' = y -> x'"});
  r.add_variety("A", {"(x -> y) -> z = x -> (y -> z)"});
  r.add_variety("I31", {"x''' = x'"});
  r.add_variety("I10", {"x' = x"});
  r.add_variety("ID", {"x -> x = x"});
  r.add_variety("SL", {"x' = x", "x -> y = y -> x"});
  r.add_variety("CLD", {"x -> (y -> z) = (x -> z) -> (y -> x)"});
  r.add_variety("SRD", {"(x -> y) -> z = (z -> x) -> (y -> z)"});
  r.add_variety("RD", {"(x -> y) -> z = (x -> z) -> (y -> z)"});
  r.add_variety("Abbott",
                {"(x -> y) -> x = x",
                 "(x -> y) -> y = (y -> x) -> x",
                 "x -> (y -> z) = y -> (x -> z)"});

  // The dual of KL's axiom; kept as a separate labeled identity, with the
  // KL_equiv suite asserting the two are equisatisfied within DM.
  r.add_identity_label("KL2", "(y -> y) -> (x -> x) = x -> x");

  // L2_4: four conditions, pairwise equivalent in I.
  {
    Suite s{"L2_4", {}, "Lemma 2.4"};
    Claim c;
    c.id = "L2_4";
    c.kind = ClaimKind::Equivalence;
    c.ambient = {"I"};
    c.groups = {{lid("L2_4.a", "0' -> x = x")},
                {lid("L2_4.b", "x'' = x")},
                {lid("L2_4.c", "(x -> x')' = x")},
                {lid("L2_4.d", "x' -> x = x")}};
    c.source = s.source;
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  r.add_suite(items_suite("L2_5", {"I20"}, "Lemma 2.5",
                          {{"a", "x' -> 0' = 0 -> x"},
                           {"b", "0 -> x' = x -> 0'"}}));

  r.add_suite(items_suite("L2_6", {"I20"}, "Lemma 2.6", {{"1", "x /\\ x = x"}}));

  r.add_suite(items_suite("L2_7", {"I20"}, "Lemma 2.7", {
      {"1",  "(x -> 0') -> y = (x -> y') -> y"},
      {"2",  "x -> (0 -> x)' = x'"},
      {"3",  "(y -> x) -> y = (0 -> x) -> y"},
      {"4",  "((x -> 0') -> y)' = (0 -> x) -> y'"},
      {"5",  "0 -> x = 0 -> (0 -> x)"},
      {"6",  "(x' -> (0 -> y))' = (0 -> x) -> (0 -> y)'"},
      {"7",  "(x -> (y -> x)')' = (x -> y) -> x"},
      {"8",  "0 -> ((0 -> x) -> (0 -> y')') = 0 -> (x -> y)"},
      {"9",  "0 -> ((0 -> x) -> y') = x -> (0 -> y')"},
      {"10", "0 -> (0 -> x)' = 0 -> x'"},
      {"11", "0 -> (x -> y) = x -> (0 -> y)"},
      {"12", "((0 -> x) -> y) -> x = ((y -> x) -> (0 -> x)')'"},
      {"13", "(((0 -> x) -> y) -> x)' = (y -> x) -> (0 -> x)'"},
      {"14", "(0 -> x') -> (y -> x) = y -> x"},
      {"15", "x' -> (0 -> x) = 0 -> x"},
      {"16", "(y -> x)' = (0 -> x) -> (y -> x)'"},
      {"17", "(x -> y) -> (0 -> y)' = (x -> y)'"},
      {"18", "0 -> (x' -> y)' = x -> (0 -> y')"},
      {"19", "((x -> y) -> x) -> ((y -> x) -> y) = x -> y"},
      {"20", "(x -> (y -> x')) -> x = x' -> (y -> x')'"},
      {"21", "x -> (y -> x') = y -> x'"},
      {"22", "0 -> (x -> y')' = 0 -> (x' -> y)"},
      {"23", "(x -> y) -> y' = y -> (x -> y)'"},
      {"24", "x -> ((y -> z') -> x)' = (x' -> y) -> ((0 -> z) -> x')"},
      {"25", "((((x -> 0') -> y) -> z) -> (u -> ((0 -> x) -> y'))')' = (z -> u) -> ((0 -> x) -> y')"},
      {"26", "(z -> x) -> (y -> z) = (0 -> x) -> (y -> z)"},
      {"27", "(x' -> y) -> ((0 -> z) -> x') = (0 -> y) -> ((0 -> z) -> x')"},
      {"28", "x -> ((y -> z') -> x)' = (0 -> y) -> ((0 -> z) -> x')"},
      {"29", "(x' -> y) -> (x -> y') = x -> y'"},
      {"30", "(x -> y')' -> (x' -> y)' = x -> y'"}}));

  {
    Suite s{"L2_8", {}, "Lemma 2.8"};
    Claim a;
    a.id = "L2_8.a";
    a.ambient = {"I20"};
    a.groups = {{lid("L2_8.a", "(x -> y'')' = (x -> y)'")}};
    a.source = "Lemma 2.8(a)";
    Claim b;
    b.id = "L2_8.b";
    b.ambient = {"I"};
    b.groups = {{lid("L2_8.b", "x''' -> y = x' -> y")}};
    b.source = "Lemma 2.8(b)";
    s.claims = {std::move(a), std::move(b)};
    r.add_suite(std::move(s));
  }

  r.add_suite(items_suite("L2_9", {"I"}, "Lemma 2.9", {
      {"1", "((x -> y) -> z)''' = ((x -> y) -> z)'"},
      {"2", "(x -> y) -> z = ((x -> y) -> z)''"},
      {"3", "(x -> y)' = (x'' -> y)'"},
      {"4", "x /\\ y = (x /\\ y)''"},
      {"5", "x \\/ y = (x \\/ y)''"},
      {"6", "x /\\ y = (x' \\/ y')'"}}));

  {
    Suite s{"L_DMchar", {}, "DM characterization"};
    Claim c;
    c.id = "L_DMchar";
    c.kind = ClaimKind::Equivalence;
    c.ambient = {"I"};
    c.groups = {{lid("L_DMchar.dm", "(x -> y) -> x = x")},
                {lid("L_DMchar.zero", "(0 -> x) -> y = y")}};
    c.source = s.source;
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  {
    Suite s{"KL_equiv", {}, "Definition 1.3"};
    Claim c;
    c.id = "KL_equiv";
    c.kind = ClaimKind::Equivalence;
    c.ambient = {"DM"};
    c.groups = {{r.label("KL")}, {r.label("KL2")}};
    c.source = s.source;
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  {
    Suite s{"L4_aux", {}, "Lemma 4.2"};
    Claim c;
    c.id = "L4_aux";
    c.kind = ClaimKind::Conditional;
    c.ambient = {"I20"};
    c.hypotheses = {lid("L4_aux.hyp", "(x -> x) -> (y -> y) = y -> y")};
    c.groups = {{lid("L4_aux.conc", "(x -> (x' -> x')) -> 0' = 0 -> x")}};
    c.source = s.source;
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  {
    Suite s{"L7_lattice_aux", {}, "Lemma 7.2"};
    Claim c;
    c.id = "L7_lattice_aux";
    c.kind = ClaimKind::Conditional;
    c.ambient = {"I"};
    c.hypotheses = {lid("L7_lattice_aux.hyp", "x /\\ (x \\/ y) = x")};
    c.groups = {{lid("L7_lattice_aux.conc", "(x -> y) -> x = x")}};
    c.source = s.source;
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  {
    Suite s{"L7_4", {}, "Lemma 7.4"};
    Claim c;
    c.id = "L7_4";
    c.kind = ClaimKind::Conditional;
    c.ambient = {"I20"};
    c.hypotheses = {lid("L7_4.hyp", "x /\\ 0 = 0")};
    c.groups = {{lid("L7_4.conc", "x -> 0' = 0'")}};
    c.source = s.source;
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  {
    Suite s = items_suite("L9_1", {"C"}, "Lemma 9.1", {
        {"a", "0 = 0'"},
        {"b", "x' = (x -> x)'"},
        {"d", "x -> (x -> y) = y' -> x"}});
    // item (c) chains three equalities; they live in one claim
    Claim c;
    c.id = "L9_1.c";
    c.ambient = {"C"};
    c.groups = {{lid("L9_1.c1", "(x -> y)' = (x' -> y)'"),
                 lid("L9_1.c2", "(x -> y)' = (x' -> y')'"),
                 lid("L9_1.c3", "(x -> y)' = (x -> y')'")}};
    c.source = "Lemma 9.1(c)";
    s.claims.insert(s.claims.begin() + 2, std::move(c));
    r.add_suite(std::move(s));
  }

  r.add_suite(items_suite("L10_1", {"I10"}, "Lemma 10.1", {
      {"a", "(y -> z) -> x = (x -> y) -> (z -> x)"},
      {"b", "(0 -> x) -> y = x -> y"},
      {"c", "x -> (y -> x) = (0 -> y) -> x"},
      {"d", "x -> (y -> x) = y -> x"}}));

  r.add_suite(items_suite("L10_2", {"ID", "A"}, "Lemma 10.2", {
      {"1", "y -> (z -> x) = x -> (0 -> (y -> (z -> x')))"},
      {"2", "x -> (y -> x') = y -> x"},
      {"3", "x -> (0 -> x) = x'"},
      {"4", "(x -> y) -> (0 -> (x -> (y -> (x -> y')))) = x -> y"},
      {"5", "(x -> y) -> (0 -> (x -> y)) = x -> y"},
      {"6", "x -> y' = x -> y"}}));

  r.add_suite(items_suite("L12_1", {"MC", "MID", "A"}, "Lemma 12.1", {
      {"a", "x -> (x -> 0') = x"},
      {"b", "x \\/ y = x -> (0 -> (y -> (0 -> (0 -> 0'))))"},
      {"c", "x \\/ y = x -> (0 -> y')"},
      {"d", "0 \\/ 0 = 0"},
      {"e", "0' = 0"},
      {"f", "x -> x' = x"},
      {"g", "x -> (y -> (x -> y')) = x -> y"},
      {"h", "x -> y' = y -> x'"},
      {"i", "x -> (y -> x') = y -> x"},
      {"j", "x' = x"}}));

  r.add_suite(items_suite("L13_1", {"MC", "ID"}, "Lemma 13.1", {
      {"a", "((0 -> x) -> y'')' = (x -> y)'"},
      {"b", "(0 -> x')' = x''"},
      {"c", "(x -> x'')' = x''"},
      {"d", "x'' = x'"},
      {"e", "((x -> y) -> z)' = (x -> y) -> z"}}));

  {
    Suite s = items_suite("T4_1", {}, "Theorem 4.1", {});
    Claim c;
    c.id = "T4_1";
    c.kind = ClaimKind::Equivalence;
    c.ambient = {"MID"};
    c.groups = {{lid("T4_1.char", "x /\\ x' = 0")},
                {r.label("DM"), r.label("BA")}};
    c.source = "Theorem 4.1";
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  {
    Suite s = items_suite("T4_3", {}, "Theorem 4.3", {});
    Claim c;
    c.id = "T4_3";
    c.kind = ClaimKind::Equivalence;
    c.ambient = {"I20"};
    c.groups = {{lid("T4_3.char", "(x -> x) -> (y -> y) = y -> y")},
                {r.label("DM"), r.label("KL")}};
    c.source = "Theorem 4.3";
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  {
    Suite s{"T8_1", {}, "Theorem 8.1"};
    Claim a;
    a.id = "T8_1.a";
    a.ambient = {"I"};
    a.groups = {{lid("T8_1.a1", "(x \\/ y)' = x' /\\ y'"),
                 lid("T8_1.a2", "(x /\\ y)' = x' \\/ y'")}};
    a.source = "Theorem 8.1(a)";
    Claim b;
    b.id = "T8_1.b";
    b.kind = ClaimKind::Equivalence;
    b.ambient = {"I"};
    b.groups = {{lid("T8_1.b1", "x /\\ y = y /\\ x")},
                {lid("T8_1.b2", "x \\/ y = y \\/ x")}};
    b.source = "Theorem 8.1(b)";
    Claim c;
    c.id = "T8_1.c";
    c.kind = ClaimKind::Equivalence;
    c.ambient = {"I"};
    c.groups = {{lid("T8_1.c1", "x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z)")},
                {lid("T8_1.c2", "x \\/ (y /\\ z) = (x \\/ y) /\\ (x \\/ z)")}};
    c.source = "Theorem 8.1(c)";
    s.claims = {std::move(a), std::move(b), std::move(c)};
    r.add_suite(std::move(s));
  }

  r.add_suite(items_suite("T8_2", {"I"}, "Theorem 8.2", {
      {"a", "(x /\\ y) /\\ (x \\/ y) = x /\\ y"},
      {"b", "(x \\/ y) \\/ (x /\\ y) = x \\/ y"}}));

  r.add_suite(items_suite("T8_3", {"I20", "MC"}, "Theorem 8.3", {
      {"a", "x /\\ x = x"},
      {"b", "x \\/ x = x"},
      {"c", "x \\/ y = y \\/ x"},
      {"d", "x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z)"},
      {"e", "x \\/ (y /\\ z) = (x \\/ y) /\\ (x \\/ z)"},
      {"f", "x /\\ (x \\/ y) = x \\/ (x /\\ y)"}}));

  {
    Suite s{"Abbott", {}, "Theorem 2.11"};
    Claim c;
    c.id = "Abbott";
    c.kind = ClaimKind::Equivalence;
    c.ambient = {"I"};
    c.groups = {{r.variety("Abbott").identities[0],
                 r.variety("Abbott").identities[1],
                 r.variety("Abbott").identities[2]},
                {r.label("DM"), r.label("BA")}};
    c.source = s.source;
    s.claims.push_back(std::move(c));
    r.add_suite(std::move(s));
  }

  return r;
}

}  // namespace detail

inline const Registry& Registry::builtin() {
  static const Registry r = detail::build_registry();
  return r;
}

}  // namespace igl
