// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  argv[1] is the CLI binary, used for the criteria that are stated
// as command-line behavior.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "igl/derivation.hpp"
#include "igl/enumerate.hpp"
#include "igl/io.hpp"
#include "igl/variety_lab.hpp"

namespace {

int g_failures = 0;
std::string g_cli;

void report(int criterion, bool ok, const std::string& what,
            const std::string& note = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what;
  if (!note.empty()) std::cout << " [" << note << "]";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

const std::vector<igl::FiniteGroupoid>& models_upto3() {
  static const std::vector<igl::FiniteGroupoid> ms = [] {
    std::vector<igl::FiniteGroupoid> out;
    for (int n = 1; n <= 3; ++n)
      for (auto& m : igl::enumerate_models(n).models) out.push_back(std::move(m));
    return out;
  }();
  return ms;
}

std::set<std::vector<int>> canon_set(const std::vector<igl::FiniteGroupoid>& ms) {
  std::set<std::vector<int>> out;
  for (const auto& m : ms) out.insert(igl::canonical_form(m).table);
  return out;
}

// 1. enum --size 2 --iso emits exactly the three 2-element algebras, < 1 s.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  CliResult r = run_cli("enum --size 2 --iso");
  double dt = seconds_since(t0);
  std::vector<std::vector<int>> tables;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto m = igl::model_from_json(igl::json::parse(line));
    tables.push_back(igl::canonical_form(m).table);
  }
  bool ok = r.exit_code == 0 && tables.size() == 3 && dt < 1.0;
  std::set<std::vector<int>> expect = {igl::builtin("two_z").table,
                                       igl::builtin("two_s").table,
                                       igl::builtin("two_b").table};
  ok = ok && std::set<std::vector<int>>(tables.begin(), tables.end()) == expect;
  std::ostringstream note;
  note << tables.size() << " models in " << dt << "s";
  report(1, ok, "enum --size 2 --iso emits the three 2-element algebras",
         note.str());
}

// 2. backtracking vs naive filtering for n in {1,2,3}; n=3 under 10 s.
void criterion2() {
  bool ok = true;
  double dt3 = 0;
  for (int n = 1; n <= 3; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    auto naive = igl::naive_enumerate(n);
    auto fast = igl::enumerate_models(n).models;
    double dt = seconds_since(t0);
    if (n == 3) dt3 = dt;
    ok = ok && canon_set(naive) == canon_set(fast);
  }
  ok = ok && dt3 < 10.0;
  std::ostringstream note;
  note << "n=3 in " << dt3 << "s, 19683 candidates, 17 classes";
  report(2, ok, "backtracking set-equals naive enumeration for n <= 3",
         note.str());
}

// 3. every lemma suite reports zero violations on all classes of size <= 3.
void criterion3() {
  const auto& reg = igl::Registry::builtin();
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string bad;
  for (const char* s :
       {"L2_4", "L2_5", "L2_6", "L2_7", "L2_9", "L9_1", "L10_1", "L10_2",
        "L12_1", "L13_1", "T8_1", "T8_2", "T8_3", "L4_aux", "L7_4",
        "L7_lattice_aux"}) {
    igl::SuiteReport rep = igl::check_suite(models_upto3(), reg.suite(s), reg);
    if (!rep.ok()) {
      ok = false;
      bad += std::string(s) + " ";
    }
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 30.0;
  std::ostringstream note;
  note << "16 suites in " << dt << "s" << (bad.empty() ? "" : "; failing: " + bad);
  report(3, ok, "lemma batteries clean on all size <= 3 classes", note.str());
}

// 4. membership-vector equalities.
void criterion4() {
  const auto& reg = igl::Registry::builtin();
  const auto& ms = models_upto3();
  bool ok = igl::equality_check({"I20"}, {"MID"}, ms, reg).equal &&
            igl::equality_check({"I20"}, {"JID"}, ms, reg).equal &&
            igl::equality_check({"MC", "I20"}, {"SCP", "I20"}, ms, reg).equal &&
            igl::equality_check({"I10"}, {"ID", "A"}, ms, reg).equal &&
            igl::equality_check({"MC", "ID"}, {"I10", "C"}, ms, reg).equal &&
            igl::equality_check({"MC", "MID", "A"}, {"C", "I10"}, ms, reg).equal &&
            igl::equality_check({"MC", "MID", "A"}, {"SL"}, ms, reg).equal;
  report(4, ok, "variety equalities hold exactly on all size <= 3 models");
}

// 5. inclusions with their separating witnesses; A-minus-C search to n = 4.
void criterion5() {
  const auto& reg = igl::Registry::builtin();
  const auto& ms = models_upto3();
  bool ok = igl::inclusion_report({"Z"}, {"C"}, ms, reg).holds_on_set &&
            igl::inclusion_report({"C"}, {"A"}, ms, reg).holds_on_set &&
            igl::inclusion_report({"A"}, {"I31"}, ms, reg).holds_on_set &&
            igl::inclusion_report({"SCP"}, {"MC"}, ms, reg).holds_on_set;

  igl::FiniteGroupoid fig1 = igl::builtin("fig1");
  igl::SatResult s1 = igl::satisfies(fig1, reg.label("SCP"));
  ok = ok && igl::member_all(fig1, {"MC"}, reg) && !s1.holds &&
       s1.witness == igl::Assignment{{"x", 2}, {"y", 2}};

  igl::FiniteGroupoid two_z = igl::builtin("two_z");
  ok = ok && igl::member_all(two_z, {"MC"}, reg) &&
       !igl::member_all(two_z, {"MID"}, reg);

  igl::FiniteGroupoid fig3 = igl::builtin("fig3");
  ok = ok && igl::member_all(fig3, {"MID"}, reg) &&
       !igl::member_all(fig3, {"MC"}, reg);

  igl::FiniteGroupoid two_b = igl::builtin("two_b");
  igl::SatResult sb = igl::satisfies(two_b, reg.label("A"));
  ok = ok && igl::member_all(two_b, {"I31"}, reg) && !sb.holds &&
       sb.witness == igl::Assignment{{"x", 0}, {"y", 0}, {"z", 0}};

  igl::FiniteGroupoid two_s = igl::builtin("two_s");
  ok = ok && igl::member_all(two_s, {"C"}, reg) &&
       !igl::member_all(two_s, {"Z"}, reg);

  // the A-minus-C search up to n = 4 inside a 10-minute budget; outcome
  // recorded either way
  auto t0 = std::chrono::steady_clock::now();
  igl::FindResult ac =
      igl::find_counterexample({"A"}, {reg.label("C")}, 4, reg, 600.0);
  double dt = seconds_since(t0);
  ok = ok && ac.complete && dt < 600.0;
  std::ostringstream note;
  if (ac.model)
    note << "A-not-C witness found at size " << ac.model->size << " in " << dt
         << "s (associative, non-commutative at "
         << igl::format_witness(ac.witness) << ")";
  else
    note << "A-not-C: none up to size 4, searched in " << dt << "s";
  report(5, ok, "inclusions Z<C<A<I31, SCP<MC with pinned witnesses",
         note.str());
}

// 6. Glivenko battery.
void criterion6() {
  const auto& reg = igl::Registry::builtin();
  bool ok = true;
  for (const auto& m : models_upto3()) {
    igl::GlivenkoReport g = igl::glivenko_check(m, reg);
    ok = ok && g.closed && g.image_in_i20 && g.dm_bicond && g.kl_bicond &&
         g.ba_bicond;
  }
  report(6, ok, "A'' closed, lands in I20, and all three biconditionals agree");
}

// 7. lattice theorem equivalence.
void criterion7() {
  const auto& reg = igl::Registry::builtin();
  bool ok = true;
  for (const auto& m : models_upto3())
    ok = ok && igl::lattice_equivalence_check(m, reg).consistent();
  report(7, ok, "the four lattice conditions agree on every size <= 3 model");
}

// 8. semilattice identification.
void criterion8() {
  const auto& reg = igl::Registry::builtin();
  bool ok = true;
  for (const auto& m : models_upto3())
    if (igl::member_all(m, {"C", "I10"}, reg))
      ok = ok && igl::semilattice_check(m).ok();
  report(8, ok, "every size <= 3 model of C and I10 is a join semilattice");
}

// 9. section-4 characterizations, Abbott vs BA, kleene3/dm4 behavior.
void criterion9() {
  const auto& reg = igl::Registry::builtin();
  bool ok = true;
  for (const auto& m : models_upto3()) {
    if (igl::member_all(m, {"MID"}, reg))
      ok = ok && (igl::satisfies(m, reg.label("T4_1.char")).holds ==
                  igl::member_all(m, {"BA"}, reg));
    if (igl::member_all(m, {"I20"}, reg))
      ok = ok && (igl::satisfies(m, reg.label("T4_3.char")).holds ==
                  igl::member_all(m, {"KL"}, reg));
    ok = ok && (igl::member_all(m, {"Abbott"}, reg) ==
                igl::member_all(m, {"BA"}, reg));
  }
  for (const char* b : {"kleene3", "dm4"}) {
    igl::FiniteGroupoid A = igl::builtin(b);
    ok = ok && igl::member_all(A, {"DM"}, reg) &&
         !igl::satisfies(A, reg.label("Abbott.2")).holds;
  }
  report(9, ok,
         "Boolean/Kleene characterizations exact; kleene3 and dm4 are DM "
         "but fail Abbott(2)");
}

// 10. derivation replay plus per-step fault injection, < 5 s.
void criterion10() {
  const auto& reg = igl::Registry::builtin();
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;
  // item (15) is shipped under both readings of the numbering: the chain the
  // criterion quotes (item14 in the lemma's own numbering) and item15
  for (const char* f : {"L2_7_item1.drv", "L2_7_item2.drv", "L2_7_item14.drv",
                        "L2_7_item15.drv"}) {
    std::string path = std::string(IGL_DATA_DIR) + "/derivations/" + f;
    igl::Derivation d = igl::parse_derivation_file(path, reg);
    igl::DerivationReport rep = igl::check_derivation(
        d, models_upto3(), igl::DerivationMode::Semantic, reg);
    if (!rep.semantic_ok || !rep.goal_ok) {
      ok = false;
      note += std::string(f) + " fails; ";
    }
    // fault injection: priming any single step's term must be detected
    // (negation is fixpoint-free in two_b, so the check always has a witness)
    for (size_t i = 0; i < d.steps.size(); ++i) {
      igl::Derivation mutant = d;
      mutant.steps[i].term = igl::Term::impl(mutant.steps[i].term, igl::Term::zero());
      if (i == 0) mutant.goal.lhs = mutant.steps[i].term;
      if (i + 1 == d.steps.size()) mutant.goal.rhs = mutant.steps[i].term;
      igl::DerivationReport mrep = igl::check_derivation(
          mutant, models_upto3(), igl::DerivationMode::Semantic, reg);
      if (mrep.semantic_ok) {
        ok = false;
        note += std::string(f) + " missed a fault at step " +
                std::to_string(i) + "; ";
      } else {
        bool witnessed = false;
        for (const auto& s : mrep.steps)
          witnessed = witnessed ||
                      (!s.semantic_ok && s.detail.find("{") != std::string::npos);
        if (!witnessed) {
          ok = false;
          note += "fault report lacks a witness; ";
        }
      }
    }
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 5.0;
  std::ostringstream n2;
  n2 << note << "4 chains + " << "per-step faults in " << dt << "s";
  report(10, ok, "shipped derivation chains replay; injected faults detected",
         n2.str());
}

// 11. mutating one entry of 2_s makes the CLI battery fail with a claim id.
void criterion11() {
  igl::FiniteGroupoid mutant = igl::builtin("two_s");
  mutant.name = "two_s_mutant";
  mutant.table[1] ^= 1;
  std::string path = "/tmp/igl_mutant.json";
  {
    std::ofstream f(path);
    f << igl::model_to_json(mutant).dump() << "\n";
  }
  std::string rep_path = "/tmp/igl_mutant_report.json";
  CliResult r = run_cli("verify-paper --max-size 2 --inject " + path +
                        " --json " + rep_path);
  bool ok = r.exit_code == 1;
  std::string claim, witness;
  {
    std::ifstream f(rep_path);
    if (f) {
      igl::json j;
      f >> j;
      for (const auto& e : j["entries"])
        if (e["status"] == "fail") {
          claim = e["claim_id"].get<std::string>();
          witness = e.value("witness", "");
        }
    }
  }
  ok = ok && !claim.empty() &&
       witness.find("two_s_mutant") != std::string::npos;
  report(11, ok, "single-cell mutation of 2_s fails verify-paper --max-size 2",
         claim.empty() ? "" : claim + ": " + witness);
  std::remove(path.c_str());
  std::remove(rep_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: igl_acceptance <path-to-igl-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria pass"
                                : "ACCEPTANCE: FAILURES PRESENT")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
