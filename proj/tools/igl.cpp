// Command-line laboratory for finite implicator groupoids.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "igl/checker.hpp"
#include "igl/derivation.hpp"
#include "igl/enumerate.hpp"
#include "igl/io.hpp"
#include "igl/registry.hpp"
#include "igl/variety_lab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

double env_budget() {
  const char* v = std::getenv("IGL_MAX_SECONDS");
  if (!v) return 0;
  try {
    return std::stod(v);
  } catch (...) {
    return 0;
  }
}

igl::Registry load_registry(const std::vector<std::string>& ids_files) {
  igl::Registry reg = igl::Registry::builtin();
  for (const auto& f : ids_files) reg.load_ids_file(f);
  return reg;
}

// "@LABEL" names a registry identity; anything else parses as literal text.
igl::Identity resolve_identity(const std::string& text, const igl::Registry& reg) {
  if (!text.empty() && text[0] == '@') return reg.label(text.substr(1));
  return igl::parse_identity(text);
}

int cmd_check(const std::string& algebra, const std::string& identity,
              const std::vector<std::string>& ids_files, int cap, bool as_json) {
  igl::Registry reg = load_registry(ids_files);
  igl::FiniteGroupoid A = igl::load_model(algebra);
  igl::Identity id = resolve_identity(identity, reg);
  igl::SatResult res = igl::satisfies(A, id, cap);
  if (as_json) {
    igl::json j;
    j["algebra"] = igl::model_to_json(A);
    j["identity"] = igl::print(id, true);
    j["holds"] = res.holds;
    if (!res.holds) j["witness"] = res.witness;
    std::cout << j.dump(2) << "\n";
  } else if (res.holds) {
    std::cout << "holds: " << igl::print(id, true) << "\n";
  } else {
    std::cout << "violated: " << igl::print(id, true) << " at "
              << igl::format_witness(res.witness) << "\n";
  }
  return res.holds ? kExitOk : kExitViolation;
}

int cmd_classify(const std::string& algebra,
                 const std::vector<std::string>& ids_files, int cap, bool as_json) {
  igl::Registry reg = load_registry(ids_files);
  igl::FiniteGroupoid A = igl::load_model(algebra);
  igl::json vec = igl::json::object();
  for (const auto& name : reg.variety_names()) {
    igl::MembershipResult m = igl::membership(A, reg.variety(name), cap);
    vec[name] = m.belongs;
  }
  if (as_json) {
    igl::json j;
    j["algebra"] = igl::model_to_json(A);
    j["membership"] = vec;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << igl::render_table(A);
    std::cout << "member of:";
    for (auto& [k, v] : vec.items())
      if (v.get<bool>()) std::cout << " " << k;
    std::cout << "\nnot in:";
    for (auto& [k, v] : vec.items())
      if (!v.get<bool>()) std::cout << " " << k;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_enum(int size, const std::string& variety, bool iso, double budget,
             bool parallel, const std::string& out,
             const std::vector<std::string>& ids_files, bool text) {
  igl::Registry reg = load_registry(ids_files);
  igl::EnumOptions opts;
  opts.iso_reduce = iso;
  opts.max_seconds = budget;
  opts.parallel = parallel;
  igl::EnumResult res = igl::enumerate_models(size, opts);

  std::vector<igl::FiniteGroupoid> emit;
  for (auto& m : res.models) {
    if (!variety.empty() && !igl::membership(m, reg.variety(variety)).belongs)
      continue;
    emit.push_back(std::move(m));
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write '" + out + "'");
    os = &file;
  }
  for (const auto& m : emit)
    *os << (text ? igl::render_table(m) : igl::model_to_json(m).dump()) << "\n";
  std::cerr << "emitted " << emit.size() << " model(s) of size " << size
            << (iso ? " up to isomorphism" : "")
            << (res.complete ? "" : " [INCOMPLETE: budget exhausted]") << "\n";
  return res.complete ? kExitOk : kExitViolation;
}

int cmd_find(const std::string& sat, const std::vector<std::string>& fail,
             int max_size, double budget,
             const std::vector<std::string>& ids_files, bool as_json) {
  igl::Registry reg = load_registry(ids_files);
  std::vector<igl::Identity> fail_ids;
  for (const auto& f : fail) fail_ids.push_back(resolve_identity(f, reg));
  igl::FindResult res =
      igl::find_counterexample({sat}, fail_ids, max_size, reg, budget);
  if (as_json) {
    igl::json j;
    j["sat"] = sat;
    j["searched_up_to"] = res.searched_up_to;
    j["complete"] = res.complete;
    j["found"] = res.model.has_value();
    if (res.model) {
      j["model"] = igl::model_to_json(*res.model);
      j["violated"] = res.violated;
      j["witness"] = res.witness;
    }
    std::cout << j.dump(2) << "\n";
  } else if (res.model) {
    std::cout << "counterexample in " << sat << " violating " << res.violated
              << " at " << igl::format_witness(res.witness) << ":\n"
              << igl::render_table(*res.model);
  } else if (res.complete) {
    std::cout << "none up to size " << max_size << "\n";
  } else {
    std::cout << "search incomplete (budget exhausted) at size "
              << res.searched_up_to << "\n";
  }
  return res.model ? kExitOk : kExitViolation;
}

int cmd_verify(int max_size, const std::string& json_out,
               const std::vector<std::string>& inject, double budget, int cap) {
  const igl::Registry& reg = igl::Registry::builtin();
  igl::BatteryOptions opts;
  opts.max_size = max_size;
  opts.max_seconds = budget;
  opts.var_cap = cap;
  for (const auto& path : inject) {
    igl::FiniteGroupoid m = igl::load_model(path);
    if (m.name.empty()) m.name = "injected:" + path;
    opts.injected.push_back(std::move(m));
  }
  igl::BatteryReport rep = igl::verify_paper(reg, opts);
  for (const auto& e : rep.entries) {
    std::cout << (e.status == "pass" ? "PASS " : "FAIL ") << e.claim_id << " ["
              << e.paper_ref << "]";
    if (!e.witness.empty()) std::cout << " -- " << e.witness;
    std::cout << "\n";
  }
  std::cout << (rep.all_pass() ? "ALL CHECKS PASSED" : "CHECKS FAILED")
            << " (models of size <= " << max_size << ")\n";
  if (!json_out.empty()) {
    std::ofstream f(json_out);
    if (!f) throw std::runtime_error("cannot write '" + json_out + "'");
    f << igl::battery_to_json(rep).dump(2) << "\n";
  }
  return rep.all_pass() ? kExitOk : kExitViolation;
}

int cmd_derive(const std::string& file, int max_size, const std::string& mode_s,
               const std::vector<std::string>& ids_files, int cap, bool as_json) {
  igl::Registry reg = load_registry(ids_files);
  igl::DerivationMode mode;
  if (mode_s == "semantic") mode = igl::DerivationMode::Semantic;
  else if (mode_s == "syntactic") mode = igl::DerivationMode::Syntactic;
  else if (mode_s == "both") mode = igl::DerivationMode::Both;
  else throw CLI::ValidationError("--mode", "must be semantic, syntactic or both");

  igl::Derivation d = igl::parse_derivation_file(file, reg);
  std::vector<igl::FiniteGroupoid> models;
  for (int n = 1; n <= max_size; ++n) {
    igl::EnumResult er = igl::enumerate_models(n);
    for (auto& m : er.models) models.push_back(std::move(m));
  }
  igl::DerivationReport rep = igl::check_derivation(d, models, mode, reg, cap);
  if (as_json) {
    std::cout << igl::derivation_report_to_json(rep).dump(2) << "\n";
  } else {
    std::cout << "derivation " << d.name << " (" << d.transitions()
              << " transitions, ambient";
    for (const auto& a : d.ambient) std::cout << " " << a;
    std::cout << ")\n";
    for (const auto& s : rep.steps) {
      std::cout << "  step " << s.index + 1;
      if (!s.justification.empty()) std::cout << " [by " << s.justification << "]";
      if (mode != igl::DerivationMode::Syntactic)
        std::cout << " semantic=" << (s.semantic_ok ? "ok" : "VIOLATED");
      if (s.syntactic_checked)
        std::cout << " syntactic=" << (s.syntactic_ok ? "ok" : "VIOLATED");
      if (!s.detail.empty()) std::cout << "  (" << s.detail << ")";
      std::cout << "\n";
    }
  }
  bool ok = mode == igl::DerivationMode::Syntactic ? rep.syntactic_ok
                                                   : rep.semantic_ok;
  if (!as_json)
    std::cout << (ok ? "derivation checks out" : "derivation FAILS") << "\n";
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model laboratory for implicator groupoids"};
  app.require_subcommand(1);
  double default_budget = env_budget();

  std::string algebra, identity, variety, sat, out, json_out, file;
  std::string mode = "semantic";
  std::vector<std::string> ids_files, fail, inject;
  int size = 2, max_size = 3, cap = igl::kDefaultVarCap;
  double budget = default_budget;
  bool iso = true, parallel = false, as_json = false, text = false;

  auto* check = app.add_subcommand("check", "test one identity on one algebra");
  check->add_option("--algebra", algebra, "builtin:NAME or JSON file")->required();
  check->add_option("--identity", identity, "identity text or @LABEL")->required();
  check->add_option("--ids", ids_files, "extra .ids identity files");
  check->add_option("--cap", cap, "variable cap");
  check->add_flag("--json", as_json, "JSON output");

  auto* classify = app.add_subcommand("classify", "membership vector over all varieties");
  classify->add_option("--algebra", algebra)->required();
  classify->add_option("--ids", ids_files);
  classify->add_option("--cap", cap);
  classify->add_flag("--json", as_json);

  auto* en = app.add_subcommand("enum", "enumerate models of a given size");
  en->add_option("--size", size)->required();
  en->add_option("--variety", variety, "restrict to a registered variety");
  en->add_flag("--iso,!--no-iso", iso, "one representative per isomorphism class");
  en->add_option("--max-seconds", budget, "time budget (default IGL_MAX_SECONDS)");
  en->add_flag("--parallel", parallel);
  en->add_option("--out", out, "write jsonl here instead of stdout");
  en->add_option("--ids", ids_files);
  en->add_flag("--text", text, "figure-style tables instead of jsonl");

  auto* find = app.add_subcommand("find", "smallest model of a variety violating an identity");
  find->add_option("--sat", sat, "variety the model must satisfy")->required();
  find->add_option("--fail", fail, "identity text or @LABEL (repeatable)")->required();
  find->add_option("--max-size", max_size);
  find->add_option("--max-seconds", budget);
  find->add_option("--ids", ids_files);
  find->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify-paper", "run the whole claim battery");
  verify->add_option("--max-size", max_size);
  verify->add_option("--json", json_out, "also write the report as JSON");
  verify->add_option("--inject", inject, "extra model JSON files to include");
  verify->add_option("--max-seconds", budget);
  verify->add_option("--cap", cap);

  auto* derive = app.add_subcommand("derive", "replay a .drv proof chain");
  derive->add_option("--file", file)->required();
  derive->add_option("--max-size", max_size);
  derive->add_option("--mode", mode, "semantic | syntactic | both");
  derive->add_option("--ids", ids_files);
  derive->add_option("--cap", cap);
  derive->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) return cmd_check(algebra, identity, ids_files, cap, as_json);
    if (*classify) return cmd_classify(algebra, ids_files, cap, as_json);
    if (*en) return cmd_enum(size, variety, iso, budget, parallel, out, ids_files, text);
    if (*find) return cmd_find(sat, fail, max_size, budget, ids_files, as_json);
    if (*verify) return cmd_verify(max_size, json_out, inject, budget, cap);
    if (*derive) return cmd_derive(file, max_size, mode, ids_files, cap, as_json);
  } catch (const igl::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
