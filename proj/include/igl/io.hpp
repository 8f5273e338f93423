#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "igl/algebra.hpp"
#include "igl/derivation.hpp"
#include "igl/variety_lab.hpp"

// File formats: an algebra is {"size": n, "table": [[...], ...]} with an
// optional "name"; model streams are one such object per line (jsonl).

namespace igl {

using json = nlohmann::ordered_json;

inline json model_to_json(const FiniteGroupoid& A) {
  json rows = json::array();
  for (int x = 0; x < A.size; ++x) {
    json row = json::array();
    for (int y = 0; y < A.size; ++y) row.push_back(A.at(x, y));
    rows.push_back(std::move(row));
  }
  json j;
  j["size"] = A.size;
  j["table"] = std::move(rows);
  if (!A.name.empty()) j["name"] = A.name;
  return j;
}

inline FiniteGroupoid model_from_json(const json& j) {
  if (!j.contains("size") || !j.contains("table"))
    throw std::runtime_error("model JSON needs \"size\" and \"table\"");
  std::vector<std::vector<int>> rows;
  for (const auto& r : j.at("table")) rows.push_back(r.get<std::vector<int>>());
  if (static_cast<int>(rows.size()) != j.at("size").get<int>())
    throw std::runtime_error("model JSON: size does not match the table");
  return make_groupoid(rows, j.value("name", ""));
}

// Accepts "builtin:NAME" or a path to a JSON file.
inline FiniteGroupoid load_model(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) return builtin(source.substr(8));
  std::ifstream f(source);
  if (!f) throw std::runtime_error("cannot open '" + source + "'");
  json j;
  f >> j;
  return model_from_json(j);
}

inline std::vector<FiniteGroupoid> load_models_jsonl(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<FiniteGroupoid> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(model_from_json(json::parse(line)));
  }
  return out;
}

// Text rendering in the familiar figure layout.
inline std::string render_table(const FiniteGroupoid& A) {
  std::ostringstream os;
  if (!A.name.empty()) os << A.name << "\n";
  os << " ->: |";
  for (int y = 0; y < A.size; ++y) os << std::setw(3) << y;
  os << "\n-----+" << std::string(static_cast<size_t>(3) * A.size, '-') << "\n";
  for (int x = 0; x < A.size; ++x) {
    os << std::setw(4) << x << " |";
    for (int y = 0; y < A.size; ++y) os << std::setw(3) << A.at(x, y);
    os << "\n";
  }
  return os.str();
}

inline json battery_to_json(const BatteryReport& rep) {
  json j;
  j["max_size"] = rep.max_size;
  j["complete"] = rep.complete;
  j["all_pass"] = rep.all_pass();
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json je;
    je["claim_id"] = e.claim_id;
    je["paper_ref"] = e.paper_ref;
    je["status"] = e.status;
    if (!e.witness.empty()) je["witness"] = e.witness;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline json derivation_report_to_json(const DerivationReport& rep) {
  json j;
  j["derivation"] = rep.name;
  j["semantic_ok"] = rep.semantic_ok;
  j["goal_ok"] = rep.goal_ok;
  json steps = json::array();
  for (const auto& s : rep.steps) {
    json js;
    js["transition"] = s.index;
    if (!s.justification.empty()) js["by"] = s.justification;
    js["semantic"] = s.semantic_ok;
    if (s.syntactic_checked) js["syntactic"] = s.syntactic_ok;
    if (!s.detail.empty()) js["detail"] = s.detail;
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j;
}

inline json suite_report_to_json(const SuiteReport& rep) {
  json j;
  j["suite"] = rep.suite;
  j["models"] = rep.models_checked;
  j["checked"] = rep.claims_checked;
  json v = json::array();
  for (const auto& viol : rep.violations) {
    json jv;
    jv["model"] = viol.model_name;
    jv["claim"] = viol.claim_id;
    jv["detail"] = viol.detail;
    v.push_back(std::move(jv));
  }
  j["violations"] = std::move(v);
  return j;
}

}  // namespace igl
