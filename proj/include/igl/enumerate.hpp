#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "igl/algebra.hpp"
#include "igl/checker.hpp"

// Enumeration of implicator groupoids of size n, up to isomorphism.
//
// The backtracking search fills table cells in row-major order.  After each
// cell it re-examines every instance of (I) (and of any extra pruning
// identities) whose evaluation path is fully determined by the cells set so
// far; a decided-false instance prunes the branch, a decided-true instance is
// never re-checked deeper in the branch.  (I0) is one more such instance.
//
// naive_enumerate filters all n^(n^2) tables and exists only to cross-check
// the backtracking search.

namespace igl {

struct EnumOptions {
  bool iso_reduce = true;
  double max_seconds = 0;  // 0 = no budget
  bool parallel = false;
  std::vector<Identity> prune_identities;
};

struct EnumResult {
  std::vector<FiniteGroupoid> models;
  bool complete = true;  // false when the budget expired first
};

namespace detail {

// -1 marks an unset cell.
inline std::optional<int> partial_eval(const TermPtr& t, const std::vector<int>& tab,
                                       int n, const std::map<std::string, int>& sigma) {
  switch (t->kind) {
    case TermKind::Var:
      return sigma.at(t->name);
    case TermKind::Zero:
      return 0;
    case TermKind::Impl: {
      auto l = partial_eval(t->left, tab, n, sigma);
      if (!l) return std::nullopt;
      auto r = partial_eval(t->right, tab, n, sigma);
      if (!r) return std::nullopt;
      int v = tab[static_cast<size_t>(*l) * n + *r];
      if (v < 0) return std::nullopt;
      return v;
    }
    default:
      throw std::logic_error("partial_eval: unexpanded term");
  }
}

class ModelSearch {
 public:
  ModelSearch(int n, const EnumOptions& opts)
      : n_(n), opts_(opts) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) triples_.push_back({x, y, z});
    for (const auto& id : opts.prune_identities) {
      const int k = static_cast<int>(id.vars.size());
      std::vector<int> a(k, 0);
      while (true) {
        extra_.push_back({&id, a});
        int i = k - 1;
        while (i >= 0 && a[i] == n - 1) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
      }
    }
    if (opts.max_seconds > 0)
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(opts.max_seconds));
  }

  size_t constraint_count() const { return 1 + triples_.size() + extra_.size(); }

  // nullopt: undecided; otherwise whether the constraint holds.
  std::optional<bool> eval_constraint(size_t ci, const std::vector<int>& tab) const {
    auto look = [&](int x, int y) { return tab[static_cast<size_t>(x) * n_ + y]; };
    if (ci == 0) {  // (I0): 0'' = 0
      int p0 = look(0, 0);
      if (p0 < 0) return std::nullopt;
      int pp0 = look(p0, 0);
      if (pp0 < 0) return std::nullopt;
      return pp0 == 0;
    }
    ci -= 1;
    if (ci < triples_.size()) {
      auto [x, y, z] = triples_[ci];
      int a = look(x, y);
      if (a < 0) return std::nullopt;
      int lhs = look(a, z);
      if (lhs < 0) return std::nullopt;
      int zp = look(z, 0);
      if (zp < 0) return std::nullopt;
      int b = look(zp, x);
      if (b < 0) return std::nullopt;
      int c = look(y, z);
      if (c < 0) return std::nullopt;
      int cp = look(c, 0);
      if (cp < 0) return std::nullopt;
      int d = look(b, cp);
      if (d < 0) return std::nullopt;
      int rhs = look(d, 0);
      if (rhs < 0) return std::nullopt;
      return lhs == rhs;
    }
    const auto& [idptr, assign] = extra_[ci - triples_.size()];
    std::map<std::string, int> sigma;
    for (size_t i = 0; i < idptr->vars.size(); ++i) sigma[idptr->vars[i]] = assign[i];
    auto l = partial_eval(idptr->lhs, tab, n_, sigma);
    if (!l) return std::nullopt;
    auto r = partial_eval(idptr->rhs, tab, n_, sigma);
    if (!r) return std::nullopt;
    return *l == *r;
  }

  // Re-checks undecided constraints; false = contradiction.
  bool propagate(const std::vector<int>& tab, std::vector<uint8_t>& decided) const {
    for (size_t ci = 0; ci < decided.size(); ++ci) {
      if (decided[ci]) continue;
      auto v = eval_constraint(ci, tab);
      if (!v) continue;
      if (!*v) return false;
      decided[ci] = 1;
    }
    return true;
  }

  bool expired() {
    if (opts_.max_seconds <= 0) return false;
    if (++ticks_ % 1024 != 0) return timed_out_;
    if (std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    return timed_out_;
  }

  // Depth-first over cells [cell, n^2); emits complete valid tables.
  void dfs(std::vector<int>& tab, int cell, std::vector<uint8_t> decided,
           std::vector<std::vector<int>>& out, bool& complete) {
    if (expired()) {
      complete = false;
      return;
    }
    if (cell == n_ * n_) {
      out.push_back(tab);
      return;
    }
    for (int v = 0; v < n_; ++v) {
      tab[cell] = v;
      std::vector<uint8_t> d = decided;
      if (propagate(tab, d)) dfs(tab, cell + 1, std::move(d), out, complete);
      if (timed_out_) break;
    }
    tab[cell] = -1;
  }

  int n_;
  const EnumOptions& opts_;
  std::vector<std::array<int, 3>> triples_;
  std::vector<std::pair<const Identity*, std::vector<int>>> extra_;
  std::chrono::steady_clock::time_point deadline_{};
  bool timed_out_ = false;
  uint64_t ticks_ = 0;
};

inline EnumResult finish(int n, const EnumOptions& opts,
                         std::vector<std::vector<int>> raw, bool complete) {
  EnumResult res;
  res.complete = complete;
  if (opts.iso_reduce) {
    std::set<std::vector<int>> seen;
    for (auto& t : raw) {
      FiniteGroupoid g{n, std::move(t), ""};
      seen.insert(canonical_form(g).table);
    }
    for (const auto& t : seen) res.models.push_back(FiniteGroupoid{n, t, ""});
  } else {
    std::sort(raw.begin(), raw.end());
    for (auto& t : raw) res.models.push_back(FiniteGroupoid{n, std::move(t), ""});
  }
  return res;
}

}  // namespace detail

inline EnumResult enumerate_models(int n, const EnumOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("enumerate_models: size must be >= 1");
  detail::ModelSearch search(n, opts);
  std::vector<std::vector<int>> raw;
  bool complete = true;

  if (!opts.parallel) {
    std::vector<int> tab(static_cast<size_t>(n) * n, -1);
    std::vector<uint8_t> decided(search.constraint_count(), 0);
    search.dfs(tab, 0, std::move(decided), raw, complete);
    return detail::finish(n, opts, std::move(raw), complete);
  }

  // Partition by the first row; workers share nothing and the merged output
  // is re-sorted, so parallel and serial runs agree.
  struct Job {
    std::vector<int> tab;
    std::vector<uint8_t> decided;
  };
  std::vector<Job> jobs;
  {
    std::vector<int> row(n, 0);
    while (true) {
      std::vector<int> tab(static_cast<size_t>(n) * n, -1);
      for (int y = 0; y < n; ++y) tab[y] = row[y];
      std::vector<uint8_t> decided(search.constraint_count(), 0);
      if (search.propagate(tab, decided))
        jobs.push_back({std::move(tab), std::move(decided)});
      int i = n - 1;
      while (i >= 0 && row[i] == n - 1) row[i--] = 0;
      if (i < 0) break;
      ++row[i];
    }
  }
  std::vector<std::vector<std::vector<int>>> results(jobs.size());
  std::vector<uint8_t> incomplete(jobs.size(), 0);
  std::atomic<size_t> next{0};
  unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < nthreads; ++w)
    workers.emplace_back([&] {
      detail::ModelSearch local(n, opts);
      while (true) {
        size_t j = next.fetch_add(1);
        if (j >= jobs.size()) return;
        bool c = true;
        std::vector<int> tab = jobs[j].tab;
        local.dfs(tab, n, jobs[j].decided, results[j], c);
        if (!c) incomplete[j] = 1;
      }
    });
  for (auto& t : workers) t.join();
  for (size_t j = 0; j < jobs.size(); ++j) {
    complete = complete && !incomplete[j];
    for (auto& t : results[j]) raw.push_back(std::move(t));
  }
  return detail::finish(n, opts, std::move(raw), complete);
}

// Brute force over all n^(n^2) tables; the independent cross-check for the
// backtracking search.  Guarded at n <= 3; n = 4 only behind the override.
inline std::vector<FiniteGroupoid> naive_enumerate(int n, bool allow_large = false) {
  if (n < 1) throw std::invalid_argument("naive_enumerate: size must be >= 1");
  if (n > 4)
    throw std::invalid_argument("naive_enumerate: n > 4 is not supported");
  if (n == 4 && !allow_large)
    throw std::invalid_argument(
        "naive_enumerate: n = 4 needs the explicit large-size override");
  std::vector<FiniteGroupoid> out;
  const int cells = n * n;
  std::vector<int> tab(cells, 0);
  while (true) {
    FiniteGroupoid g{n, tab, ""};
    if (validate_axioms(g).ok) out.push_back(std::move(g));
    int i = cells - 1;
    while (i >= 0 && tab[i] == n - 1) tab[i--] = 0;
    if (i < 0) break;
    ++tab[i];
  }
  return out;
}

// Iso classes of size exactly n inside the given variety.
inline int count_models(int n, const std::string& variety, const Registry& reg,
                        const EnumOptions& opts = {}) {
  EnumOptions o = opts;
  o.iso_reduce = true;
  EnumResult res = enumerate_models(n, o);
  if (!res.complete)
    throw std::runtime_error("count_models: enumeration budget exhausted");
  const VarietyDef& V = reg.variety(variety);
  int count = 0;
  for (const auto& m : res.models)
    if (membership(m, V).belongs) ++count;
  return count;
}

}  // namespace igl
