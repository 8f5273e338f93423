#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "igl/term.hpp"

// Finite models of the signature <->, 0>.  The constant is always element 0
// of the carrier {0..n-1}; file formats and canonicalization rely on that.
// Tables are row-major with the row index giving the LEFT argument:
// table[x*n + y] = x -> y.

namespace igl {

struct FiniteGroupoid {
  int size = 0;
  std::vector<int> table;  // row-major, row = left argument
  std::string name;

  int at(int x, int y) const { return table[static_cast<size_t>(x) * size + y]; }
  int prime(int x) const { return at(x, 0); }

  bool operator==(const FiniteGroupoid& o) const {
    return size == o.size && table == o.table;
  }
  bool operator<(const FiniteGroupoid& o) const {
    return size != o.size ? size < o.size : table < o.table;
  }
};

inline FiniteGroupoid make_groupoid(std::vector<std::vector<int>> rows,
                                    std::string name = "") {
  FiniteGroupoid g;
  g.size = static_cast<int>(rows.size());
  g.name = std::move(name);
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != g.size)
      throw std::invalid_argument("make_groupoid: table is not square");
    for (int v : r) {
      if (v < 0 || v >= g.size)
        throw std::invalid_argument("make_groupoid: entry out of range");
      g.table.push_back(v);
    }
  }
  return g;
}

// Derived meet/join tables of A^mj.
struct BiGroupoid {
  int size = 0;
  std::vector<int> meet_table;
  std::vector<int> join_table;

  int meet(int x, int y) const { return meet_table[static_cast<size_t>(x) * size + y]; }
  int join(int x, int y) const { return join_table[static_cast<size_t>(x) * size + y]; }
};

using Assignment = std::map<std::string, int>;

class eval_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int evaluate(const TermPtr& t, const FiniteGroupoid& A,
                    const Assignment& sigma) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = sigma.find(t->name);
      if (it == sigma.end())
        throw eval_error("unbound variable '" + t->name + "'");
      if (it->second < 0 || it->second >= A.size)
        throw eval_error("assignment value out of carrier for '" + t->name + "'");
      return it->second;
    }
    case TermKind::Zero:
      return 0;
    case TermKind::Impl:
      return A.at(evaluate(t->left, A, sigma), evaluate(t->right, A, sigma));
    default:
      throw eval_error("evaluate: term must be expanded");
  }
}

// ---------------------------------------------------------------------------
// Axioms.  (I)  (x->y)->z = ((z'->x)->(y->z)')'   and   (I0)  0'' = 0.

struct AxiomCheck {
  bool ok = true;
  std::string axiom;             // "I" or "I0" when !ok
  std::vector<int> assignment;   // {x,y,z} for (I); empty for (I0)
};

inline AxiomCheck validate_axioms(const FiniteGroupoid& A) {
  const int n = A.size;
  if (A.prime(A.prime(0)) != 0) return {false, "I0", {}};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int lhs = A.at(A.at(x, y), z);
        int rhs = A.prime(A.at(A.at(A.prime(z), x), A.prime(A.at(y, z))));
        if (lhs != rhs) return {false, "I", {x, y, z}};
      }
  return {};
}

// ---------------------------------------------------------------------------
// Isomorphism utilities.  Isomorphisms fix the constant, so canonicalization
// ranges over the (n-1)! permutations of {1..n-1} with 0 pinned.

inline FiniteGroupoid permute(const FiniteGroupoid& A,
                              const std::vector<int>& p) {
  const int n = A.size;
  FiniteGroupoid B;
  B.size = n;
  B.table.assign(static_cast<size_t>(n) * n, 0);
  std::vector<int> q(n);
  for (int i = 0; i < n; ++i) q[p[i]] = i;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      B.table[static_cast<size_t>(u) * n + v] = p[A.at(q[u], q[v])];
  return B;
}

// Lexicographically minimal row-major table over all 0-fixing permutations.
// Two models are isomorphic iff their canonical forms are equal.
inline FiniteGroupoid canonical_form(const FiniteGroupoid& A) {
  const int n = A.size;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  FiniteGroupoid best = permute(A, p);
  while (std::next_permutation(p.begin() + 1, p.end())) {
    FiniteGroupoid cand = permute(A, p);
    if (cand.table < best.table) best = cand;
  }
  best.name = A.name;
  return best;
}

// ---------------------------------------------------------------------------
// A'' and A^mj.

struct PrimeImage {
  std::vector<int> elements;  // sorted carrier of A''
  std::vector<int> map;       // a -> a''
};

inline PrimeImage prime_image(const FiniteGroupoid& A) {
  PrimeImage out;
  out.map.resize(A.size);
  for (int a = 0; a < A.size; ++a) {
    out.map[a] = A.prime(A.prime(a));
    if (std::find(out.elements.begin(), out.elements.end(), out.map[a]) ==
        out.elements.end())
      out.elements.push_back(out.map[a]);
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

// The subalgebra on A'' = {a'' : a in A}, relabeled to {0..m-1} with 0 -> 0.
// Closure is guaranteed for implicator groupoids; a violation here means the
// input was not one.
inline FiniteGroupoid double_prime_subalgebra(const FiniteGroupoid& A) {
  PrimeImage img = prime_image(A);
  const auto& el = img.elements;
  const int m = static_cast<int>(el.size());
  std::vector<int> idx(A.size, -1);
  for (int i = 0; i < m; ++i) idx[el[i]] = i;
  FiniteGroupoid S;
  S.size = m;
  S.name = A.name.empty() ? "" : A.name + "''";
  S.table.reserve(static_cast<size_t>(m) * m);
  for (int a : el)
    for (int b : el) {
      int v = A.at(a, b);
      if (idx[v] < 0)
        throw std::logic_error("double_prime_subalgebra: A'' not closed under ->");
      S.table.push_back(idx[v]);
    }
  return S;
}

namespace detail {
inline const TermPtr& meet_term() {
  static const TermPtr t = parse_term("x /\\ y");
  return t;
}
inline const TermPtr& join_term() {
  static const TermPtr t = parse_term("x \\/ y");
  return t;
}
}  // namespace detail

// Meet/join tables computed by evaluating (M) and (J) in A.
inline BiGroupoid mj_reduct(const FiniteGroupoid& A) {
  BiGroupoid B;
  B.size = A.size;
  Assignment sigma;
  for (int x = 0; x < A.size; ++x)
    for (int y = 0; y < A.size; ++y) {
      sigma["x"] = x;
      sigma["y"] = y;
      B.meet_table.push_back(evaluate(detail::meet_term(), A, sigma));
      B.join_table.push_back(evaluate(detail::join_term(), A, sigma));
    }
  return B;
}

// ---------------------------------------------------------------------------
// Built-in algebras.  two_z/two_s/two_b are the three 2-element implicator
// groupoids; fig1 separates MC from SCP; fig3 separates MID from MC.
// kleene3 and dm4 are constructed as x->y := x' \/ y on the 3-chain and the
// 4-element diamond, then verified against (I), (I0) and (DM) rather than
// trusted as literals.

namespace detail {

inline FiniteGroupoid from_neg_join(const std::vector<int>& neg,
                                    const std::vector<std::vector<int>>& join,
                                    const std::string& name) {
  const int n = static_cast<int>(neg.size());
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) rows[x][y] = join[neg[x]][y];
  FiniteGroupoid g = make_groupoid(rows, name);
  AxiomCheck ax = validate_axioms(g);
  if (!ax.ok)
    throw std::logic_error("builtin " + name + " fails axiom " + ax.axiom);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g.at(g.at(x, y), x) != x)
        throw std::logic_error("builtin " + name + " fails (DM)");
  return g;
}

}  // namespace detail

inline FiniteGroupoid builtin(const std::string& name) {
  if (name == "two_z") return make_groupoid({{0, 0}, {0, 0}}, "two_z");
  if (name == "two_s") return make_groupoid({{0, 1}, {1, 1}}, "two_s");
  if (name == "two_b") return make_groupoid({{1, 1}, {0, 1}}, "two_b");
  if (name == "fig1")
    return make_groupoid({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}, "fig1");
  if (name == "fig3")
    return make_groupoid({{0, 1, 2}, {1, 1, 2}, {2, 1, 2}}, "fig3");
  if (name == "kleene3") {
    // chain 0 < 1 < 2 with 0' = 2, 1' = 1, 2' = 0
    return detail::from_neg_join(
        {2, 1, 0}, {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}}, "kleene3");
  }
  if (name == "dm4") {
    // diamond: 0 bottom, 3 top, 1 and 2 incomparable; 1' = 1, 2' = 2, 0' = 3
    return detail::from_neg_join({3, 1, 2, 0},
                                 {{0, 1, 2, 3},
                                  {1, 1, 3, 3},
                                  {2, 3, 2, 3},
                                  {3, 3, 3, 3}},
                                 "dm4");
  }
  throw std::invalid_argument("unknown builtin algebra '" + name + "'");
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "two_z", "two_s", "two_b", "fig1", "fig3", "kleene3", "dm4"};
  return names;
}

}  // namespace igl
