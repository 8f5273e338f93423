#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Terms over the signature <->, 0>.  x' abbreviates x -> 0, and the meet/join
// sugar expands through
//     x /\ y  =  (x -> y')'          x \/ y  =  (x' /\ y')'
// so after expansion a term contains only Var, Zero and Impl nodes.  Every
// module past the parser works on expanded terms.

namespace igl {

enum class TermKind { Var, Zero, Impl, Prime, Meet, Join };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  TermKind kind;
  std::string name;      // Var only
  TermPtr    left;       // Impl/Meet/Join left, Prime child
  TermPtr    right;      // Impl/Meet/Join right

  static TermPtr var(std::string n) {
    return std::make_shared<Term>(Term{TermKind::Var, std::move(n), nullptr, nullptr});
  }
  static TermPtr zero() {
    static const TermPtr z =
        std::make_shared<Term>(Term{TermKind::Zero, "", nullptr, nullptr});
    return z;
  }
  static TermPtr impl(TermPtr l, TermPtr r) {
    return std::make_shared<Term>(
        Term{TermKind::Impl, "", std::move(l), std::move(r)});
  }
  static TermPtr prime(TermPtr t) {
    return std::make_shared<Term>(
        Term{TermKind::Prime, "", std::move(t), nullptr});
  }
  static TermPtr meet(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(
        Term{TermKind::Meet, "", std::move(a), std::move(b)});
  }
  static TermPtr join(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(
        Term{TermKind::Join, "", std::move(a), std::move(b)});
  }
};

inline bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var:  return a->name == b->name;
    case TermKind::Zero: return true;
    case TermKind::Prime: return equal(a->left, b->left);
    default: return equal(a->left, b->left) && equal(a->right, b->right);
  }
}

inline bool is_expanded(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Zero: return true;
    case TermKind::Impl: return is_expanded(t->left) && is_expanded(t->right);
    default: return false;
  }
}

// Rewrites Prime/Meet/Join nodes away.  Idempotent: expanded terms come back
// unchanged (same nodes, no reallocation).
inline TermPtr expand(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Zero:
      return t;
    case TermKind::Impl: {
      TermPtr l = expand(t->left), r = expand(t->right);
      if (l.get() == t->left.get() && r.get() == t->right.get()) return t;
      return Term::impl(std::move(l), std::move(r));
    }
    case TermKind::Prime:
      return Term::impl(expand(t->left), Term::zero());
    case TermKind::Meet: {
      // (a -> b')'
      TermPtr a = expand(t->left), b = expand(t->right);
      return Term::impl(
          Term::impl(std::move(a), Term::impl(std::move(b), Term::zero())),
          Term::zero());
    }
    case TermKind::Join: {
      // (a' /\ b')'
      TermPtr a = expand(t->left), b = expand(t->right);
      return expand(Term::prime(
          Term::meet(Term::prime(std::move(a)), Term::prime(std::move(b)))));
    }
  }
  throw std::logic_error("expand: bad term kind");
}

inline void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (std::find(out.begin(), out.end(), t->name) == out.end())
        out.push_back(t->name);
      return;
    case TermKind::Zero:
      return;
    case TermKind::Prime:
      collect_vars(t->left, out);
      return;
    default:
      collect_vars(t->left, out);
      collect_vars(t->right, out);
      return;
  }
}

// Variables in first-occurrence order.
inline std::vector<std::string> free_vars(const TermPtr& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

// Simultaneous substitution on an expanded term; unbound variables unchanged.
inline TermPtr substitute(const TermPtr& t,
                          const std::map<std::string, TermPtr>& binding) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = binding.find(t->name);
      return it == binding.end() ? t : it->second;
    }
    case TermKind::Zero:
      return t;
    case TermKind::Impl: {
      TermPtr l = substitute(t->left, binding);
      TermPtr r = substitute(t->right, binding);
      if (l.get() == t->left.get() && r.get() == t->right.get()) return t;
      return Term::impl(std::move(l), std::move(r));
    }
    default:
      throw std::invalid_argument("substitute: term must be expanded");
  }
}

// An identity lhs ≈ rhs.  The variable list is the union of both sides in
// first-occurrence order (lhs first); one side may have extra variables.
struct Identity {
  TermPtr lhs;
  TermPtr rhs;
  std::string name;
  std::vector<std::string> vars;
};

inline Identity make_identity(TermPtr lhs, TermPtr rhs, std::string name = "") {
  Identity id{std::move(lhs), std::move(rhs), std::move(name), {}};
  collect_vars(id.lhs, id.vars);
  collect_vars(id.rhs, id.vars);
  return id;
}

// ---------------------------------------------------------------------------
// Printing.  Without sugar the output is the fully parenthesized expansion;
// with sugar, x->0 folds back to x' and the (M)/(J) shapes to /\ and \/.

namespace detail {

inline bool is_prime_of(const TermPtr& t, TermPtr& child) {
  if (t->kind == TermKind::Impl && t->right->kind == TermKind::Zero) {
    child = t->left;
    return true;
  }
  return false;
}

inline bool is_meet_of(const TermPtr& t, TermPtr& a, TermPtr& b) {
  // (a -> b')'
  TermPtr inner, bp;
  if (!is_prime_of(t, inner) || inner->kind != TermKind::Impl) return false;
  if (!is_prime_of(inner->right, bp)) return false;
  a = inner->left;
  b = bp;
  return true;
}

inline bool is_join_of(const TermPtr& t, TermPtr& a, TermPtr& b) {
  // (a' /\ b')' — expands to ((a' -> b'')')'
  TermPtr m, ma, mb, ja, jb;
  if (!is_prime_of(t, m) || !is_meet_of(m, ma, mb)) return false;
  if (!is_prime_of(ma, ja) || !is_prime_of(mb, jb)) return false;
  a = ja;
  b = jb;
  return true;
}

inline std::string print_rec(const TermPtr& t, bool sugar) {
  if (sugar) {
    TermPtr a, b;
    if (is_join_of(t, a, b))
      return "(" + print_rec(a, sugar) + " \\/ " + print_rec(b, sugar) + ")";
    if (is_meet_of(t, a, b))
      return "(" + print_rec(a, sugar) + " /\\ " + print_rec(b, sugar) + ")";
    if (is_prime_of(t, a)) return print_rec(a, sugar) + "'";
  }
  switch (t->kind) {
    case TermKind::Var:  return t->name;
    case TermKind::Zero: return "0";
    case TermKind::Impl:
      return "(" + print_rec(t->left, sugar) + " -> " +
             print_rec(t->right, sugar) + ")";
    default:
      return print_rec(expand(t), sugar);
  }
}

}  // namespace detail

inline std::string print(const TermPtr& t, bool sugar = false) {
  return detail::print_rec(expand(t), sugar);
}

inline std::string print(const Identity& id, bool sugar = false) {
  return print(id.lhs, sugar) + " \xE2\x89\x88 " + print(id.rhs, sugar);
}

// ---------------------------------------------------------------------------
// Parsing.  Grammar (explicit parentheses around every binary application):
//
//   identity := term ("≈" | "=") term
//   term     := atom | atom "'"+ | "(" term op term ")" "'"*
//   op       := "->" | "/\" | "\/"
//   atom     := var | "0" | "(" term ")"
//
// A single unparenthesized binary application is accepted at top level
// ("x -> y"), but chains like "x -> y -> z" are rejected as ambiguous.
// Variables are a lowercase letter optionally followed by digits.  The
// Unicode arrow is accepted as an alias for "->".

class parse_error : public std::runtime_error {
 public:
  size_t offset;
  parse_error(const std::string& msg, size_t off)
      : std::runtime_error(msg + " (byte " + std::to_string(off) + ")"),
        offset(off) {}
};

namespace detail {

enum class Tok { Var, Zero, LParen, RParen, Arrow, Prime, MeetOp, JoinOp, Approx, End };

struct Token {
  Tok type;
  std::string text;
  size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' ||
            src_[pos_] == '\n'))
      ++pos_;
    size_t off = pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, "", off};
      return;
    }
    char c = src_[pos_];
    auto two = src_.substr(pos_, 2);
    if (two == "->") { pos_ += 2; cur_ = {Tok::Arrow, "->", off}; return; }
    if (two == "/\\") { pos_ += 2; cur_ = {Tok::MeetOp, "/\\", off}; return; }
    if (two == "\\/") { pos_ += 2; cur_ = {Tok::JoinOp, "\\/", off}; return; }
    auto three = src_.substr(pos_, 3);
    if (three == "\xE2\x86\x92") { pos_ += 3; cur_ = {Tok::Arrow, "->", off}; return; }
    if (three == "\xE2\x89\x88") { pos_ += 3; cur_ = {Tok::Approx, "=", off}; return; }
    switch (c) {
      case '(': ++pos_; cur_ = {Tok::LParen, "(", off}; return;
      case ')': ++pos_; cur_ = {Tok::RParen, ")", off}; return;
      case '\'': ++pos_; cur_ = {Tok::Prime, "'", off}; return;
      case '=': ++pos_; cur_ = {Tok::Approx, "=", off}; return;
      case '0': ++pos_; cur_ = {Tok::Zero, "0", off}; return;
      default: break;
    }
    if (c >= 'a' && c <= 'z') {
      size_t end = pos_ + 1;
      while (end < src_.size() && src_[end] >= '0' && src_[end] <= '9') ++end;
      cur_ = {Tok::Var, std::string(src_.substr(pos_, end - pos_)), off};
      pos_ = end;
      return;
    }
    throw parse_error("unexpected character '" + std::string(1, c) + "'", off);
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;
  Token cur_{};
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lx_(s) {}

  TermPtr parse_term_toplevel() {
    TermPtr t = relaxed_binary();
    expect_end();
    return t;
  }

  Identity parse_identity_toplevel() {
    TermPtr lhs = relaxed_binary();
    if (lx_.cur().type != Tok::Approx)
      throw parse_error("expected '\xE2\x89\x88' or '='", lx_.cur().offset);
    lx_.advance();
    TermPtr rhs = relaxed_binary();
    expect_end();
    return make_identity(expand(lhs), expand(rhs));
  }

  TermPtr relaxed_binary() {
    // One unparenthesized application allowed; a second op is ambiguous.
    TermPtr t = operand();
    if (is_op(lx_.cur().type)) {
      Tok op = lx_.cur().type;
      lx_.advance();
      TermPtr r = operand();
      if (is_op(lx_.cur().type))
        throw parse_error("ambiguous unparenthesized chain; add parentheses",
                          lx_.cur().offset);
      t = combine(op, t, r);
    }
    return t;
  }

 private:
  static bool is_op(Tok t) {
    return t == Tok::Arrow || t == Tok::MeetOp || t == Tok::JoinOp;
  }

  static TermPtr combine(Tok op, TermPtr l, TermPtr r) {
    switch (op) {
      case Tok::Arrow:  return Term::impl(std::move(l), std::move(r));
      case Tok::MeetOp: return Term::meet(std::move(l), std::move(r));
      default:          return Term::join(std::move(l), std::move(r));
    }
  }

  TermPtr operand() {
    TermPtr t;
    const Token& c = lx_.cur();
    switch (c.type) {
      case Tok::Var:
        t = Term::var(c.text);
        lx_.advance();
        break;
      case Tok::Zero:
        t = Term::zero();
        lx_.advance();
        break;
      case Tok::LParen: {
        lx_.advance();
        t = operand();
        if (is_op(lx_.cur().type)) {
          Tok op = lx_.cur().type;
          lx_.advance();
          TermPtr r = operand();
          t = combine(op, std::move(t), std::move(r));
        }
        if (lx_.cur().type != Tok::RParen)
          throw parse_error("expected ')'", lx_.cur().offset);
        lx_.advance();
        break;
      }
      default:
        throw parse_error("expected a term", c.offset);
    }
    while (lx_.cur().type == Tok::Prime) {
      t = Term::prime(std::move(t));
      lx_.advance();
    }
    return t;
  }

  void expect_end() {
    if (lx_.cur().type != Tok::End)
      throw parse_error("unexpected trailing input", lx_.cur().offset);
  }

  Lexer lx_;
};

}  // namespace detail

// Parses a term; the result is expanded (Var/Zero/Impl only).
inline TermPtr parse_term(std::string_view text) {
  return expand(detail::Parser(text).parse_term_toplevel());
}

// Parses a term keeping Prime/Meet/Join nodes as written.
inline TermPtr parse_term_raw(std::string_view text) {
  return detail::Parser(text).parse_term_toplevel();
}

inline Identity parse_identity(std::string_view text,
                               std::string name = "") {
  Identity id = detail::Parser(text).parse_identity_toplevel();
  id.name = std::move(name);
  return id;
}

// True when the text contains an identity separator (no valid term does).
inline bool is_identity_text(std::string_view text) {
  return text.find('=') != std::string_view::npos ||
         text.find("\xE2\x89\x88") != std::string_view::npos;
}

}  // namespace igl
