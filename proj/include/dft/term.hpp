#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dft/errors.hpp"

namespace dft {

enum class TermKind {
  Var,
  ConstAlways,
  ConstNever,
  And,
  Or,
  Simult,
  Before,
  InclBefore,
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// Immutable binary AST over failure-time events. Repeated variable names denote
// the same event.
struct TermNode {
  TermKind kind;
  std::string name;  // Var only
  Term left;
  Term right;
};

inline Term mk_var(std::string name) {
  return std::make_shared<TermNode>(TermNode{TermKind::Var, std::move(name), nullptr, nullptr});
}
inline Term mk_always() {
  static const Term t = std::make_shared<TermNode>(TermNode{TermKind::ConstAlways, {}, nullptr, nullptr});
  return t;
}
inline Term mk_never() {
  static const Term t = std::make_shared<TermNode>(TermNode{TermKind::ConstNever, {}, nullptr, nullptr});
  return t;
}
inline Term mk_binary(TermKind kind, Term l, Term r) {
  return std::make_shared<TermNode>(TermNode{kind, {}, std::move(l), std::move(r)});
}
inline Term mk_and(Term l, Term r) { return mk_binary(TermKind::And, std::move(l), std::move(r)); }
inline Term mk_or(Term l, Term r) { return mk_binary(TermKind::Or, std::move(l), std::move(r)); }
inline Term mk_simult(Term l, Term r) { return mk_binary(TermKind::Simult, std::move(l), std::move(r)); }
inline Term mk_before(Term l, Term r) { return mk_binary(TermKind::Before, std::move(l), std::move(r)); }
inline Term mk_incl_before(Term l, Term r) {
  return mk_binary(TermKind::InclBefore, std::move(l), std::move(r));
}

inline bool is_binary(TermKind k) {
  return k == TermKind::And || k == TermKind::Or || k == TermKind::Simult ||
         k == TermKind::Before || k == TermKind::InclBefore;
}

// Left fold, matching the conventional printed nesting ((a op b) op c).
inline Term fold_left(TermKind kind, std::span<const Term> terms) {
  if (terms.empty()) throw ArityMismatch("fold of empty term list");
  Term acc = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) acc = mk_binary(kind, acc, terms[i]);
  return acc;
}
inline Term fold_and(std::span<const Term> terms) { return fold_left(TermKind::And, terms); }
inline Term fold_or(std::span<const Term> terms) { return fold_left(TermKind::Or, terms); }

inline int compare(const Term& a, const Term& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case TermKind::Var: {
      int c = a->name.compare(b->name);
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case TermKind::ConstAlways:
    case TermKind::ConstNever:
      return 0;
    default: {
      int c = compare(a->left, b->left);
      if (c != 0) return c;
      return compare(a->right, b->right);
    }
  }
}

inline bool equal(const Term& a, const Term& b) { return compare(a, b) == 0; }

inline void collect_free_variables(const Term& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var: out.insert(t->name); return;
    case TermKind::ConstAlways:
    case TermKind::ConstNever: return;
    default:
      collect_free_variables(t->left, out);
      collect_free_variables(t->right, out);
  }
}

// Lexicographically ordered set of variable names.
inline std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> out;
  collect_free_variables(t, out);
  return out;
}

inline bool contains_const_always(const Term& t) {
  switch (t->kind) {
    case TermKind::ConstAlways: return true;
    case TermKind::Var:
    case TermKind::ConstNever: return false;
    default: return contains_const_always(t->left) || contains_const_always(t->right);
  }
}

// Replaces every occurrence of the named variables by the given terms.
inline Term substitute(const Term& t, const std::map<std::string, Term>& subst) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = subst.find(t->name);
      return it == subst.end() ? t : it->second;
    }
    case TermKind::ConstAlways:
    case TermKind::ConstNever:
      return t;
    default: {
      Term l = substitute(t->left, subst);
      Term r = substitute(t->right, subst);
      if (l.get() == t->left.get() && r.get() == t->right.get()) return t;
      return mk_binary(t->kind, std::move(l), std::move(r));
    }
  }
}

inline std::string to_string(const Term& t) {
  switch (t->kind) {
    case TermKind::Var: return t->name;
    case TermKind::ConstAlways: return "ALWAYS";
    case TermKind::ConstNever: return "NEVER";
    case TermKind::And: return "(" + to_string(t->left) + " . " + to_string(t->right) + ")";
    case TermKind::Or: return "(" + to_string(t->left) + " + " + to_string(t->right) + ")";
    case TermKind::Simult: return "(" + to_string(t->left) + " ~ " + to_string(t->right) + ")";
    case TermKind::Before: return "(" + to_string(t->left) + " < " + to_string(t->right) + ")";
    case TermKind::InclBefore: return "(" + to_string(t->left) + " <= " + to_string(t->right) + ")";
  }
  return {};
}

inline std::size_t term_size(const Term& t) {
  if (!is_binary(t->kind)) return 1;
  return 1 + term_size(t->left) + term_size(t->right);
}

}  // namespace dft
