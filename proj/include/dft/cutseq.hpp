#pragma once

#include <set>
#include <string>
#include <vector>

#include "dft/normalize.hpp"
#include "dft/term.hpp"

namespace dft {

// One way the top event can occur: a conjunction of events and ordering
// constraints between them.
struct CutSequence {
  std::vector<sop::Literal> literals;  // sorted, duplicate-free

  std::set<std::string> event_names() const {
    std::set<std::string> names;
    for (const auto& l : literals) {
      names.insert(l.a);
      if (!l.b.empty()) names.insert(l.b);
    }
    return names;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < literals.size(); ++i) {
      if (i) s += ", ";
      s += to_string(sop::literal_term(literals[i]));
    }
    return s + "}";
  }

  friend bool operator==(const CutSequence&, const CutSequence&) = default;
};

struct CutSummary {
  std::vector<CutSequence> sequences;
  std::vector<std::set<std::string>> static_cut_sets;  // per sequence, names only
};

namespace detail {

inline void collect_or_spine(const Term& t, std::vector<Term>& out) {
  if (t->kind == TermKind::Or) {
    collect_or_spine(t->left, out);
    collect_or_spine(t->right, out);
  } else {
    out.push_back(t);
  }
}

inline void collect_and_spine(const Term& t, std::vector<Term>& out) {
  if (t->kind == TermKind::And) {
    collect_and_spine(t->left, out);
    collect_and_spine(t->right, out);
  } else {
    out.push_back(t);
  }
}

inline sop::Literal literal_of(const Term& t) {
  auto var_name = [](const Term& x) {
    if (x->kind != TermKind::Var)
      throw NotCanonical("comparison over non-event subterm: " + to_string(x));
    return x->name;
  };
  switch (t->kind) {
    case TermKind::Var: return sop::event(t->name);
    case TermKind::Before: {
      sop::Literal l = sop::before(var_name(t->left), var_name(t->right));
      if (l.a == l.b) throw NotCanonical("reflexive precedence literal: " + to_string(t));
      return l;
    }
    case TermKind::InclBefore: {
      sop::Literal l = sop::incl_before(var_name(t->left), var_name(t->right));
      if (l.a == l.b) throw NotCanonical("reflexive precedence literal: " + to_string(t));
      return l;
    }
    case TermKind::Simult: return sop::simult(var_name(t->left), var_name(t->right));
    default: throw NotCanonical("not a literal: " + to_string(t));
  }
}

}  // namespace detail

// Projects a canonical sum-of-products term into cut sequences, one per
// product. The never term yields an unfailable (empty) summary.
inline CutSummary extract_cut_sequences(const Term& canonical) {
  CutSummary summary;
  if (canonical->kind == TermKind::ConstNever) return summary;
  if (canonical->kind == TermKind::ConstAlways)
    throw NotCanonical("top event occurs at time zero; no event-level cut sequences exist");
  std::vector<Term> products;
  detail::collect_or_spine(canonical, products);
  for (const Term& p : products) {
    if (p->kind == TermKind::ConstNever) continue;
    std::vector<Term> leaves;
    detail::collect_and_spine(p, leaves);
    CutSequence seq;
    for (const Term& leaf : leaves) seq.literals.push_back(detail::literal_of(leaf));
    std::sort(seq.literals.begin(), seq.literals.end());
    seq.literals.erase(std::unique(seq.literals.begin(), seq.literals.end()), seq.literals.end());
    if (seq.literals.empty()) throw NotCanonical("empty product in " + to_string(canonical));
    summary.sequences.push_back(std::move(seq));
    summary.static_cut_sets.push_back(summary.sequences.back().event_names());
  }
  return summary;
}

// Syntactic absorption: a sequence is dropped when another sequence's literal
// set is contained in it. Survivors keep their order.
inline CutSummary minimize(const CutSummary& summary) {
  const auto& seqs = summary.sequences;
  std::vector<bool> removed(seqs.size(), false);
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = 0; j < seqs.size() && !removed[i]; ++j) {
      if (i == j || removed[j]) continue;
      const auto& a = seqs[j].literals;
      const auto& b = seqs[i].literals;
      bool subset = std::includes(b.begin(), b.end(), a.begin(), a.end());
      if (subset && (a.size() < b.size() || j < i)) removed[i] = true;
    }
  }
  CutSummary out;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (removed[i]) continue;
    out.sequences.push_back(seqs[i]);
    out.static_cut_sets.push_back(summary.static_cut_sets[i]);
  }
  return out;
}

// Re-materializes a summary as a term (for equivalence checks against the
// source form).
inline Term summary_term(const CutSummary& summary) {
  if (summary.sequences.empty()) return mk_never();
  std::vector<Term> products;
  for (const auto& seq : summary.sequences) {
    std::vector<Term> lits;
    for (const auto& l : seq.literals) lits.push_back(sop::literal_term(l));
    products.push_back(fold_and(lits));
  }
  return fold_or(products);
}

}  // namespace dft
