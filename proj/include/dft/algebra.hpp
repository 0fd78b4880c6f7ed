#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dft/failure_time.hpp"
#include "dft/term.hpp"

namespace dft {

using Valuation = std::map<std::string, FailureTime>;

// Failure-time semantics of the operators: conjunction is the later of the two
// instants, disjunction the earlier; the temporal operators pass the left
// instant through when the comparison holds and never occur otherwise.
inline FailureTime eval_term(const Term& t, const Valuation& v) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = v.find(t->name);
      if (it == v.end()) throw MissingVariable(t->name);
      return it->second;
    }
    case TermKind::ConstAlways: return FailureTime::always();
    case TermKind::ConstNever: return FailureTime::never();
    case TermKind::And: return max(eval_term(t->left, v), eval_term(t->right, v));
    case TermKind::Or: return min(eval_term(t->left, v), eval_term(t->right, v));
    case TermKind::Simult: {
      FailureTime l = eval_term(t->left, v), r = eval_term(t->right, v);
      return l == r ? l : FailureTime::never();
    }
    case TermKind::Before: {
      FailureTime l = eval_term(t->left, v), r = eval_term(t->right, v);
      return l < r ? l : FailureTime::never();
    }
    case TermKind::InclBefore: {
      FailureTime l = eval_term(t->left, v), r = eval_term(t->right, v);
      return l <= r ? l : FailureTime::never();
    }
  }
  return FailureTime::never();
}

enum class GateKind { And, Or, Pand, Fdep, Wsp, Csp, Hsp, SharedSpare, Vote };

inline const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
    case GateKind::Pand: return "pand";
    case GateKind::Fdep: return "fdep";
    case GateKind::Wsp: return "wsp";
    case GateKind::Csp: return "csp";
    case GateKind::Hsp: return "hsp";
    case GateKind::SharedSpare: return "shared-spare";
    case GateKind::Vote: return "vote";
  }
  return "?";
}

namespace detail {

inline void require_arity(GateKind kind, std::span<const Term> in, std::size_t n) {
  if (in.size() != n)
    throw ArityMismatch(std::string(gate_kind_name(kind)) + " expects " + std::to_string(n) +
                        " inputs, got " + std::to_string(in.size()));
}

// Warm spare over one primary and the spare's two state variables:
// primary with the spare dead dormant, active spare after the primary, and the
// two simultaneous corner cases for subtree inputs.
inline Term wsp_term(const Term& primary, const Term& active, const Term& dormant) {
  Term t = mk_and(primary, mk_before(dormant, primary));
  t = mk_or(t, mk_and(active, mk_before(primary, active)));
  t = mk_or(t, mk_simult(primary, active));
  t = mk_or(t, mk_simult(primary, dormant));
  return t;
}

// Spare shared with one other gate: the third disjunct is the other primary
// stealing the spare first.
inline Term shared_spare_term(const Term& primary, const Term& other, const Term& active,
                              const Term& dormant) {
  Term t = mk_and(primary, mk_before(dormant, primary));
  t = mk_or(t, mk_and(active, mk_before(primary, active)));
  t = mk_or(t, mk_and(primary, mk_before(other, primary)));
  return t;
}

}  // namespace detail

// Expands gate-level sugar into the five operators. Gates are never stored in
// the AST; this is the only translation point.
inline Term desugar_gate(GateKind kind, std::span<const Term> inputs, int vote_threshold = 0) {
  using detail::require_arity;
  switch (kind) {
    case GateKind::And:
      if (inputs.empty()) throw ArityMismatch("and expects at least 1 input");
      return fold_and(inputs);
    case GateKind::Or:
      if (inputs.empty()) throw ArityMismatch("or expects at least 1 input");
      return fold_or(inputs);
    case GateKind::Pand:
      // Fails with the second input, provided the first failed no later.
      require_arity(kind, inputs, 2);
      return mk_and(inputs[1], mk_incl_before(inputs[0], inputs[1]));
    case GateKind::Fdep:
      // Dependent first, trigger second; either occurrence fails the output.
      require_arity(kind, inputs, 2);
      return mk_or(inputs[0], inputs[1]);
    case GateKind::Wsp:
      require_arity(kind, inputs, 3);
      return detail::wsp_term(inputs[0], inputs[1], inputs[2]);
    case GateKind::Csp:
      // Cold spare: the active spare fails strictly after the primary.
      require_arity(kind, inputs, 2);
      return mk_and(inputs[1], mk_before(inputs[0], inputs[1]));
    case GateKind::Hsp:
      require_arity(kind, inputs, 2);
      return mk_and(inputs[0], inputs[1]);
    case GateKind::SharedSpare:
      require_arity(kind, inputs, 4);
      return detail::shared_spare_term(inputs[0], inputs[1], inputs[2], inputs[3]);
    case GateKind::Vote: {
      const int n = static_cast<int>(inputs.size());
      const int k = vote_threshold;
      if (k < 1 || k > n)
        throw BadVoteThreshold("vote threshold " + std::to_string(k) + " out of range 1.." +
                               std::to_string(n));
      // k-of-n as the disjunction of all k-subsets, subsets in lexicographic
      // index order.
      std::vector<Term> products;
      std::vector<int> idx(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
      while (true) {
        std::vector<Term> sel;
        for (int i : idx) sel.push_back(inputs[static_cast<std::size_t>(i)]);
        products.push_back(fold_and(sel));
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
          idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
      }
      return fold_or(products);
    }
  }
  throw ArityMismatch("unknown gate kind");
}

}  // namespace dft
