#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dft/conditions.hpp"
#include "dft/equivalence.hpp"
#include "dft/term.hpp"

namespace dft {

inline constexpr int kDefaultNormalizeBudget = 64;
inline constexpr std::uint64_t kSelfCheckTrials = 4096;
inline constexpr std::uint64_t kSelfCheckSeed = 0x5e1fc3ec;
inline constexpr std::uint64_t kCertificateTrials = 1000000;
inline constexpr std::uint64_t kCertificateSeed = 0xd171ce55;

namespace sop {

// Literal of the canonical sum-of-products form: a bare event or one
// comparison between two events.
struct Literal {
  enum class Kind { Event, Before, InclBefore, Simult };
  Kind kind;
  std::string a;
  std::string b;  // empty for Event

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal event(std::string x) { return {Literal::Kind::Event, std::move(x), {}}; }
inline Literal before(std::string x, std::string y) {
  return {Literal::Kind::Before, std::move(x), std::move(y)};
}
inline Literal incl_before(std::string x, std::string y) {
  return {Literal::Kind::InclBefore, std::move(x), std::move(y)};
}
inline Literal simult(std::string x, std::string y) {
  if (y < x) std::swap(x, y);
  return {Literal::Kind::Simult, std::move(x), std::move(y)};
}

using Product = std::vector<Literal>;  // sorted, duplicate-free; conjunction
// Disjunction of products; empty means never. `always` marks the constant 0.
struct Sum {
  bool always = false;
  std::vector<Product> products;
};

inline Term literal_term(const Literal& l) {
  switch (l.kind) {
    case Literal::Kind::Event: return mk_var(l.a);
    case Literal::Kind::Before: return mk_before(mk_var(l.a), mk_var(l.b));
    case Literal::Kind::InclBefore: return mk_incl_before(mk_var(l.a), mk_var(l.b));
    case Literal::Kind::Simult: return mk_simult(mk_var(l.a), mk_var(l.b));
  }
  return nullptr;
}

inline Term to_term(const Sum& s) {
  if (s.always) return mk_always();
  if (s.products.empty()) return mk_never();
  std::vector<Term> summands;
  for (const Product& p : s.products) {
    std::vector<Term> lits;
    for (const Literal& l : p) lits.push_back(literal_term(l));
    summands.push_back(fold_and(lits));
  }
  return fold_or(summands);
}

// Does the value of q never exceed the value of p? Used both for dropping
// dominated literals inside a product (conjunction keeps the later one) and
// for absorbing dominated products in a sum (disjunction keeps the earlier
// one): a comparison literal is worth either its left event or never.
inline bool value_le(const Literal& q, const Literal& p) {
  if (q == p) return true;
  auto guards_same_event = [](const Literal& l, const std::string& x) {
    if (l.kind == Literal::Kind::Event) return false;
    if (l.kind == Literal::Kind::Simult) return l.a == x || l.b == x;
    return l.a == x;
  };
  if (q.kind == Literal::Kind::Event) return guards_same_event(p, q.a);
  if (q.kind == Literal::Kind::InclBefore && q.a == p.a && q.b == p.b &&
      (p.kind == Literal::Kind::Before || p.kind == Literal::Kind::Simult))
    return true;
  if (q.kind == Literal::Kind::InclBefore && p.kind == Literal::Kind::Simult &&
      ((q.a == p.a && q.b == p.b) || (q.a == p.b && q.b == p.a)))
    return true;
  return false;
}

// Q absorbs P in a disjunction when every literal of Q is dominated by some
// literal of P, so that eval(Q) <= eval(P) on every valuation.
inline bool absorbs(const Product& q, const Product& p) {
  for (const Literal& ql : q) {
    bool found = false;
    for (const Literal& pl : p)
      if (value_le(ql, pl)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace sop

namespace detail {

// Condition context used while normalizing under side conditions.
struct ReductionContext {
  std::map<std::string, Term> cold_subst;            // cold spares become never
  std::vector<std::set<std::string>> distinct_sets;  // simultaneity is never inside a set
  std::vector<std::pair<std::string, std::string>> never_pairs;
  std::vector<sop::Product> never_products;  // any superset product is never

  bool empty() const {
    return cold_subst.empty() && distinct_sets.empty() && never_pairs.empty() &&
           never_products.empty();
  }
};

inline bool literal_forces_finite(const sop::Literal& l, const std::string& x) {
  using K = sop::Literal::Kind;
  switch (l.kind) {
    case K::Event: return l.a == x;
    case K::Before:
    case K::InclBefore: return l.a == x;
    case K::Simult: return l.a == x || l.b == x;
  }
  return false;
}

// Product-level simplification. Returns nullopt when the product is never.
inline std::optional<sop::Product> simplify_product(sop::Product p, const ReductionContext& ctx) {
  using K = sop::Literal::Kind;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());

  bool changed = true;
  while (changed) {
    changed = false;

    for (const sop::Literal& l : p) {
      if (l.kind == K::Event) continue;
      if (l.a == l.b) {
        if (l.kind == K::Before) return std::nullopt;  // x before itself never occurs
        // x <= x and x ~ x are just x.
        sop::Literal ev = sop::event(l.a);
        p.erase(std::find(p.begin(), p.end(), l));
        if (std::find(p.begin(), p.end(), ev) == p.end()) p.push_back(ev);
        std::sort(p.begin(), p.end());
        changed = true;
        break;
      }
    }
    if (changed) continue;

    // Contradictory and collapsing pairs.
    for (std::size_t i = 0; i < p.size() && !changed; ++i) {
      for (std::size_t j = 0; j < p.size() && !changed; ++j) {
        if (i == j) continue;
        const sop::Literal &x = p[i], &y = p[j];
        if (x.kind == K::Before && y.kind == K::Before && x.a == y.b && x.b == y.a)
          return std::nullopt;  // (a<b).(b<a)
        if (x.kind == K::Before && y.kind == K::InclBefore && x.a == y.b && x.b == y.a)
          return std::nullopt;  // (a<b).(b<=a)
        if (x.kind == K::Before && y.kind == K::Simult &&
            ((x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a)))
          return std::nullopt;  // (a<b).(a~b)
        if (x.kind == K::InclBefore && y.kind == K::InclBefore && x.a == y.b && x.b == y.a) {
          // (a<=b).(b<=a) collapses to a~b
          sop::Literal sim = sop::simult(x.a, x.b);
          sop::Product q;
          for (std::size_t k = 0; k < p.size(); ++k)
            if (k != i && k != j) q.push_back(p[k]);
          q.push_back(sim);
          std::sort(q.begin(), q.end());
          q.erase(std::unique(q.begin(), q.end()), q.end());
          p = std::move(q);
          changed = true;
        }
      }
    }
    if (changed) continue;

    // Dominated literals inside a conjunction are redundant.
    for (std::size_t i = 0; i < p.size() && !changed; ++i)
      for (std::size_t j = 0; j < p.size() && !changed; ++j)
        if (i != j && p[i] != p[j] && sop::value_le(p[i], p[j])) {
          p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
    if (changed) continue;

    // Transitive precedence chains make the closing comparison redundant.
    for (std::size_t i = 0; i < p.size() && !changed; ++i) {
      for (std::size_t j = 0; j < p.size() && !changed; ++j) {
        if (i == j) continue;
        const sop::Literal &x = p[i], &y = p[j];
        bool strict_chain = x.kind == K::Before && y.kind == K::Before && x.b == y.a;
        bool incl_chain = x.kind == K::InclBefore && y.kind == K::InclBefore && x.b == y.a;
        if (!strict_chain && !incl_chain) continue;
        for (std::size_t k = 0; k < p.size() && !changed; ++k) {
          if (k == i || k == j) continue;
          const sop::Literal& z = p[k];
          if (z.a != x.a || z.b != y.b) continue;
          bool drop = strict_chain
                          ? (z.kind == K::Before || z.kind == K::InclBefore)
                          : (incl_chain && z.kind == K::InclBefore);
          if (drop) {
            p.erase(p.begin() + static_cast<std::ptrdiff_t>(k));
            changed = true;
          }
        }
      }
    }
    if (changed) continue;

    // Simultaneity components: keep the chain over sorted names, drop the rest.
    {
      std::vector<std::size_t> sims;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].kind == K::Simult) sims.push_back(i);
      if (sims.size() >= 2) {
        std::map<std::string, std::string> parent;
        std::function<std::string(std::string)> find = [&](std::string v) {
          while (parent.count(v) && parent[v] != v) v = parent[v];
          return v;
        };
        auto unite = [&](const std::string& a, const std::string& b) {
          if (!parent.count(a)) parent[a] = a;
          if (!parent.count(b)) parent[b] = b;
          parent[find(a)] = find(b);
        };
        for (std::size_t i : sims) unite(p[i].a, p[i].b);
        std::map<std::string, std::set<std::string>> comps;
        for (std::size_t i : sims) {
          comps[find(p[i].a)].insert(p[i].a);
          comps[find(p[i].a)].insert(p[i].b);
        }
        sop::Product canon;
        for (std::size_t i = 0; i < p.size(); ++i)
          if (p[i].kind != K::Simult) canon.push_back(p[i]);
        for (const auto& [root, members] : comps) {
          auto it = members.begin();
          std::string prev = *it;
          for (++it; it != members.end(); ++it) {
            canon.push_back(sop::simult(prev, *it));
            prev = *it;
          }
        }
        std::sort(canon.begin(), canon.end());
        canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
        if (canon != p) {
          p = std::move(canon);
          changed = true;
        }
      }
    }
  }

  // Condition-licensed kills.
  for (const sop::Literal& l : p) {
    if (l.kind != K::Simult) continue;
    for (const auto& g : ctx.distinct_sets)
      if (g.count(l.a) && g.count(l.b)) return std::nullopt;
  }
  for (const auto& [a, b] : ctx.never_pairs) {
    bool fa = false, fb = false;
    for (const sop::Literal& l : p) {
      fa = fa || literal_forces_finite(l, a);
      fb = fb || literal_forces_finite(l, b);
    }
    if (fa && fb) return std::nullopt;
  }
  for (const sop::Product& np : ctx.never_products) {
    bool subset = std::includes(p.begin(), p.end(), np.begin(), np.end());
    if (subset && !np.empty()) return std::nullopt;
  }
  return p;
}

inline constexpr std::size_t kMaxProducts = 200000;

inline void insert_product(std::vector<sop::Product>& sum, sop::Product p) {
  for (const sop::Product& q : sum)
    if (sop::absorbs(q, p)) return;
  std::erase_if(sum, [&](const sop::Product& q) { return sop::absorbs(p, q); });
  if (sum.size() >= kMaxProducts)
    throw BudgetExhausted("sum-of-products exceeded " + std::to_string(kMaxProducts) +
                          " concurrent products");
  sum.push_back(std::move(p));
}

// Stage 1: rewrite the tree so comparisons only relate single events.
// Conjunction/disjunction structure is preserved (not yet distributed).
class TemporalEliminator {
 public:
  Term run(const Term& t) { return elim(t); }

 private:
  std::map<const TermNode*, Term> memo_;

  Term elim(const Term& t) {
    auto it = memo_.find(t.get());
    if (it != memo_.end()) return it->second;
    Term out;
    switch (t->kind) {
      case TermKind::Var:
      case TermKind::ConstAlways:
      case TermKind::ConstNever: out = t; break;
      case TermKind::And: out = mk_and_f(elim(t->left), elim(t->right)); break;
      case TermKind::Or: out = mk_or_f(elim(t->left), elim(t->right)); break;
      default: out = temporal(t->kind, elim(t->left), elim(t->right));
    }
    memo_.emplace(t.get(), out);
    return out;
  }

  static bool is_never_t(const Term& t) { return t->kind == TermKind::ConstNever; }
  static bool is_always_t(const Term& t) { return t->kind == TermKind::ConstAlways; }

  static Term mk_and_f(Term l, Term r) {
    if (is_never_t(l) || is_never_t(r)) return mk_never();
    if (is_always_t(l)) return r;
    if (is_always_t(r)) return l;
    return mk_and(std::move(l), std::move(r));
  }
  static Term mk_or_f(Term l, Term r) {
    if (is_always_t(l) || is_always_t(r)) return mk_always();
    if (is_never_t(l)) return r;
    if (is_never_t(r)) return l;
    return mk_or(std::move(l), std::move(r));
  }

  bool is_leaf(const Term& t) { return t->kind == TermKind::Var; }
  bool is_literal(const Term& t) {
    if (t->kind == TermKind::Var) return true;
    if (t->kind == TermKind::Before || t->kind == TermKind::InclBefore ||
        t->kind == TermKind::Simult)
      return t->left->kind == TermKind::Var && t->right->kind == TermKind::Var;
    return false;
  }

  Term temporal(TermKind op, Term l, Term r) {
    // Identity/annihilator arguments.
    if (is_never_t(l)) return mk_never();
    if (is_never_t(r)) return op == TermKind::Simult ? mk_never() : l;
    if (equal(l, r)) return op == TermKind::Before ? mk_never() : l;
    if (is_always_t(l)) {
      // Finite variable times are strictly positive, so 0 precedes anything
      // that is not itself the constant 0.
      if (op == TermKind::InclBefore) return mk_always();
      if (!contains_const_always(r)) return op == TermKind::Before ? mk_always() : mk_never();
    }
    if (op == TermKind::Before && is_always_t(r)) return mk_never();
    if (is_always_t(r) && !contains_const_always(l)) return mk_never();

    if (op == TermKind::Simult) {
      if (compound(r)) return simult_right(std::move(l), std::move(r));
      if (compound(l)) return simult_right(std::move(r), std::move(l));
      return mk_simult(std::move(l), std::move(r));
    }
    if (compound(l)) return prec_left(op, std::move(l), std::move(r));
    if (compound(r)) return prec_right(op, std::move(l), std::move(r));
    return mk_binary(op, std::move(l), std::move(r));
  }

  bool compound(const Term& t) { return is_binary(t->kind); }

  // (l1 op l2) prec r, by the head of the left argument. Temporal heads here
  // are already event-to-event literals.
  Term prec_left(TermKind op, Term l, Term r) {
    Term a = l->left, b = l->right;
    switch (l->kind) {
      case TermKind::Or:  // (a+b) prec r distributes
        return mk_or_f(temporal(op, a, r), temporal(op, b, r));
      case TermKind::And:  // (a.b) prec r needs both parts early
        return mk_and_f(temporal(op, a, r), temporal(op, b, r));
      case TermKind::Simult:  // (a~b) prec r keeps the tie and compares a
        return mk_and_f(l, temporal(op, a, r));
      case TermKind::Before:  // (a<b) prec r keeps the literal and compares a
      case TermKind::InclBefore:
        return mk_and_f(l, temporal(op, a, r));
      default: return mk_binary(op, std::move(l), std::move(r));
    }
  }

  // l prec (r1 op r2), by the head of the right argument; l is a leaf here.
  Term prec_right(TermKind op, Term l, Term r) {
    Term b = r->left, c = r->right;
    const bool strict = op == TermKind::Before;
    switch (r->kind) {
      case TermKind::Or:  // earlier than either part
        return mk_and_f(temporal(op, l, b), temporal(op, l, c));
      case TermKind::And:  // earlier than the later part = earlier than one
        return mk_or_f(temporal(op, l, b), temporal(op, l, c));
      case TermKind::Before:
      case TermKind::InclBefore: {
        // l prec (b prec c): l strictly precedes b, or the inner comparison
        // never fires (c at-or-before b) while l and b both occur; the
        // inclusive outer operator adds the tie between l and b.
        TermKind inner_dual =
            r->kind == TermKind::Before ? TermKind::InclBefore : TermKind::Before;
        Term out = mk_or_f(temporal(TermKind::Before, l, b),
                           mk_and_f(mk_and_f(l, b), temporal(inner_dual, c, b)));
        if (!strict)
          out = mk_or_f(out, mk_and_f(mk_simult_lit(l, b), temporal(r->kind, b, c)));
        return out;
      }
      case TermKind::Simult: {
        // l prec (b~c): l with the parts out of order, or l strictly before
        // either part; the inclusive outer operator adds the all-tied case.
        Term out = mk_or_f(
            mk_or_f(mk_and_f(l, temporal(TermKind::Before, b, c)),
                    mk_and_f(l, temporal(TermKind::Before, c, b))),
            mk_or_f(temporal(TermKind::Before, l, b), temporal(TermKind::Before, l, c)));
        if (!strict) out = mk_or_f(out, mk_and_f(mk_simult_lit(l, b), mk_simult_lit(b, c)));
        return out;
      }
      default: return mk_binary(op, std::move(l), std::move(r));
    }
  }

  // l ~ (r1 op r2); l may be any term, r is compound.
  Term simult_right(Term l, Term r) {
    Term b = r->left, c = r->right;
    switch (r->kind) {
      case TermKind::Or:  // tie with the earlier part
        return mk_or_f(mk_and_f(mk_simult_lit(l, b), temporal(TermKind::InclBefore, b, c)),
                       mk_and_f(mk_simult_lit(l, c), temporal(TermKind::InclBefore, c, b)));
      case TermKind::And:  // tie with the later part
        return mk_or_f(mk_and_f(mk_simult_lit(l, b), temporal(TermKind::InclBefore, c, b)),
                       mk_and_f(mk_simult_lit(l, c), temporal(TermKind::InclBefore, b, c)));
      case TermKind::Before:  // tie with b while b precedes c
        return mk_and_f(mk_simult_lit(l, b), temporal(TermKind::Before, b, c));
      case TermKind::InclBefore:
        return mk_and_f(mk_simult_lit(l, b), temporal(TermKind::InclBefore, b, c));
      case TermKind::Simult:  // all three tie
        return mk_and_f(mk_simult_lit(l, b), mk_simult_lit(b, c));
      default: return mk_simult(std::move(l), std::move(r));
    }
  }

  Term mk_simult_lit(Term l, Term r) { return temporal(TermKind::Simult, std::move(l), std::move(r)); }
};

// Stage 2: distribute conjunction over disjunction with eager simplification.
inline sop::Sum flatten(const Term& t, const ReductionContext& ctx) {
  switch (t->kind) {
    case TermKind::ConstNever: return {};
    case TermKind::ConstAlways: return {true, {}};
    case TermKind::Var: {
      sop::Sum s;
      if (auto p = simplify_product({sop::event(t->name)}, ctx)) s.products.push_back(*p);
      return s;
    }
    case TermKind::Or: {
      sop::Sum l = flatten(t->left, ctx);
      sop::Sum r = flatten(t->right, ctx);
      if (l.always || r.always) return {true, {}};
      for (sop::Product& p : r.products) insert_product(l.products, std::move(p));
      return l;
    }
    case TermKind::And: {
      sop::Sum l = flatten(t->left, ctx);
      sop::Sum r = flatten(t->right, ctx);
      if (l.always) return r;
      if (r.always) return l;
      sop::Sum out;
      for (const sop::Product& pl : l.products)
        for (const sop::Product& pr : r.products) {
          sop::Product joined = pl;
          joined.insert(joined.end(), pr.begin(), pr.end());
          if (auto p = simplify_product(std::move(joined), ctx))
            insert_product(out.products, std::move(*p));
        }
      return out;
    }
    case TermKind::Before:
    case TermKind::InclBefore:
    case TermKind::Simult: {
      // Stage 1 leaves only event-to-event comparisons.
      if (t->left->kind != TermKind::Var || t->right->kind != TermKind::Var)
        throw Error("internal: comparison over non-events survived elimination: " + to_string(t));
      sop::Sum s;
      sop::Literal lit = t->kind == TermKind::Before
                             ? sop::before(t->left->name, t->right->name)
                             : t->kind == TermKind::InclBefore
                                   ? sop::incl_before(t->left->name, t->right->name)
                                   : sop::simult(t->left->name, t->right->name);
      if (auto p = simplify_product({std::move(lit)}, ctx)) s.products.push_back(*p);
      return s;
    }
  }
  return {};
}

// Stage 3: cross-product rewrites licensed by the single-event summands:
// next to a bare summand y, a comparison guarded by y reduces to its left
// event ((x<y)+y = x+y and friends).
inline bool apply_context_rules(std::vector<sop::Product>& products, const ReductionContext& ctx) {
  std::set<std::string> singleton_events;
  for (const sop::Product& p : products)
    if (p.size() == 1 && p[0].kind == sop::Literal::Kind::Event) singleton_events.insert(p[0].a);
  if (singleton_events.empty()) return false;

  bool changed = false;
  std::vector<sop::Product> next;
  for (sop::Product& p : products) {
    bool touched = false;
    for (sop::Literal& l : p) {
      if ((l.kind == sop::Literal::Kind::Before || l.kind == sop::Literal::Kind::InclBefore) &&
          singleton_events.count(l.b)) {
        l = sop::event(l.a);
        touched = true;
      }
    }
    if (!touched) {
      insert_product(next, std::move(p));
      continue;
    }
    changed = true;
    if (auto sp = simplify_product(std::move(p), ctx)) insert_product(next, std::move(*sp));
  }
  products = std::move(next);
  return changed;
}

inline ReductionContext make_context(std::span<const SideCondition> conditions) {
  ReductionContext ctx;
  for (const auto& c : conditions) {
    switch (c.kind) {
      case SideCondition::Kind::ColdSpare: ctx.cold_subst[c.vars[0]] = mk_never(); break;
      case SideCondition::Kind::AllDistinct:
        ctx.distinct_sets.emplace_back(c.vars.begin(), c.vars.end());
        break;
      case SideCondition::Kind::NeverEvents:
        ctx.never_pairs.emplace_back(c.vars[0], c.vars[1]);
        break;
      case SideCondition::Kind::TermEqNever: {
        // Each canonical summand of the condition term is itself never.
        ReductionContext none;
        Term elim = TemporalEliminator().run(c.term);
        sop::Sum s = flatten(elim, none);
        for (sop::Product& p : s.products) ctx.never_products.push_back(std::move(p));
        break;
      }
    }
  }
  return ctx;
}

inline Term normalize_pass(const Term& t, const ReductionContext& ctx) {
  Term substituted = ctx.cold_subst.empty() ? t : substitute(t, ctx.cold_subst);
  Term elim = TemporalEliminator().run(substituted);
  sop::Sum s = flatten(elim, ctx);
  if (!s.always) {
    while (apply_context_rules(s.products, ctx)) {
    }
    std::sort(s.products.begin(), s.products.end());
  }
  return sop::to_term(s);
}

}  // namespace detail

// Rewrites a term into the canonical disjunction of conjunctions of literals
// (events and event-to-event comparisons), commutative children sorted. The
// result is sampled against the input before being returned.
inline Term normalize(const Term& t, int budget = kDefaultNormalizeBudget,
                      std::span<const SideCondition> conditions = {}) {
  if (budget < 1) throw Error("normalize budget must be at least 1");
  detail::ReductionContext ctx = detail::make_context(conditions);
  Term prev = t;
  Term result;
  bool fixed = false;
  for (int pass = 0; pass < budget; ++pass) {
    Term cur = detail::normalize_pass(prev, ctx);
    if (equal(cur, prev)) {
      result = cur;
      fixed = true;
      break;
    }
    prev = cur;
  }
  if (!fixed)
    throw BudgetExhausted("no rewriting fixpoint within " + std::to_string(budget) +
                          " passes; partial form: " + to_string(prev));

  EquivalenceVerdict check = decide_equivalence(
      t, result, conditions, EquivalenceMode::sampled(kSelfCheckTrials, kSelfCheckSeed));
  if (!check.equivalent())
    throw SelfCheckFailed("normalization changed the term's semantics; witness " + check.str());
  return result;
}

struct ReductionResult {
  Term reduced;
  EquivalenceVerdict certificate;
};

// Normalizes under side conditions and certifies the result against the input
// (exact when the variable count permits, sampled otherwise).
inline ReductionResult apply_reduction(const Term& model_term,
                                       std::span<const SideCondition> conditions,
                                       int budget = kDefaultNormalizeBudget,
                                       std::size_t exact_bound = kDefaultExactVarBound,
                                       std::uint64_t trials = kCertificateTrials,
                                       std::uint64_t seed = kCertificateSeed) {
  Term reduced = normalize(model_term, budget, conditions);
  std::set<std::string> vars = free_variables(model_term);
  collect_free_variables(reduced, vars);
  for (const auto& c : conditions) c.collect_variables(vars);
  EquivalenceMode mode = vars.size() <= exact_bound ? EquivalenceMode::exact()
                                                    : EquivalenceMode::sampled(trials, seed);
  EquivalenceVerdict certificate = decide_equivalence(model_term, reduced, conditions, mode);
  return {std::move(reduced), std::move(certificate)};
}

}  // namespace dft
