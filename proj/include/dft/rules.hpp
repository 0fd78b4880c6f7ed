#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "dft/conditions.hpp"
#include "dft/equivalence.hpp"
#include "dft/term.hpp"

namespace dft {

// Directed simplification rule; metavariables are the pattern's free names.
struct RewriteRule {
  std::string id;  // catalog group and row, e.g. "before:05"
  Term lhs;
  Term rhs;
  std::vector<SideCondition> conditions;  // empty for the whole built-in catalog
};

namespace detail {

inline Term sum(std::initializer_list<Term> ts) {
  std::vector<Term> v(ts);
  return fold_or(v);
}
inline Term prod(std::initializer_list<Term> ts) {
  std::vector<Term> v(ts);
  return fold_and(v);
}

}  // namespace detail

// The simplification catalog: identities, distribution, absorption and
// annihilation laws for the five operators, grouped by the operator a row is
// mostly about. Every row is exact-checked by verify_catalog.
inline const std::vector<RewriteRule>& rule_catalog() {
  static const std::vector<RewriteRule> catalog = [] {
    using detail::prod;
    using detail::sum;
    const Term A = mk_var("A"), B = mk_var("B"), C = mk_var("C");
    const Term NV = mk_never(), AW = mk_always();
    auto And = [](Term l, Term r) { return mk_and(std::move(l), std::move(r)); };
    auto Or = [](Term l, Term r) { return mk_or(std::move(l), std::move(r)); };
    auto Sim = [](Term l, Term r) { return mk_simult(std::move(l), std::move(r)); };
    auto Bef = [](Term l, Term r) { return mk_before(std::move(l), std::move(r)); };
    auto Inc = [](Term l, Term r) { return mk_incl_before(std::move(l), std::move(r)); };

    std::vector<RewriteRule> rules;
    int row = 0;
    std::string group;
    auto add = [&](Term lhs, Term rhs) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%02d", ++row);
      rules.push_back({group + ":" + buf, std::move(lhs), std::move(rhs), {}});
    };
    auto begin_group = [&](const char* name) {
      group = name;
      row = 0;
    };

    begin_group("or-and");
    add(Or(A, B), Or(B, A));
    add(And(A, B), And(B, A));
    add(Or(A, Or(B, C)), Or(Or(A, B), C));
    add(And(A, And(B, C)), And(And(A, B), C));
    add(Or(A, A), A);
    add(And(A, A), A);
    add(And(A, Or(B, C)), Or(And(A, B), And(A, C)));
    add(Or(A, NV), A);
    add(And(A, AW), A);
    add(Or(A, AW), AW);
    add(And(A, NV), NV);
    add(Or(A, And(B, C)), And(Or(A, B), Or(A, C)));
    add(Or(A, And(A, B)), A);
    add(And(A, Or(A, B)), A);

    begin_group("before");
    add(And(Bef(A, B), Bef(B, A)), NV);
    add(Bef(A, Bef(B, C)), Or(Bef(A, B), prod({A, B, Or(Bef(C, B), Sim(C, B))})));
    add(Bef(A, Bef(B, C)), Or(Bef(A, B), prod({A, B, Inc(C, B)})));
    add(Bef(Bef(A, B), C), And(Bef(A, B), Bef(A, C)));
    add(Bef(NV, A), NV);
    add(Bef(A, NV), A);
    add(Bef(A, A), NV);
    add(Bef(A, Or(B, C)), And(Bef(A, B), Bef(A, C)));
    add(Bef(A, And(B, C)), Or(Bef(A, B), Bef(A, C)));
    add(Bef(A, Sim(B, C)), sum({And(A, Bef(B, C)), And(A, Bef(C, B)), Bef(A, B), Bef(A, C)}));
    add(Bef(A, Inc(B, C)), Or(Bef(A, B), prod({A, B, Bef(C, B)})));
    add(Bef(Or(A, B), C), Or(Bef(A, C), Bef(B, C)));
    add(Bef(And(A, B), C), And(Bef(A, C), Bef(B, C)));
    add(Bef(Sim(A, B), C), And(Sim(A, B), Bef(A, C)));
    add(Bef(Sim(A, B), C), And(Sim(A, B), Bef(B, C)));
    add(Bef(Sim(A, B), C), Sim(Bef(A, C), Bef(B, C)));
    add(Bef(Inc(A, B), C), And(Inc(A, B), Bef(A, C)));
    add(Or(A, Bef(A, B)), A);
    add(Or(Bef(A, B), B), Or(A, B));
    add(And(A, Bef(A, B)), Bef(A, B));
    add(prod({Bef(A, B), Bef(B, C), Bef(A, C)}), And(Bef(A, B), Bef(B, C)));

    begin_group("simult");
    add(Sim(A, B), Sim(B, A));
    add(Sim(A, Sim(B, C)), Sim(Sim(A, B), C));
    add(Sim(A, Sim(B, C)), And(Sim(A, B), Sim(B, C)));
    add(Sim(A, Sim(B, C)), And(Sim(A, C), Sim(C, B)));
    add(Sim(A, NV), NV);
    add(Sim(A, A), A);
    add(Sim(A, Or(B, C)), sum({And(Sim(A, B), Sim(B, C)), And(Sim(A, B), Bef(B, C)),
                               And(Sim(A, C), Bef(C, B))}));
    add(Sim(A, Or(B, C)), Or(And(Sim(A, B), Inc(B, C)), And(Sim(A, C), Inc(C, B))));
    add(Sim(A, And(B, C)), sum({And(Sim(A, B), Sim(B, C)), And(Sim(A, B), Bef(C, B)),
                                And(Sim(A, C), Bef(B, C))}));
    add(Sim(A, And(B, C)), Or(And(Sim(A, B), Inc(C, B)), And(Sim(A, C), Inc(B, C))));
    add(Sim(A, Bef(B, C)), And(Sim(A, B), Bef(B, C)));
    add(Sim(A, Inc(B, C)), And(Sim(A, B), Inc(B, C)));
    add(Or(A, Sim(A, B)), A);
    add(And(A, Sim(A, B)), Sim(A, B));
    add(prod({Sim(A, B), Sim(B, C), Sim(A, C)}), And(Sim(A, B), Sim(B, C)));

    begin_group("incl-before");
    add(And(Inc(A, B), Inc(B, A)), Sim(A, B));
    add(Inc(A, Inc(B, C)), sum({Bef(A, B), prod({A, B, Bef(C, B)}), And(Sim(A, B), Inc(B, C))}));
    add(Inc(Inc(A, B), C), And(Inc(A, B), Inc(A, C)));
    add(Inc(NV, A), NV);
    add(Inc(A, NV), A);
    add(Inc(A, A), A);
    add(Inc(A, Or(B, C)), And(Inc(A, B), Inc(A, C)));
    add(Inc(A, And(B, C)), Or(Inc(A, B), Inc(A, C)));
    add(Inc(A, Bef(B, C)), sum({Bef(A, B), prod({A, B, Inc(C, B)}), And(Sim(A, B), Bef(B, C))}));
    add(Inc(A, Sim(B, C)), sum({And(A, Bef(B, C)), And(A, Bef(C, B)), Bef(A, B), Bef(A, C),
                                And(Sim(A, B), Sim(B, C))}));
    add(Inc(Or(A, B), C), Or(Inc(A, C), Inc(B, C)));
    add(Inc(And(A, B), C), And(Inc(A, C), Inc(B, C)));
    add(Inc(Sim(A, B), C), And(Sim(A, B), Inc(A, C)));
    add(Inc(Sim(A, B), C), And(Sim(A, B), Inc(B, C)));
    add(Inc(Sim(A, B), C), Sim(Inc(A, C), Inc(B, C)));
    add(Inc(Bef(A, B), C), And(Bef(A, B), Inc(A, C)));
    add(Or(A, Inc(A, B)), A);
    add(Or(B, Inc(A, B)), Or(A, B));
    add(And(A, Inc(A, B)), Inc(A, B));
    add(Or(Inc(A, B), Inc(B, A)), Or(A, B));
    add(Or(And(A, Inc(B, A)), And(B, Inc(A, B))), And(A, B));
    add(Or(Inc(A, B), And(A, Inc(B, A))), A);
    add(prod({Inc(A, B), Inc(B, C), Inc(A, C)}), And(Inc(A, B), Inc(B, C)));

    begin_group("mixed");
    add(Or(Inc(A, B), Bef(A, B)), Inc(A, B));
    add(Or(Inc(A, B), Sim(A, B)), Inc(A, B));
    add(And(Bef(A, B), Sim(A, B)), NV);
    add(And(Bef(A, B), Sim(B, C)), And(Bef(A, C), Sim(B, C)));
    add(And(Inc(A, B), Bef(A, B)), Bef(A, B));
    add(And(Bef(A, B), Inc(B, A)), NV);
    add(And(Inc(A, B), Sim(A, B)), Sim(A, B));
    add(sum({Bef(A, B), Sim(A, B), Bef(B, A)}), Or(A, B));
    add(sum({And(A, Bef(B, A)), Sim(A, B), And(B, Bef(A, B))}), And(A, B));
    add(sum({Bef(A, B), Sim(A, B), And(A, Bef(B, A))}), A);

    return rules;
  }();
  return catalog;
}

struct CatalogEntryReport {
  std::string id;
  EquivalenceVerdict verdict;
};

struct CatalogReport {
  std::vector<CatalogEntryReport> entries;
  std::size_t failures = 0;
};

// Exact-checks every rule of the given catalog (all rows have at most three
// metavariables, so the pattern space is small).
inline CatalogReport verify_catalog(const std::vector<RewriteRule>& rules,
                                    std::size_t exact_bound = kDefaultExactVarBound) {
  CatalogReport report;
  for (const auto& rule : rules) {
    EquivalenceVerdict v =
        decide_equivalence(rule.lhs, rule.rhs, rule.conditions, EquivalenceMode::exact(), exact_bound);
    if (!v.equivalent()) ++report.failures;
    report.entries.push_back({rule.id, std::move(v)});
  }
  return report;
}

inline CatalogReport verify_catalog() { return verify_catalog(rule_catalog()); }

}  // namespace dft
