#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dft/algebra.hpp"
#include "dft/term.hpp"

namespace dft {

// Decidable constraint on a valuation, used to scope equivalence claims.
//
// AllDistinct forbids two variables from sharing the same *finite* instant;
// several variables may jointly never occur. (Two events that never occur do
// not occur "at the same time".)
struct SideCondition {
  enum class Kind { AllDistinct, ColdSpare, NeverEvents, TermEqNever };

  Kind kind;
  std::vector<std::string> vars;  // AllDistinct: n, ColdSpare: 1, NeverEvents: 2
  Term term;                      // TermEqNever only

  static SideCondition all_distinct(std::vector<std::string> names) {
    return {Kind::AllDistinct, std::move(names), nullptr};
  }
  static SideCondition cold_spare(std::string name) {
    return {Kind::ColdSpare, {std::move(name)}, nullptr};
  }
  static SideCondition never_events(std::string a, std::string b) {
    return {Kind::NeverEvents, {std::move(a), std::move(b)}, nullptr};
  }
  static SideCondition term_eq_never(Term t) { return {Kind::TermEqNever, {}, std::move(t)}; }

  bool holds(const Valuation& v) const {
    switch (kind) {
      case Kind::AllDistinct:
        for (std::size_t i = 0; i < vars.size(); ++i) {
          FailureTime a = v.at(vars[i]);
          if (a.is_never()) continue;
          for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (a == v.at(vars[j])) return false;
        }
        return true;
      case Kind::ColdSpare: return v.at(vars[0]).is_never();
      case Kind::NeverEvents: return v.at(vars[0]).is_never() || v.at(vars[1]).is_never();
      case Kind::TermEqNever: return eval_term(term, v).is_never();
    }
    return false;
  }

  void collect_variables(std::set<std::string>& out) const {
    out.insert(vars.begin(), vars.end());
    if (term) collect_free_variables(term, out);
  }

  std::string str() const {
    switch (kind) {
      case Kind::AllDistinct: {
        std::string s = "all-distinct(";
        for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? ", " : "") + vars[i];
        return s + ")";
      }
      case Kind::ColdSpare: return "cold-spare(" + vars[0] + ")";
      case Kind::NeverEvents: return "never-events(" + vars[0] + ", " + vars[1] + ")";
      case Kind::TermEqNever: return "never(" + to_string(term) + ")";
    }
    return {};
  }
};

inline std::set<std::string> condition_variables(std::span<const SideCondition> conds) {
  std::set<std::string> out;
  for (const auto& c : conds) c.collect_variables(out);
  return out;
}

}  // namespace dft
