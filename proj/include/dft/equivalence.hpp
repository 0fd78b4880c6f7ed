#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dft/conditions.hpp"
#include "dft/patterns.hpp"
#include "dft/term.hpp"

namespace dft {

struct EquivalenceVerdict {
  enum class Result { Equivalent, NotEquivalent, SampledEquivalent };
  Result result = Result::Equivalent;
  Valuation witness;         // NotEquivalent: distinguishes the terms, satisfies conditions
  std::uint64_t trials = 0;  // SampledEquivalent
  std::uint64_t seed = 0;

  bool equivalent() const { return result != Result::NotEquivalent; }
  std::string str() const {
    switch (result) {
      case Result::Equivalent: return "equivalent";
      case Result::SampledEquivalent:
        return "sampled-equivalent(" + std::to_string(trials) + " trials, seed " +
               std::to_string(seed) + ")";
      case Result::NotEquivalent: {
        std::string s = "not-equivalent {";
        bool first = true;
        for (const auto& [k, t] : witness) {
          s += (first ? "" : ", ") + k + ":" + t.str();
          first = false;
        }
        return s + "}";
      }
    }
    return {};
  }
};

struct EquivalenceMode {
  enum class Kind { Exact, Sampled };
  Kind kind = Kind::Exact;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static EquivalenceMode exact() { return {Kind::Exact, 0, 0}; }
  static EquivalenceMode sampled(std::uint64_t trials, std::uint64_t seed) {
    return {Kind::Sampled, trials, seed};
  }
};

inline constexpr std::size_t kDefaultExactVarBound = 7;

namespace detail {

// Postorder program over variable slots; values are doubles with +inf as never.
struct CompiledTerm {
  struct Op {
    TermKind kind;
    int slot;  // Var only
  };
  std::vector<Op> ops;

  static void emit(const Term& t, const std::map<std::string, int>& slots, std::vector<Op>& out) {
    switch (t->kind) {
      case TermKind::Var: out.push_back({TermKind::Var, slots.at(t->name)}); return;
      case TermKind::ConstAlways:
      case TermKind::ConstNever: out.push_back({t->kind, -1}); return;
      default:
        emit(t->left, slots, out);
        emit(t->right, slots, out);
        out.push_back({t->kind, -1});
    }
  }

  static CompiledTerm compile(const Term& t, const std::map<std::string, int>& slots) {
    CompiledTerm c;
    emit(t, slots, c.ops);
    return c;
  }

  double eval(std::span<const double> values, std::vector<double>& stack) const {
    stack.clear();
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (const Op& op : ops) {
      switch (op.kind) {
        case TermKind::Var: stack.push_back(values[static_cast<std::size_t>(op.slot)]); break;
        case TermKind::ConstAlways: stack.push_back(0.0); break;
        case TermKind::ConstNever: stack.push_back(inf); break;
        default: {
          double r = stack.back();
          stack.pop_back();
          double l = stack.back();
          switch (op.kind) {
            case TermKind::And: stack.back() = l > r ? l : r; break;
            case TermKind::Or: stack.back() = l < r ? l : r; break;
            case TermKind::Simult: stack.back() = l == r ? l : inf; break;
            case TermKind::Before: stack.back() = l < r ? l : inf; break;
            case TermKind::InclBefore: stack.back() = l <= r ? l : inf; break;
            default: break;
          }
        }
      }
    }
    return stack.back();
  }
};

struct CompiledConditions {
  std::vector<std::vector<int>> distinct_groups;
  std::vector<int> cold_slots;
  std::vector<std::pair<int, int>> never_pairs;
  std::vector<CompiledTerm> never_terms;

  static CompiledConditions compile(std::span<const SideCondition> conds,
                                    const std::map<std::string, int>& slots) {
    CompiledConditions c;
    for (const auto& sc : conds) {
      switch (sc.kind) {
        case SideCondition::Kind::AllDistinct: {
          std::vector<int> g;
          for (const auto& v : sc.vars) g.push_back(slots.at(v));
          c.distinct_groups.push_back(std::move(g));
          break;
        }
        case SideCondition::Kind::ColdSpare: c.cold_slots.push_back(slots.at(sc.vars[0])); break;
        case SideCondition::Kind::NeverEvents:
          c.never_pairs.emplace_back(slots.at(sc.vars[0]), slots.at(sc.vars[1]));
          break;
        case SideCondition::Kind::TermEqNever:
          c.never_terms.push_back(CompiledTerm::compile(sc.term, slots));
          break;
      }
    }
    return c;
  }

  bool holds(std::span<const double> values, std::vector<double>& stack) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (int s : cold_slots)
      if (values[static_cast<std::size_t>(s)] != inf) return false;
    for (auto [a, b] : never_pairs)
      if (values[static_cast<std::size_t>(a)] != inf && values[static_cast<std::size_t>(b)] != inf)
        return false;
    for (const auto& g : distinct_groups)
      for (std::size_t i = 0; i < g.size(); ++i) {
        double a = values[static_cast<std::size_t>(g[i])];
        if (a == inf) continue;
        for (std::size_t j = i + 1; j < g.size(); ++j)
          if (a == values[static_cast<std::size_t>(g[j])]) return false;
      }
    for (const auto& ct : never_terms)
      if (ct.eval(values, stack) != inf) return false;
    return true;
  }
};

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Decides whether two terms have the same failure time on every valuation
// satisfying the side conditions.
//
// Exact mode enumerates every comparison pattern over the variables of both
// terms and the conditions; it is a complete check over valuations with
// strictly positive finite times (an instant of exactly 0 has measure zero for
// continuous distributions and is outside the decision domain). Sampled mode
// draws seeded random valuations: i.i.d. uniform times on (0,1), each variable
// independently never with probability 1/4 (cold spares forced never),
// rejection-filtered by the conditions.
inline EquivalenceVerdict decide_equivalence(const Term& t1, const Term& t2,
                                             std::span<const SideCondition> conditions,
                                             EquivalenceMode mode,
                                             std::size_t exact_bound = kDefaultExactVarBound) {
  std::set<std::string> var_set = free_variables(t1);
  collect_free_variables(t2, var_set);
  for (const auto& c : conditions) c.collect_variables(var_set);
  std::vector<std::string> vars(var_set.begin(), var_set.end());

  std::map<std::string, int> slots;
  for (std::size_t i = 0; i < vars.size(); ++i) slots[vars[i]] = static_cast<int>(i);
  const auto c1 = detail::CompiledTerm::compile(t1, slots);
  const auto c2 = detail::CompiledTerm::compile(t2, slots);
  const auto cc = detail::CompiledConditions::compile(conditions, slots);
  std::vector<double> stack;
  constexpr double inf = std::numeric_limits<double>::infinity();

  auto to_valuation = [&](std::span<const double> values) {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i)
      v[vars[i]] = values[i] == inf ? FailureTime::never() : FailureTime(values[i]);
    return v;
  };

  if (mode.kind == EquivalenceMode::Kind::Exact) {
    if (vars.size() > exact_bound) throw TooManyVariables(vars.size(), exact_bound);
    bool any_pattern = false;
    EquivalenceVerdict verdict{EquivalenceVerdict::Result::Equivalent, {}, 0, 0};
    std::vector<double> values(vars.size());
    enumerate_patterns(vars, [&](const ComparisonPattern& p) {
      for (const auto& name : p.never_set) values[static_cast<std::size_t>(slots[name])] = inf;
      for (std::size_t i = 0; i < p.blocks.size(); ++i)
        for (const auto& name : p.blocks[i])
          values[static_cast<std::size_t>(slots[name])] = static_cast<double>(i + 1);
      if (!cc.holds(values, stack)) return true;
      any_pattern = true;
      if (c1.eval(values, stack) != c2.eval(values, stack)) {
        verdict.result = EquivalenceVerdict::Result::NotEquivalent;
        verdict.witness = to_valuation(values);
        return false;
      }
      return true;
    });
    if (verdict.result == EquivalenceVerdict::Result::Equivalent && !any_pattern && !vars.empty())
      throw UnsatisfiableConditions("no comparison pattern satisfies the side conditions");
    return verdict;
  }

  if (mode.trials < 1) throw Error("sampled equivalence requires at least one trial");
  std::mt19937_64 rng(mode.seed);
  std::vector<double> values(vars.size());
  std::vector<bool> forced_never(vars.size(), false);
  for (int s : cc.cold_slots) forced_never[static_cast<std::size_t>(s)] = true;

  constexpr std::uint64_t kMaxConsecutiveRejections = 200000;
  std::uint64_t rejections = 0;
  for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
    while (true) {
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (forced_never[i] || (rng() & 3u) == 0u)
          values[i] = inf;
        else
          values[i] = detail::uniform01(rng);
      }
      if (cc.holds(values, stack)) break;
      if (++rejections > kMaxConsecutiveRejections)
        throw UnsatisfiableConditions("rejection sampling found no valuation satisfying the conditions");
    }
    rejections = 0;
    if (c1.eval(values, stack) != c2.eval(values, stack))
      return {EquivalenceVerdict::Result::NotEquivalent, to_valuation(values), trial + 1, mode.seed};
  }
  return {EquivalenceVerdict::Result::SampledEquivalent, {}, mode.trials, mode.seed};
}

}  // namespace dft
