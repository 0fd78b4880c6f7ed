#include <gtest/gtest.h>

#include <random>

#include "dft/equivalence.hpp"
#include "dft/rules.hpp"

namespace dft {
namespace {

const Term A = mk_var("A");
const Term B = mk_var("B");
const Term C = mk_var("C");

TEST(PatternTest, EnumerationCounts) {
  // Ordered set partitions plus never subsets: 1 variable has 3 patterns,
  // 2 variables have 2*(1+3) = wait, counted directly below.
  auto count = [](int n) {
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back(std::string(1, static_cast<char>('a' + i)));
    std::size_t k = 0;
    enumerate_patterns(vars, [&](const ComparisonPattern&) {
      ++k;
      return true;
    });
    return k;
  };
  // sum over never-subsets of ordered-partition counts (Fubini numbers):
  // n=1: 1+1=2; n=2: 3+2*1+1=6; n=3: 13+3*3+3*1+1=26; n=4: 75+4*13+6*3+4+1=150.
  EXPECT_EQ(count(1), 2u);
  EXPECT_EQ(count(2), 6u);
  EXPECT_EQ(count(3), 26u);
  EXPECT_EQ(count(4), 150u);
}

TEST(ExactTest, BeforeAnnihilation) {
  Term t1 = mk_and(mk_before(A, B), mk_before(B, A));
  auto v = decide_equivalence(t1, mk_never(), {}, EquivalenceMode::exact());
  EXPECT_EQ(v.result, EquivalenceVerdict::Result::Equivalent);
}

TEST(ExactTest, BeforeIsNotSymmetricWithExpectedWitness) {
  auto v = decide_equivalence(mk_before(A, B), mk_before(B, A), {}, EquivalenceMode::exact());
  ASSERT_EQ(v.result, EquivalenceVerdict::Result::NotEquivalent);
  // First distinguishing pattern in enumeration order.
  EXPECT_EQ(v.witness.at("A"), FailureTime(1));
  EXPECT_EQ(v.witness.at("B"), FailureTime(2));
}

TEST(ExactTest, WitnessRespectsConditionsAndDistinguishes) {
  Term t1 = mk_incl_before(A, B);
  Term t2 = mk_before(A, B);
  std::vector<SideCondition> none;
  auto v = decide_equivalence(t1, t2, none, EquivalenceMode::exact());
  ASSERT_EQ(v.result, EquivalenceVerdict::Result::NotEquivalent);
  EXPECT_NE(eval_term(t1, v.witness), eval_term(t2, v.witness));
  // Same pair under distinctness is equivalent: the boundary case is excluded.
  std::vector<SideCondition> conds{SideCondition::all_distinct({"A", "B"})};
  auto v2 = decide_equivalence(t1, t2, conds, EquivalenceMode::exact());
  EXPECT_EQ(v2.result, EquivalenceVerdict::Result::Equivalent);
}

TEST(ExactTest, SimultOfDistinctEventsNeverOccurs) {
  std::vector<SideCondition> conds{SideCondition::all_distinct({"A", "B"})};
  auto v = decide_equivalence(mk_simult(A, B), mk_never(), conds, EquivalenceMode::exact());
  EXPECT_EQ(v.result, EquivalenceVerdict::Result::Equivalent);
}

TEST(ExactTest, WarmSpareReducesToColdSpare) {
  Term Ba = mk_var("Ba"), Bd = mk_var("Bd");
  Term wsp = desugar_gate(GateKind::Wsp, std::vector<Term>{A, Ba, Bd});
  Term csp = desugar_gate(GateKind::Csp, std::vector<Term>{A, Ba});
  std::vector<SideCondition> conds{SideCondition::cold_spare("Bd"),
                                   SideCondition::all_distinct({"A", "Ba"})};
  auto v = decide_equivalence(wsp, csp, conds, EquivalenceMode::exact());
  EXPECT_EQ(v.result, EquivalenceVerdict::Result::Equivalent);
}

TEST(ExactTest, WarmSpareWithIdenticalStatesIsHotSpare) {
  Term Ba = mk_var("Ba");
  Term wsp = desugar_gate(GateKind::Wsp, std::vector<Term>{A, Ba, Ba});
  Term hsp = desugar_gate(GateKind::Hsp, std::vector<Term>{A, Ba});
  auto v = decide_equivalence(wsp, hsp, {}, EquivalenceMode::exact());
  EXPECT_EQ(v.result, EquivalenceVerdict::Result::Equivalent);
}

TEST(ExactTest, ColdSpareMatchesItsDirectDefinition) {
  // Gate expansion versus the direct case split, on every pattern.
  Term Ba = mk_var("Ba");
  Term gate = desugar_gate(GateKind::Csp, std::vector<Term>{A, Ba});
  // Direct definition checked pointwise instead: spare time if primary first.
  std::vector<std::string> vars{"A", "Ba"};
  enumerate_patterns(vars, [&](const ComparisonPattern& p) {
    Valuation v = p.representative();
    FailureTime a = v.at("A"), ba = v.at("Ba");
    FailureTime expect = a < ba ? ba : FailureTime::never();
    EXPECT_EQ(eval_term(gate, v), expect);
    return true;
  });
}

TEST(ExactTest, TooManyVariablesThrows) {
  Term t = mk_var("v0");
  for (int i = 1; i < 9; ++i) t = mk_or(t, mk_var("v" + std::to_string(i)));
  EXPECT_THROW(decide_equivalence(t, t, {}, EquivalenceMode::exact()), TooManyVariables);
  Term small = mk_or(mk_or(mk_var("x"), mk_var("y")), mk_var("z"));
  EXPECT_THROW(decide_equivalence(small, small, {}, EquivalenceMode::exact(), 2),
               TooManyVariables);
  EXPECT_EQ(decide_equivalence(small, small, {}, EquivalenceMode::exact(), 3).result,
            EquivalenceVerdict::Result::Equivalent);
}

TEST(ExactTest, UnsatisfiableConditionsThrow) {
  std::vector<SideCondition> conds{
      SideCondition::cold_spare("A"),
      SideCondition::term_eq_never(mk_or(A, mk_always()))};  // A + ALWAYS is never never
  EXPECT_THROW(decide_equivalence(A, B, conds, EquivalenceMode::exact()), UnsatisfiableConditions);
  EXPECT_THROW(decide_equivalence(A, B, conds, EquivalenceMode::sampled(100, 7)),
               UnsatisfiableConditions);
}

TEST(SampledTest, DeterministicPerSeedAndFindsWitnesses) {
  auto v1 = decide_equivalence(mk_before(A, B), mk_before(B, A), {},
                               EquivalenceMode::sampled(1000, 11));
  auto v2 = decide_equivalence(mk_before(A, B), mk_before(B, A), {},
                               EquivalenceMode::sampled(1000, 11));
  ASSERT_EQ(v1.result, EquivalenceVerdict::Result::NotEquivalent);
  EXPECT_EQ(v1.trials, v2.trials);
  EXPECT_EQ(eval_term(mk_before(A, B), v1.witness), eval_term(mk_before(A, B), v2.witness));

  auto ok = decide_equivalence(mk_and(A, B), mk_and(B, A), {}, EquivalenceMode::sampled(1000, 11));
  EXPECT_EQ(ok.result, EquivalenceVerdict::Result::SampledEquivalent);
  EXPECT_EQ(ok.trials, 1000u);
  EXPECT_EQ(ok.seed, 11u);
}

TEST(SampledTest, ConditionsRespected) {
  // Under cold-spare Bd, A.(Bd < A) is never.
  Term t = mk_and(A, mk_before(mk_var("Bd"), A));
  std::vector<SideCondition> conds{SideCondition::cold_spare("Bd")};
  auto v = decide_equivalence(t, mk_never(), conds, EquivalenceMode::sampled(2000, 3));
  EXPECT_EQ(v.result, EquivalenceVerdict::Result::SampledEquivalent);
}

// Cross-mode consistency: whatever exact mode declares equivalent, sampling
// never refutes; whatever exact mode refutes, the witness is genuine.
TEST(ConsistencyTest, ExactAndSampledAgreeOnRandomPairs) {
  std::mt19937_64 rng(99);
  const std::vector<std::string> names{"A", "B", "C"};
  std::function<Term(int)> gen = [&](int depth) -> Term {
    if (depth == 0 || (rng() & 7u) == 0u) {
      std::uint64_t r = rng() % 8;
      if (r == 6) return mk_always();
      if (r == 7) return mk_never();
      return mk_var(names[r % 3]);
    }
    Term l = gen(depth - 1), r = gen(depth - 1);
    switch (rng() % 5) {
      case 0: return mk_and(l, r);
      case 1: return mk_or(l, r);
      case 2: return mk_simult(l, r);
      case 3: return mk_before(l, r);
      default: return mk_incl_before(l, r);
    }
  };
  int equivalents = 0;
  for (int i = 0; i < 200; ++i) {
    Term t1 = gen(3), t2 = gen(3);
    auto exact = decide_equivalence(t1, t2, {}, EquivalenceMode::exact());
    auto sampled = decide_equivalence(t1, t2, {}, EquivalenceMode::sampled(400, 1000 + i));
    if (exact.result == EquivalenceVerdict::Result::Equivalent) {
      ++equivalents;
      EXPECT_EQ(sampled.result, EquivalenceVerdict::Result::SampledEquivalent)
          << to_string(t1) << " vs " << to_string(t2);
    } else {
      EXPECT_NE(eval_term(t1, exact.witness), eval_term(t2, exact.witness));
    }
  }
  EXPECT_GT(equivalents, 0);
}

}  // namespace
}  // namespace dft
