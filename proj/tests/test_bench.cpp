#include <gtest/gtest.h>

#include "dft/bench.hpp"
#include "dft/cutseq.hpp"

namespace dft {
namespace {

TEST(BenchTest, FiveModelsWithExpectedShapes) {
  const auto& all = bench::builtin_models();
  ASSERT_EQ(all.size(), 5u);

  const auto& cpand = bench::find_benchmark("cpand");
  std::size_t events = cpand.original.events.size();
  EXPECT_EQ(events, 30u);

  const auto& ahrs = bench::find_benchmark("ahrs");
  std::vector<Term> summands;
  std::function<void(const Term&)> collect = [&](const Term& t) {
    if (t->kind == TermKind::Or) {
      collect(t->left);
      collect(t->right);
    } else {
      summands.push_back(t);
    }
  };
  collect(ahrs.reduced_term);
  EXPECT_EQ(summands.size(), 3u);

  const auto& hcas = bench::find_benchmark("hcas");
  bool has_activation_condition = false;
  for (const auto& c : hcas.conditions)
    if (c.kind == SideCondition::Kind::TermEqNever &&
        equal(c.term, mk_before(mk_var("B_a"), mk_var("P"))))
      has_activation_condition = true;
  EXPECT_TRUE(has_activation_condition);

  EXPECT_THROW(bench::find_benchmark("nope"), Error);
}

TEST(BenchTest, BuiltinModelsValidate) {
  for (const auto& b : bench::builtin_models()) {
    EXPECT_TRUE(galileo::validate(b.original).empty()) << b.name;
    EXPECT_TRUE(galileo::validate(b.reduced_model).empty()) << b.name;
    // Reduced terms mention no event absent from the original encoding
    // (modulo the dormant/active state suffixes).
    auto strip = [](std::string v) {
      if (v.size() > 2 && (v.ends_with("_a") || v.ends_with("_d"))) v.resize(v.size() - 2);
      return v;
    };
    for (const auto& var : free_variables(b.reduced_term))
      EXPECT_TRUE(b.original.is_event(strip(var))) << b.name << " var " << var;
  }
}

TEST(BenchTest, DeadEventsAbsentFromCascadedReduction) {
  const auto& cpand = bench::find_benchmark("cpand");
  auto vars = free_variables(cpand.reduced_term);
  for (const char* dead : {"N1", "O1", "P1", "N2", "O2", "P2"})
    EXPECT_EQ(vars.count(dead), 0u) << dead;
  EXPECT_EQ(vars.size(), 24u);
}

TEST(BenchTest, CertificatesHoldOnSample) {
  // The acceptance suite runs the full 10^6-trial checks; keep this quick.
  for (const auto& b : bench::builtin_models()) {
    auto sf = galileo::to_structure_function(b.original);
    auto verdict =
        decide_equivalence(sf.term, b.reduced_term, b.conditions, EquivalenceMode::sampled(50000, 7));
    EXPECT_TRUE(verdict.equivalent()) << b.name << ": " << verdict.str();
  }
}

TEST(BenchTest, ReducedModelMatchesReducedTerm) {
  // The gate-level re-encoding used for the after-chain is itself equivalent
  // to the operator-level reduced form, under the same side conditions.
  for (const auto& b : bench::builtin_models()) {
    auto sf = galileo::to_structure_function(b.reduced_model);
    auto verdict =
        decide_equivalence(sf.term, b.reduced_term, b.conditions, EquivalenceMode::sampled(50000, 8));
    EXPECT_TRUE(verdict.equivalent()) << b.name << ": " << verdict.str();
  }
}

TEST(BenchTest, CascadedReductionDropsDeadEventsByRewriting) {
  const auto& cpand = bench::find_benchmark("cpand");
  auto sf = galileo::to_structure_function(cpand.original);
  auto [reduced, cert] = apply_reduction(sf.term, cpand.conditions, kDefaultNormalizeBudget,
                                         kDefaultExactVarBound, 50000, 11);
  EXPECT_TRUE(cert.equivalent()) << cert.str();
  auto vars = free_variables(reduced);
  for (const char* dead : {"N1", "O1", "P1", "N2", "O2", "P2"})
    EXPECT_EQ(vars.count(dead), 0u) << dead;
}

TEST(BenchTest, HeatRejectionCutSequences) {
  const auto& ahrs = bench::find_benchmark("ahrs");
  auto sf = galileo::to_structure_function(ahrs.original);
  auto [reduced, cert] = apply_reduction(sf.term, ahrs.conditions, kDefaultNormalizeBudget,
                                         kDefaultExactVarBound, 50000, 12);
  EXPECT_TRUE(cert.equivalent()) << cert.str();
  auto summary = minimize(extract_cut_sequences(reduced));
  ASSERT_EQ(summary.sequences.size(), 3u);

  std::vector<CutSequence> expected;
  expected.push_back({{sop::event("A3_a"), sop::before("A1", "A2_a"), sop::before("A2_a", "A3_a")}});
  expected.push_back({{sop::event("B3_a"), sop::before("B1", "B2_a"), sop::before("B2_a", "B3_a")}});
  expected.push_back({{sop::event("TR")}});
  for (auto& e : expected) std::sort(e.literals.begin(), e.literals.end());
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& s : summary.sequences) found = found || s == e;
    EXPECT_TRUE(found) << "missing " << e.str();
  }
  // Static cut sets are the event names of each sequence.
  for (std::size_t i = 0; i < summary.sequences.size(); ++i)
    EXPECT_EQ(summary.static_cut_sets[i], summary.sequences[i].event_names());
}

TEST(BenchTest, ComparisonEntryWellFormed) {
  const auto& ahrs = bench::find_benchmark("ahrs");
  auto e = bench::run_comparison(ahrs, 10.0, 1e-12, 50000, 13);
  EXPECT_TRUE(e.certificate.equivalent());
  EXPECT_GT(e.states_before, 0u);
  EXPECT_GT(e.states_after, 0u);
  EXPECT_GT(e.prob_before, 0.0);
  EXPECT_LT(e.prob_before, 1.0);
  EXPECT_NEAR(e.prob_before, e.prob_after, 1e-9);
  EXPECT_FALSE(e.note.empty());
}

}  // namespace
}  // namespace dft
