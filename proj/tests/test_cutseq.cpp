#include <gtest/gtest.h>

#include "dft/cutseq.hpp"

namespace dft {
namespace {

const Term A = mk_var("A");
const Term B = mk_var("B");
const Term C = mk_var("C");

TEST(CutSeqTest, SingleEventAndNever) {
  auto s = extract_cut_sequences(A);
  ASSERT_EQ(s.sequences.size(), 1u);
  EXPECT_EQ(s.sequences[0].literals, (sop::Product{sop::event("A")}));
  EXPECT_EQ(s.static_cut_sets[0], (std::set<std::string>{"A"}));
  EXPECT_TRUE(extract_cut_sequences(mk_never()).sequences.empty());
}

TEST(CutSeqTest, ProductsBecomeSequences) {
  Term t = mk_or(mk_and(A, mk_before(B, A)), C);
  auto s = extract_cut_sequences(t);
  ASSERT_EQ(s.sequences.size(), 2u);
  EXPECT_EQ(s.sequences[0].literals, (sop::Product{sop::event("A"), sop::before("B", "A")}));
  EXPECT_EQ(s.static_cut_sets[0], (std::set<std::string>{"A", "B"}));
  EXPECT_EQ(s.sequences[1].literals, (sop::Product{sop::event("C")}));
}

TEST(CutSeqTest, NonCanonicalRejected) {
  EXPECT_THROW(extract_cut_sequences(mk_before(mk_or(A, B), C)), NotCanonical);
  EXPECT_THROW(extract_cut_sequences(mk_before(A, A)), NotCanonical);
  EXPECT_THROW(extract_cut_sequences(mk_always()), NotCanonical);
}

TEST(MinimizeTest, SubsetAbsorption) {
  Term t = mk_or(A, mk_and(A, B));
  // Build the summary by hand (normalize would already absorb).
  CutSummary s;
  s.sequences.push_back({{sop::event("A")}});
  s.sequences.push_back({{sop::event("A"), sop::event("B")}});
  s.static_cut_sets = {{"A"}, {"A", "B"}};
  auto m = minimize(s);
  ASSERT_EQ(m.sequences.size(), 1u);
  EXPECT_EQ(m.sequences[0].literals, (sop::Product{sop::event("A")}));
  (void)t;
}

TEST(MinimizeTest, IncomparableAndEmpty) {
  CutSummary s;
  s.sequences.push_back({{sop::event("A"), sop::before("B", "A")}});
  s.sequences.push_back({{sop::event("C")}});
  s.static_cut_sets = {{"A", "B"}, {"C"}};
  auto m = minimize(s);
  EXPECT_EQ(m.sequences.size(), 2u);
  EXPECT_TRUE(minimize(CutSummary{}).sequences.empty());
}

TEST(MinimizeTest, IdempotentAndEquivalencePreserving) {
  Term t = mk_or(mk_or(mk_and(A, B), A), mk_and(mk_before(B, C), mk_and(A, B)));
  auto s = extract_cut_sequences(t);
  auto m1 = minimize(s);
  auto m2 = minimize(m1);
  EXPECT_EQ(m1.sequences, m2.sequences);
  auto verdict = decide_equivalence(summary_term(s), summary_term(m1), {},
                                    EquivalenceMode::exact());
  EXPECT_EQ(verdict.result, EquivalenceVerdict::Result::Equivalent);
}

TEST(MinimizeTest, DuplicatesKeepFirst) {
  CutSummary s;
  s.sequences.push_back({{sop::event("A")}});
  s.sequences.push_back({{sop::event("A")}});
  s.static_cut_sets = {{"A"}, {"A"}};
  auto m = minimize(s);
  EXPECT_EQ(m.sequences.size(), 1u);
}

}  // namespace
}  // namespace dft
