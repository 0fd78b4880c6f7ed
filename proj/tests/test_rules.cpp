#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "dft/rules.hpp"

namespace dft {
namespace {

TEST(CatalogTest, HasAtLeastEightyRulesWithProvenance) {
  const auto& rules = rule_catalog();
  EXPECT_GE(rules.size(), 80u);
  std::set<std::string> ids;
  for (const auto& r : rules) {
    EXPECT_TRUE(ids.insert(r.id).second) << "duplicate id " << r.id;
    EXPECT_LE(free_variables(r.lhs).size(), 3u);
    // No metavariable invented on the right-hand side.
    for (const auto& v : free_variables(r.rhs))
      EXPECT_TRUE(free_variables(r.lhs).count(v)) << r.id << " invents " << v;
  }
}

TEST(CatalogTest, ContainsExpectedRows) {
  const Term A = mk_var("A"), B = mk_var("B"), C = mk_var("C");
  auto contains = [&](const Term& lhs, const Term& rhs) {
    for (const auto& r : rule_catalog())
      if (equal(r.lhs, lhs) && equal(r.rhs, rhs)) return true;
    return false;
  };
  EXPECT_TRUE(contains(mk_or(A, A), A));
  EXPECT_TRUE(contains(mk_before(A, mk_never()), A));
  EXPECT_TRUE(contains(mk_incl_before(mk_or(A, B), C),
                       mk_or(mk_incl_before(A, C), mk_incl_before(B, C))));
  EXPECT_TRUE(contains(mk_and(mk_incl_before(A, B), mk_incl_before(B, A)), mk_simult(A, B)));
}

TEST(CatalogTest, EveryRuleVerifiesExactly) {
  auto t0 = std::chrono::steady_clock::now();
  CatalogReport report = verify_catalog();
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(report.failures, 0u);
  for (const auto& e : report.entries)
    EXPECT_TRUE(e.verdict.equivalent()) << e.id << ": " << e.verdict.str();
  EXPECT_LT(elapsed, 5.0);
}

TEST(CatalogTest, CorruptedRuleIsCaughtWithWitness) {
  auto rules = rule_catalog();
  rules.push_back({"corrupt:01", mk_before(mk_var("A"), mk_var("B")),
                   mk_before(mk_var("B"), mk_var("A")), {}});
  CatalogReport report = verify_catalog(rules);
  EXPECT_EQ(report.failures, 1u);
  const auto& bad = report.entries.back();
  EXPECT_EQ(bad.id, "corrupt:01");
  ASSERT_EQ(bad.verdict.result, EquivalenceVerdict::Result::NotEquivalent);
  EXPECT_NE(eval_term(rules.back().lhs, bad.verdict.witness),
            eval_term(rules.back().rhs, bad.verdict.witness));
}

TEST(CatalogTest, EmptyCatalogGivesEmptyReport) {
  CatalogReport report = verify_catalog({});
  EXPECT_EQ(report.failures, 0u);
  EXPECT_TRUE(report.entries.empty());
}

}  // namespace
}  // namespace dft
