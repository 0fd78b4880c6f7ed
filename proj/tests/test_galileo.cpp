#include <gtest/gtest.h>

#include "dft/equivalence.hpp"
#include "dft/galileo.hpp"

namespace dft {
namespace {

bool has_violation(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs)
    if (v.code == code) return true;
  return false;
}

TEST(ParseTest, SmallPandModel) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" pand "A" "B";
    "A" lambda=0.1 dorm=0.0;
    "B" lambda=0.2 dorm=0.0;
  )");
  EXPECT_EQ(m.toplevel, "T");
  EXPECT_EQ(m.gates.size(), 1u);
  EXPECT_EQ(m.events.size(), 2u);
  ASSERT_TRUE(m.is_gate("T"));
  EXPECT_EQ(m.gates.at("T").kind, GateKind::Pand);
  EXPECT_EQ(m.gates.at("T").children, (std::vector<std::string>{"A", "B"}));
  EXPECT_DOUBLE_EQ(m.events.at("A").rate, 0.1);
  EXPECT_TRUE(galileo::validate(m).empty());
}

TEST(ParseTest, CommentsCrlfAndScientificFloats) {
  auto m = galileo::parse("toplevel \"T\"; // top\r\n\"T\" or \"A\" \"B\";\r\n"
                          "\"A\" lambda=1e-3;\r\n\"B\" lambda=2.5E-2 dorm=0.5;\r\n");
  EXPECT_DOUBLE_EQ(m.events.at("A").rate, 1e-3);
  EXPECT_DOUBLE_EQ(m.events.at("A").dormancy, 1.0);  // default
  EXPECT_DOUBLE_EQ(m.events.at("B").dormancy, 0.5);
}

TEST(ParseTest, VoteGateWord) {
  auto m = galileo::parse(R"(
    toplevel "V";
    "V" 2of3 "A" "B" "C";
    "A" lambda=0.1; "B" lambda=0.1; "C" lambda=0.1;
  )");
  EXPECT_EQ(m.gates.at("V").kind, GateKind::Vote);
  EXPECT_EQ(m.gates.at("V").vote_k, 2);
  EXPECT_TRUE(galileo::validate(m).empty());
}

TEST(ParseTest, DuplicateDefinitionRejected) {
  EXPECT_THROW(galileo::parse(R"(
    toplevel "T";
    "T" pand "A" "B";
    "T" or "A" "B";
    "A" lambda=0.1; "B" lambda=0.1;
  )"),
               DuplicateDefinition);
}

TEST(ParseTest, SyntaxErrorsCarryPosition) {
  try {
    galileo::parse("toplevel \"T\"\n\"T\" or \"A\";");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line, 2);
  }
  EXPECT_THROW(galileo::parse("toplevel \"T\"; \"T\" zap \"A\";"), SyntaxError);
  EXPECT_THROW(galileo::parse("\"A\" lambda=xyz;"), SyntaxError);
}

TEST(ValidateTest, NonPositiveRateAndDormancyRange) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" or "A" "B";
    "A" lambda=-1;
    "B" lambda=0.1 dorm=1.5;
  )");
  auto vs = galileo::validate(m);
  EXPECT_TRUE(has_violation(vs, "NonPositiveRate"));
  EXPECT_TRUE(has_violation(vs, "DormancyOutOfRange"));
}

TEST(ValidateTest, SelfReferenceReportsCyclePath) {
  auto m = galileo::parse(R"(
    toplevel "G";
    "G" or "G" "A";
    "A" lambda=0.1;
  )");
  auto vs = galileo::validate(m);
  ASSERT_TRUE(has_violation(vs, "CycleDetected"));
  for (const auto& v : vs)
    if (v.code == "CycleDetected") EXPECT_EQ(v.message, "G -> G");
}

TEST(ValidateTest, DependencyLoopDetected) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" and "A" "B";
    "F1" fdep "A" "B";
    "F2" fdep "B" "A";
    "A" lambda=0.1; "B" lambda=0.1;
  )");
  EXPECT_TRUE(has_violation(galileo::validate(m), "CycleDetected"));
}

TEST(ValidateTest, UnknownReferenceAndSharingLimits) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" and "G1" "G2" "G3";
    "G1" wsp "P1" "S";
    "G2" wsp "P2" "S";
    "G3" wsp "P3" "S";
    "P1" lambda=0.1; "P2" lambda=0.1; "P3" lambda=0.1;
    "S" lambda=0.1 dorm=0.5;
  )");
  EXPECT_TRUE(has_violation(galileo::validate(m), "UnsupportedSharing"));

  auto m2 = galileo::parse(R"(
    toplevel "T";
    "T" or "A" "GHOST";
    "A" lambda=0.1;
  )");
  EXPECT_TRUE(has_violation(galileo::validate(m2), "UnknownReference"));
}

TEST(RoundTripTest, ParseSerializeIdentity) {
  const std::string text = R"(
    toplevel "SYS";
    "SYS" or "U" "V" "W";
    "U" wsp "A" "B" "C";
    "V" pand "D" "E";
    "W" 2of3 "F" "G" "H";
    "FD" fdep "D" "F" "G";
    "A" lambda=0.01; "B" lambda=0.01 dorm=0.0; "C" lambda=0.01 dorm=0.5;
    "D" lambda=0.02; "E" lambda=0.02; "F" lambda=0.03; "G" lambda=0.03; "H" lambda=0.03;
  )";
  auto m1 = galileo::parse(text);
  auto m2 = galileo::parse(galileo::serialize(m1));
  EXPECT_EQ(m1.toplevel, m2.toplevel);
  EXPECT_EQ(m1.declaration_order, m2.declaration_order);
  ASSERT_EQ(m1.gates.size(), m2.gates.size());
  for (const auto& [name, g] : m1.gates) {
    EXPECT_EQ(g.children, m2.gates.at(name).children);
    EXPECT_EQ(g.kind, m2.gates.at(name).kind);
  }
  for (const auto& [name, e] : m1.events) {
    EXPECT_DOUBLE_EQ(e.rate, m2.events.at(name).rate);
    EXPECT_DOUBLE_EQ(e.dormancy, m2.events.at(name).dormancy);
  }
}

TEST(StructureFunctionTest, PandModel) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" pand "A" "B";
    "A" lambda=0.1; "B" lambda=0.2;
  )");
  auto sf = galileo::to_structure_function(m);
  EXPECT_TRUE(equal(sf.term, mk_and(mk_var("B"), mk_incl_before(mk_var("A"), mk_var("B")))));
  ASSERT_EQ(sf.conditions.size(), 1u);
  EXPECT_EQ(sf.conditions[0].kind, SideCondition::Kind::AllDistinct);
  EXPECT_EQ(sf.conditions[0].vars, (std::vector<std::string>{"A", "B"}));
}

TEST(StructureFunctionTest, FdepLiftsTriggerIntoOccurrences) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" or "A" "C";
    "F" fdep "TR" "A";
    "A" lambda=0.1; "C" lambda=0.1; "TR" lambda=0.1;
  )");
  auto sf = galileo::to_structure_function(m);
  EXPECT_TRUE(equal(sf.term, mk_or(mk_or(mk_var("A"), mk_var("TR")), mk_var("C"))));
}

TEST(StructureFunctionTest, SpareAliasesAndConditions) {
  auto m = galileo::parse(R"(
    toplevel "G";
    "G" wsp "A" "B";
    "A" lambda=0.1; "B" lambda=0.1 dorm=0.0;
  )");
  auto sf = galileo::to_structure_function(m);
  auto vars = free_variables(sf.term);
  EXPECT_EQ(vars, (std::set<std::string>{"A", "B_a", "B_d"}));
  bool never_events = false, cold = false;
  for (const auto& c : sf.conditions) {
    never_events |= c.kind == SideCondition::Kind::NeverEvents;
    cold |= c.kind == SideCondition::Kind::ColdSpare && c.vars[0] == "B_d";
  }
  EXPECT_TRUE(never_events);
  EXPECT_TRUE(cold);

  // The expansion equals the direct warm-spare operator form.
  Term direct = desugar_gate(GateKind::Wsp,
                             std::vector<Term>{mk_var("A"), mk_var("B_a"), mk_var("B_d")});
  EXPECT_EQ(decide_equivalence(sf.term, direct, {}, EquivalenceMode::exact()).result,
            EquivalenceVerdict::Result::Equivalent);
}

TEST(StructureFunctionTest, SharedSpareExpandsPerClaimant) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" and "G1" "G2";
    "G1" wsp "M1" "M3";
    "G2" wsp "M2" "M3";
    "M1" lambda=0.1; "M2" lambda=0.1; "M3" lambda=0.1 dorm=0.5;
  )");
  auto sf = galileo::to_structure_function(m);
  Term g1 = desugar_gate(GateKind::SharedSpare,
                         std::vector<Term>{mk_var("M1"), mk_var("M2"), mk_var("M3_a"),
                                           mk_var("M3_d")});
  Term g2 = desugar_gate(GateKind::SharedSpare,
                         std::vector<Term>{mk_var("M2"), mk_var("M1"), mk_var("M3_a"),
                                           mk_var("M3_d")});
  EXPECT_EQ(decide_equivalence(sf.term, mk_and(g1, g2), {}, EquivalenceMode::exact()).result,
            EquivalenceVerdict::Result::Equivalent);
}

TEST(StructureFunctionTest, StaticTreesUseOnlyAndOr) {
  auto m = galileo::parse(R"(
    toplevel "T";
    "T" and "X" "Y";
    "X" or "A" "B";
    "Y" 1of2 "C" "D";
    "A" lambda=0.1; "B" lambda=0.1; "C" lambda=0.1; "D" lambda=0.1;
  )");
  auto sf = galileo::to_structure_function(m);
  std::function<void(const Term&)> walk = [&](const Term& t) {
    EXPECT_TRUE(t->kind == TermKind::And || t->kind == TermKind::Or || t->kind == TermKind::Var);
    if (is_binary(t->kind)) {
      walk(t->left);
      walk(t->right);
    }
  };
  walk(sf.term);
}

}  // namespace
}  // namespace dft
