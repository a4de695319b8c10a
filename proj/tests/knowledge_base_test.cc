#include <gtest/gtest.h>

#include <random>

#include "atgen/error.h"
#include "atgen/io.h"
#include "atgen/knowledge_base.h"
#include "support/fixtures.h"
#include "support/random_model.h"

namespace atgen {
namespace {

KnowledgeBase running_kb() {
  auto path = testing::running_example() / "kb.json";
  return KnowledgeBase(kb_from_json(read_json_file(path), path.string()));
}

std::vector<std::string> codes(const std::vector<const ThreatDef*>& threats) {
  std::vector<std::string> out;
  for (const ThreatDef* t : threats) out.push_back(t->code);
  return out;
}

TEST(KnowledgeBase, SampleThreatCatalog) {
  KnowledgeBase kb = running_kb();
  const ThreatDef& mat = *kb.threat("MAT-MOD");
  EXPECT_EQ(mat.targeted_type, "HW");
  EXPECT_EQ(mat.description, "Hardware modification");
  EXPECT_EQ(mat.criteria,
            (std::vector<std::string>{"availability", "integrity", "confidentiality"}));
  ASSERT_EQ(mat.prerequisites.size(), 2u);
  EXPECT_EQ(mat.prerequisites[1].kind, PrerequisiteKind::kPhysicalAccess);
  const ThreatDef& rsx = *kb.threat("RSX-USG");
  EXPECT_EQ(rsx.description, "Man-in-the-middle attack");
  EXPECT_EQ(rsx.prerequisites[1].text, "Physical or logical access to the canal");
  EXPECT_EQ(rsx.prerequisites[1].kind, PrerequisiteKind::kAnyAccess);
}

TEST(KnowledgeBase, DefaultPrerequisiteIds) {
  KnowledgeBase kb = running_kb();
  EXPECT_EQ(kb.threat("LOG-MOD")->prerequisites[2].id, "LOG-MOD.p3");
  EXPECT_EQ(kb.prerequisite("LOG-MOD.p3")->kind, PrerequisiteKind::kStateModeChange);
}

TEST(KnowledgeBase, BranchLayer) {
  KnowledgeBase kb = running_kb();
  std::vector<std::string> ids;
  for (const SupportingAssetType* t : kb.branch_types()) ids.push_back(t->id);
  EXPECT_EQ(ids, (std::vector<std::string>{"HW", "SW", "NET", "ORG"}));
  EXPECT_EQ(kb.branches_for("SYS"), (std::vector<std::string>{"HW", "SW"}));
  EXPECT_EQ(kb.branches_for("PEOPLE"), std::vector<std::string>{"ORG"});
  EXPECT_EQ(kb.branches_for("HW"), std::vector<std::string>{"HW"});
}

TEST(KnowledgeBase, PeopleIntegrityThreats) {
  KnowledgeBase kb = running_kb();
  EXPECT_EQ(codes(threats_for(kb, "PEOPLE", "integrity")),
            (std::vector<std::string>{"PER-INF", "PER-OVL"}));
  std::size_t people = 0;
  for (const ThreatDef& t : kb.data().threats) people += t.targeted_type == "PEOPLE";
  EXPECT_EQ(people, 6u);
}

TEST(KnowledgeBase, CompositeTypesCollectExpandedThreats) {
  KnowledgeBase kb = running_kb();
  EXPECT_EQ(codes(threats_for(kb, "SYS", "integrity")),
            (std::vector<std::string>{"MAT-MOD", "LOG-MOD"}));
  EXPECT_EQ(codes(threats_for(kb, "NET", "confidentiality")),
            std::vector<std::string>{"RSX-SPY"});
  EXPECT_THROW(threats_for(kb, "NOPE", "integrity"), ResolutionError);
  EXPECT_THROW(threats_for(kb, "HW", "nope"), ResolutionError);
}

TEST(KnowledgeBase, FilterByCriterion) {
  KbData d = running_kb().data();
  EXPECT_EQ(codes(threats_for(KnowledgeBase(d), "HW", "confidentiality")),
            (std::vector<std::string>{"MAT-MOD", "MAT-SPY"}));
  std::erase_if(d.threats, [](const ThreatDef& t) {
    return t.targeted_type == "NET" && t.code != "RSX-USG";
  });
  EXPECT_TRUE(threats_for(KnowledgeBase(d), "NET", "confidentiality").empty());
  d.threats.clear();
  KnowledgeBase empty(d);
  for (const auto& type : d.asset_types)
    for (const auto& crit : d.criteria)
      EXPECT_TRUE(threats_for(empty, type.id, crit.id).empty());
}

TEST(KnowledgeBase, CriterionByName) {
  KnowledgeBase kb = running_kb();
  EXPECT_EQ(kb.criterion_named("Integrity")->id, "integrity");
  EXPECT_EQ(kb.criterion_named("integrity")->id, "integrity");
  EXPECT_EQ(kb.criterion_named("Safety"), nullptr);
}

TEST(KnowledgeBase, RejectsBrokenData) {
  KbData d = running_kb().data();
  d.threats.push_back(d.threats.front());
  EXPECT_THROW(KnowledgeBase{d}, ValidationError);

  d = running_kb().data();
  d.threats[0].targeted_type = "VAPOR";
  EXPECT_THROW(KnowledgeBase{d}, ValidationError);

  d = running_kb().data();
  d.threats[0].criteria.push_back("beauty");
  EXPECT_THROW(KnowledgeBase{d}, ValidationError);

  d = running_kb().data();
  d.asset_types.back().expands_to.push_back("VAPOR");
  EXPECT_THROW(KnowledgeBase{d}, ValidationError);
}

// The library filter and a direct scan of the KB agree on random KBs.
TEST(KnowledgeBase, FilterMatchesBruteForce) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    testing::RandomCase c = testing::random_case(rng);
    KnowledgeBase kb(c.kb);
    for (const auto& type : c.kb.asset_types)
      for (const auto& crit : c.kb.criteria)
        EXPECT_EQ(codes(threats_for(kb, type.id, crit.id)),
                  testing::brute_force_threats(c.kb, type.id, crit.id));
  }
}

}  // namespace
}  // namespace atgen
