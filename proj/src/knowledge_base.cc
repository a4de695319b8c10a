/// @file knowledge_base.cc

#include "atgen/knowledge_base.h"

#include "atgen/error.h"
#include "text_util.h"

namespace atgen {

namespace {

constexpr std::pair<PrerequisiteKind, const char*> kKindNames[] = {
    {PrerequisiteKind::kKnowledge, "knowledge"},
    {PrerequisiteKind::kPhysicalAccess, "physical_access"},
    {PrerequisiteKind::kLogicalAccess, "logical_access"},
    {PrerequisiteKind::kAnyAccess, "any_access"},
    {PrerequisiteKind::kStateModeChange, "state_mode_change"},
    {PrerequisiteKind::kOther, "other"},
};

}  // namespace

const char* to_string(PrerequisiteKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::optional<PrerequisiteKind> prerequisite_kind_from(std::string_view s) {
  for (const auto& [k, name] : kKindNames)
    if (s == name) return k;
  return std::nullopt;
}

KnowledgeBase::KnowledgeBase(KbData data) : data_(std::move(data)) {
  std::vector<std::string> issues;
  for (std::size_t i = 0; i < data_.criteria.size(); ++i) {
    const std::string& id = data_.criteria[i].id;
    if (!detail::valid_id(id)) issues.push_back("invalid criterion id '" + id + "'");
    if (!criteria_.emplace(id, i).second)
      issues.push_back("duplicate criterion '" + id + "'");
  }
  for (std::size_t i = 0; i < data_.asset_types.size(); ++i) {
    const std::string& id = data_.asset_types[i].id;
    if (!detail::valid_id(id)) issues.push_back("invalid asset type id '" + id + "'");
    if (!types_.emplace(id, i).second)
      issues.push_back("duplicate asset type '" + id + "'");
  }
  for (const SupportingAssetType& t : data_.asset_types) {
    if (t.composite) {
      if (t.expands_to.empty())
        issues.push_back("composite type " + t.id + " expands to nothing");
      for (const std::string& e : t.expands_to) {
        const SupportingAssetType* target = asset_type(e);
        if (!target)
          issues.push_back("type " + t.id + " expands to unknown '" + e + "'");
        else if (target->composite || target->display_under)
          issues.push_back("type " + t.id + " must expand to branch types");
      }
      if (t.display_under)
        issues.push_back("composite type " + t.id + " cannot be displayed under another");
    } else if (!t.expands_to.empty()) {
      issues.push_back("non-composite type " + t.id + " has expansions");
    }
    if (t.display_under) {
      const SupportingAssetType* up = asset_type(*t.display_under);
      if (!up || up->composite || up->display_under)
        issues.push_back("type " + t.id + " is displayed under invalid '" +
                         *t.display_under + "'");
    }
  }
  for (std::size_t i = 0; i < data_.threats.size(); ++i) {
    ThreatDef& t = data_.threats[i];
    if (!detail::valid_id(t.code)) issues.push_back("invalid threat code '" + t.code + "'");
    if (!threats_.emplace(t.code, i).second)
      issues.push_back("duplicate threat code '" + t.code + "'");
    if (!asset_type(t.targeted_type))
      issues.push_back("threat " + t.code + " targets undeclared type '" +
                       t.targeted_type + "'");
    if (t.criteria.empty())
      issues.push_back("threat " + t.code + " has no criteria");
    for (const std::string& c : t.criteria)
      if (!criterion(c))
        issues.push_back("threat " + t.code + " uses unknown criterion '" + c + "'");
    for (std::size_t k = 0; k < t.prerequisites.size(); ++k) {
      Prerequisite& p = t.prerequisites[k];
      if (p.id.empty()) p.id = t.code + ".p" + std::to_string(k + 1);
      if (!detail::valid_id(p.id))
        issues.push_back("invalid prerequisite id '" + p.id + "'");
      if (!prerequisites_.emplace(p.id, std::make_pair(i, k)).second)
        issues.push_back("duplicate prerequisite id '" + p.id + "'");
    }
  }
  if (!issues.empty())
    throw ValidationError("invalid knowledge base", std::move(issues));
}

const SecurityCriterion* KnowledgeBase::criterion(std::string_view id) const {
  auto it = criteria_.find(std::string(id));
  return it == criteria_.end() ? nullptr : &data_.criteria[it->second];
}

const SecurityCriterion* KnowledgeBase::criterion_named(
    std::string_view name) const {
  const SecurityCriterion* folded = nullptr;
  int folded_count = 0;
  for (const SecurityCriterion& c : data_.criteria) {
    if (c.name == name) return &c;
    if (detail::iequals(c.name, name)) {
      folded = &c;
      ++folded_count;
    }
  }
  return folded_count == 1 ? folded : nullptr;
}

const SupportingAssetType* KnowledgeBase::asset_type(std::string_view id) const {
  auto it = types_.find(std::string(id));
  return it == types_.end() ? nullptr : &data_.asset_types[it->second];
}

const ThreatDef* KnowledgeBase::threat(std::string_view code) const {
  auto it = threats_.find(std::string(code));
  return it == threats_.end() ? nullptr : &data_.threats[it->second];
}

const Prerequisite* KnowledgeBase::prerequisite(std::string_view id) const {
  auto it = prerequisites_.find(std::string(id));
  if (it == prerequisites_.end()) return nullptr;
  return &data_.threats[it->second.first].prerequisites[it->second.second];
}

std::vector<const SupportingAssetType*> KnowledgeBase::branch_types() const {
  std::vector<const SupportingAssetType*> out;
  for (const SupportingAssetType& t : data_.asset_types)
    if (!t.composite && !t.display_under) out.push_back(&t);
  return out;
}

std::vector<std::string> KnowledgeBase::branches_for(
    std::string_view type_id) const {
  const SupportingAssetType* t = asset_type(type_id);
  if (!t) return {};
  if (t->composite) return t->expands_to;
  if (t->display_under) return {*t->display_under};
  return {t->id};
}

std::vector<const ThreatDef*> threats_for(const KnowledgeBase& kb,
                                          std::string_view asset_type,
                                          std::string_view criterion) {
  const SupportingAssetType* type = kb.asset_type(asset_type);
  if (!type)
    throw ResolutionError("unknown asset type: " + std::string(asset_type));
  if (!kb.criterion(criterion))
    throw ResolutionError("unknown criterion: " + std::string(criterion));
  std::vector<const ThreatDef*> out;
  for (const ThreatDef& t : kb.data().threats) {
    bool targets = t.targeted_type == type->id ||
                   (type->composite &&
                    detail::contains(type->expands_to, t.targeted_type));
    if (targets && detail::contains(t.criteria, criterion)) out.push_back(&t);
  }
  return out;
}

}  // namespace atgen
