/// @file knowledge_base.h
/// Security knowledge base: criteria, supporting-asset types and threat
/// descriptions with tagged prerequisites.

#ifndef ATGEN_KNOWLEDGE_BASE_H_
#define ATGEN_KNOWLEDGE_BASE_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace atgen {

/// kAnyAccess stands for "physical or logical access" requirements.
enum class PrerequisiteKind {
  kKnowledge,
  kPhysicalAccess,
  kLogicalAccess,
  kAnyAccess,
  kStateModeChange,
  kOther,
};

const char* to_string(PrerequisiteKind kind);
std::optional<PrerequisiteKind> prerequisite_kind_from(std::string_view s);

/// How entry points of an asset type are found in the architecture.
enum class EntryPointSource { kComponents, kInterfaces };

struct SecurityCriterion {
  std::string id;
  std::string name;
};

struct SupportingAssetType {
  std::string id;
  std::string name;
  bool composite = false;
  std::vector<std::string> expands_to;         ///< Composite only.
  std::optional<std::string> display_under;    ///< Branch for subtypes.
  EntryPointSource entry_points = EntryPointSource::kComponents;
};

struct Prerequisite {
  std::string id;
  std::string text;
  PrerequisiteKind kind = PrerequisiteKind::kOther;
};

struct ThreatDef {
  std::string code;
  std::string description;
  std::string targeted_type;
  std::vector<std::string> criteria;
  std::vector<std::string> vulnerabilities;
  std::vector<Prerequisite> prerequisites;
};

struct KbData {
  std::vector<SecurityCriterion> criteria;
  std::vector<SupportingAssetType> asset_types;
  std::vector<ThreatDef> threats;
};

class KnowledgeBase {
 public:
  /// Prerequisites without an id get "<code>.p<k>" (1-based).
  /// @throws ValidationError on duplicates and dangling references.
  explicit KnowledgeBase(KbData data);

  const KbData& data() const { return data_; }

  const SecurityCriterion* criterion(std::string_view id) const;
  /// Exact name first, then case-folded; nullptr when absent or ambiguous.
  const SecurityCriterion* criterion_named(std::string_view name) const;
  const SupportingAssetType* asset_type(std::string_view id) const;
  const ThreatDef* threat(std::string_view code) const;
  const Prerequisite* prerequisite(std::string_view id) const;

  /// Types that form the asset-type layer: non-composite, not displayed
  /// under another type. Declaration order.
  std::vector<const SupportingAssetType*> branch_types() const;

  /// Branches a tagged component is listed under (composites expand).
  std::vector<std::string> branches_for(std::string_view type_id) const;

 private:
  KbData data_;
  std::unordered_map<std::string, std::size_t> criteria_;
  std::unordered_map<std::string, std::size_t> types_;
  std::unordered_map<std::string, std::size_t> threats_;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>>
      prerequisites_;
};

/// Every threat targeting the type (or, for a composite, any type it
/// expands to) whose criteria contain the criterion. KB declaration order.
/// @throws ResolutionError on unknown ids.
std::vector<const ThreatDef*> threats_for(const KnowledgeBase& kb,
                                          std::string_view asset_type,
                                          std::string_view criterion);

}  // namespace atgen

#endif  // ATGEN_KNOWLEDGE_BASE_H_
