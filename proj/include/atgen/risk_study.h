/// @file risk_study.h
/// Risk-assessment study inputs: feared events written in a strict
/// grammar, severity scale, supporting-asset tags and threat sources.

#ifndef ATGEN_RISK_STUDY_H_
#define ATGEN_RISK_STUDY_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "atgen/arch_model.h"
#include "atgen/knowledge_base.h"

namespace atgen {

/// Something of value, mapped onto an operational process.
struct PrimaryAsset {
  std::string id;
  std::string name;
  std::string process;
};

/// Supporting-asset type of a logical component.
struct AssetTag {
  std::string component;
  std::string type;
};

struct ThreatSource {
  std::string id;
  std::string name;
  bool malevolent = false;
  std::optional<std::string> actor;  ///< Modeled OperationalEntity id.
};

/// Feared event as written in the study file.
struct FearedEventDecl {
  std::string id;
  std::string text;
  std::string severity;
};

struct StudyData {
  std::vector<std::string> severity_scale;  ///< Ascending.
  std::vector<PrimaryAsset> primary_assets;
  std::vector<AssetTag> tags;
  std::vector<ThreatSource> threat_sources;
  std::vector<FearedEventDecl> feared_events;
};

/// Fully resolved feared event.
struct FearedEvent {
  std::string id;
  std::string criterion;      ///< SecurityCriterion id.
  std::string primary_asset;  ///< PrimaryAsset id.
  std::string process;        ///< OperationalProcess id.
  std::string entity;         ///< OperationalEntity id.
  std::string severity;

  bool operator==(const FearedEvent&) const = default;
};

class RiskStudy {
 public:
  /// @throws ValidationError on duplicate ids or a component tagged twice.
  explicit RiskStudy(StudyData data);

  const StudyData& data() const { return data_; }

  const PrimaryAsset* primary_asset(std::string_view id) const;
  std::vector<const PrimaryAsset*> primary_assets_named(
      std::string_view name) const;
  const std::string* tag_of(std::string_view component) const;
  const ThreatSource* threat_source(std::string_view id) const;
  const FearedEventDecl* feared_event(std::string_view id) const;

  std::optional<std::size_t> severity_rank(std::string_view label) const;
  /// Strict order by scale position; unknown labels never compare less.
  bool severity_less(std::string_view a, std::string_view b) const;

 private:
  StudyData data_;
  std::unordered_map<std::string, std::size_t> assets_;
  std::unordered_map<std::string, std::string> tags_;
  std::unordered_map<std::string, std::size_t> sources_;
  std::unordered_map<std::string, std::size_t> events_;
};

/// Parses "Loss of <criterion> of the <primary asset> on the <entity>".
/// Keywords are case-insensitive; names match exactly, then case-folded.
/// A trailing period is accepted. The result has no id or severity.
/// @throws ParseError on grammar mismatch, ResolutionError on unknown or
///         ambiguous names.
FearedEvent parse_feared_event(std::string_view text,
                               const ArchitectureModel& model,
                               const RiskStudy& study,
                               const KnowledgeBase& kb);

/// Canonical sentence for a resolved event.
std::string format_feared_event(const FearedEvent& event,
                                const ArchitectureModel& model,
                                const RiskStudy& study,
                                const KnowledgeBase& kb);

/// Parses the declared sentence and attaches id and severity.
/// @throws ResolutionError for unknown ids, plus parse errors.
FearedEvent resolve_feared_event(std::string_view id,
                                 const ArchitectureModel& model,
                                 const RiskStudy& study,
                                 const KnowledgeBase& kb);

struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
};

/// Cross-reference check of the study against model and KB. Tags naming
/// components absent from the model are dangling-reference warnings (stale after an
/// architecture change); everything else is an error.
std::vector<Diagnostic> validate_study(const RiskStudy& study,
                                       const ArchitectureModel& model,
                                       const KnowledgeBase& kb);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace atgen

#endif  // ATGEN_RISK_STUDY_H_
