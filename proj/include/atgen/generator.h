/// @file generator.h
/// Layered construction of an attack DAG for one feared event:
/// root, states and modes, supporting-asset types, attack entry points,
/// knowledge-base threats, and retained threat sources.

#ifndef ATGEN_GENERATOR_H_
#define ATGEN_GENERATOR_H_

#include <optional>
#include <string>

#include "atgen/attack_tree.h"

namespace atgen {

enum class Verdict {
  kRetainedUnknownSource,
  kRetainedWithAccess,
  kRetainedMalevolentDoubtfulAccess,
  kRejected,
};

enum class Intent { kNone, kIntentional, kAccidental };

struct RetentionVerdict {
  Verdict verdict = Verdict::kRejected;
  Intent intent = Intent::kNone;  ///< Set for kRetainedWithAccess only.

  bool retained() const { return verdict != Verdict::kRejected; }
  bool operator==(const RetentionVerdict&) const = default;
};

/// Stable text form, stored in node provenance.
std::string to_string(const RetentionVerdict& v);

/// The four-branch retention rule on already-computed facts:
/// unmodeled sources are kept; modeled ones with full access are kept
/// (intentional if malevolent, accidental otherwise); malevolent ones
/// with doubtful access are kept; the rest are rejected. kUnknown access
/// counts as "no known access".
RetentionVerdict decide_retention(bool modeled, Access access,
                                  bool malevolent);

/// Combined access of a modeled actor over every access prerequisite of
/// the threat. kYes when the threat lists none.
Access required_access(const ThreatDef& threat, const ArchitectureModel& model,
                       const std::string& actor,
                       const std::string& entry_point,
                       const std::optional<Context>& context);

/// Verdict for one (source, threat, entry point, context) combination.
/// entry_point is a component or interface id.
RetentionVerdict retention_verdict(const ThreatSource& source,
                                   const ThreatDef& threat,
                                   const std::string& entry_point,
                                   const std::optional<Context>& context,
                                   const ArchitectureModel& model);

AttackDag step1_root(const FearedEvent& event, const Sources& sources,
                     const GenerationConfig& config);
AttackDag step2_states_modes(AttackDag dag, const FearedEvent& event,
                             const Sources& sources);
AttackDag step3_asset_types(AttackDag dag, const Sources& sources,
                            const GenerationConfig& config);
/// @throws GenerationError for an untraced process or untyped participants.
AttackDag step4_entry_points(AttackDag dag, const FearedEvent& event,
                             const Sources& sources,
                             const GenerationConfig& config);
AttackDag step5_threats(AttackDag dag, const FearedEvent& event,
                        const Sources& sources);
AttackDag step6_threat_sources(AttackDag dag, const Sources& sources,
                               const GenerationConfig& config);

/// All six steps in order. The result passes validate_dag.
AttackDag generate(const FearedEvent& event, const Sources& sources,
                   const GenerationConfig& config);

/// Context a node belongs to, read from its provenance; nullopt for the
/// synthetic "any state / mode" context.
std::optional<Context> node_context(const DagNode& node);

}  // namespace atgen

#endif  // ATGEN_GENERATOR_H_
