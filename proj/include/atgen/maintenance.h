/// @file maintenance.h
/// Keeping generated DAGs aligned with an evolving architecture: id-based
/// model diffs and regeneration that relabels, warns and flags.

#ifndef ATGEN_MAINTENANCE_H_
#define ATGEN_MAINTENANCE_H_

#include <string>
#include <tuple>
#include <vector>

#include "atgen/attack_tree.h"

namespace atgen {

struct Rename {
  std::string id;
  std::string old_name;
  std::string new_name;

  auto operator<=>(const Rename&) const = default;
};

struct Retype {
  std::string component;
  std::string old_type;
  std::string new_type;

  auto operator<=>(const Retype&) const = default;
};

/// Every list is sorted; the id sets are pairwise disjoint (a component
/// both renamed and retyped is listed as retyped only). Ports appear as
/// "component/port".
struct ModelDiff {
  std::vector<Rename> renamed;
  std::vector<std::string> deleted;
  std::vector<std::string> added;
  std::vector<Retype> retyped;

  bool empty() const {
    return renamed.empty() && deleted.empty() && added.empty() &&
           retyped.empty();
  }
  bool operator==(const ModelDiff&) const = default;
};

/// Compares two models by artefact id. Retypes are read from the study
/// tags when both studies are given.
ModelDiff diff_models(const ArchitectureModel& old_model,
                      const ArchitectureModel& new_model,
                      const RiskStudy* old_study = nullptr,
                      const RiskStudy* new_study = nullptr);

/// Sorted path lists. The five path lists partition the union of old and
/// new paths; orphaned_annotations are overlay paths with no node.
struct RegenReport {
  std::vector<std::string> unchanged;
  std::vector<std::string> relabeled;
  std::vector<std::string> added;
  std::vector<std::string> removed;
  std::vector<std::string> warned;
  std::vector<std::string> orphaned_annotations;

  bool operator==(const RegenReport&) const = default;
};

struct RegenResult {
  AttackDag dag;
  RegenReport report;
};

/// Fresh generation against the new sources, reconciled with old_dag.
///
/// Old nodes that vanish because an artefact in their provenance no
/// longer resolves are kept as childless warning stubs at their old path,
/// attached to every old parent still present, with a summary of the lost
/// subtree. A stub the overlay marks closed is acknowledged and dropped.
/// Nodes new since old_dag are flagged new_since_last.
///
/// @throws the generation and resolution errors of generate().
RegenResult regenerate(const FearedEvent& event, const Sources& sources,
                       const GenerationConfig& config, const AttackDag& old_dag,
                       const Overlay& overlay);

/// Report for a first generation: every node is added.
RegenReport initial_report(const AttackDag& dag, const Overlay& overlay);

}  // namespace atgen

#endif  // ATGEN_MAINTENANCE_H_
