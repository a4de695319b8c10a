/// @file entry_points.h
/// Attack entry points of a functional chain: tagged participants grouped
/// by supporting-asset branch, and external interfaces for network-like
/// branches.

#ifndef ATGEN_ENTRY_POINTS_H_
#define ATGEN_ENTRY_POINTS_H_

#include <string>
#include <vector>

#include "atgen/arch_model.h"
#include "atgen/knowledge_base.h"
#include "atgen/risk_study.h"

namespace atgen {

struct Participant {
  std::string component;
  std::string tag;  ///< Type the study assigns (may be composite).
};

struct AssetBucket {
  std::string type;  ///< Branch type id.
  std::vector<Participant> members;
};

/// One bucket per component-based branch type (KB order, possibly empty);
/// members in chain order. Composite-tagged components land in every
/// branch they expand to.
/// @throws UntypedAssetError naming every untagged participant.
/// @throws ResolutionError if a tag names an unknown type.
std::vector<AssetBucket> chain_participants(const FunctionalChain& chain,
                                            const RiskStudy& study,
                                            const KnowledgeBase& kb);

/// External interfaces exposed by chain participants tagged with a
/// composite type or an interface-based type. Each listed once, in model
/// declaration order.
std::vector<const InterfaceDef*> network_entry_points(
    const FunctionalChain& chain, const ArchitectureModel& model,
    const RiskStudy& study, const KnowledgeBase& kb);

}  // namespace atgen

#endif  // ATGEN_ENTRY_POINTS_H_
