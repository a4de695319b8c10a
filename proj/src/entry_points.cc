/// @file entry_points.cc

#include "atgen/entry_points.h"

#include <set>

#include "atgen/error.h"
#include "text_util.h"

namespace atgen {

std::vector<AssetBucket> chain_participants(const FunctionalChain& chain,
                                            const RiskStudy& study,
                                            const KnowledgeBase& kb) {
  std::vector<std::string> untagged;
  for (const std::string& c : chain.components) {
    const std::string* tag = study.tag_of(c);
    if (!tag) {
      untagged.push_back(c);
    } else if (!kb.asset_type(*tag)) {
      throw ResolutionError("component " + c + " tagged with unknown type '" +
                            *tag + "'");
    }
  }
  if (!untagged.empty()) throw UntypedAssetError(std::move(untagged));

  std::vector<AssetBucket> buckets;
  for (const SupportingAssetType* branch : kb.branch_types()) {
    if (branch->entry_points != EntryPointSource::kComponents) continue;
    AssetBucket bucket{branch->id, {}};
    for (const std::string& c : chain.components) {
      const std::string& tag = *study.tag_of(c);
      if (detail::contains(kb.branches_for(tag), branch->id))
        bucket.members.push_back({c, tag});
    }
    buckets.push_back(std::move(bucket));
  }
  return buckets;
}

std::vector<const InterfaceDef*> network_entry_points(
    const FunctionalChain& chain, const ArchitectureModel& model,
    const RiskStudy& study, const KnowledgeBase& kb) {
  std::set<std::string> relevant;
  for (const std::string& c : chain.components) {
    const std::string* tag = study.tag_of(c);
    if (!tag) continue;
    const SupportingAssetType* type = kb.asset_type(*tag);
    if (!type) continue;
    bool network_like = type->composite;
    for (const std::string& b : kb.branches_for(type->id)) {
      const SupportingAssetType* branch = kb.asset_type(b);
      if (branch && branch->entry_points == EntryPointSource::kInterfaces)
        network_like = true;
    }
    if (network_like) relevant.insert(c);
  }
  std::vector<const InterfaceDef*> out;
  for (const InterfaceDef& iface : model.data().interfaces) {
    if (!model.is_external(iface)) continue;
    bool exposed = std::any_of(
        iface.exposed_by.begin(), iface.exposed_by.end(),
        [&](const std::string& c) { return relevant.count(c) > 0; });
    if (exposed) out.push_back(&iface);
  }
  return out;
}

}  // namespace atgen
