/// @file generator.cc
/// The six construction steps. Each step extends the frontier left by the
/// previous one; node order in the DAG is creation order, which keeps the
/// serialized output deterministic.

#include "atgen/generator.h"

#include <map>

#include "atgen/entry_points.h"
#include "atgen/error.h"
#include "text_util.h"

namespace atgen {

std::string to_string(const RetentionVerdict& v) {
  switch (v.verdict) {
    case Verdict::kRetainedUnknownSource: return "retained-unknown-source";
    case Verdict::kRetainedWithAccess:
      return v.intent == Intent::kIntentional
                 ? "retained-with-access-intentional"
                 : "retained-with-access-accidental";
    case Verdict::kRetainedMalevolentDoubtfulAccess:
      return "retained-malevolent-doubtful-access";
    case Verdict::kRejected: return "rejected";
  }
  return "rejected";
}

RetentionVerdict decide_retention(bool modeled, Access access,
                                  bool malevolent) {
  if (!modeled) return {Verdict::kRetainedUnknownSource, Intent::kNone};
  if (access == Access::kYes)
    return {Verdict::kRetainedWithAccess,
            malevolent ? Intent::kIntentional : Intent::kAccidental};
  if (malevolent)
    return {Verdict::kRetainedMalevolentDoubtfulAccess, Intent::kNone};
  return {Verdict::kRejected, Intent::kNone};
}

namespace {

/// no < unknown < yes
int rank(Access a) {
  switch (a) {
    case Access::kNo: return 0;
    case Access::kUnknown: return 1;
    case Access::kYes: return 2;
  }
  return 0;
}

Access worst(Access a, Access b) { return rank(a) <= rank(b) ? a : b; }
Access best(Access a, Access b) { return rank(a) >= rank(b) ? a : b; }

}  // namespace

Access required_access(const ThreatDef& threat, const ArchitectureModel& model,
                       const std::string& actor,
                       const std::string& entry_point,
                       const std::optional<Context>& context) {
  Access result = Access::kYes;
  for (const Prerequisite& p : threat.prerequisites) {
    Access a = Access::kYes;
    switch (p.kind) {
      case PrerequisiteKind::kPhysicalAccess:
        a = actor_has_access(model, actor, entry_point, AccessKind::kPhysical,
                             context);
        break;
      case PrerequisiteKind::kLogicalAccess:
        a = actor_has_access(model, actor, entry_point, AccessKind::kLogical,
                             context);
        break;
      case PrerequisiteKind::kAnyAccess:
        a = best(actor_has_access(model, actor, entry_point,
                                  AccessKind::kPhysical, context),
                 actor_has_access(model, actor, entry_point,
                                  AccessKind::kLogical, context));
        break;
      default:
        continue;
    }
    result = worst(result, a);
  }
  return result;
}

RetentionVerdict retention_verdict(const ThreatSource& source,
                                   const ThreatDef& threat,
                                   const std::string& entry_point,
                                   const std::optional<Context>& context,
                                   const ArchitectureModel& model) {
  const OperationalEntity* actor =
      source.actor ? model.entity(*source.actor) : nullptr;
  if (!actor || !actor->is_actor)
    return decide_retention(false, Access::kUnknown, source.malevolent);
  return decide_retention(
      true, required_access(threat, model, actor->id, entry_point, context),
      source.malevolent);
}

std::optional<Context> node_context(const DagNode& node) {
  const std::string* st = node.ref(Role::kState);
  if (!st) return std::nullopt;
  Context ctx{*st, std::nullopt};
  if (const std::string* md = node.ref(Role::kMode)) ctx.mode = *md;
  return ctx;
}

namespace {

std::vector<Provenance> context_provenance(const std::optional<Context>& ctx) {
  std::vector<Provenance> out;
  if (ctx) {
    out.push_back({Role::kState, ctx->state});
    if (ctx->mode) out.push_back({Role::kMode, *ctx->mode});
  }
  return out;
}

std::vector<Provenance> event_provenance(const FearedEvent& ev) {
  return {{Role::kEvent, ev.id},
          {Role::kCriterion, ev.criterion},
          {Role::kAsset, ev.primary_asset},
          {Role::kEntity, ev.entity}};
}

std::size_t emit(AttackDag& dag, const Sources& sources, std::string path,
                 NodeKind kind, std::vector<Provenance> provenance,
                 StatusSet status = {Status::kGenerated},
                 Gate gate = Gate::kOr) {
  DagNode node;
  node.path = std::move(path);
  node.kind = kind;
  node.gate = gate;
  node.provenance = std::move(provenance);
  node.status = status;
  node.label = synth_label(node, sources);
  return dag.add_node(std::move(node));
}

/// Context nodes with no mode below them: the layer the asset types (or,
/// with that layer off, the entry points) hang from.
std::vector<std::size_t> context_leaves(const AttackDag& dag) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const DagNode& n = dag.node(i);
    if (n.kind != NodeKind::kState && n.kind != NodeKind::kMode) continue;
    bool has_mode = std::any_of(n.children.begin(), n.children.end(),
                                [&](std::size_t c) {
                                  return dag.node(c).kind == NodeKind::kMode;
                                });
    if (!has_mode) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> nodes_of(const AttackDag& dag, NodeKind kind) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dag.size(); ++i)
    if (dag.node(i).kind == kind) out.push_back(i);
  return out;
}

/// Contexts other than the current one in which some external port of the
/// target, of a kind the threat needs, is usable while it is not usable
/// now: the states an attacker would have to have been in.
std::vector<Context> change_contexts(const ArchitectureModel& model,
                                     const ThreatDef& threat,
                                     const std::string& target,
                                     const std::optional<Context>& current) {
  std::vector<AccessKind> kinds;
  for (const Prerequisite& p : threat.prerequisites) {
    if (p.kind == PrerequisiteKind::kPhysicalAccess)
      kinds.push_back(AccessKind::kPhysical);
    else if (p.kind == PrerequisiteKind::kLogicalAccess)
      kinds.push_back(AccessKind::kLogical);
    else if (p.kind == PrerequisiteKind::kAnyAccess)
      kinds.push_back(AccessKind::kBoth);
  }
  if (kinds.empty()) kinds.push_back(AccessKind::kBoth);

  std::vector<PortRef> ports;
  if (const LogicalComponent* c = model.component(target)) {
    for (const Port& p : c->ports)
      if (p.external) ports.push_back({c->id, p.id});
  } else if (const InterfaceDef* i = model.interface(target)) {
    for (const PortRef& r : i->ports)
      if (model.port(r)->external) ports.push_back(r);
  }
  auto opens = [&](const Context& ctx) {
    for (const PortRef& r : ports) {
      AccessKind pk = model.port(r)->access;
      bool kind_ok = std::any_of(kinds.begin(), kinds.end(), [&](AccessKind k) {
        return k == AccessKind::kBoth || pk == AccessKind::kBoth || pk == k;
      });
      if (kind_ok && port_available(model, r, ctx) &&
          !port_available(model, r, current))
        return true;
    }
    return false;
  };

  std::vector<Context> out;
  for (const State& s : model.data().states) {
    std::vector<Context> candidates;
    if (s.modes.empty()) candidates.push_back({s.id, std::nullopt});
    for (const Mode& m : s.modes) candidates.push_back({s.id, m.id});
    for (const Context& c : candidates)
      if (!(current && c == *current) && opens(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

AttackDag step1_root(const FearedEvent& event, const Sources& sources,
                     const GenerationConfig& config) {
  AttackDag dag(event.id, config);
  emit(dag, sources, event.id, NodeKind::kRoot, event_provenance(event));
  return dag;
}

AttackDag step2_states_modes(AttackDag dag, const FearedEvent& event,
                             const Sources& sources) {
  const std::vector<Context> contexts =
      admissible_contexts(sources.model, event.process);
  const std::string root_path = dag.node(0).path;
  if (contexts.empty()) {
    std::size_t any = emit(dag, sources, root_path + "/any-context",
                           NodeKind::kState, event_provenance(event),
                           {Status::kGenerated, Status::kExpertRequired});
    dag.add_edge(0, any);
    return dag;
  }
  std::map<std::string, std::size_t> state_nodes;
  for (const Context& ctx : contexts) {
    auto it = state_nodes.find(ctx.state);
    if (it == state_nodes.end()) {
      auto prov = event_provenance(event);
      prov.push_back({Role::kState, ctx.state});
      std::size_t s = emit(dag, sources, root_path + "/" + ctx.state,
                           NodeKind::kState, std::move(prov));
      dag.add_edge(0, s);
      it = state_nodes.emplace(ctx.state, s).first;
    }
    if (!ctx.mode) continue;
    auto prov = event_provenance(event);
    prov.push_back({Role::kState, ctx.state});
    prov.push_back({Role::kMode, *ctx.mode});
    std::size_t m = emit(dag, sources, dag.node(it->second).path + "/" + *ctx.mode,
                         NodeKind::kMode, std::move(prov));
    dag.add_edge(it->second, m);
  }
  return dag;
}

AttackDag step3_asset_types(AttackDag dag, const Sources& sources,
                            const GenerationConfig& config) {
  if (!config.include_asset_type_layer) return dag;
  for (std::size_t ctx_node : context_leaves(dag)) {
    const auto ctx = node_context(dag.node(ctx_node));
    for (const SupportingAssetType* type : sources.kb.branch_types()) {
      auto prov = std::vector<Provenance>{{Role::kAssetType, type->id}};
      for (auto& p : context_provenance(ctx)) prov.push_back(p);
      std::size_t t = emit(dag, sources, dag.node(ctx_node).path + "/" + type->id,
                           NodeKind::kAssetType, std::move(prov));
      dag.add_edge(ctx_node, t);
    }
  }
  return dag;
}

AttackDag step4_entry_points(AttackDag dag, const FearedEvent& event,
                             const Sources& sources,
                             const GenerationConfig& config) {
  const FunctionalChain* chain = nullptr;
  std::vector<AssetBucket> buckets;
  try {
    chain = &chain_for_process(sources.model, event.process);
    buckets = chain_participants(*chain, sources.study, sources.kb);
  } catch (const UntracedProcessError& e) {
    throw GenerationError("cannot place entry points: process '" +
                          e.process_id() + "' has no functional chain");
  } catch (const UntypedAssetError& e) {
    throw GenerationError("cannot place entry points: untyped chain "
                          "participants: " +
                          detail::join(e.components(), ", "));
  } catch (const ResolutionError& e) {
    throw GenerationError(std::string("cannot place entry points: ") +
                          e.what());
  }
  const auto interfaces =
      network_entry_points(*chain, sources.model, sources.study, sources.kb);

  auto entry_prov = [](Role role, const std::string& id,
                       const std::string& type,
                       const std::optional<Context>& ctx) {
    std::vector<Provenance> prov{{role, id}, {Role::kAssetType, type}};
    for (auto& p : context_provenance(ctx)) prov.push_back(p);
    return prov;
  };
  auto bucket_of = [&](const std::string& type) -> const AssetBucket* {
    for (const AssetBucket& b : buckets)
      if (b.type == type) return &b;
    return nullptr;
  };

  for (std::size_t ctx_node : context_leaves(dag)) {
    const auto ctx = node_context(dag.node(ctx_node));
    const std::string ctx_path = dag.node(ctx_node).path;

    if (!config.include_asset_type_layer) {
      std::vector<std::string> placed;
      for (const AssetBucket& b : buckets) {
        for (const Participant& m : b.members) {
          if (detail::contains(placed, m.component)) continue;
          placed.push_back(m.component);
          std::size_t e = emit(dag, sources, ctx_path + "/" + m.component,
                               NodeKind::kEntryPoint,
                               entry_prov(Role::kComponent, m.component,
                                          m.tag, ctx));
          dag.add_edge(ctx_node, e);
        }
      }
      const SupportingAssetType* net = nullptr;
      for (const SupportingAssetType* t : sources.kb.branch_types())
        if (!net && t->entry_points == EntryPointSource::kInterfaces) net = t;
      if (net) {
        for (const InterfaceDef* iface : interfaces) {
          std::size_t e = emit(dag, sources, ctx_path + "/" + iface->id,
                               NodeKind::kEntryPoint,
                               entry_prov(Role::kInterface, iface->id,
                                          net->id, ctx));
          dag.add_edge(ctx_node, e);
          placed.push_back(iface->id);
        }
      }
      if (placed.empty())
        dag.node(ctx_node).status.set(Status::kExpertRequired);
      continue;
    }

    std::map<std::string, std::size_t> shared;  // composite nodes, DAG mode
    std::map<std::string, int> clones;          // duplication counters
    const std::vector<std::size_t> type_nodes = dag.node(ctx_node).children;
    for (std::size_t type_node : type_nodes) {
      if (dag.node(type_node).kind != NodeKind::kAssetType) continue;
      const std::string type_id = *dag.node(type_node).ref(Role::kAssetType);
      const std::string type_path = dag.node(type_node).path;
      const SupportingAssetType* type = sources.kb.asset_type(type_id);
      bool any = false;

      if (type->entry_points == EntryPointSource::kInterfaces) {
        for (const InterfaceDef* iface : interfaces) {
          std::size_t e = emit(dag, sources, type_path + "/" + iface->id,
                               NodeKind::kEntryPoint,
                               entry_prov(Role::kInterface, iface->id,
                                          type_id, ctx));
          dag.add_edge(type_node, e);
          any = true;
        }
      } else if (const AssetBucket* bucket = bucket_of(type_id)) {
        for (const Participant& m : bucket->members) {
          const bool composite = sources.kb.asset_type(m.tag)->composite;
          std::size_t e;
          if (composite && config.dag_mode) {
            auto it = shared.find(m.component);
            if (it == shared.end()) {
              e = emit(dag, sources, ctx_path + "/" + m.tag + "/" + m.component,
                       NodeKind::kEntryPoint,
                       entry_prov(Role::kComponent, m.component, m.tag, ctx));
              shared.emplace(m.component, e);
            } else {
              e = it->second;
            }
          } else if (composite) {
            int k = ++clones[m.component];
            e = emit(dag, sources,
                     type_path + "/" + m.component + "#" + std::to_string(k),
                     NodeKind::kEntryPoint,
                     entry_prov(Role::kComponent, m.component, m.tag, ctx));
          } else {
            e = emit(dag, sources, type_path + "/" + m.component,
                     NodeKind::kEntryPoint,
                     entry_prov(Role::kComponent, m.component, m.tag, ctx));
          }
          dag.add_edge(type_node, e);
          any = true;
        }
      }
      if (!any) dag.node(type_node).status.set(Status::kExpertRequired);
    }
  }
  return dag;
}

AttackDag step5_threats(AttackDag dag, const FearedEvent& event,
                        const Sources& sources) {
  for (std::size_t entry : nodes_of(dag, NodeKind::kEntryPoint)) {
    const std::string type = *dag.node(entry).ref(Role::kAssetType);
    const auto ctx = node_context(dag.node(entry));
    const auto threats = threats_for(sources.kb, type, event.criterion);
    for (const ThreatDef* t : threats) {
      auto prov = std::vector<Provenance>{{Role::kThreat, t->code}};
      for (auto& p : context_provenance(ctx)) prov.push_back(p);
      std::size_t n = emit(dag, sources, dag.node(entry).path + "/" + t->code,
                           NodeKind::kThreat, std::move(prov));
      dag.add_edge(entry, n);
    }
    if (threats.empty()) dag.node(entry).status.set(Status::kExpertRequired);
  }
  return dag;
}

AttackDag step6_threat_sources(AttackDag dag, const Sources& sources,
                               const GenerationConfig& config) {
  const auto& catalog = sources.study.data().threat_sources;
  std::vector<std::size_t> parent_of(dag.size(), dag.size());
  for (std::size_t i = 0; i < dag.size(); ++i)
    for (std::size_t c : dag.node(i).children) parent_of[c] = i;

  for (std::size_t tn : nodes_of(dag, NodeKind::kThreat)) {
    const DagNode& entry = dag.node(parent_of[tn]);
    const std::string* target = entry.ref(Role::kComponent);
    if (!target) target = entry.ref(Role::kInterface);
    const std::string entry_id = *target;
    const ThreatDef& threat = *sources.kb.threat(*dag.node(tn).ref(Role::kThreat));
    const auto ctx = node_context(dag.node(tn));
    const std::string threat_path = dag.node(tn).path;

    bool retained_any = false;
    for (const ThreatSource& source : catalog) {
      const RetentionVerdict v =
          retention_verdict(source, threat, entry_id, ctx, sources.model);
      if (!v.retained()) continue;
      retained_any = true;

      StatusSet ts_status{Status::kGenerated};
      if (v.intent == Intent::kAccidental) ts_status.set(Status::kDisputable);
      std::vector<Provenance> prov{{Role::kSource, source.id},
                                   {Role::kVerdict, to_string(v)}};
      for (auto& p : context_provenance(ctx)) prov.push_back(p);
      const std::string ts_path = threat_path + "/" + source.id;
      std::size_t ts = emit(dag, sources, ts_path, NodeKind::kThreatSource,
                            std::move(prov), ts_status, Gate::kAnd);
      dag.add_edge(tn, ts);

      for (const Prerequisite& pre : threat.prerequisites) {
        std::vector<Provenance> pp{{Role::kPrerequisite, pre.id}};
        StatusSet st{Status::kGenerated};
        if (pre.kind == PrerequisiteKind::kStateModeChange) {
          st.set(Status::kExpertRequired);
          for (const Context& c :
               change_contexts(sources.model, threat, entry_id, ctx))
            for (auto& p : context_provenance(c)) pp.push_back(p);
        }
        std::size_t leaf = emit(dag, sources, ts_path + "/" + pre.id,
                                NodeKind::kPrecondition, std::move(pp), st);
        dag.add_edge(ts, leaf);
      }
      std::size_t stub = emit(
          dag, sources, ts_path + "/attack", NodeKind::kAttackStub,
          {{Role::kThreat, threat.code},
           {Role::kSource, source.id},
           {Role::kVerdict, to_string(v)}},
          {Status::kGenerated, Status::kExpertRequired});
      dag.add_edge(ts, stub);
      if (config.emit_postconditions) {
        std::size_t post = emit(dag, sources, ts_path + "/post",
                                NodeKind::kPostcondition,
                                {{Role::kSource, source.id}});
        dag.add_edge(ts, post);
      }
    }
    if (!retained_any) dag.node(tn).status.set(Status::kExpertRequired);
  }
  return dag;
}

AttackDag generate(const FearedEvent& event, const Sources& sources,
                   const GenerationConfig& config) {
  AttackDag dag = step1_root(event, sources, config);
  dag = step2_states_modes(std::move(dag), event, sources);
  dag = step3_asset_types(std::move(dag), sources, config);
  dag = step4_entry_points(std::move(dag), event, sources, config);
  dag = step5_threats(std::move(dag), event, sources);
  dag = step6_threat_sources(std::move(dag), sources, config);
  auto diagnostics = validate_dag(dag);
  if (!diagnostics.empty())
    throw GenerationError("generated DAG failed validation at " +
                          diagnostics.front().path + ": " +
                          diagnostics.front().message);
  return dag;
}

}  // namespace atgen
