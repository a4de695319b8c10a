/// @file arch_model.cc
/// Architecture model validation and queries.

#include "atgen/arch_model.h"

#include <deque>
#include <set>
#include <unordered_set>

#include "atgen/error.h"
#include "text_util.h"

namespace atgen {

using detail::contains;

const char* to_string(AccessKind kind) {
  switch (kind) {
    case AccessKind::kPhysical: return "physical";
    case AccessKind::kLogical: return "logical";
    case AccessKind::kBoth: return "both";
  }
  return "?";
}

const char* to_string(TraceKind kind) {
  return kind == TraceKind::kProcessChain ? "process-chain"
                                          : "entity-component";
}

const char* to_string(Access access) {
  switch (access) {
    case Access::kYes: return "yes";
    case Access::kNo: return "no";
    case Access::kUnknown: return "unknown";
  }
  return "?";
}

UntypedAssetError::UntypedAssetError(std::vector<std::string> components)
    : ResolutionError("untyped supporting asset: " +
                      detail::join(components, ", ")),
      components_(std::move(components)) {}

ValidationError::ValidationError(const std::string& what,
                                 std::vector<std::string> issues)
    : Error(what + ": " + detail::join(issues, "; ")),
      issues_(std::move(issues)) {}

ArchitectureModel::ArchitectureModel(ModelData data) : data_(std::move(data)) {
  std::vector<std::string> issues;
  Index(&issues);
  Validate(&issues);
  if (!issues.empty())
    throw ValidationError("invalid architecture model", std::move(issues));
}

void ArchitectureModel::Index(std::vector<std::string>* issues) {
  auto add = [&](const std::string& id, Kind kind, std::size_t i,
                 std::size_t sub = 0) {
    if (!detail::valid_id(id)) {
      issues->push_back("invalid artefact id '" + id + "'");
      return;
    }
    if (!index_.emplace(id, Slot{kind, i, sub}).second)
      issues->push_back("duplicate artefact id '" + id + "'");
  };
  for (std::size_t i = 0; i < data_.entities.size(); ++i)
    add(data_.entities[i].id, Kind::kEntity, i);
  for (std::size_t i = 0; i < data_.activities.size(); ++i)
    add(data_.activities[i].id, Kind::kActivity, i);
  for (std::size_t i = 0; i < data_.processes.size(); ++i)
    add(data_.processes[i].id, Kind::kProcess, i);
  for (std::size_t i = 0; i < data_.states.size(); ++i) {
    add(data_.states[i].id, Kind::kState, i);
    for (std::size_t j = 0; j < data_.states[i].modes.size(); ++j)
      add(data_.states[i].modes[j].id, Kind::kMode, i, j);
  }
  for (std::size_t i = 0; i < data_.components.size(); ++i) {
    const LogicalComponent& c = data_.components[i];
    add(c.id, Kind::kComponent, i);
    for (std::size_t j = 0; j < c.ports.size(); ++j) {
      if (!detail::valid_id(c.ports[j].id))
        issues->push_back("invalid port id '" + c.ports[j].id + "' on " + c.id);
      if (!port_index_.emplace(c.id + "/" + c.ports[j].id, j).second)
        issues->push_back("duplicate port '" + c.ports[j].id + "' on " + c.id);
    }
    if (c.parent) children_[*c.parent].push_back(c.id);
  }
  for (std::size_t i = 0; i < data_.interfaces.size(); ++i)
    add(data_.interfaces[i].id, Kind::kInterface, i);
  for (std::size_t i = 0; i < data_.chains.size(); ++i)
    add(data_.chains[i].id, Kind::kChain, i);
}

void ArchitectureModel::Validate(std::vector<std::string>* issues) const {
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) issues->push_back(msg);
  };

  for (const OperationalEntity& e : data_.entities)
    need(!e.name.empty(), "entity " + e.id + " has an empty name");

  for (const OperationalActivity& a : data_.activities)
    need(entity(a.owner) != nullptr,
         "activity " + a.id + " owner '" + a.owner + "' does not resolve");

  for (const OperationalProcess& p : data_.processes) {
    need(!p.activities.empty(), "process " + p.id + " has no activities");
    for (const std::string& a : p.activities)
      need(activity(a) != nullptr,
           "process " + p.id + " activity '" + a + "' does not resolve");
    need(contains(p.activities, p.first_activity),
         "process " + p.id + " first activity is not in its list");
    need(contains(p.activities, p.last_activity),
         "process " + p.id + " last activity is not in its list");
  }

  std::set<std::tuple<std::string, std::string, std::string>> seen_entries;
  std::set<std::pair<std::string, std::string>> whole_state, per_mode;
  for (const MatrixEntry& m : data_.matrix) {
    const State* s = state(m.state);
    need(s != nullptr, "matrix state '" + m.state + "' does not resolve");
    need(process(m.process) != nullptr,
         "matrix process '" + m.process + "' does not resolve");
    if (m.mode) {
      bool in_state = s && std::any_of(s->modes.begin(), s->modes.end(),
                                       [&](const Mode& md) {
                                         return md.id == *m.mode;
                                       });
      need(in_state, "matrix mode '" + *m.mode + "' is not a mode of state '" +
                         m.state + "'");
      per_mode.emplace(m.process, m.state);
    } else {
      whole_state.emplace(m.process, m.state);
    }
    need(seen_entries.emplace(m.state, m.mode.value_or(""), m.process).second,
         "duplicate matrix entry for process " + m.process + " in " + m.state);
  }
  for (const auto& key : whole_state)
    need(!per_mode.count(key), "process " + key.first +
                                   " mixes whole-state and per-mode entries "
                                   "for state " + key.second);

  for (const LogicalComponent& c : data_.components) {
    if (c.parent)
      need(component(*c.parent) != nullptr,
           "component " + c.id + " parent '" + *c.parent + "' does not resolve");
    // Containment must be a forest: walk up and look for a repeat.
    std::unordered_set<std::string> path{c.id};
    const LogicalComponent* cur = &c;
    while (cur->parent) {
      const LogicalComponent* up = component(*cur->parent);
      if (!up) break;
      if (!path.insert(up->id).second) {
        issues->push_back("component containment cycle through " + c.id);
        break;
      }
      cur = up;
    }
  }

  for (const InterfaceDef& i : data_.interfaces) {
    need(!i.exposed_by.empty(),
         "interface " + i.id + " has no exposing component");
    for (const std::string& c : i.exposed_by)
      need(component(c) != nullptr,
           "interface " + i.id + " component '" + c + "' does not resolve");
    for (const PortRef& p : i.ports)
      need(port(p) != nullptr,
           "interface " + i.id + " port '" + p.str() + "' does not resolve");
  }

  for (const FunctionalChain& ch : data_.chains) {
    need(!ch.components.empty(), "chain " + ch.id + " has no components");
    std::unordered_set<std::string> uniq;
    for (const std::string& c : ch.components) {
      need(component(c) != nullptr,
           "chain " + ch.id + " component '" + c + "' does not resolve");
      need(uniq.insert(c).second,
           "chain " + ch.id + " lists component '" + c + "' twice");
    }
    for (const std::string& i : ch.interfaces)
      need(interface(i) != nullptr,
           "chain " + ch.id + " interface '" + i + "' does not resolve");
  }

  std::unordered_set<std::string> traced_processes;
  for (const TraceLink& t : data_.traces) {
    if (t.kind == TraceKind::kProcessChain) {
      need(process(t.from) != nullptr,
           "trace from '" + t.from + "' is not a process");
      need(chain(t.to) != nullptr, "trace to '" + t.to + "' is not a chain");
      need(traced_processes.insert(t.from).second,
           "process " + t.from + " has more than one chain trace");
    } else {
      need(entity(t.from) != nullptr,
           "trace from '" + t.from + "' is not an entity");
      need(component(t.to) != nullptr,
           "trace to '" + t.to + "' is not a component");
    }
  }

  for (const PortConnection& pc : data_.connections) {
    need(port(pc.a) != nullptr, "connection port '" + pc.a.str() +
                                    "' does not resolve");
    need(port(pc.b) != nullptr, "connection port '" + pc.b.str() +
                                    "' does not resolve");
  }

  for (const PortAvailability& av : data_.availability) {
    need(port(av.port) != nullptr,
         "availability port '" + av.port.str() + "' does not resolve");
    const State* s = state(av.state);
    need(s != nullptr, "availability state '" + av.state + "' does not resolve");
    if (av.mode && s)
      need(std::any_of(s->modes.begin(), s->modes.end(),
                       [&](const Mode& m) { return m.id == *av.mode; }),
           "availability mode '" + *av.mode + "' is not a mode of '" +
               av.state + "'");
  }
}

const ArchitectureModel::Slot* ArchitectureModel::find(std::string_view id,
                                                        Kind kind) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end() || it->second.kind != kind) return nullptr;
  return &it->second;
}

const OperationalEntity* ArchitectureModel::entity(std::string_view id) const {
  const Slot* s = find(id, Kind::kEntity);
  return s ? &data_.entities[s->index] : nullptr;
}

const OperationalActivity* ArchitectureModel::activity(
    std::string_view id) const {
  const Slot* s = find(id, Kind::kActivity);
  return s ? &data_.activities[s->index] : nullptr;
}

const OperationalProcess* ArchitectureModel::process(
    std::string_view id) const {
  const Slot* s = find(id, Kind::kProcess);
  return s ? &data_.processes[s->index] : nullptr;
}

const State* ArchitectureModel::state(std::string_view id) const {
  const Slot* s = find(id, Kind::kState);
  return s ? &data_.states[s->index] : nullptr;
}

const Mode* ArchitectureModel::mode(std::string_view id) const {
  const Slot* s = find(id, Kind::kMode);
  return s ? &data_.states[s->index].modes[s->sub] : nullptr;
}

const LogicalComponent* ArchitectureModel::component(
    std::string_view id) const {
  const Slot* s = find(id, Kind::kComponent);
  return s ? &data_.components[s->index] : nullptr;
}

const Port* ArchitectureModel::port(const PortRef& ref) const {
  const LogicalComponent* c = component(ref.component);
  if (!c) return nullptr;
  auto it = port_index_.find(ref.str());
  return it == port_index_.end() ? nullptr : &c->ports[it->second];
}

const InterfaceDef* ArchitectureModel::interface(std::string_view id) const {
  const Slot* s = find(id, Kind::kInterface);
  return s ? &data_.interfaces[s->index] : nullptr;
}

const FunctionalChain* ArchitectureModel::chain(std::string_view id) const {
  const Slot* s = find(id, Kind::kChain);
  return s ? &data_.chains[s->index] : nullptr;
}

const std::string* ArchitectureModel::name_of(std::string_view id) const {
  auto slash = id.find('/');
  if (slash != std::string_view::npos) {
    const Port* p = port(PortRef{std::string(id.substr(0, slash)),
                                 std::string(id.substr(slash + 1))});
    return p ? &p->name : nullptr;
  }
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return nullptr;
  const Slot& s = it->second;
  switch (s.kind) {
    case Kind::kEntity: return &data_.entities[s.index].name;
    case Kind::kActivity: return &data_.activities[s.index].name;
    case Kind::kProcess: return &data_.processes[s.index].name;
    case Kind::kState: return &data_.states[s.index].name;
    case Kind::kMode: return &data_.states[s.index].modes[s.sub].name;
    case Kind::kComponent: return &data_.components[s.index].name;
    case Kind::kInterface: return &data_.interfaces[s.index].name;
    case Kind::kChain: return &data_.chains[s.index].name;
  }
  return nullptr;
}

std::vector<const OperationalEntity*> ArchitectureModel::entities_named(
    std::string_view name) const {
  std::vector<const OperationalEntity*> exact, folded;
  for (const OperationalEntity& e : data_.entities) {
    if (e.name == name) exact.push_back(&e);
    else if (detail::iequals(e.name, name)) folded.push_back(&e);
  }
  return exact.empty() ? folded : exact;
}

bool ArchitectureModel::is_container(std::string_view component_id) const {
  return children_.count(std::string(component_id)) > 0;
}

std::vector<std::string> ArchitectureModel::children_of(
    std::string_view component_id) const {
  auto it = children_.find(std::string(component_id));
  return it == children_.end() ? std::vector<std::string>{} : it->second;
}

bool ArchitectureModel::is_external(const InterfaceDef& iface) const {
  return std::any_of(iface.ports.begin(), iface.ports.end(),
                     [&](const PortRef& ref) {
                       const Port* p = port(ref);
                       return p && p->external;
                     });
}

std::vector<Context> admissible_contexts(const ArchitectureModel& model,
                                         std::string_view process_id) {
  if (!model.process(process_id))
    throw ResolutionError("unknown process: " + std::string(process_id));
  auto has = [&](const std::string& state,
                 const std::optional<std::string>& mode) {
    for (const MatrixEntry& m : model.data().matrix)
      if (m.process == process_id && m.state == state && m.mode == mode)
        return true;
    return false;
  };
  std::vector<Context> out;
  for (const State& s : model.data().states) {
    if (has(s.id, std::nullopt)) out.push_back({s.id, std::nullopt});
    for (const Mode& m : s.modes)
      if (has(s.id, m.id)) out.push_back({s.id, m.id});
  }
  return out;
}

const FunctionalChain& chain_for_process(const ArchitectureModel& model,
                                         std::string_view process_id) {
  if (!model.process(process_id))
    throw ResolutionError("unknown process: " + std::string(process_id));
  for (const TraceLink& t : model.data().traces)
    if (t.kind == TraceKind::kProcessChain && t.from == process_id)
      return *model.chain(t.to);
  throw UntracedProcessError(std::string(process_id));
}

bool port_available(const ArchitectureModel& model, const PortRef& port,
                    const std::optional<Context>& context) {
  bool listed = false;
  for (const PortAvailability& av : model.data().availability) {
    if (av.port != port) continue;
    listed = true;
    if (!context) return true;
    if (av.state == context->state &&
        (!av.mode || !context->mode || *av.mode == *context->mode))
      return true;
  }
  return !listed;
}

namespace {

bool kind_matches(AccessKind port_kind, AccessKind wanted) {
  return wanted == AccessKind::kBoth || port_kind == AccessKind::kBoth ||
         port_kind == wanted;
}

}  // namespace

Access actor_has_access(const ArchitectureModel& model,
                        std::string_view actor_id, std::string_view target_id,
                        AccessKind kind,
                        const std::optional<Context>& context) {
  const OperationalEntity* actor = model.entity(actor_id);
  if (!actor || !actor->is_actor)
    throw ResolutionError("not a modeled actor: " + std::string(actor_id));
  const LogicalComponent* target_cmp = model.component(target_id);
  const InterfaceDef* target_if = model.interface(target_id);
  if (!target_cmp && !target_if)
    throw ResolutionError("unknown access target: " + std::string(target_id));

  std::vector<std::string> own;
  for (const TraceLink& t : model.data().traces)
    if (t.kind == TraceKind::kEntityComponent && t.from == actor_id)
      own.push_back(t.to);

  // Components standing for the target, and the ports that reach it.
  std::vector<std::string> target_cmps;
  std::set<PortRef> target_ports;
  if (target_cmp) {
    target_cmps.push_back(target_cmp->id);
    for (const Port& p : target_cmp->ports)
      target_ports.insert({target_cmp->id, p.id});
  } else {
    target_cmps = target_if->exposed_by;
    target_ports.insert(target_if->ports.begin(), target_if->ports.end());
    if (target_ports.empty())
      for (const std::string& c : target_if->exposed_by)
        for (const Port& p : model.component(c)->ports)
          target_ports.insert({c, p.id});
  }

  auto usable = [&](const PortRef& ref) {
    const Port* p = model.port(ref);
    return p && kind_matches(p->access, kind) &&
           port_available(model, ref, context);
  };

  bool reachable = std::any_of(own.begin(), own.end(), [&](const auto& c) {
    return contains(target_cmps, c);
  });

  if (!reachable) {
    std::set<PortRef> seen;
    std::deque<PortRef> queue;
    auto push = [&](const PortRef& ref) {
      if (usable(ref) && seen.insert(ref).second) queue.push_back(ref);
    };
    auto push_all = [&](const std::string& cmp, bool external_only) {
      for (const Port& p : model.component(cmp)->ports)
        if (!external_only || p.external) push({cmp, p.id});
    };
    for (const std::string& c : own) push_all(c, false);

    while (!queue.empty() && !reachable) {
      PortRef cur = queue.front();
      queue.pop_front();
      if (target_ports.count(cur)) {
        reachable = true;
        break;
      }
      for (const PortConnection& pc : model.data().connections) {
        if (pc.a == cur) push(pc.b);
        if (pc.b == cur) push(pc.a);
      }
      // Containers are spaces: once inside, their ports and the external
      // ports of what they contain are within reach.
      if (model.is_container(cur.component)) {
        push_all(cur.component, false);
        for (const std::string& child : model.children_of(cur.component))
          push_all(child, true);
      }
      const LogicalComponent* c = model.component(cur.component);
      if (c->parent && model.port(cur)->external) push_all(*c->parent, false);
    }
  }
  if (!reachable) return Access::kNo;

  for (const FunctionalChain& ch : model.data().chains) {
    bool actor_in = std::any_of(own.begin(), own.end(), [&](const auto& c) {
      return contains(ch.components, c);
    });
    if (!actor_in) continue;
    bool target_in =
        std::any_of(target_cmps.begin(), target_cmps.end(),
                    [&](const auto& c) { return contains(ch.components, c); }) ||
        (target_if && contains(ch.interfaces, target_if->id));
    if (target_in) return Access::kYes;
  }
  return Access::kUnknown;
}

}  // namespace atgen
