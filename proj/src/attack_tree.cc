/// @file attack_tree.cc
/// DAG container, label templates, structural validation and overlay merge.

#include "atgen/attack_tree.h"

#include <algorithm>
#include <functional>

#include "text_util.h"

namespace atgen {

namespace {

template <class E, std::size_t N>
const char* name_in(const std::pair<E, const char*> (&table)[N], E value) {
  for (const auto& [v, name] : table)
    if (v == value) return name;
  return "?";
}

template <class E, std::size_t N>
std::optional<E> value_in(const std::pair<E, const char*> (&table)[N],
                          std::string_view s) {
  for (const auto& [v, name] : table)
    if (s == name) return v;
  return std::nullopt;
}

constexpr std::pair<NodeKind, const char*> kKinds[] = {
    {NodeKind::kRoot, "Root"},
    {NodeKind::kState, "StateNode"},
    {NodeKind::kMode, "ModeNode"},
    {NodeKind::kAssetType, "AssetTypeNode"},
    {NodeKind::kEntryPoint, "EntryPointNode"},
    {NodeKind::kThreat, "ThreatNode"},
    {NodeKind::kThreatSource, "ThreatSourceNode"},
    {NodeKind::kPrecondition, "PreconditionLeaf"},
    {NodeKind::kAttackStub, "AttackStub"},
    {NodeKind::kPostcondition, "PostconditionLeaf"},
    {NodeKind::kExpertLeaf, "ExpertLeaf"},
};

constexpr std::pair<Gate, const char*> kGates[] = {
    {Gate::kOr, "OR"},
    {Gate::kAnd, "AND"},
};

constexpr std::pair<Status, const char*> kStatuses[] = {
    {Status::kGenerated, "generated"},
    {Status::kWarningOrphaned, "warning_orphaned"},
    {Status::kNewSinceLast, "new_since_last"},
    {Status::kExpertRequired, "expert_required"},
    {Status::kDisputable, "disputable"},
};

constexpr std::pair<Role, const char*> kRoles[] = {
    {Role::kEvent, "event"},
    {Role::kCriterion, "criterion"},
    {Role::kAsset, "asset"},
    {Role::kEntity, "entity"},
    {Role::kState, "state"},
    {Role::kMode, "mode"},
    {Role::kAssetType, "type"},
    {Role::kComponent, "component"},
    {Role::kInterface, "interface"},
    {Role::kThreat, "threat"},
    {Role::kPrerequisite, "prerequisite"},
    {Role::kSource, "source"},
    {Role::kVerdict, "verdict"},
};

constexpr std::pair<Decision, const char*> kDecisions[] = {
    {Decision::kOpen, "open"},
    {Decision::kClosed, "closed"},
    {Decision::kDeveloped, "developed"},
};

constexpr std::pair<DagDiagnostic::Kind, const char*> kDiagKinds[] = {
    {DagDiagnostic::Kind::kLayerOrder, "layer-order"},
    {DagDiagnostic::Kind::kCycle, "cycle"},
    {DagDiagnostic::Kind::kMisplacedAnd, "misplaced-and"},
    {DagDiagnostic::Kind::kDuplicatePath, "duplicate-path"},
    {DagDiagnostic::Kind::kSharedMismatch, "shared-mismatch"},
    {DagDiagnostic::Kind::kDanglingEdge, "dangling-edge"},
};

}  // namespace

const char* to_string(NodeKind kind) { return name_in(kKinds, kind); }
const char* to_string(Gate gate) { return name_in(kGates, gate); }
const char* to_string(Status status) { return name_in(kStatuses, status); }
const char* to_string(Role role) { return name_in(kRoles, role); }
const char* to_string(Decision d) { return name_in(kDecisions, d); }
const char* to_string(DagDiagnostic::Kind kind) {
  return name_in(kDiagKinds, kind);
}

std::optional<NodeKind> node_kind_from(std::string_view s) {
  return value_in(kKinds, s);
}
std::optional<Gate> gate_from(std::string_view s) { return value_in(kGates, s); }
std::optional<Status> status_from(std::string_view s) {
  return value_in(kStatuses, s);
}
std::optional<Role> role_from(std::string_view s) { return value_in(kRoles, s); }
std::optional<Decision> decision_from(std::string_view s) {
  return value_in(kDecisions, s);
}

std::vector<std::string> StatusSet::names() const {
  std::vector<std::string> out;
  for (const auto& [flag, name] : kStatuses)
    if (has(flag)) out.emplace_back(name);
  return out;
}

std::string Provenance::str() const {
  return std::string(to_string(role)) + ":" + id;
}

std::optional<Provenance> Provenance::parse(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto role = role_from(s.substr(0, colon));
  if (!role || colon + 1 == s.size()) return std::nullopt;
  return Provenance{*role, std::string(s.substr(colon + 1))};
}

const std::string* DagNode::ref(Role role) const {
  for (const Provenance& p : provenance)
    if (p.role == role) return &p.id;
  return nullptr;
}

std::size_t AttackDag::add_node(DagNode node) {
  std::size_t i = nodes_.size();
  index_.emplace(node.path, i);
  nodes_.push_back(std::move(node));
  return i;
}

void AttackDag::add_edge(std::size_t parent, std::size_t child) {
  nodes_[parent].children.push_back(child);
}

std::optional<std::size_t> AttackDag::find(std::string_view path) const {
  auto it = index_.find(std::string(path));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> AttackDag::parents(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < nodes_.size(); ++p)
    if (detail::contains(nodes_[p].children, i)) out.push_back(p);
  return out;
}

std::size_t AttackDag::edge_count() const {
  std::size_t n = 0;
  for (const DagNode& node : nodes_) n += node.children.size();
  return n;
}

bool resolves(const Provenance& p, const Sources& s) {
  switch (p.role) {
    case Role::kEvent: return s.study.feared_event(p.id) != nullptr;
    case Role::kCriterion: return s.kb.criterion(p.id) != nullptr;
    case Role::kAsset: return s.study.primary_asset(p.id) != nullptr;
    case Role::kEntity: return s.model.entity(p.id) != nullptr;
    case Role::kState: return s.model.state(p.id) != nullptr;
    case Role::kMode: return s.model.mode(p.id) != nullptr;
    case Role::kAssetType: return s.kb.asset_type(p.id) != nullptr;
    case Role::kComponent: return s.model.component(p.id) != nullptr;
    case Role::kInterface: return s.model.interface(p.id) != nullptr;
    case Role::kThreat: return s.kb.threat(p.id) != nullptr;
    case Role::kPrerequisite: return s.kb.prerequisite(p.id) != nullptr;
    case Role::kSource: return s.study.threat_source(p.id) != nullptr;
    case Role::kVerdict: return true;
  }
  return false;
}

namespace {

const char* verdict_phrase(std::string_view verdict) {
  if (verdict == "retained-unknown-source") return "unknown threat source";
  if (verdict == "retained-with-access-intentional") return "intentional";
  if (verdict == "retained-with-access-accidental") return "accidental";
  if (verdict == "retained-malevolent-doubtful-access")
    return "intentional, access doubtful";
  return "rejected";
}

/// Name lookups for one node; all provenance is known to resolve.
struct Namer {
  const DagNode& node;
  const Sources& src;

  std::string id(Role r) const {
    const std::string* v = node.ref(r);
    return v ? *v : std::string();
  }
  std::string criterion() const { return src.kb.criterion(id(Role::kCriterion))->name; }
  std::string asset() const { return src.study.primary_asset(id(Role::kAsset))->name; }
  std::string entity() const { return src.model.entity(id(Role::kEntity))->name; }
  std::string type() const { return src.kb.asset_type(id(Role::kAssetType))->name; }
  std::string source() const { return src.study.threat_source(id(Role::kSource))->name; }
  const ThreatDef& threat() const { return *src.kb.threat(id(Role::kThreat)); }

  std::string event_sentence() const {
    return "Loss of " + criterion() + " of the " + asset() + " on the " +
           entity();
  }

  std::string context() const {
    const std::string* st = node.ref(Role::kState);
    if (!st) return "[any state / mode]";
    std::string out = "[" + src.model.state(*st)->name;
    if (const std::string* md = node.ref(Role::kMode))
      out += " / " + src.model.mode(*md)->name;
    return out + "]";
  }

  /// "state X, mode Y or state Z" from state/mode provenance pairs.
  std::string state_list() const {
    std::vector<std::string> items;
    for (const Provenance& p : node.provenance) {
      if (p.role == Role::kState)
        items.push_back("state " + src.model.state(p.id)->name);
      else if (p.role == Role::kMode && !items.empty())
        items.back() += ", mode " + src.model.mode(p.id)->name;
    }
    return detail::join(items, " or ");
  }
};

}  // namespace

std::string synth_label(const DagNode& node, const Sources& sources,
                        bool* orphaned) {
  bool missing = std::any_of(node.provenance.begin(), node.provenance.end(),
                             [&](const Provenance& p) {
                               return !resolves(p, sources);
                             });
  if (orphaned) *orphaned = missing;
  if (missing) return node.label;

  Namer n{node, sources};
  switch (node.kind) {
    case NodeKind::kRoot: {
      const FearedEventDecl* fe = sources.study.feared_event(n.id(Role::kEvent));
      return n.event_sentence() + " [" + fe->severity + "]";
    }
    case NodeKind::kState:
      if (!node.ref(Role::kState))
        return n.event_sentence() + " in any state or mode";
      return n.event_sentence() + " while " + n.entity() + " is in state " +
             sources.model.state(n.id(Role::kState))->name;
    case NodeKind::kMode:
      return n.event_sentence() + " while " + n.entity() + " is in state " +
             sources.model.state(n.id(Role::kState))->name + ", mode " +
             sources.model.mode(n.id(Role::kMode))->name;
    case NodeKind::kAssetType:
      return n.type() + " attacks " + n.context();
    case NodeKind::kEntryPoint: {
      const std::string* target = node.ref(Role::kComponent);
      if (!target) target = node.ref(Role::kInterface);
      std::string name = target ? *sources.model.name_of(*target) : "?";
      return "Attack on " + name + " (" + n.type() + ") " + n.context();
    }
    case NodeKind::kThreat:
      return n.threat().code + ": " + n.threat().description + " " +
             n.context();
    case NodeKind::kThreatSource:
      return n.source() + " (" + verdict_phrase(n.id(Role::kVerdict)) + ") " +
             n.context();
    case NodeKind::kPrecondition: {
      const Prerequisite* pre =
          sources.kb.prerequisite(n.id(Role::kPrerequisite));
      if (pre->kind != PrerequisiteKind::kStateModeChange) return pre->text;
      std::string states = n.state_list();
      return pre->text + (states.empty()
                              ? " (required state or mode to be determined)"
                              : " (in " + states + ")");
    }
    case NodeKind::kAttackStub:
      return n.threat().code + ": " + n.threat().description + " by " +
             n.source() + " (" + verdict_phrase(n.id(Role::kVerdict)) + ")";
    case NodeKind::kPostcondition:
      return "Repudiation of the attack by " + n.source();
    case NodeKind::kExpertLeaf:
      return node.label;
  }
  return node.label;
}

namespace {

bool allowed_child(NodeKind parent, NodeKind child) {
  using K = NodeKind;
  if (child == K::kExpertLeaf)
    return parent != K::kPrecondition && parent != K::kAttackStub &&
           parent != K::kPostcondition && parent != K::kExpertLeaf;
  switch (parent) {
    case K::kRoot: return child == K::kState;
    case K::kState:
      return child == K::kMode || child == K::kAssetType ||
             child == K::kEntryPoint;
    case K::kMode: return child == K::kAssetType || child == K::kEntryPoint;
    case K::kAssetType: return child == K::kEntryPoint;
    case K::kEntryPoint: return child == K::kThreat;
    case K::kThreat: return child == K::kThreatSource;
    case K::kThreatSource:
      return child == K::kPrecondition || child == K::kAttackStub ||
             child == K::kPostcondition;
    default: return false;
  }
}

}  // namespace

std::vector<DagDiagnostic> validate_dag(const AttackDag& dag) {
  using Kind = DagDiagnostic::Kind;
  std::vector<DagDiagnostic> out;
  const std::size_t n = dag.size();
  if (n == 0) return out;

  std::unordered_map<std::string, int> path_count;
  for (const DagNode& node : dag.nodes()) ++path_count[node.path];
  std::vector<std::string> dup;
  for (const auto& [path, count] : path_count)
    if (count > 1) dup.push_back(path);
  std::sort(dup.begin(), dup.end());
  for (const std::string& p : dup)
    out.push_back({Kind::kDuplicatePath, p, "path used by several nodes"});

  if (dag.node(0).kind != NodeKind::kRoot)
    out.push_back({Kind::kLayerOrder, dag.node(0).path,
                   "first node is not the root"});

  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DagNode& node = dag.node(i);
    if (node.gate == Gate::kAnd && node.kind != NodeKind::kThreatSource)
      out.push_back({Kind::kMisplacedAnd, node.path,
                     std::string("AND gate on ") + to_string(node.kind)});
    if (i != 0 && node.kind == NodeKind::kRoot)
      out.push_back({Kind::kLayerOrder, node.path, "second root node"});
    for (std::size_t c : node.children) {
      if (c >= n) {
        out.push_back({Kind::kDanglingEdge, node.path,
                       "child index " + std::to_string(c) + " out of range"});
        continue;
      }
      parents[c].push_back(i);
      if (!allowed_child(node.kind, dag.node(c).kind))
        out.push_back({Kind::kLayerOrder, dag.node(c).path,
                       std::string(to_string(dag.node(c).kind)) + " under " +
                           to_string(node.kind)});
    }
  }

  // Iterative DFS with colours; every back edge is one cycle report.
  std::vector<int> colour(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (colour[start]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    colour[start] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& kids = dag.node(v).children;
      if (next < kids.size()) {
        std::size_t c = kids[next++];
        if (c >= n) continue;
        if (colour[c] == 1) {
          out.push_back({Kind::kCycle, dag.node(c).path,
                         "cycle through edge from " + dag.node(v).path});
        } else if (colour[c] == 0) {
          colour[c] = 1;
          stack.push_back({c, 0});
        }
      } else {
        colour[v] = 2;
        stack.pop_back();
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& ps = parents[i];
    if (ps.size() < 2) continue;
    const DagNode& first = dag.node(ps.front());
    for (std::size_t p : ps) {
      const DagNode& other = dag.node(p);
      if (other.kind != first.kind ||
          (other.ref(Role::kState) ? *other.ref(Role::kState) : "") !=
              (first.ref(Role::kState) ? *first.ref(Role::kState) : "") ||
          (other.ref(Role::kMode) ? *other.ref(Role::kMode) : "") !=
              (first.ref(Role::kMode) ? *first.ref(Role::kMode) : "")) {
        out.push_back({Kind::kSharedMismatch, dag.node(i).path,
                       "shared node has parents in different contexts"});
        break;
      }
    }
  }
  return out;
}

const Annotation* AnnotatedView::annotation(std::string_view path) const {
  auto it = attached.find(std::string(path));
  return it == attached.end() ? nullptr : &it->second;
}

AnnotatedView merge_annotations(const AttackDag& dag, const Overlay& overlay) {
  AnnotatedView view;
  view.dag = &dag;
  for (const auto& [path, ann] : overlay) {
    if (dag.find(path)) view.attached.emplace(path, ann);
    else view.orphans.push_back(path);
  }
  return view;
}

}  // namespace atgen
