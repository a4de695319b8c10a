#include "support/properties.h"

#include <algorithm>
#include <map>
#include <set>

#include "atgen/generator.h"
#include "atgen/io.h"
#include "atgen/maintenance.h"

namespace atgen::testing {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool acyclic(const AttackDag& dag) {
  std::vector<std::size_t> indegree(dag.size(), 0);
  for (const DagNode& n : dag.nodes())
    for (std::size_t c : n.children) ++indegree[c];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < dag.size(); ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t c : dag.node(i).children)
      if (--indegree[c] == 0) ready.push_back(c);
  }
  return seen == dag.size();
}

FearedEvent event_of(const RandomCase& c, const Built& b) {
  return resolve_feared_event(c.feared_event, *b.model, *b.study, *b.kb);
}

const GenerationConfig kConfigs[] = {
    {true, true, false}, {false, true, false}, {true, false, false},
    {false, false, true}, {true, true, true},
};

std::set<std::string> paths_of(const AttackDag& dag) {
  std::set<std::string> out;
  for (const DagNode& n : dag.nodes()) out.insert(n.path);
  return out;
}

/// Removes a component and everything that only makes sense with it.
/// Returns the ids diff_models should report as deleted.
std::vector<std::string> remove_component(ModelData& m, const std::string& id) {
  std::vector<std::string> gone{id};
  for (const LogicalComponent& comp : m.components)
    if (comp.id == id)
      for (const Port& p : comp.ports) gone.push_back(id + "/" + p.id);
  std::erase_if(m.components, [&](const LogicalComponent& c) { return c.id == id; });
  for (FunctionalChain& ch : m.chains)
    std::erase(ch.components, id);
  std::erase_if(m.connections, [&](const PortConnection& c) {
    return c.a.component == id || c.b.component == id;
  });
  std::erase_if(m.availability,
                [&](const PortAvailability& a) { return a.port.component == id; });
  std::erase_if(m.traces, [&](const TraceLink& t) { return t.to == id; });
  for (InterfaceDef& i : m.interfaces) {
    std::erase(i.exposed_by, id);
    std::erase_if(i.ports, [&](const PortRef& p) { return p.component == id; });
  }
  for (const InterfaceDef& i : m.interfaces)
    if (i.exposed_by.empty()) {
      gone.push_back(i.id);
      for (FunctionalChain& ch : m.chains) std::erase(ch.interfaces, i.id);
    }
  std::erase_if(m.interfaces, [](const InterfaceDef& i) { return i.exposed_by.empty(); });
  return gone;
}

/// Chain components that can be deleted without invalidating the model.
std::vector<std::string> deletable(const ModelData& m) {
  std::vector<std::string> out;
  const FunctionalChain& chain = m.chains.front();
  if (chain.components.size() < 2) return out;
  for (const std::string& id : chain.components) {
    if (id.rfind("c-act", 0) == 0) continue;
    bool parent = std::any_of(m.components.begin(), m.components.end(),
                              [&](const LogicalComponent& c) { return c.parent == id; });
    if (!parent) out.push_back(id);
  }
  return out;
}

bool names_renamed(const DagNode& n, const std::set<std::string>& renamed) {
  for (const Provenance& p : n.provenance)
    if ((p.role == Role::kState || p.role == Role::kMode ||
         p.role == Role::kComponent || p.role == Role::kInterface) &&
        renamed.count(p.id))
      return true;
  return false;
}

}  // namespace

std::string Violations::summary() const {
  std::string s = std::to_string(count) + " violations in " + std::to_string(cases) + " cases";
  for (const std::string& m : first) s += "\n  " + m;
  return s;
}

void check_structure(const RandomCase& c, Violations& v) {
  ++v.cases;
  Built b = build(c.model, c.study, c.kb);
  FearedEvent ev = event_of(c, b);
  std::map<std::string, std::string> tag;
  for (const AssetTag& t : c.study.tags) tag[t.component] = t.type;

  for (const GenerationConfig& config : kConfigs) {
    AttackDag dag = generate(ev, b.sources(), config);
    const std::string where = " (dag_mode=" + std::to_string(config.dag_mode) +
                              " layer=" + std::to_string(config.include_asset_type_layer) +
                              " post=" + std::to_string(config.emit_postconditions) + ")";
    if (!acyclic(dag)) v.add("cycle" + where);
    for (const DagNode& n : dag.nodes()) {
      if (n.gate == Gate::kAnd && n.kind != NodeKind::kThreatSource)
        v.add("AND on " + n.path + where);
      if (n.kind != NodeKind::kEntryPoint) continue;
      std::string type;
      if (const std::string* comp = n.ref(Role::kComponent)) type = tag[*comp];
      else type = "NET";
      std::vector<std::string> got;
      for (std::size_t ch : n.children) got.push_back(*dag.node(ch).ref(Role::kThreat));
      if (got != brute_force_threats(c.kb, type, c.criterion))
        v.add("threat filter mismatch at " + n.path + where);
    }
    std::size_t expected = expected_node_count(c, config);
    if (dag.size() != expected)
      v.add("node count " + std::to_string(dag.size()) + " != " +
            std::to_string(expected) + where);
    if (dump_tree(generate(ev, b.sources(), config)) != dump_tree(dag))
      v.add("non-deterministic output" + where);
  }
}

void check_rename(const RandomCase& c, std::mt19937_64& rng, Violations& v) {
  ++v.cases;
  Built b = build(c.model, c.study, c.kb);
  FearedEvent ev = event_of(c, b);
  const GenerationConfig config = kConfigs[pick(rng, 0, 4)];
  AttackDag old = generate(ev, b.sources(), config);

  ModelData m = c.model;
  std::set<std::string> renamed;
  auto maybe = [&](const std::string& id, std::string& name) {
    if (pick(rng, 0, 1)) {
      name = "Renamed " + id;
      renamed.insert(id);
    }
  };
  for (State& s : m.states) {
    maybe(s.id, s.name);
    for (Mode& md : s.modes) maybe(md.id, md.name);
  }
  for (LogicalComponent& comp : m.components) maybe(comp.id, comp.name);
  for (InterfaceDef& i : m.interfaces) maybe(i.id, i.name);

  ArchitectureModel model(m);
  RegenResult r = regenerate(ev, {model, *b.study, *b.kb}, config, old, {});
  if (paths_of(r.dag) != paths_of(old)) v.add("rename changed the path set");
  if (!r.report.added.empty() || !r.report.removed.empty() || !r.report.warned.empty())
    v.add("rename added, removed or warned paths");
  std::vector<std::string> expected;
  for (const DagNode& n : old.nodes())
    if (names_renamed(n, renamed)) expected.push_back(n.path);
  std::sort(expected.begin(), expected.end());
  if (r.report.relabeled != expected)
    v.add("relabeled " + std::to_string(r.report.relabeled.size()) +
          " paths, provenance names " + std::to_string(expected.size()));

  std::set<std::string> diffed;
  for (const Rename& rn : diff_models(*b.model, model).renamed) diffed.insert(rn.id);
  if (diffed != renamed) v.add("diff_models missed renames");
}

void check_delete(const RandomCase& c, std::mt19937_64& rng, Violations& v) {
  std::vector<std::string> options = deletable(c.model);
  if (options.empty()) return;
  ++v.cases;
  Built b = build(c.model, c.study, c.kb);
  FearedEvent ev = event_of(c, b);
  AttackDag old = generate(ev, b.sources(), {});

  Overlay overlay;
  for (const DagNode& n : old.nodes())
    if (pick(rng, 0, 4) == 0)
      overlay[n.path] = {static_cast<Decision>(pick(rng, 0, 2)), "note", std::nullopt};
  overlay["fe/never-existed"] = {};

  const std::string victim = options[pick(rng, 0, int(options.size()) - 1)];
  ModelData m = c.model;
  std::vector<std::string> gone = remove_component(m, victim);
  std::set<std::string> gone_set(gone.begin(), gone.end());
  ArchitectureModel model(m);
  RegenResult r = regenerate(ev, {model, *b.study, *b.kb}, {}, old, overlay);

  for (const DagNode& n : old.nodes()) {
    if (n.kind != NodeKind::kEntryPoint) continue;
    const std::string* comp = n.ref(Role::kComponent);
    if (!comp || *comp != victim) continue;
    auto idx = r.dag.find(n.path);
    if (!idx || !r.dag.node(*idx).status.has(Status::kWarningOrphaned))
      v.add("no warning stub at " + n.path);
    else if (!r.dag.node(*idx).children.empty())
      v.add("warning stub with children at " + n.path);
  }
  for (const std::string& p : r.report.warned) {
    const DagNode& o = old.node(*old.find(p));
    bool lost = std::any_of(o.provenance.begin(), o.provenance.end(),
                            [&](const Provenance& pr) { return gone_set.count(pr.id) > 0; });
    if (!lost) v.add("warned path without deleted artefact: " + p);
  }

  AnnotatedView view = merge_annotations(r.dag, overlay);
  if (view.attached.size() + view.orphans.size() != overlay.size())
    v.add("annotation count decreased");
  if (view.orphans != r.report.orphaned_annotations)
    v.add("orphaned annotations not reported");

  std::set<std::string> all = paths_of(old);
  for (const DagNode& n : r.dag.nodes()) all.insert(n.path);
  std::size_t listed = r.report.unchanged.size() + r.report.relabeled.size() +
                       r.report.added.size() + r.report.removed.size() +
                       r.report.warned.size();
  std::set<std::string> union_listed;
  for (auto* list : {&r.report.unchanged, &r.report.relabeled, &r.report.added,
                     &r.report.removed, &r.report.warned})
    union_listed.insert(list->begin(), list->end());
  if (listed != all.size() || union_listed != all)
    v.add("report does not partition the paths");
  if (!validate_dag(r.dag).empty()) v.add("regenerated DAG fails validation");
}

void check_identity(const RandomCase& c, Violations& v) {
  ++v.cases;
  Built b = build(c.model, c.study, c.kb);
  FearedEvent ev = event_of(c, b);
  for (const GenerationConfig& config : kConfigs) {
    AttackDag dag = generate(ev, b.sources(), config);
    RegenResult r = regenerate(ev, b.sources(), config, dag, {});
    if (dump_tree(r.dag) != dump_tree(dag)) v.add("identity regen changed the tree");
    if (r.report.unchanged.size() != dag.size()) v.add("identity regen not all unchanged");
  }
}

void check_diff(const RandomCase& c, std::mt19937_64& rng, Violations& v) {
  ++v.cases;
  ModelData m = c.model;
  std::map<std::string, std::pair<std::string, std::string>> renamed;  // id -> old, new
  std::set<std::string> deleted, added;
  auto rename = [&](const std::string& id, std::string& name, int edit) {
    std::string next = name + " v" + std::to_string(edit);
    if (renamed.count(id)) renamed[id].second = next;
    else if (!added.count(id)) renamed[id] = {name, next};
    name = next;
  };

  int k = pick(rng, 1, 6);
  for (int e = 0; e < k; ++e) {
    switch (pick(rng, 0, 4)) {
      case 0: {
        State& s = m.states[pick(rng, 0, int(m.states.size()) - 1)];
        if (!s.modes.empty() && pick(rng, 0, 1)) {
          Mode& md = s.modes[pick(rng, 0, int(s.modes.size()) - 1)];
          rename(md.id, md.name, e);
        } else {
          rename(s.id, s.name, e);
        }
        break;
      }
      case 1: {
        LogicalComponent& comp = m.components[pick(rng, 0, int(m.components.size()) - 1)];
        rename(comp.id, comp.name, e);
        break;
      }
      case 2:
        if (!m.interfaces.empty()) {
          InterfaceDef& i = m.interfaces[pick(rng, 0, int(m.interfaces.size()) - 1)];
          rename(i.id, i.name, e);
        }
        break;
      case 3: {
        std::vector<std::string> options = deletable(m);
        if (options.empty()) break;
        std::string victim = options[pick(rng, 0, int(options.size()) - 1)];
        for (const std::string& id : remove_component(m, victim)) {
          renamed.erase(id);
          if (!added.erase(id)) deleted.insert(id);
        }
        break;
      }
      default:
        if (pick(rng, 0, 1)) {
          std::string id = "sn" + std::to_string(e);
          m.states.push_back({id, "New state " + std::to_string(e), {}});
          added.insert(id);
        } else {
          std::string id = "cn" + std::to_string(e);
          m.components.push_back({id, "New component " + std::to_string(e), std::nullopt, {}});
          added.insert(id);
        }
    }
  }

  ArchitectureModel before(c.model), after(m);
  ModelDiff diff = diff_models(before, after);
  std::vector<Rename> want_renamed;
  for (const auto& [id, names] : renamed)
    want_renamed.push_back({id, names.first, names.second});
  std::vector<std::string> want_deleted(deleted.begin(), deleted.end());
  std::vector<std::string> want_added(added.begin(), added.end());
  if (diff.renamed != want_renamed) v.add("diff renamed mismatch");
  if (diff.deleted != want_deleted) v.add("diff deleted mismatch");
  if (diff.added != want_added) v.add("diff added mismatch");
  if (!diff.retyped.empty()) v.add("diff reported a retype");
}

}  // namespace atgen::testing
