/// @file maintenance.cc

#include "atgen/maintenance.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "atgen/generator.h"

namespace atgen {

namespace {

/// Every named artefact of a model, keyed by id.
std::map<std::string, std::string> names(const ModelData& d) {
  std::map<std::string, std::string> out;
  for (const auto& e : d.entities) out[e.id] = e.name;
  for (const auto& a : d.activities) out[a.id] = a.name;
  for (const auto& p : d.processes) out[p.id] = p.name;
  for (const auto& s : d.states) {
    out[s.id] = s.name;
    for (const auto& m : s.modes) out[m.id] = m.name;
  }
  for (const auto& c : d.components) {
    out[c.id] = c.name;
    for (const auto& p : c.ports) out[c.id + "/" + p.id] = p.name;
  }
  for (const auto& i : d.interfaces) out[i.id] = i.name;
  for (const auto& c : d.chains) out[c.id] = c.name;
  return out;
}

}  // namespace

ModelDiff diff_models(const ArchitectureModel& old_model,
                      const ArchitectureModel& new_model,
                      const RiskStudy* old_study, const RiskStudy* new_study) {
  const auto before = names(old_model.data());
  const auto after = names(new_model.data());
  ModelDiff diff;

  std::set<std::string> retyped;
  if (old_study && new_study) {
    for (const auto& c : old_model.data().components) {
      if (!new_model.component(c.id)) continue;
      const std::string* a = old_study->tag_of(c.id);
      const std::string* b = new_study->tag_of(c.id);
      if (a && b && *a != *b) {
        diff.retyped.push_back({c.id, *a, *b});
        retyped.insert(c.id);
      }
    }
  }
  for (const auto& [id, name] : before) {
    auto it = after.find(id);
    if (it == after.end())
      diff.deleted.push_back(id);
    else if (it->second != name && !retyped.count(id))
      diff.renamed.push_back({id, name, it->second});
  }
  for (const auto& [id, name] : after)
    if (!before.count(id)) diff.added.push_back(id);
  std::sort(diff.retyped.begin(), diff.retyped.end());
  return diff;
}

RegenReport initial_report(const AttackDag& dag, const Overlay& overlay) {
  RegenReport report;
  for (const DagNode& n : dag.nodes()) report.added.push_back(n.path);
  std::sort(report.added.begin(), report.added.end());
  for (const auto& [path, note] : overlay)
    if (!dag.find(path)) report.orphaned_annotations.push_back(path);
  return report;
}

RegenResult regenerate(const FearedEvent& event, const Sources& sources,
                       const GenerationConfig& config, const AttackDag& old_dag,
                       const Overlay& overlay) {
  AttackDag dag = generate(event, sources, config);
  RegenReport report;
  const std::size_t fresh = dag.size();

  for (std::size_t i = 0; i < fresh; ++i) {
    DagNode& n = dag.node(i);
    auto old = old_dag.find(n.path);
    if (!old) {
      n.status.set(Status::kNewSinceLast);
      report.added.push_back(n.path);
    } else if (old_dag.node(*old).label == n.label) {
      report.unchanged.push_back(n.path);
    } else {
      report.relabeled.push_back(n.path);
    }
  }

  // Old-only nodes: warned if their own provenance lost an artefact and no
  // ancestor already carries the warning; removed otherwise.
  const std::size_t n_old = old_dag.size();
  std::vector<std::vector<std::size_t>> old_parents(n_old);
  for (std::size_t i = 0; i < n_old; ++i)
    for (std::size_t c : old_dag.node(i).children) old_parents[c].push_back(i);

  std::vector<char> candidate(n_old, 0);
  for (std::size_t i = 0; i < n_old; ++i) {
    const DagNode& n = old_dag.node(i);
    if (dag.find(n.path)) continue;
    bool lost = std::any_of(
        n.provenance.begin(), n.provenance.end(),
        [&](const Provenance& p) { return !resolves(p, sources); });
    if (!lost) continue;
    if (n.status.has(Status::kWarningOrphaned)) {
      auto note = overlay.find(n.path);
      if (note != overlay.end() && note->second.decision == Decision::kClosed)
        continue;
    }
    candidate[i] = 1;
  }
  std::vector<signed char> covered(n_old, -1);
  std::function<bool(std::size_t)> covered_above = [&](std::size_t i) {
    if (covered[i] < 0) {
      covered[i] = 0;
      for (std::size_t p : old_parents[i])
        if (candidate[p] || covered_above(p)) covered[i] = 1;
    }
    return covered[i] == 1;
  };

  auto subtree = [&](std::size_t top) {
    WarningSummary s;
    if (old_dag.node(top).summary) return *old_dag.node(top).summary;
    std::vector<char> seen(n_old, 0);
    std::vector<std::size_t> stack{top};
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      if (seen[i]) continue;
      seen[i] = 1;
      ++s.node_count;
      s.labels.push_back(old_dag.node(i).label);
      const auto& ch = old_dag.node(i).children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return s;
  };

  for (std::size_t i = 0; i < n_old; ++i) {
    const DagNode& old = old_dag.node(i);
    if (dag.find(old.path)) continue;
    if (!candidate[i] || covered_above(i)) {
      report.removed.push_back(old.path);
      continue;
    }
    DagNode stub;
    stub.path = old.path;
    stub.kind = old.kind;
    stub.gate = old.gate;
    stub.label = old.label;
    stub.provenance = old.provenance;
    stub.status = {Status::kWarningOrphaned};
    stub.summary = subtree(i);
    std::size_t s = dag.add_node(std::move(stub));
    for (std::size_t p : old_parents[i])
      if (auto np = dag.find(old_dag.node(p).path); np && *np < fresh)
        dag.add_edge(*np, s);
    report.warned.push_back(old.path);
  }

  for (const auto& [path, note] : overlay)
    if (!dag.find(path)) report.orphaned_annotations.push_back(path);
  for (auto* v : {&report.unchanged, &report.relabeled, &report.added,
                  &report.removed, &report.warned})
    std::sort(v->begin(), v->end());
  return {std::move(dag), std::move(report)};
}

}  // namespace atgen
