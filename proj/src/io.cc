/// @file io.cc

#include "atgen/io.h"

#include <fstream>
#include <sstream>

#include "atgen/error.h"
#include "atgen/export.h"
#include "atgen/generator.h"
#include "text_util.h"

namespace atgen {

namespace fs = std::filesystem;

json parse_json(const std::string& text, const std::string& file) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte - 1 && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw LoadError(file, "syntax error at line " + std::to_string(line) +
                              ", column " + std::to_string(col));
  }
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

namespace {

/// Field access with JSON-pointer error messages.
class Reader {
 public:
  explicit Reader(std::string file) : file_(std::move(file)) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    throw LoadError(file_, (ptr.empty() ? "/" : ptr) + ": " + msg);
  }

  void object(const json& j, const std::string& ptr) const {
    if (!j.is_object()) fail(ptr, "expected an object");
  }

  void version(const json& j) const {
    object(j, "");
    if (!j.contains("format_version")) fail("/format_version", "missing");
    const json& v = j["format_version"];
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
      fail("/format_version", "unsupported version (expected 1)");
  }

  std::string str(const json& j, const char* key, const std::string& ptr) const {
    object(j, ptr);
    auto it = j.find(key);
    if (it == j.end()) fail(ptr + "/" + key, "missing required field");
    if (!it->is_string()) fail(ptr + "/" + key, "expected a string");
    return it->get<std::string>();
  }

  std::optional<std::string> opt_str(const json& j, const char* key,
                                     const std::string& ptr) const {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) fail(ptr + "/" + key, "expected a string");
    return it->get<std::string>();
  }

  bool boolean(const json& j, const char* key, const std::string& ptr,
               bool fallback) const {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean()) fail(ptr + "/" + key, "expected a boolean");
    return it->get<bool>();
  }

  /// Optional array; absent means empty.
  const json& array(const json& j, const char* key,
                    const std::string& ptr) const {
    static const json kEmpty = json::array();
    auto it = j.find(key);
    if (it == j.end()) return kEmpty;
    if (!it->is_array()) fail(ptr + "/" + key, "expected an array");
    return *it;
  }

  std::vector<std::string> strings(const json& j, const char* key,
                                   const std::string& ptr) const {
    std::vector<std::string> out;
    const json& a = array(j, key, ptr);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_string())
        fail(ptr + "/" + key + "/" + std::to_string(i), "expected a string");
      out.push_back(a[i].get<std::string>());
    }
    return out;
  }

  PortRef port_ref(const json& j, const std::string& ptr) const {
    return {str(j, "component", ptr), str(j, "port", ptr)};
  }

 private:
  std::string file_;
};

std::string at(const std::string& ptr, std::size_t i) {
  return ptr + "/" + std::to_string(i);
}

template <typename T, typename F>
std::vector<T> each(const Reader& r, const json& j, const char* key, F f) {
  std::vector<T> out;
  const std::string ptr = std::string("/") + key;
  const json& a = r.array(j, key, "");
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(f(a[i], at(ptr, i)));
  return out;
}

std::optional<AccessKind> access_from(std::string_view s) {
  if (s == "physical") return AccessKind::kPhysical;
  if (s == "logical") return AccessKind::kLogical;
  if (s == "both") return AccessKind::kBoth;
  return std::nullopt;
}

json port_ref_json(const PortRef& p) {
  return {{"component", p.component}, {"port", p.port}};
}

}  // namespace

ModelData model_from_json(const json& j, const std::string& file) {
  Reader r(file);
  r.version(j);
  ModelData d;
  d.entities = each<OperationalEntity>(r, j, "entities", [&](const json& e, const std::string& p) {
    return OperationalEntity{r.str(e, "id", p), r.str(e, "name", p),
                             r.boolean(e, "actor", p, false)};
  });
  d.activities = each<OperationalActivity>(r, j, "activities", [&](const json& e, const std::string& p) {
    return OperationalActivity{r.str(e, "id", p), r.str(e, "name", p),
                               r.str(e, "owner", p)};
  });
  d.processes = each<OperationalProcess>(r, j, "processes", [&](const json& e, const std::string& p) {
    OperationalProcess proc{r.str(e, "id", p), r.str(e, "name", p),
                            r.strings(e, "activities", p), "", ""};
    proc.first_activity = r.opt_str(e, "first", p).value_or(
        proc.activities.empty() ? "" : proc.activities.front());
    proc.last_activity = r.opt_str(e, "last", p).value_or(
        proc.activities.empty() ? "" : proc.activities.back());
    return proc;
  });
  d.states = each<State>(r, j, "states", [&](const json& e, const std::string& p) {
    State s{r.str(e, "id", p), r.str(e, "name", p), {}};
    if (e.contains("states"))
      r.fail(p + "/states", "states nested in states are not supported");
    const json& modes = r.array(e, "modes", p);
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string mp = at(p + "/modes", i);
      if (modes[i].is_object() &&
          (modes[i].contains("modes") || modes[i].contains("states")))
        r.fail(mp, "nesting below the mode level is not supported");
      s.modes.push_back({r.str(modes[i], "id", mp), r.str(modes[i], "name", mp)});
    }
    return s;
  });
  d.matrix = each<MatrixEntry>(r, j, "matrix", [&](const json& e, const std::string& p) {
    return MatrixEntry{r.str(e, "state", p), r.opt_str(e, "mode", p),
                       r.str(e, "process", p)};
  });
  d.components = each<LogicalComponent>(r, j, "components", [&](const json& e, const std::string& p) {
    LogicalComponent c{r.str(e, "id", p), r.str(e, "name", p),
                       r.opt_str(e, "parent", p), {}};
    const json& ports = r.array(e, "ports", p);
    for (std::size_t i = 0; i < ports.size(); ++i) {
      const std::string pp = at(p + "/ports", i);
      Port port{r.str(ports[i], "id", pp), "", AccessKind::kBoth,
                r.boolean(ports[i], "external", pp, false)};
      port.name = r.opt_str(ports[i], "name", pp).value_or(port.id);
      if (auto a = r.opt_str(ports[i], "access", pp)) {
        auto k = access_from(*a);
        if (!k) r.fail(pp + "/access", "expected physical, logical or both");
        port.access = *k;
      }
      c.ports.push_back(std::move(port));
    }
    return c;
  });
  d.interfaces = each<InterfaceDef>(r, j, "interfaces", [&](const json& e, const std::string& p) {
    InterfaceDef i{r.str(e, "id", p), r.str(e, "name", p),
                   r.strings(e, "exposed_by", p), {}};
    const json& ports = r.array(e, "ports", p);
    for (std::size_t k = 0; k < ports.size(); ++k)
      i.ports.push_back(r.port_ref(ports[k], at(p + "/ports", k)));
    return i;
  });
  d.chains = each<FunctionalChain>(r, j, "chains", [&](const json& e, const std::string& p) {
    return FunctionalChain{r.str(e, "id", p), r.str(e, "name", p),
                           r.strings(e, "components", p),
                           r.strings(e, "interfaces", p)};
  });
  d.traces = each<TraceLink>(r, j, "traces", [&](const json& e, const std::string& p) {
    TraceLink t{r.str(e, "from", p), r.str(e, "to", p), TraceKind::kProcessChain};
    std::string kind = r.str(e, "kind", p);
    if (kind == "entity-component") t.kind = TraceKind::kEntityComponent;
    else if (kind != "process-chain")
      r.fail(p + "/kind", "expected process-chain or entity-component");
    return t;
  });
  d.connections = each<PortConnection>(r, j, "connections", [&](const json& e, const std::string& p) {
    r.object(e, p);
    if (!e.contains("from")) r.fail(p + "/from", "missing required field");
    if (!e.contains("to")) r.fail(p + "/to", "missing required field");
    return PortConnection{r.port_ref(e["from"], p + "/from"),
                          r.port_ref(e["to"], p + "/to")};
  });
  d.availability = each<PortAvailability>(r, j, "port_availability", [&](const json& e, const std::string& p) {
    return PortAvailability{r.port_ref(e, p), r.str(e, "state", p),
                            r.opt_str(e, "mode", p)};
  });
  return d;
}

json model_to_json(const ModelData& d) {
  json j = {{"format_version", kFormatVersion}};
  json& ents = j["entities"] = json::array();
  for (const auto& e : d.entities)
    ents.push_back({{"id", e.id}, {"name", e.name}, {"actor", e.is_actor}});
  json& acts = j["activities"] = json::array();
  for (const auto& a : d.activities)
    acts.push_back({{"id", a.id}, {"name", a.name}, {"owner", a.owner}});
  json& procs = j["processes"] = json::array();
  for (const auto& p : d.processes)
    procs.push_back({{"id", p.id}, {"name", p.name}, {"activities", p.activities},
                     {"first", p.first_activity}, {"last", p.last_activity}});
  json& states = j["states"] = json::array();
  for (const auto& s : d.states) {
    json modes = json::array();
    for (const auto& m : s.modes) modes.push_back({{"id", m.id}, {"name", m.name}});
    states.push_back({{"id", s.id}, {"name", s.name}, {"modes", modes}});
  }
  json& matrix = j["matrix"] = json::array();
  for (const auto& m : d.matrix) {
    json e = {{"state", m.state}, {"process", m.process}};
    if (m.mode) e["mode"] = *m.mode;
    matrix.push_back(e);
  }
  json& comps = j["components"] = json::array();
  for (const auto& c : d.components) {
    json ports = json::array();
    for (const auto& p : c.ports)
      ports.push_back({{"id", p.id}, {"name", p.name},
                       {"access", to_string(p.access)}, {"external", p.external}});
    json e = {{"id", c.id}, {"name", c.name}, {"ports", ports}};
    if (c.parent) e["parent"] = *c.parent;
    comps.push_back(e);
  }
  json& ifaces = j["interfaces"] = json::array();
  for (const auto& i : d.interfaces) {
    json ports = json::array();
    for (const auto& p : i.ports) ports.push_back(port_ref_json(p));
    ifaces.push_back({{"id", i.id}, {"name", i.name},
                      {"exposed_by", i.exposed_by}, {"ports", ports}});
  }
  json& chains = j["chains"] = json::array();
  for (const auto& c : d.chains)
    chains.push_back({{"id", c.id}, {"name", c.name},
                      {"components", c.components}, {"interfaces", c.interfaces}});
  json& traces = j["traces"] = json::array();
  for (const auto& t : d.traces)
    traces.push_back({{"from", t.from}, {"to", t.to}, {"kind", to_string(t.kind)}});
  json& conns = j["connections"] = json::array();
  for (const auto& c : d.connections)
    conns.push_back({{"from", port_ref_json(c.a)}, {"to", port_ref_json(c.b)}});
  json& avail = j["port_availability"] = json::array();
  for (const auto& a : d.availability) {
    json e = port_ref_json(a.port);
    e["state"] = a.state;
    if (a.mode) e["mode"] = *a.mode;
    avail.push_back(e);
  }
  return j;
}

KbData kb_from_json(const json& j, const std::string& file) {
  Reader r(file);
  r.version(j);
  KbData d;
  d.criteria = each<SecurityCriterion>(r, j, "criteria", [&](const json& e, const std::string& p) {
    return SecurityCriterion{r.str(e, "id", p), r.str(e, "name", p)};
  });
  d.asset_types = each<SupportingAssetType>(r, j, "asset_types", [&](const json& e, const std::string& p) {
    SupportingAssetType t{r.str(e, "id", p), r.str(e, "name", p),
                          r.boolean(e, "composite", p, false),
                          r.strings(e, "expands_to", p),
                          r.opt_str(e, "display_under", p),
                          EntryPointSource::kComponents};
    if (auto ep = r.opt_str(e, "entry_points", p)) {
      if (*ep == "interfaces") t.entry_points = EntryPointSource::kInterfaces;
      else if (*ep != "components")
        r.fail(p + "/entry_points", "expected components or interfaces");
    }
    return t;
  });
  d.threats = each<ThreatDef>(r, j, "threats", [&](const json& e, const std::string& p) {
    ThreatDef t{r.str(e, "code", p), r.str(e, "description", p),
                r.str(e, "targeted_type", p), r.strings(e, "criteria", p),
                r.strings(e, "vulnerabilities", p), {}};
    const json& pre = r.array(e, "prerequisites", p);
    for (std::size_t i = 0; i < pre.size(); ++i) {
      const std::string pp = at(p + "/prerequisites", i);
      Prerequisite q{r.opt_str(pre[i], "id", pp).value_or(""),
                     r.str(pre[i], "text", pp), PrerequisiteKind::kOther};
      auto kind = prerequisite_kind_from(r.str(pre[i], "kind", pp));
      if (!kind) r.fail(pp + "/kind", "unknown prerequisite kind");
      q.kind = *kind;
      t.prerequisites.push_back(std::move(q));
    }
    return t;
  });
  return d;
}

json kb_to_json(const KbData& d) {
  json j = {{"format_version", kFormatVersion}};
  json& crit = j["criteria"] = json::array();
  for (const auto& c : d.criteria) crit.push_back({{"id", c.id}, {"name", c.name}});
  json& types = j["asset_types"] = json::array();
  for (const auto& t : d.asset_types) {
    json e = {{"id", t.id}, {"name", t.name}};
    if (t.composite) {
      e["composite"] = true;
      e["expands_to"] = t.expands_to;
    }
    if (t.display_under) e["display_under"] = *t.display_under;
    if (t.entry_points == EntryPointSource::kInterfaces)
      e["entry_points"] = "interfaces";
    types.push_back(e);
  }
  json& threats = j["threats"] = json::array();
  for (const auto& t : d.threats) {
    json pre = json::array();
    for (const auto& p : t.prerequisites)
      pre.push_back({{"id", p.id}, {"text", p.text}, {"kind", to_string(p.kind)}});
    threats.push_back({{"code", t.code}, {"description", t.description},
                       {"targeted_type", t.targeted_type}, {"criteria", t.criteria},
                       {"vulnerabilities", t.vulnerabilities}, {"prerequisites", pre}});
  }
  return j;
}

StudyData study_from_json(const json& j, const std::string& file) {
  Reader r(file);
  r.version(j);
  StudyData d;
  d.severity_scale = r.strings(j, "severity_scale", "");
  d.primary_assets = each<PrimaryAsset>(r, j, "primary_assets", [&](const json& e, const std::string& p) {
    return PrimaryAsset{r.str(e, "id", p), r.str(e, "name", p), r.str(e, "process", p)};
  });
  d.tags = each<AssetTag>(r, j, "asset_tags", [&](const json& e, const std::string& p) {
    return AssetTag{r.str(e, "component", p), r.str(e, "type", p)};
  });
  d.threat_sources = each<ThreatSource>(r, j, "threat_sources", [&](const json& e, const std::string& p) {
    return ThreatSource{r.str(e, "id", p), r.str(e, "name", p),
                        r.boolean(e, "malevolent", p, false), r.opt_str(e, "actor", p)};
  });
  d.feared_events = each<FearedEventDecl>(r, j, "feared_events", [&](const json& e, const std::string& p) {
    return FearedEventDecl{r.str(e, "id", p), r.str(e, "text", p), r.str(e, "severity", p)};
  });
  return d;
}

json study_to_json(const StudyData& d) {
  json j = {{"format_version", kFormatVersion}, {"severity_scale", d.severity_scale}};
  json& assets = j["primary_assets"] = json::array();
  for (const auto& a : d.primary_assets)
    assets.push_back({{"id", a.id}, {"name", a.name}, {"process", a.process}});
  json& tags = j["asset_tags"] = json::array();
  for (const auto& t : d.tags) tags.push_back({{"component", t.component}, {"type", t.type}});
  json& sources = j["threat_sources"] = json::array();
  for (const auto& s : d.threat_sources) {
    json e = {{"id", s.id}, {"name", s.name}, {"malevolent", s.malevolent}};
    if (s.actor) e["actor"] = *s.actor;
    sources.push_back(e);
  }
  json& events = j["feared_events"] = json::array();
  for (const auto& f : d.feared_events)
    events.push_back({{"id", f.id}, {"text", f.text}, {"severity", f.severity}});
  return j;
}

GenerationConfig config_from_json(const json& j, const std::string& file) {
  Reader r(file);
  r.object(j, "");
  if (j.contains("format_version")) r.version(j);
  GenerationConfig c;
  c.dag_mode = r.boolean(j, "dag_mode", "", c.dag_mode);
  c.include_asset_type_layer =
      r.boolean(j, "include_asset_type_layer", "", c.include_asset_type_layer);
  c.emit_postconditions =
      r.boolean(j, "emit_postconditions", "", c.emit_postconditions);
  return c;
}

json config_to_json(const GenerationConfig& c) {
  return {{"dag_mode", c.dag_mode},
          {"include_asset_type_layer", c.include_asset_type_layer},
          {"emit_postconditions", c.emit_postconditions}};
}

Overlay overlay_from_json(const json& j, const std::string& file) {
  Reader r(file);
  r.version(j);
  Overlay overlay;
  const json& notes = r.array(j, "annotations", "");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    const std::string p = at("/annotations", i);
    Annotation a;
    auto d = decision_from(r.str(notes[i], "decision", p));
    if (!d) r.fail(p + "/decision", "expected open, closed or developed");
    a.decision = *d;
    a.comment = r.opt_str(notes[i], "comment", p).value_or("");
    a.color = r.opt_str(notes[i], "color", p);
    overlay[r.str(notes[i], "path", p)] = std::move(a);
  }
  return overlay;
}

json overlay_to_json(const Overlay& overlay) {
  json notes = json::array();
  for (const auto& [path, a] : overlay) {
    json e = {{"path", path}, {"decision", to_string(a.decision)},
              {"comment", a.comment}};
    if (a.color) e["color"] = *a.color;
    notes.push_back(e);
  }
  return {{"format_version", kFormatVersion}, {"annotations", notes}};
}

json report_to_json(const RegenReport& r) {
  return {{"format_version", kFormatVersion},
          {"unchanged", r.unchanged},
          {"relabeled", r.relabeled},
          {"added", r.added},
          {"removed", r.removed},
          {"warned", r.warned},
          {"orphaned_annotations", r.orphaned_annotations}};
}

RegenReport report_from_json(const json& j, const std::string& file) {
  Reader r(file);
  r.version(j);
  return {r.strings(j, "unchanged", ""), r.strings(j, "relabeled", ""),
          r.strings(j, "added", ""),     r.strings(j, "removed", ""),
          r.strings(j, "warned", ""),    r.strings(j, "orphaned_annotations", "")};
}

json node_to_json(const DagNode& n) {
  json prov = json::array();
  for (const auto& p : n.provenance) prov.push_back(p.str());
  json j = {{"path", n.path},
            {"kind", to_string(n.kind)},
            {"gate", to_string(n.gate)},
            {"label", n.label},
            {"provenance", prov},
            {"status", n.status.names()}};
  if (n.summary)
    j["summary"] = {{"node_count", n.summary->node_count},
                    {"labels", n.summary->labels}};
  return j;
}

json tree_to_json(const AttackDag& dag) {
  json nodes = json::array(), edges = json::array();
  for (const DagNode& n : dag.nodes()) {
    nodes.push_back(node_to_json(n));
    for (std::size_t c : n.children)
      edges.push_back({{"from", n.path}, {"to", dag.node(c).path}});
  }
  return {{"format_version", kFormatVersion},
          {"feared_event", dag.feared_event()},
          {"config", config_to_json(dag.config())},
          {"nodes", nodes},
          {"edges", edges}};
}

std::string dump_tree(const AttackDag& dag) {
  std::string out = "{\n";
  out += "\"format_version\": " + std::to_string(kFormatVersion) + ",\n";
  out += "\"feared_event\": " + json(dag.feared_event()).dump() + ",\n";
  out += "\"config\": " + config_to_json(dag.config()).dump() + ",\n";
  out += "\"nodes\": [";
  for (std::size_t i = 0; i < dag.size(); ++i)
    out += (i ? ",\n" : "\n") + node_to_json(dag.node(i)).dump();
  out += "\n],\n\"edges\": [";
  bool first = true;
  for (const DagNode& n : dag.nodes()) {
    for (std::size_t c : n.children) {
      out += first ? "\n" : ",\n";
      first = false;
      out += json{{"from", n.path}, {"to", dag.node(c).path}}.dump();
    }
  }
  out += "\n]\n}\n";
  return out;
}

AttackDag tree_from_json(const json& j, const std::string& file) {
  Reader r(file);
  r.version(j);
  if (!j.contains("config")) r.fail("/config", "missing required field");
  AttackDag dag(r.str(j, "feared_event", ""), config_from_json(j["config"], file));
  const json& nodes = r.array(j, "nodes", "");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = at("/nodes", i);
    const json& e = nodes[i];
    DagNode n;
    n.path = r.str(e, "path", p);
    auto kind = node_kind_from(r.str(e, "kind", p));
    if (!kind) r.fail(p + "/kind", "unknown node kind");
    n.kind = *kind;
    auto gate = gate_from(r.str(e, "gate", p));
    if (!gate) r.fail(p + "/gate", "expected OR or AND");
    n.gate = *gate;
    n.label = r.str(e, "label", p);
    for (const std::string& s : r.strings(e, "provenance", p)) {
      auto prov = Provenance::parse(s);
      if (!prov) r.fail(p + "/provenance", "malformed entry '" + s + "'");
      n.provenance.push_back(*prov);
    }
    for (const std::string& s : r.strings(e, "status", p)) {
      auto st = status_from(s);
      if (!st) r.fail(p + "/status", "unknown status '" + s + "'");
      n.status.set(*st);
    }
    if (e.contains("summary")) {
      const json& s = e["summary"];
      if (!s.is_object() || !s.contains("node_count") ||
          !s["node_count"].is_number_unsigned())
        r.fail(p + "/summary", "expected {node_count, labels}");
      n.summary = WarningSummary{s["node_count"].get<std::size_t>(),
                                 r.strings(s, "labels", p + "/summary")};
    }
    if (dag.find(n.path)) r.fail(p + "/path", "duplicate path");
    dag.add_node(std::move(n));
  }
  const json& edges = r.array(j, "edges", "");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = at("/edges", i);
    auto from = dag.find(r.str(edges[i], "from", p));
    auto to = dag.find(r.str(edges[i], "to", p));
    if (!from || !to) r.fail(p, "edge endpoint is not a node");
    dag.add_edge(*from, *to);
  }
  return dag;
}

AttackDag load_tree(const fs::path& path) {
  return tree_from_json(read_json_file(path), path.string());
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError(tmp.string(), "cannot write file");
    out << content;
    out.flush();
    if (!out) throw LoadError(tmp.string(), "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw LoadError(path.string(), "rename failed: " + ec.message());
}

void save_overlay(const fs::path& path, const Overlay& overlay) {
  write_file_atomic(path, overlay_to_json(overlay).dump(2) + "\n");
}

BundlePaths bundle_paths(const fs::path& root) {
  fs::path file = fs::is_directory(root) ? root / "bundle.json" : root;
  const json j = read_json_file(file);
  Reader r(file.string());
  r.version(j);
  const fs::path dir = file.parent_path();
  auto resolve = [&](const char* key) { return dir / r.str(j, key, ""); };
  BundlePaths p;
  p.bundle = file;
  p.architecture = resolve("architecture");
  p.study = resolve("study");
  p.kb = resolve("kb");
  if (auto c = r.opt_str(j, "config", "")) p.config = dir / *c;
  p.overlay = dir / r.opt_str(j, "overlay", "").value_or("overlay.json");
  p.output = dir / r.opt_str(j, "output", "").value_or("out");
  return p;
}

std::shared_ptr<const ArchitectureModel> load_model(const fs::path& path) {
  return std::make_shared<const ArchitectureModel>(
      model_from_json(read_json_file(path), path.string()));
}

std::vector<Diagnostic> cross_validate(const ArchitectureModel& model,
                                       const RiskStudy& study,
                                       const KnowledgeBase& kb) {
  std::vector<Diagnostic> diags = validate_study(study, model, kb);
  std::vector<std::string> errors, warnings;
  for (const Diagnostic& d : diags) {
    if (d.severity == Diagnostic::Severity::kError)
      errors.push_back(d.code + ": " + d.message);
    else
      warnings.push_back(d.code + ": " + d.message);
  }
  if (!errors.empty()) throw ValidationError("invalid study", std::move(errors));
  std::vector<Diagnostic> out;
  for (const Diagnostic& d : diags)
    if (d.severity == Diagnostic::Severity::kWarning) out.push_back(d);
  return out;
}

Bundle load_bundle(const fs::path& root) {
  Bundle b;
  b.paths = bundle_paths(root);
  for (const fs::path& f : {b.paths.architecture, b.paths.study, b.paths.kb})
    if (!fs::exists(f)) throw LoadError(f.string(), "file not found");
  b.model = load_model(b.paths.architecture);
  b.kb = std::make_shared<const KnowledgeBase>(
      kb_from_json(read_json_file(b.paths.kb), b.paths.kb.string()));
  b.study = std::make_shared<const RiskStudy>(
      study_from_json(read_json_file(b.paths.study), b.paths.study.string()));
  if (b.paths.config)
    b.config = config_from_json(read_json_file(*b.paths.config),
                                b.paths.config->string());
  if (fs::exists(b.paths.overlay))
    b.overlay = overlay_from_json(read_json_file(b.paths.overlay),
                                  b.paths.overlay.string());
  b.warnings = cross_validate(*b.model, *b.study, *b.kb);
  return b;
}

Outcome run_generation(const Bundle& bundle, const std::string& feared_event,
                       const GenerationConfig& config, const AttackDag* old) {
  const Sources sources = bundle.sources();
  FearedEvent event = resolve_feared_event(feared_event, sources.model,
                                           sources.study, sources.kb);
  if (!old) {
    AttackDag dag = generate(event, sources, config);
    RegenReport report = initial_report(dag, bundle.overlay);
    return {std::move(event), std::move(dag), std::move(report)};
  }
  RegenResult r = regenerate(event, sources, config, *old, bundle.overlay);
  return {std::move(event), std::move(r.dag), std::move(r.report)};
}

void write_outputs(const fs::path& dir, const Outcome& outcome,
                   const Overlay& overlay) {
  fs::create_directories(dir);
  const std::string fe = outcome.event.id;
  write_file_atomic(dir / (fe + ".tree.json"), dump_tree(outcome.dag));
  DotOptions options;
  options.overlay = &overlay;
  write_file_atomic(dir / (fe + ".dot"), export_dot(outcome.dag, options));
  write_file_atomic(dir / (fe + ".report.json"),
                    report_to_json(outcome.report).dump(2) + "\n");
}

}  // namespace atgen
