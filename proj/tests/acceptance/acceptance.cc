// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "atgen/cli.h"
#include "atgen/export.h"
#include "atgen/generator.h"
#include "atgen/io.h"
#include "support/fixtures.h"
#include "support/properties.h"

namespace fs = std::filesystem;
using namespace atgen;

namespace {

const std::string kCtx = "fe1/st-operating/md-engine-running";

struct Check {
  bool ok = true;
  std::string why;

  void need(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

struct Example {
  Bundle bundle;
  FearedEvent event;
  AttackDag dag;
};

Example running() {
  Example e;
  e.bundle = load_bundle(testing::running_example());
  e.event = resolve_feared_event("fe1", *e.bundle.model, *e.bundle.study, *e.bundle.kb);
  e.dag = generate(e.event, e.bundle.sources(), {});
  return e;
}

std::vector<std::size_t> kids(const AttackDag& dag, const std::string& path) {
  auto i = dag.find(path);
  return i ? dag.node(*i).children : std::vector<std::size_t>{};
}

std::set<std::string> entry_names(const Example& e, const std::string& type) {
  std::set<std::string> out;
  for (std::size_t c : kids(e.dag, kCtx + "/" + type)) {
    const DagNode& n = e.dag.node(c);
    const std::string* id = n.ref(Role::kComponent);
    if (!id) id = n.ref(Role::kInterface);
    if (id) out.insert(*e.bundle.model->name_of(*id));
  }
  return out;
}

Check step2() {
  Check c;
  auto start = std::chrono::steady_clock::now();
  Example e = running();
  AttackDag dag = step2_states_modes(step1_root(e.event, e.bundle.sources(), {}), e.event,
                                     e.bundle.sources());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.need(dag.size() == 3, "expected 3 nodes, got " + std::to_string(dag.size()));
  c.need(dag.node(0).children.size() == 1, "root must have one state child");
  if (!c.ok) return c;
  const DagNode& st = dag.node(dag.node(0).children[0]);
  c.need(st.kind == NodeKind::kState && *e.bundle.model->name_of(*st.ref(Role::kState)) == "Operating",
         "state child is not Operating");
  c.need(st.children.size() == 1, "state must have one mode child");
  if (!c.ok) return c;
  const DagNode& md = dag.node(st.children[0]);
  c.need(md.kind == NodeKind::kMode && *e.bundle.model->name_of(*md.ref(Role::kMode)) == "Engine Running",
         "mode child is not Engine Running");
  for (const DagNode& n : dag.nodes()) c.need(n.gate == Gate::kOr, "non-OR node " + n.path);
  c.need(secs < 1.0, "took " + std::to_string(secs) + " s");
  return c;
}

Check step3() {
  Check c;
  Example e = running();
  for (const DagNode& ctx : e.dag.nodes()) {
    bool leaf_context = (ctx.kind == NodeKind::kMode) ||
                        (ctx.kind == NodeKind::kState &&
                         std::none_of(ctx.children.begin(), ctx.children.end(), [&](std::size_t i) {
                           return e.dag.node(i).kind == NodeKind::kMode;
                         }));
    if (!leaf_context) continue;
    std::vector<std::string> types;
    for (std::size_t i : ctx.children)
      types.push_back(e.bundle.kb->asset_type(*e.dag.node(i).ref(Role::kAssetType))->name);
    c.need(types == std::vector<std::string>{"Hardware", "Software", "Networks", "Organisations"},
           "asset types under " + ctx.path);
  }
  return c;
}

Check step4() {
  Check c;
  Example e = running();
  c.need(entry_names(e, "HW") == std::set<std::string>{"Brake Pedal", "Brakes", "Braking Control",
                                                       "Wheel Speed Sensors"},
         "Hardware entry points");
  c.need(entry_names(e, "SW") == std::set<std::string>{"Braking Control", "Wheel Speed Sensors"},
         "Software entry points");
  c.need(entry_names(e, "ORG") == std::set<std::string>{"Chauffeur"}, "Organisations entry points");
  c.need(entry_names(e, "NET") == std::set<std::string>{"Dashboard"}, "Network entry points");
  for (const DagNode& n : e.dag.nodes())
    if (const std::string* id = n.ref(Role::kComponent))
      c.need(*id != "cmp-customer" && *id != "cmp-garage-mechanic", "unexpected actor " + n.path);
  for (const std::string cmp : {"cmp-braking-control", "cmp-wheel-speed-sensors"}) {
    std::size_t paths = 0;
    for (const DagNode& n : e.dag.nodes())
      if (n.kind == NodeKind::kEntryPoint && n.ref(Role::kComponent) &&
          *n.ref(Role::kComponent) == cmp)
        ++paths;
    auto i = e.dag.find(kCtx + "/SYS/" + cmp);
    c.need(paths == 1 && i && e.dag.parents(*i).size() == 2, cmp + " is not one shared node");
  }
  return c;
}

Check step5() {
  Check c;
  Example e = running();
  std::vector<std::string> chauffeur;
  for (std::size_t i : kids(e.dag, kCtx + "/ORG/cmp-chauffeur"))
    chauffeur.push_back(e.bundle.kb->threat(*e.dag.node(i).ref(Role::kThreat))->description);
  c.need(chauffeur == std::vector<std::string>{"Influence over a person",
                                               "Overloading of the capacity of a person"},
         "Chauffeur threats");
  for (std::size_t i : kids(e.dag, kCtx + "/HW"))
    c.need(e.dag.find(e.dag.node(i).path + "/MAT-MOD").has_value(),
           "MAT-MOD missing under " + e.dag.node(i).path);
  c.need(e.dag.find(kCtx + "/NET/if-dashboard/RSX-USG").has_value(), "RSX-USG on Dashboard");
  return c;
}

Check step6() {
  Check c;
  struct Row {
    bool modeled;
    Access access;
    bool malevolent;
    Verdict verdict;
    Intent intent;
  };
  using V = Verdict;
  // Rule as stated: unmodeled kept; full access kept; malevolent kept with
  // doubtful access; everything else (unknown access included) rejected.
  for (bool modeled : {false, true})
    for (Access a : {Access::kYes, Access::kNo, Access::kUnknown})
      for (bool mal : {false, true}) {
        Row want{modeled, a, mal, V::kRejected, Intent::kNone};
        if (!modeled) want.verdict = V::kRetainedUnknownSource;
        else if (a == Access::kYes) {
          want.verdict = V::kRetainedWithAccess;
          want.intent = mal ? Intent::kIntentional : Intent::kAccidental;
        } else if (mal) want.verdict = V::kRetainedMalevolentDoubtfulAccess;
        RetentionVerdict got = decide_retention(modeled, a, mal);
        c.need(got.verdict == want.verdict && got.intent == want.intent,
               "truth table row " + std::to_string(modeled) + to_string(a) + std::to_string(mal));
      }
  Example e = running();
  auto g = e.dag.find(kCtx + "/HW/cmp-brake-pedal/MAT-MOD/ts-chauffeur");
  c.need(g.has_value(), "MAT-MOD/Chauffeur group missing");
  if (!c.ok) return c;
  const DagNode& group = e.dag.node(*g);
  c.need(group.gate == Gate::kAnd, "group is not AND");
  std::vector<std::string> labels;
  bool stub = false;
  for (std::size_t i : group.children) {
    const DagNode& n = e.dag.node(i);
    if (n.kind == NodeKind::kPrecondition) labels.push_back(n.label);
    if (n.kind == NodeKind::kAttackStub) stub = true;
  }
  c.need(labels == std::vector<std::string>{"Knowledge of the existence and location of the hardware",
                                            "Physical access to the hardware"},
         "precondition leaves");
  c.need(stub, "attack stub missing");
  return c;
}

Check structural() {
  Check c;
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  testing::Violations v;
  for (int i = 0; i < 1000; ++i) testing::check_structure(testing::random_case(rng), v);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.need(v.count == 0, v.summary());
  c.need(secs < 60.0, "took " + std::to_string(secs) + " s");
  return c;
}

Check maintenance() {
  Check c;
  std::mt19937_64 rng(2);
  testing::Violations v;
  for (int i = 0; i < 1000; ++i) {
    testing::RandomCase rc = testing::random_case(rng);
    testing::check_rename(rc, rng, v);
    testing::check_delete(rc, rng, v);
    testing::check_identity(rc, v);
  }
  c.need(v.count == 0, v.summary());
  return c;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "atgen");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Check cli_contract() {
  Check c;
  fs::path dir = testing::scratch_dir("acceptance");
  const std::string example = testing::running_example().string();
  c.need(cli({"validate", example}) == 0, "validate running example");
  c.need(cli({"validate", testing::fixture("broken_unknown_entity").string()}) == 1,
         "validate broken fixture");
  c.need(cli({"validate", testing::fixture("missing_kb").string()}) == 1, "validate missing kb");
  c.need(cli({"generate", example}) == 2, "usage error");
  c.need(cli({"generate", example, "--feared-event", "fe1", "--out", dir.string()}) == 0,
         "generate");
  for (const char* f : {"fe1.tree.json", "fe1.dot", "fe1.report.json"})
    c.need(fs::exists(dir / f), std::string("missing ") + f);
  if (c.ok) {
    AttackDag dag = load_tree(dir / "fe1.tree.json");
    std::ifstream in(dir / "fe1.dot");
    std::size_t decls = 0;
    for (std::string line; std::getline(in, line);)
      if (line.find(" [label=") != std::string::npos) ++decls;
    c.need(decls == dag.size(), "DOT declares " + std::to_string(decls) + " nodes, DAG has " +
                                    std::to_string(dag.size()));
    c.need(cli({"regen", testing::fixture("rename").string(), "--against",
                (dir / "fe1.tree.json").string(), "--out", (dir / "next").string()}) == 0,
           "regen");
    RegenReport r = report_from_json(read_json_file(dir / "next" / "fe1.report.json"), "report");
    c.need(r.relabeled.size() == 1, "regen relabeled " + std::to_string(r.relabeled.size()));
  }
  fs::remove_all(dir);
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"step 2: root, one state, one mode, all OR", step2},
      {"step 3: four asset-type children per context", step3},
      {"step 4: entry points per asset type, shared composites", step4},
      {"step 5: threats per entry point", step5},
      {"step 6: retention truth table and AND group", step6},
      {"structural properties over 1000 random models", structural},
      {"maintenance properties over 1000 random models", maintenance},
      {"CLI contract: exit codes and DOT node count", cli_contract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "PASS " : "FAIL ") << name;
    if (!c.ok) std::cout << " (" << c.why << ")";
    std::cout << "\n";
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
