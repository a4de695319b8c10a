/// @file cli.cc

#include "atgen/cli.h"

#include <CLI11.hpp>

#include "atgen/error.h"
#include "atgen/export.h"
#include "atgen/http_api.h"
#include "atgen/io.h"

namespace atgen {

namespace fs = std::filesystem;

namespace {

void print_warnings(const Bundle& b, std::ostream& err) {
  for (const Diagnostic& d : b.warnings)
    err << "warning: " << d.code << ": " << d.message << "\n";
}

void print_summary(const Outcome& o, const fs::path& dir, std::ostream& out) {
  const RegenReport& r = o.report;
  out << o.event.id << ": " << o.dag.size() << " nodes -> " << dir.string()
      << "\n  unchanged " << r.unchanged.size() << ", relabeled "
      << r.relabeled.size() << ", added " << r.added.size() << ", removed "
      << r.removed.size() << ", warned " << r.warned.size()
      << ", orphaned annotations " << r.orphaned_annotations.size() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Attack tree generation from architecture models"};
  app.require_subcommand(1);

  std::string bundle_arg, fe_id, against, tree_arg, format = "dot", addr,
      out_dir, overlay_arg;
  bool no_layer = false, duplicate = false, postconditions = false;
  std::size_t wrap = 40;

  auto* validate = app.add_subcommand("validate", "Load and cross-check a bundle");
  validate->add_option("bundle", bundle_arg, "Bundle file or directory")->required();

  auto* gen = app.add_subcommand("generate", "Generate the attack DAG of a feared event");
  gen->add_option("bundle", bundle_arg, "Bundle file or directory")->required();
  gen->add_option("--feared-event", fe_id, "Feared event id")->required();
  gen->add_flag("--no-asset-layer", no_layer, "Omit the asset-type layer");
  gen->add_flag("--duplicate-subtrees", duplicate, "Duplicate shared subtrees");
  gen->add_flag("--postconditions", postconditions, "Emit postcondition leaves");
  gen->add_option("--out", out_dir, "Output directory");

  auto* regen = app.add_subcommand("regen", "Regenerate against a previous tree");
  regen->add_option("bundle", bundle_arg, "Bundle file or directory")->required();
  regen->add_option("--against", against, "Previous tree file")->required();
  regen->add_option("--out", out_dir, "Output directory");

  auto* exp = app.add_subcommand("export", "Render a tree file");
  exp->add_option("tree", tree_arg, "Tree file")->required();
  exp->add_option("--format", format, "dot or text")
      ->check(CLI::IsMember({"dot", "text"}));
  exp->add_option("--overlay", overlay_arg, "Overlay file for colors");
  exp->add_option("--wrap", wrap, "DOT label wrap width (0: none)");

  auto* serve = app.add_subcommand("serve", "Serve the review API");
  serve->add_option("bundle", bundle_arg, "Bundle file or directory")->required();
  serve->add_option("--addr", addr, "host:port")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (validate->parsed()) {
      Bundle b = load_bundle(bundle_arg);
      print_warnings(b, err);
      out << "ok: " << b.study->data().feared_events.size()
          << " feared events, " << b.model->data().components.size()
          << " components\n";
      return 0;
    }
    if (gen->parsed()) {
      Bundle b = load_bundle(bundle_arg);
      print_warnings(b, err);
      GenerationConfig config = b.config;
      if (no_layer) config.include_asset_type_layer = false;
      if (duplicate) config.dag_mode = false;
      if (postconditions) config.emit_postconditions = true;
      Outcome o = run_generation(b, fe_id, config);
      fs::path dir = out_dir.empty() ? b.paths.output : fs::path(out_dir);
      write_outputs(dir, o, b.overlay);
      print_summary(o, dir, out);
      return 0;
    }
    if (regen->parsed()) {
      Bundle b = load_bundle(bundle_arg);
      print_warnings(b, err);
      AttackDag old = load_tree(against);
      Outcome o = run_generation(b, old.feared_event(), old.config(), &old);
      fs::path dir = out_dir.empty() ? b.paths.output : fs::path(out_dir);
      write_outputs(dir, o, b.overlay);
      print_summary(o, dir, out);
      return 0;
    }
    if (exp->parsed()) {
      AttackDag dag = load_tree(tree_arg);
      Overlay overlay;
      if (!overlay_arg.empty())
        overlay = overlay_from_json(read_json_file(overlay_arg), overlay_arg);
      if (format == "text") {
        out << export_text(dag, overlay_arg.empty() ? nullptr : &overlay);
      } else {
        DotOptions options;
        options.wrap = wrap;
        if (!overlay_arg.empty()) options.overlay = &overlay;
        out << export_dot(dag, options);
      }
      return 0;
    }
    if (serve->parsed()) {
      auto colon = addr.rfind(':');
      int port = -1;
      if (colon != std::string::npos) {
        try {
          port = std::stoi(addr.substr(colon + 1));
        } catch (const std::exception&) {
        }
      }
      if (port < 0 || port > 65535) {
        err << "--addr must be host:port\n";
        return 2;
      }
      ReviewServer server(load_bundle(bundle_arg));
      out << "serving on " << addr << "\n" << std::flush;
      if (!server.listen(addr.substr(0, colon), port)) {
        err << "error: cannot listen on " << addr << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace atgen
