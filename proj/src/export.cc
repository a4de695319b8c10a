/// @file export.cc

#include "atgen/export.h"

#include <vector>

namespace atgen {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

/// Greedy word wrap; words longer than the width stay whole.
std::string wrap(const std::string& text, std::size_t width) {
  if (width == 0) return text;
  std::string out, line;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(' ', start);
    if (end == std::string::npos) end = text.size();
    std::string word = text.substr(start, end - start);
    if (!line.empty() && line.size() + 1 + word.size() > width) {
      out += line + "\n";
      line.clear();
    }
    line += (line.empty() ? "" : " ") + word;
    start = end + 1;
  }
  return out + line;
}

/// Status flags in priority order; overlay decisions win over all.
const char* fill_for(const DagNode& n, const Annotation* note) {
  if (note && note->decision == Decision::kClosed) return "gray";
  if (n.status.has(Status::kWarningOrphaned)) return "orange";
  if (n.status.has(Status::kNewSinceLast)) return "lightblue";
  if (n.status.has(Status::kDisputable)) return "khaki";
  if (n.status.has(Status::kExpertRequired)) return "lightpink";
  return nullptr;
}

}  // namespace

std::string export_dot(const AttackDag& dag, const DotOptions& options) {
  std::string out = "digraph \"" + escape(dag.feared_event()) + "\" {\n";
  out += "  rankdir=TB;\n  node [fontsize=10];\n";
  for (const DagNode& n : dag.nodes()) {
    const Annotation* note = nullptr;
    if (options.overlay) {
      auto it = options.overlay->find(n.path);
      if (it != options.overlay->end()) note = &it->second;
    }
    std::string label = wrap(n.label, options.wrap);
    std::string shape = "ellipse";
    if (n.gate == Gate::kAnd) {
      shape = "house";
      label = "AND\n" + label;
    } else if (n.children.empty()) {
      shape = "box";
    }
    out += "  \"" + escape(n.path) + "\" [label=\"" + escape(label) +
           "\", shape=" + shape;
    std::string fill;
    if (note && note->color && note->decision != Decision::kClosed)
      fill = *note->color;
    else if (const char* f = fill_for(n, note))
      fill = f;
    if (!fill.empty()) out += ", style=filled, fillcolor=\"" + escape(fill) + "\"";
    out += "];\n";
  }
  for (const DagNode& n : dag.nodes())
    for (std::size_t c : n.children)
      out += "  \"" + escape(n.path) + "\" -> \"" + escape(dag.node(c).path) +
             "\";\n";
  out += "}\n";
  return out;
}

std::string export_text(const AttackDag& dag, const Overlay* overlay) {
  std::string out;
  if (dag.empty()) return out;
  std::vector<char> expanded(dag.size(), 0);
  auto visit = [&](auto&& self, std::size_t i, std::size_t depth) -> void {
    const DagNode& n = dag.node(i);
    out += std::string(depth * 2, ' ');
    if (n.gate == Gate::kAnd) out += "[AND] ";
    out += n.label;
    for (const std::string& s : n.status.names())
      if (s != "generated") out += " {" + s + "}";
    if (overlay) {
      auto it = overlay->find(n.path);
      if (it != overlay->end()) out += " <" + std::string(to_string(it->second.decision)) + ">";
    }
    if (expanded[i]) {
      out += " (shared, see above)\n";
      return;
    }
    expanded[i] = 1;
    out += "\n";
    for (std::size_t c : n.children) self(self, c, depth + 1);
  };
  visit(visit, 0, 0);
  for (std::size_t i = 0; i < dag.size(); ++i)
    if (!expanded[i] && dag.parents(i).empty()) visit(visit, i, 0);
  return out;
}

}  // namespace atgen
