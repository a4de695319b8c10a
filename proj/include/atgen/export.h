/// @file export.h
/// Renderers for generated DAGs.

#ifndef ATGEN_EXPORT_H_
#define ATGEN_EXPORT_H_

#include <cstddef>
#include <string>

#include "atgen/attack_tree.h"

namespace atgen {

struct DotOptions {
  const Overlay* overlay = nullptr;  ///< Colors and closed decisions.
  std::size_t wrap = 40;             ///< Label wrap width; 0 disables.
};

/// Graphviz digraph. Node ids are canonical paths; OR nodes are ellipses,
/// AND groupings a labeled junction, leaves boxes. Status flags and
/// overlay decisions only change fill colors.
std::string export_dot(const AttackDag& dag, const DotOptions& options = {});

/// Indented outline from the root. A shared node is expanded once; later
/// occurrences are marked and not repeated.
std::string export_text(const AttackDag& dag, const Overlay* overlay = nullptr);

}  // namespace atgen

#endif  // ATGEN_EXPORT_H_
