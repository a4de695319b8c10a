/// @file attack_tree.h
/// Attack DAG: layered nodes with canonical path identities, provenance
/// links back to source artefacts, status flags, and expert annotations
/// kept in a separate overlay.

#ifndef ATGEN_ATTACK_TREE_H_
#define ATGEN_ATTACK_TREE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "atgen/arch_model.h"
#include "atgen/knowledge_base.h"
#include "atgen/risk_study.h"

namespace atgen {

enum class NodeKind {
  kRoot,
  kState,
  kMode,
  kAssetType,
  kEntryPoint,
  kThreat,
  kThreatSource,
  kPrecondition,
  kAttackStub,
  kPostcondition,
  kExpertLeaf,
};

enum class Gate { kOr, kAnd };

/// Bit flags; a node carries any subset.
enum class Status : std::uint8_t {
  kGenerated = 1 << 0,
  kWarningOrphaned = 1 << 1,
  kNewSinceLast = 1 << 2,
  kExpertRequired = 1 << 3,
  kDisputable = 1 << 4,
};

const char* to_string(NodeKind kind);
const char* to_string(Gate gate);
const char* to_string(Status status);
std::optional<NodeKind> node_kind_from(std::string_view s);
std::optional<Gate> gate_from(std::string_view s);
std::optional<Status> status_from(std::string_view s);

class StatusSet {
 public:
  StatusSet() = default;
  StatusSet(std::initializer_list<Status> flags) {
    for (Status s : flags) set(s);
  }

  bool has(Status s) const { return bits_ & static_cast<std::uint8_t>(s); }
  void set(Status s) { bits_ |= static_cast<std::uint8_t>(s); }
  void clear(Status s) { bits_ &= ~static_cast<std::uint8_t>(s); }
  bool empty() const { return bits_ == 0; }
  /// Flag names in declaration order.
  std::vector<std::string> names() const;

  bool operator==(const StatusSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

/// What a provenance entry points at. kVerdict carries a retention
/// verdict, not an artefact id.
enum class Role {
  kEvent,
  kCriterion,
  kAsset,
  kEntity,
  kState,
  kMode,
  kAssetType,
  kComponent,
  kInterface,
  kThreat,
  kPrerequisite,
  kSource,
  kVerdict,
};

const char* to_string(Role role);
std::optional<Role> role_from(std::string_view s);

/// Serialized as "role:id".
struct Provenance {
  Role role;
  std::string id;

  bool operator==(const Provenance&) const = default;
  std::string str() const;
  static std::optional<Provenance> parse(std::string_view s);
};

/// What a warning stub remembers about the subtree it replaces.
struct WarningSummary {
  std::size_t node_count = 0;
  std::vector<std::string> labels;

  bool operator==(const WarningSummary&) const = default;
};

struct DagNode {
  std::string path;
  NodeKind kind = NodeKind::kRoot;
  Gate gate = Gate::kOr;
  std::string label;
  std::vector<Provenance> provenance;
  StatusSet status;
  std::vector<std::size_t> children;  ///< Indices into the owning DAG.
  std::optional<WarningSummary> summary;

  /// First provenance id with the role, if any.
  const std::string* ref(Role role) const;
};

struct GenerationConfig {
  bool dag_mode = true;
  bool include_asset_type_layer = true;
  bool emit_postconditions = false;

  bool operator==(const GenerationConfig&) const = default;
};

/// Rooted DAG stored as a node vector; node 0 is the root. Shared nodes
/// appear once and are referenced from several parents.
class AttackDag {
 public:
  AttackDag() = default;
  AttackDag(std::string feared_event, GenerationConfig config)
      : feared_event_(std::move(feared_event)), config_(config) {}

  const std::string& feared_event() const { return feared_event_; }
  const GenerationConfig& config() const { return config_; }

  /// Appends a node and returns its index. Duplicate paths are accepted
  /// here (validate_dag reports them); lookup resolves to the first.
  std::size_t add_node(DagNode node);
  void add_edge(std::size_t parent, std::size_t child);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const DagNode& node(std::size_t i) const { return nodes_[i]; }
  DagNode& node(std::size_t i) { return nodes_[i]; }
  const std::vector<DagNode>& nodes() const { return nodes_; }

  std::optional<std::size_t> find(std::string_view path) const;
  std::vector<std::size_t> parents(std::size_t i) const;
  std::size_t edge_count() const;

 private:
  std::string feared_event_;
  GenerationConfig config_;
  std::vector<DagNode> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// The three inputs labels and generation read from.
struct Sources {
  const ArchitectureModel& model;
  const RiskStudy& study;
  const KnowledgeBase& kb;
};

/// Whether a provenance entry still resolves in the sources.
bool resolves(const Provenance& p, const Sources& sources);

/// Label from the node kind template and the current display names of its
/// provenance artefacts. When an artefact no longer resolves, the node's
/// existing label is returned unchanged and *orphaned is set.
std::string synth_label(const DagNode& node, const Sources& sources,
                        bool* orphaned = nullptr);

struct DagDiagnostic {
  enum class Kind { kLayerOrder, kCycle, kMisplacedAnd, kDuplicatePath,
                    kSharedMismatch, kDanglingEdge };
  Kind kind;
  std::string path;
  std::string message;
};

const char* to_string(DagDiagnostic::Kind kind);

/// Structural check: layer order, cycles, AND gates outside the
/// threat-source layer, duplicate paths, inconsistent shared nodes.
std::vector<DagDiagnostic> validate_dag(const AttackDag& dag);

enum class Decision { kOpen, kClosed, kDeveloped };
const char* to_string(Decision d);
std::optional<Decision> decision_from(std::string_view s);

struct Annotation {
  Decision decision = Decision::kOpen;
  std::string comment;
  std::optional<std::string> color;

  bool operator==(const Annotation&) const = default;
};

/// Expert work keyed by canonical path; ordered for stable output.
using Overlay = std::map<std::string, Annotation>;

struct AnnotatedView {
  const AttackDag* dag = nullptr;
  std::map<std::string, Annotation> attached;
  std::vector<std::string> orphans;  ///< Overlay paths absent from the DAG.

  const Annotation* annotation(std::string_view path) const;
};

AnnotatedView merge_annotations(const AttackDag& dag, const Overlay& overlay);

}  // namespace atgen

#endif  // ATGEN_ATTACK_TREE_H_
