/// @file arch_model.h
/// Portable architecture model: the operational level (entities,
/// activities, processes, states and modes) and the logical level
/// (components, ports, interfaces, functional chains), with trace links
/// between the two. The model is immutable once constructed.

#ifndef ATGEN_ARCH_MODEL_H_
#define ATGEN_ARCH_MODEL_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace atgen {

enum class AccessKind { kPhysical, kLogical, kBoth };
enum class TraceKind { kProcessChain, kEntityComponent };

/// Result of an access query. A design states what actors are expected
/// to do, never what they cannot do, hence the third value.
enum class Access { kYes, kNo, kUnknown };

const char* to_string(AccessKind kind);
const char* to_string(TraceKind kind);
const char* to_string(Access access);

struct OperationalEntity {
  std::string id;
  std::string name;
  bool is_actor = false;
};

struct OperationalActivity {
  std::string id;
  std::string name;
  std::string owner;  ///< OperationalEntity id.
};

struct OperationalProcess {
  std::string id;
  std::string name;
  std::vector<std::string> activities;  ///< Ordered activity ids.
  std::string first_activity;
  std::string last_activity;
};

struct Mode {
  std::string id;
  std::string name;
};

struct State {
  std::string id;
  std::string name;
  std::vector<Mode> modes;
};

/// "Process can run in this state (and mode)". An absent mode covers the
/// whole state; it is only allowed for states without per-mode entries.
struct MatrixEntry {
  std::string state;
  std::optional<std::string> mode;
  std::string process;
};

struct Port {
  std::string id;
  std::string name;
  AccessKind access = AccessKind::kBoth;
  bool external = false;  ///< Reachable from outside the system boundary.
};

struct LogicalComponent {
  std::string id;
  std::string name;
  std::optional<std::string> parent;
  std::vector<Port> ports;
};

/// Ports are only unique within their component.
struct PortRef {
  std::string component;
  std::string port;

  auto operator<=>(const PortRef&) const = default;
  std::string str() const { return component + "/" + port; }
};

struct InterfaceDef {
  std::string id;
  std::string name;
  std::vector<std::string> exposed_by;  ///< Component ids.
  std::vector<PortRef> ports;
};

struct FunctionalChain {
  std::string id;
  std::string name;
  std::vector<std::string> components;
  std::vector<std::string> interfaces;
};

struct TraceLink {
  std::string from;  ///< Operational artefact id.
  std::string to;    ///< Logical artefact id.
  TraceKind kind = TraceKind::kProcessChain;
};

struct PortConnection {
  PortRef a;
  PortRef b;
};

struct PortAvailability {
  PortRef port;
  std::string state;
  std::optional<std::string> mode;  ///< Absent: every mode of the state.
};

/// A (state, optional mode) pair in which something happens.
struct Context {
  std::string state;
  std::optional<std::string> mode;

  bool operator==(const Context&) const = default;
};

/// Plain aggregate used to build a model; validated by ArchitectureModel.
struct ModelData {
  std::vector<OperationalEntity> entities;
  std::vector<OperationalActivity> activities;
  std::vector<OperationalProcess> processes;
  std::vector<State> states;
  std::vector<MatrixEntry> matrix;
  std::vector<LogicalComponent> components;
  std::vector<InterfaceDef> interfaces;
  std::vector<FunctionalChain> chains;
  std::vector<TraceLink> traces;
  std::vector<PortConnection> connections;
  std::vector<PortAvailability> availability;
};

/// Validated, indexed, read-only architecture model.
///
/// Artefact ids share one namespace across kinds (entities, activities,
/// processes, states, modes, components, interfaces, chains) and may not
/// contain '/' or '#', since they become canonical path segments.
class ArchitectureModel {
 public:
  /// @throws ValidationError listing every structural problem found.
  explicit ArchitectureModel(ModelData data);

  const ModelData& data() const { return data_; }

  const OperationalEntity* entity(std::string_view id) const;
  const OperationalActivity* activity(std::string_view id) const;
  const OperationalProcess* process(std::string_view id) const;
  const State* state(std::string_view id) const;
  const Mode* mode(std::string_view id) const;
  const LogicalComponent* component(std::string_view id) const;
  const Port* port(const PortRef& ref) const;
  const InterfaceDef* interface(std::string_view id) const;
  const FunctionalChain* chain(std::string_view id) const;

  /// Display name of any artefact (ports addressed as "component/port").
  const std::string* name_of(std::string_view id) const;

  /// Entities whose display name matches, exact first then case-folded.
  std::vector<const OperationalEntity*> entities_named(
      std::string_view name) const;

  bool is_container(std::string_view component_id) const;
  std::vector<std::string> children_of(std::string_view component_id) const;

  /// Whether an interface has at least one external realizing port.
  bool is_external(const InterfaceDef& iface) const;

 private:
  enum class Kind { kEntity, kActivity, kProcess, kState, kMode, kComponent,
                    kInterface, kChain };
  struct Slot {
    Kind kind;
    std::size_t index;
    std::size_t sub = 0;  ///< Mode index within its state.
  };

  const Slot* find(std::string_view id, Kind kind) const;
  void Index(std::vector<std::string>* issues);
  void Validate(std::vector<std::string>* issues) const;

  ModelData data_;
  std::unordered_map<std::string, Slot> index_;
  std::unordered_map<std::string, std::size_t> port_index_;  // "cmp/port"
  std::unordered_map<std::string, std::vector<std::string>> children_;
};

/// Matrix entries for a process, ordered by state then mode declaration.
/// @throws ResolutionError on unknown process.
std::vector<Context> admissible_contexts(const ArchitectureModel& model,
                                         std::string_view process_id);

/// @throws UntracedProcessError when no process-to-chain link exists.
const FunctionalChain& chain_for_process(const ArchitectureModel& model,
                                         std::string_view process_id);

/// Whether a port may be used in a context. Ports without availability
/// entries are usable everywhere; a missing context means "any".
bool port_available(const ArchitectureModel& model, const PortRef& port,
                    const std::optional<Context>& context);

/// Tri-state access of an actor to a component or interface.
///
/// kYes: a path of matching, available ports leads from one of the
/// actor's traced components to the target, and the actor is an expected
/// user of the target (shares a functional chain with it).
/// kUnknown: the path exists but no chain makes the actor an expected user.
/// kNo: no such path.
///
/// @param kind kPhysical or kLogical; kBoth accepts any port.
/// @throws ResolutionError for unknown targets or actors that are not
///         modeled actors.
Access actor_has_access(const ArchitectureModel& model,
                        std::string_view actor_id, std::string_view target_id,
                        AccessKind kind,
                        const std::optional<Context>& context);

}  // namespace atgen

#endif  // ATGEN_ARCH_MODEL_H_
