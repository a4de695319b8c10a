/// @file io.h
/// On-disk formats. Every document is JSON carrying "format_version": 1.
/// Schema errors name the file and a JSON pointer; syntax errors name the
/// line and column.

#ifndef ATGEN_IO_H_
#define ATGEN_IO_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "atgen/attack_tree.h"
#include "atgen/maintenance.h"

namespace atgen {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Parses text, mapping syntax errors to LoadError with line:column.
json parse_json(const std::string& text, const std::string& file);
json read_json_file(const std::filesystem::path& path);

ModelData model_from_json(const json& j, const std::string& file);
json model_to_json(const ModelData& data);
KbData kb_from_json(const json& j, const std::string& file);
json kb_to_json(const KbData& data);
StudyData study_from_json(const json& j, const std::string& file);
json study_to_json(const StudyData& data);
GenerationConfig config_from_json(const json& j, const std::string& file);
json config_to_json(const GenerationConfig& config);
Overlay overlay_from_json(const json& j, const std::string& file);
json overlay_to_json(const Overlay& overlay);
json report_to_json(const RegenReport& report);
RegenReport report_from_json(const json& j, const std::string& file);

json node_to_json(const DagNode& node);
/// {feared_event, config, nodes, edges}; the document form of a tree.
json tree_to_json(const AttackDag& dag);
/// Same content as tree_to_json, one node or edge per line so tree files
/// diff cleanly.
std::string dump_tree(const AttackDag& dag);
AttackDag tree_from_json(const json& j, const std::string& file);
AttackDag load_tree(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);
void save_overlay(const std::filesystem::path& path, const Overlay& overlay);

/// Files of a project, resolved against the bundle file's directory.
struct BundlePaths {
  std::filesystem::path bundle;
  std::filesystem::path architecture;
  std::filesystem::path study;
  std::filesystem::path kb;
  std::optional<std::filesystem::path> config;
  std::filesystem::path overlay;  ///< May not exist yet.
  std::filesystem::path output;
};

/// Loaded and cross-validated inputs.
struct Bundle {
  BundlePaths paths;
  std::shared_ptr<const ArchitectureModel> model;
  std::shared_ptr<const RiskStudy> study;
  std::shared_ptr<const KnowledgeBase> kb;
  GenerationConfig config;
  Overlay overlay;
  std::vector<Diagnostic> warnings;

  Sources sources() const { return {*model, *study, *kb}; }
};

/// @param root a bundle.json file or a directory holding one.
BundlePaths bundle_paths(const std::filesystem::path& root);

/// Reads every file and runs study validation and feared-event parsing.
/// @throws LoadError for unreadable or malformed files, ValidationError
///         for structural and cross-reference failures.
Bundle load_bundle(const std::filesystem::path& root);

/// Loads one architecture file into a validated model.
std::shared_ptr<const ArchitectureModel> load_model(
    const std::filesystem::path& path);

/// Checks study against model and KB, and resolves every feared event.
/// @throws ValidationError carrying all error diagnostics.
std::vector<Diagnostic> cross_validate(const ArchitectureModel& model,
                                       const RiskStudy& study,
                                       const KnowledgeBase& kb);

/// Outcome of one generation or regeneration run.
struct Outcome {
  FearedEvent event;
  AttackDag dag;
  RegenReport report;
};

/// Generates the feared event, or regenerates it against old when given.
Outcome run_generation(const Bundle& bundle, const std::string& feared_event,
                       const GenerationConfig& config,
                       const AttackDag* old = nullptr);

/// Writes <fe>.tree.json, <fe>.dot and <fe>.report.json into dir.
void write_outputs(const std::filesystem::path& dir, const Outcome& outcome,
                   const Overlay& overlay);

}  // namespace atgen

#endif  // ATGEN_IO_H_
