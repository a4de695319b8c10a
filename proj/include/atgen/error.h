/// @file error.h
/// Exception hierarchy shared by all atgen modules.

#ifndef ATGEN_ERROR_H_
#define ATGEN_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace atgen {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identifier or display name does not resolve to a known artefact.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A process has no process-to-chain trace link.
class UntracedProcessError : public ResolutionError {
 public:
  explicit UntracedProcessError(const std::string& process_id)
      : ResolutionError("untraced process: " + process_id),
        process_id_(process_id) {}

  const std::string& process_id() const { return process_id_; }

 private:
  std::string process_id_;
};

/// Chain participants lack a supporting-asset type tag.
class UntypedAssetError : public ResolutionError {
 public:
  explicit UntypedAssetError(std::vector<std::string> components);

  const std::vector<std::string>& components() const { return components_; }

 private:
  std::vector<std::string> components_;
};

/// Text does not follow the feared-event grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Structural validation failure of an in-memory model, KB or study.
/// Carries every issue found, not just the first.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> issues);

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// A file could not be read or does not follow its schema.
class LoadError : public Error {
 public:
  LoadError(const std::string& file, const std::string& msg)
      : Error(file + ": " + msg), file_(file) {}

  const std::string& file() const { return file_; }

 private:
  std::string file_;
};

/// Generation cannot proceed (fail-fast errors in the construction steps).
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace atgen

#endif  // ATGEN_ERROR_H_
