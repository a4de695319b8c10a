// Paths to shipped data and a scratch directory per test.

#ifndef ATGEN_TESTS_FIXTURES_H_
#define ATGEN_TESTS_FIXTURES_H_

#include <filesystem>
#include <random>
#include <string>

namespace atgen::testing {

inline std::filesystem::path running_example() {
  return std::filesystem::path(ATGEN_DATA_DIR) / "running_example";
}

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(ATGEN_FIXTURE_DIR) / name;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  std::random_device rd;
  auto dir = std::filesystem::temp_directory_path() /
             ("atgen-" + tag + "-" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace atgen::testing

#endif  // ATGEN_TESTS_FIXTURES_H_
