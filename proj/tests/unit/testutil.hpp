#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>

#include "stereogen/csv.hpp"

namespace testutil {

/// Writes content under a per-process scratch directory and returns the path.
inline std::string temp_file(const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("stereogen_tests_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path path = dir / name;
  stereogen::write_file(path.string(), content);
  return path.string();
}

}  // namespace testutil
