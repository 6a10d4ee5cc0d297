#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fdsl/ifs.hpp"

namespace fdsl::testing {

inline IfsSystem sierpinski() {
  return make_system({AffineMap{0.5, 0, 0, 0.5, 0.0, 0.0}, AffineMap{0.5, 0, 0, 0.5, 0.5, 0.0},
                      AffineMap{0.5, 0, 0, 0.5, 0.0, 0.5}});
}

// Fresh scratch directory under the build tree, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(std::filesystem::current_path() / ("tmp_" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fdsl::testing
