// Shared test helpers: scratch directories and file writing.

#ifndef CTFEAT_TESTS_TESTUTIL_HPP
#define CTFEAT_TESTS_TESTUTIL_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>

namespace ctfeat::testutil {

inline std::filesystem::path unique_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("ctfeat_" + tag + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) : path(unique_temp_dir(tag)) {}
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

inline std::string write_file(const std::filesystem::path& path,
                              const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

}  // namespace ctfeat::testutil

#endif
