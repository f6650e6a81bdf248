#pragma once

#include <filesystem>
#include <string>

namespace testing_support {

std::filesystem::path fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
std::string read_file(const std::filesystem::path& path);

/// Fresh empty directory under the system temp dir, removed by the destructor.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "wt");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

std::string gzip_compress(const std::string& data);
std::string zlib_compress(const std::string& data);
/// Single stored entry zip archive.
std::string make_zip(const std::string& entry_name, const std::string& data);

}  // namespace testing_support
