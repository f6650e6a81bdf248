#include "fixtures.hpp"

#include <zlib.h>

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#ifndef WEBTABULATE_FIXTURES_DIR
#error "WEBTABULATE_FIXTURES_DIR must be defined"
#endif

namespace testing_support {

std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(WEBTABULATE_FIXTURES_DIR) / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string read_fixture(const std::string& name) { return read_file(fixture_path(name)); }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

namespace {

std::string deflate_with(const std::string& data, int window_bits) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, window_bits, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, data.size()) + 32, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
  out.resize(zs.total_out);
  return out;
}

void put16(std::string& s, unsigned v) {
  s += static_cast<char>(v & 0xff);
  s += static_cast<char>((v >> 8) & 0xff);
}

void put32(std::string& s, unsigned long v) {
  put16(s, static_cast<unsigned>(v & 0xffff));
  put16(s, static_cast<unsigned>((v >> 16) & 0xffff));
}

}  // namespace

std::string gzip_compress(const std::string& data) { return deflate_with(data, 15 + 16); }
std::string zlib_compress(const std::string& data) { return deflate_with(data, 15); }

std::string make_zip(const std::string& entry_name, const std::string& data) {
  const unsigned long crc =
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
  std::string zip;
  put32(zip, 0x04034b50);
  put16(zip, 20);
  put16(zip, 0);
  put16(zip, 0);  // stored
  put16(zip, 0);
  put16(zip, 0);
  put32(zip, crc);
  put32(zip, data.size());
  put32(zip, data.size());
  put16(zip, static_cast<unsigned>(entry_name.size()));
  put16(zip, 0);
  zip += entry_name;
  zip += data;
  const unsigned long central_offset = zip.size();
  put32(zip, 0x02014b50);
  put16(zip, 20);
  put16(zip, 20);
  put16(zip, 0);
  put16(zip, 0);
  put16(zip, 0);
  put16(zip, 0);
  put32(zip, crc);
  put32(zip, data.size());
  put32(zip, data.size());
  put16(zip, static_cast<unsigned>(entry_name.size()));
  put16(zip, 0);
  put16(zip, 0);
  put16(zip, 0);
  put16(zip, 0);
  put32(zip, 0);
  put32(zip, 0);
  zip += entry_name;
  const unsigned long central_size = zip.size() - central_offset;
  put32(zip, 0x06054b50);
  put16(zip, 0);
  put16(zip, 0);
  put16(zip, 1);
  put16(zip, 1);
  put32(zip, central_size);
  put32(zip, central_offset);
  put16(zip, 0);
  return zip;
}

}  // namespace testing_support
