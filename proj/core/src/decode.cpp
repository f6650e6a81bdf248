#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "webtabulate/error.hpp"
#include "webtabulate/http_gateway.hpp"

namespace webtabulate {
namespace {

constexpr int kGzipOrZlib = 15 + 32;  // auto-detect gzip/zlib header
constexpr int kRawDeflate = -15;

bool inflate_into(std::string_view input, int window_bits, std::string& out) {
  z_stream stream{};
  if (inflateInit2(&stream, window_bits) != Z_OK) return false;
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(input.data()));
  stream.avail_in = static_cast<uInt>(input.size());

  char buffer[64 * 1024];
  int rc = Z_OK;
  out.clear();
  while (rc != Z_STREAM_END) {
    stream.next_out = reinterpret_cast<Bytef*>(buffer);
    stream.avail_out = sizeof(buffer);
    rc = inflate(&stream, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) break;
    out.append(buffer, sizeof(buffer) - stream.avail_out);
    // Concatenated gzip members.
    if (rc == Z_STREAM_END && stream.avail_in > 0 && window_bits == kGzipOrZlib) {
      if (inflateReset(&stream) != Z_OK) break;
      rc = Z_OK;
    }
    if (rc == Z_OK && stream.avail_in == 0 && stream.avail_out != 0) break;
  }
  inflateEnd(&stream);
  return rc == Z_STREAM_END;
}

std::string inflate_or_throw(std::string_view input, int window_bits, const char* what) {
  std::string out;
  if (!inflate_into(input, window_bits, out)) {
    throw Error(Errc::ArchiveError, std::string("corrupt ") + what + " stream");
  }
  return out;
}

std::uint32_t le16(std::string_view data, std::size_t at) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(data[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(data[at + 1])) << 8;
}

std::uint32_t le32(std::string_view data, std::size_t at) {
  return le16(data, at) | le16(data, at + 2) << 16;
}

bool is_gzip(std::string_view data) {
  return data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1F &&
         static_cast<unsigned char>(data[1]) == 0x8B;
}

bool is_zip(std::string_view data) { return data.starts_with(std::string_view("PK\x03\x04", 4)); }

// Extracts the only file entry of a zip archive via its central directory.
std::string unzip_single_entry(std::string_view zip) {
  constexpr std::uint32_t kEndOfDirectory = 0x06054b50;
  constexpr std::uint32_t kDirectoryEntry = 0x02014b50;
  constexpr std::uint32_t kLocalHeader = 0x04034b50;
  constexpr std::size_t kEndRecordSize = 22;

  if (zip.size() < kEndRecordSize) throw Error(Errc::ArchiveError, "truncated zip archive");
  std::size_t eocd = std::string_view::npos;
  const std::size_t lowest = zip.size() > kEndRecordSize + 0xFFFF ? zip.size() - kEndRecordSize - 0xFFFF : 0;
  for (std::size_t at = zip.size() - kEndRecordSize + 1; at-- > lowest;) {
    if (le32(zip, at) == kEndOfDirectory) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string_view::npos) throw Error(Errc::ArchiveError, "zip end record not found");

  const std::uint32_t entries = le16(zip, eocd + 10);
  std::size_t cursor = le32(zip, eocd + 16);

  struct Entry {
    std::uint32_t method, compressed, size, local_offset;
  };
  std::vector<Entry> files;
  for (std::uint32_t i = 0; i < entries; ++i) {
    if (cursor + 46 > zip.size() || le32(zip, cursor) != kDirectoryEntry) {
      throw Error(Errc::ArchiveError, "corrupt zip central directory");
    }
    const std::uint32_t name_len = le16(zip, cursor + 28);
    const std::uint32_t extra_len = le16(zip, cursor + 30);
    const std::uint32_t comment_len = le16(zip, cursor + 32);
    if (cursor + 46 + name_len > zip.size()) throw Error(Errc::ArchiveError, "corrupt zip entry name");
    const std::string_view name = zip.substr(cursor + 46, name_len);
    if (!name.ends_with('/')) {
      files.push_back({le16(zip, cursor + 10), le32(zip, cursor + 20), le32(zip, cursor + 24),
                       le32(zip, cursor + 42)});
    }
    cursor += 46 + name_len + extra_len + comment_len;
  }
  if (files.size() != 1) {
    throw Error(Errc::ArchiveError,
                "zip archive holds " + std::to_string(files.size()) + " files; expected exactly one");
  }

  const Entry& entry = files.front();
  if (entry.compressed == 0xFFFFFFFFu || entry.size == 0xFFFFFFFFu) {
    throw Error(Errc::ArchiveError, "zip64 archives are not supported");
  }
  const std::size_t local = entry.local_offset;
  if (local + 30 > zip.size() || le32(zip, local) != kLocalHeader) {
    throw Error(Errc::ArchiveError, "corrupt zip local header");
  }
  const std::size_t data_at = local + 30 + le16(zip, local + 26) + le16(zip, local + 28);
  if (data_at + entry.compressed > zip.size()) throw Error(Errc::ArchiveError, "truncated zip entry");
  const std::string_view data = zip.substr(data_at, entry.compressed);

  switch (entry.method) {
    case 0: return std::string(data);
    case 8: {
      auto out = inflate_or_throw(data, kRawDeflate, "zip deflate");
      if (out.size() != entry.size) throw Error(Errc::ArchiveError, "zip entry size mismatch");
      return out;
    }
    default:
      throw Error(Errc::ArchiveError,
                  "unsupported zip compression method " + std::to_string(entry.method));
  }
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string decode_body(std::string body, std::string_view content_encoding) {
  const std::string encoding = lowercase(content_encoding);
  if (encoding.find("gzip") != std::string::npos) {
    body = inflate_or_throw(body, kGzipOrZlib, "gzip");
  } else if (encoding.find("deflate") != std::string::npos) {
    // Servers disagree on whether "deflate" carries the zlib wrapper.
    std::string out;
    if (inflate_into(body, kGzipOrZlib, out) || inflate_into(body, kRawDeflate, out)) {
      body = std::move(out);
    } else {
      throw Error(Errc::ArchiveError, "corrupt deflate stream");
    }
  }
  // Nested wrappers (a gzip'd zip) are legal but rare; bound the unwrapping.
  for (int depth = 0; depth < 4; ++depth) {
    if (is_gzip(body)) {
      body = inflate_or_throw(body, kGzipOrZlib, "gzip");
    } else if (is_zip(body)) {
      body = unzip_single_entry(body);
    } else {
      break;
    }
  }
  return body;
}

}  // namespace webtabulate
