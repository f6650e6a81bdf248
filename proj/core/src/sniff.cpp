#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"

namespace webtabulate {
namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view strip_bom(std::string_view body) {
  if (body.starts_with("\xEF\xBB\xBF")) body.remove_prefix(3);
  return body;
}

MimeKind sniff_first_byte(std::string_view body) {
  const auto first = body.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return MimeKind::Unknown;
  switch (body[first]) {
    case '{':
    case '[': return MimeKind::JSON;
    case '<': return MimeKind::XML;
    default: return MimeKind::YAML;
  }
}

TreeNode run_parser(MimeKind kind, std::string_view body) {
  switch (kind) {
    case MimeKind::JSON: return parse_json(body);
    case MimeKind::XML:
    case MimeKind::RSS: return parse_xml(body);
    case MimeKind::YAML: return parse_yaml(body);
    case MimeKind::Unknown: break;
  }
  throw Error(Errc::UnparseableBody, "no parser for unknown format");
}

}  // namespace

MimeKind mime_from_content_type(std::string_view content_type) {
  std::string type = lowercase(content_type.substr(0, content_type.find(';')));
  const auto first = type.find_first_not_of(" \t");
  const auto last = type.find_last_not_of(" \t");
  type = first == std::string::npos ? std::string() : type.substr(first, last - first + 1);

  if (type == "application/json" || type == "text/json" || type.ends_with("+json")) {
    return MimeKind::JSON;
  }
  if (type == "application/rss+xml") return MimeKind::RSS;
  if (type == "application/xml" || type == "text/xml" || type.ends_with("+xml")) {
    return MimeKind::XML;
  }
  if (type == "application/x-yaml" || type == "text/yaml" || type == "application/yaml" ||
      type == "text/x-yaml") {
    return MimeKind::YAML;
  }
  return MimeKind::Unknown;
}

MimeKind detect_mime(std::string_view body, std::optional<std::string_view> declared) {
  if (declared) {
    if (auto kind = mime_from_content_type(*declared); kind != MimeKind::Unknown) return kind;
  }
  return sniff_first_byte(strip_bom(body));
}

bool is_utf8_text(std::string_view bytes) noexcept {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    // C0 controls other than whitespace and ESC mark binary payloads.
    if (c < 0x20 && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != 0x1B) {
      return false;
    }
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

SniffResult sniff_and_parse(std::string_view body, std::optional<std::string_view> declared_mime) {
  if (!is_utf8_text(body)) {
    throw Error(Errc::NonTextBody, "body is not valid UTF-8 text");
  }
  body = strip_bom(body);

  std::vector<MimeKind> candidates;
  const MimeKind declared =
      declared_mime ? mime_from_content_type(*declared_mime) : MimeKind::Unknown;
  if (declared != MimeKind::Unknown) candidates.push_back(declared);
  const MimeKind sniffed = sniff_first_byte(body);
  if (sniffed == MimeKind::Unknown) {
    throw Error(Errc::UnparseableBody, "empty body");
  }
  candidates.push_back(sniffed);
  // Flow-style YAML is a superset of most JSON quirks a strict parser rejects.
  if (sniffed == MimeKind::JSON) candidates.push_back(MimeKind::YAML);

  std::string failures;
  std::vector<MimeKind> tried;
  for (MimeKind kind : candidates) {
    const MimeKind parser_kind = kind == MimeKind::RSS ? MimeKind::XML : kind;
    if (std::find(tried.begin(), tried.end(), parser_kind) != tried.end()) continue;
    tried.push_back(parser_kind);
    try {
      TreeNode tree = run_parser(parser_kind, body);
      MimeKind reported = kind;
      if (parser_kind == MimeKind::XML) {
        const bool rss = declared == MimeKind::RSS || tree.label() == "rss" || tree.label() == "RDF";
        reported = rss ? MimeKind::RSS : MimeKind::XML;
      }
      return SniffResult{std::move(tree), reported};
    } catch (const Error& ex) {
      if (ex.code() == Errc::MultiDocumentUnsupported) throw;
      if (!failures.empty()) failures += "; ";
      failures += std::string(to_string(parser_kind)) + ": " + ex.what();
    }
  }
  throw Error(Errc::UnparseableBody, failures);
}

}  // namespace webtabulate
