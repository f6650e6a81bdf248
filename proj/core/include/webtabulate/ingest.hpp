#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "webtabulate/tree.hpp"

namespace webtabulate {

/// Label given to the elements of a top-level anonymous array.
inline constexpr std::string_view kRootElementLabel = "record";
/// Label of the synthetic leaf holding text mixed with child elements.
inline constexpr std::string_view kMixedTextLabel = "#text";

/// JSON object members become children labeled by key; an array under key k
/// becomes a sequence node k whose elements are all labeled k. Scalars are
/// carried as their source text, null as the null marker. Empty objects and
/// arrays produce no node. Throws ParseError on invalid JSON.
TreeNode parse_json(std::string_view body);

/// Elements become Inner nodes, attributes become leading Leaf children,
/// a childless element with only text becomes a Leaf. Namespace prefixes are
/// stripped from labels; `xmlns` declarations are kept as leaves labeled
/// "xmlns". Throws ParseError on malformed XML.
TreeNode parse_xml(std::string_view body);

/// Same mapping rules as parse_json. Multi-document streams throw
/// Errc::MultiDocumentUnsupported; a scalar document is MalformedDocument.
TreeNode parse_yaml(std::string_view body);

struct SniffResult {
  TreeNode tree;
  MimeKind mime;
};

/// Maps a Content-Type value (parameters ignored) to a format, or Unknown.
MimeKind mime_from_content_type(std::string_view content_type);

/// Format the body would be parsed as: declared type first, otherwise the
/// first non-whitespace byte. Does not parse.
MimeKind detect_mime(std::string_view body, std::optional<std::string_view> declared);

/// Well-formed UTF-8 without C0 control bytes other than whitespace and ESC.
bool is_utf8_text(std::string_view bytes) noexcept;

/// Decodes and parses a (decompressed) body. Tries the declared format, then
/// the sniffed one. Throws Errc::NonTextBody for invalid UTF-8 and
/// Errc::UnparseableBody when every candidate parser fails.
SniffResult sniff_and_parse(std::string_view body,
                            std::optional<std::string_view> declared_mime = std::nullopt);

}  // namespace webtabulate
