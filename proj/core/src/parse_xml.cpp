#include <expat.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"

namespace webtabulate {
namespace {

std::string_view strip_prefix(std::string_view name) {
  const auto colon = name.find(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

std::string_view trim(std::string_view text) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

struct Element {
  std::string label;
  std::vector<TreeNode> children;
  std::size_t attribute_count = 0;
  std::string text;
};

struct ParserState {
  std::vector<Element> stack;
  std::optional<TreeNode> root;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* state = static_cast<ParserState*>(user);
  Element element;
  element.label = std::string(strip_prefix(name));
  for (const XML_Char** a = attrs; *a != nullptr; a += 2) {
    std::string_view attr_name = a[0];
    std::string label = (attr_name == "xmlns" || attr_name.starts_with("xmlns:"))
                            ? std::string("xmlns")
                            : std::string(strip_prefix(attr_name));
    element.children.push_back(TreeNode::leaf(std::move(label), std::string(a[1])));
    ++element.attribute_count;
  }
  state->stack.push_back(std::move(element));
}

void XMLCALL on_text(void* user, const XML_Char* text, int len) {
  auto* state = static_cast<ParserState*>(user);
  if (state->stack.empty()) return;
  state->stack.back().text.append(text, static_cast<std::size_t>(len));
}

void XMLCALL on_end(void* user, const XML_Char*) {
  auto* state = static_cast<ParserState*>(user);
  Element element = std::move(state->stack.back());
  state->stack.pop_back();

  const std::string_view text = trim(element.text);
  TreeNode node = [&] {
    if (element.children.empty()) {
      return TreeNode::leaf(std::move(element.label),
                            text.empty() ? Cell{} : Cell{std::string(text)});
    }
    if (!text.empty()) {
      element.children.push_back(TreeNode::leaf(std::string(kMixedTextLabel), std::string(text)));
    }
    return TreeNode::inner(std::move(element.label), std::move(element.children));
  }();

  if (state->stack.empty()) {
    state->root = std::move(node);
  } else {
    state->stack.back().children.push_back(std::move(node));
  }
}

struct ParserDeleter {
  void operator()(XML_Parser parser) const { XML_ParserFree(parser); }
};

}  // namespace

TreeNode parse_xml(std::string_view body) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error(Errc::MalformedDocument, "cannot allocate XML parser");

  ParserState state;
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  const auto status =
      XML_Parse(parser.get(), body.data(), static_cast<int>(body.size()), XML_TRUE);
  if (status != XML_STATUS_OK) {
    const auto offset = XML_GetCurrentByteIndex(parser.get());
    throw ParseError(offset < 0 ? 0 : static_cast<std::size_t>(offset),
                     std::string("invalid XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!state.root) throw ParseError(0, "XML document has no root element");
  return std::move(*state.root);
}

}  // namespace webtabulate
