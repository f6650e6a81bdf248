#include <yaml-cpp/yaml.h>

#include <string>
#include <utility>
#include <vector>

#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"

namespace webtabulate {
namespace {

std::optional<TreeNode> convert(const YAML::Node& node, const std::string& label);

std::vector<TreeNode> convert_children(const YAML::Node& node, const std::string& label) {
  std::vector<TreeNode> children;
  if (node.IsMap()) {
    for (const auto& entry : node) {
      const std::string key = entry.first.IsNull() ? std::string() : entry.first.Scalar();
      if (auto child = convert(entry.second, key)) children.push_back(std::move(*child));
    }
  } else {
    for (const auto& element : node) {
      if (auto child = convert(element, label)) children.push_back(std::move(*child));
    }
  }
  return children;
}

std::optional<TreeNode> convert(const YAML::Node& node, const std::string& label) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return TreeNode::leaf(label, std::nullopt);
    case YAML::NodeType::Scalar:
      return TreeNode::leaf(label, node.Scalar());
    case YAML::NodeType::Sequence:
    case YAML::NodeType::Map: {
      auto children = convert_children(node, label);
      if (children.empty()) return std::nullopt;
      return TreeNode::inner(label, std::move(children), node.IsSequence());
    }
  }
  return std::nullopt;
}

}  // namespace

TreeNode parse_yaml(std::string_view body) {
  std::vector<YAML::Node> documents;
  try {
    documents = YAML::LoadAll(std::string(body));
  } catch (const YAML::Exception& ex) {
    throw ParseError(static_cast<std::size_t>(ex.mark.pos < 0 ? 0 : ex.mark.pos), ex.msg);
  }
  if (documents.size() > 1) {
    throw Error(Errc::MultiDocumentUnsupported,
                std::to_string(documents.size()) + " YAML documents in one body");
  }
  if (documents.empty()) throw ParseError(0, "empty YAML document");

  const YAML::Node& doc = documents.front();
  if (!doc.IsMap() && !doc.IsSequence()) {
    throw ParseError(0, "top-level YAML value must be a mapping or sequence");
  }
  const std::string element_label = doc.IsSequence() ? std::string(kRootElementLabel) : "";
  return TreeNode::inner("", convert_children(doc, element_label), doc.IsSequence());
}

}  // namespace webtabulate
