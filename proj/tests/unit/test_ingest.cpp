#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"

using namespace webtabulate;
using testing_support::read_fixture;

namespace {

const TreeNode* child(const TreeNode& n, std::string_view label, std::size_t pos = 1) {
  for (const auto& c : n.children())
    if (c.label() == label && c.position() == pos) return &c;
  return nullptr;
}

}  // namespace

TEST(ParseJson, ArrayOfObjectsBecomesSequence) {
  auto root = parse_json(R"({"k":[{"v":"x"},{"v":"y"}]})");
  const TreeNode* k = child(root, "k");
  ASSERT_NE(k, nullptr);
  EXPECT_TRUE(k->is_sequence());
  ASSERT_EQ(k->children().size(), 2u);
  EXPECT_EQ(k->children()[0].label(), "k");
  EXPECT_EQ(k->children()[0].position(), 1u);
  EXPECT_EQ(k->children()[1].position(), 2u);
  const auto expected = TreeNode::inner(
      "", {TreeNode::inner("k", {TreeNode::inner("k", {TreeNode::leaf("v", "x")}),
                                 TreeNode::inner("k", {TreeNode::leaf("v", "y")})},
                           true)});
  EXPECT_EQ(root, expected);
}

TEST(ParseJson, ScalarsKeepSourceText) {
  auto root = parse_json(R"({"i":123,"f":1.50,"b":true,"n":null,"s":"t"})");
  EXPECT_EQ(*child(root, "i")->value(), "123");
  EXPECT_EQ(*child(root, "f")->value(), "1.50");
  EXPECT_EQ(*child(root, "b")->value(), "true");
  EXPECT_FALSE(child(root, "n")->value().has_value());
  EXPECT_EQ(*child(root, "s")->value(), "t");
}

TEST(ParseJson, EmptyContainersProduceNoNode) {
  auto root = parse_json(R"({"a":{},"b":[],"c":"x"})");
  ASSERT_EQ(root.children().size(), 1u);
  EXPECT_EQ(root.children()[0].label(), "c");
}

TEST(ParseJson, RootArrayElementsAreRecords) {
  auto root = parse_json(R"([{"a":"1"},{"a":"2"}])");
  EXPECT_TRUE(root.is_sequence());
  EXPECT_EQ(root.children()[0].label(), kRootElementLabel);
}

TEST(ParseJson, ErrorsCarryOffset) {
  try {
    parse_json(R"({"a": )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), Errc::MalformedDocument);
    EXPECT_GT(e.offset(), 0u);
  }
  EXPECT_THROW(parse_json("42"), Error);
}

TEST(ParseXml, FirmStructure) {
  auto root = parse_xml(read_fixture("firm.xml"));
  EXPECT_EQ(root.label(), "firm");
  const TreeNode* employees = child(root, "employees");
  ASSERT_NE(employees, nullptr);
  EXPECT_EQ(employees->children().size(), 2u);
  EXPECT_EQ(employees->children()[1].segment(), "employee[2]");
  EXPECT_EQ(*child(root, "firmName")->value(), "MicroCapital Ltd");
}

TEST(ParseXml, AttributesNamespacesAndText) {
  auto root = parse_xml(R"(<?xml version="1.0"?><wb:data xmlns:wb="http://x" page="1"><wb:v id="a">text</wb:v><e/></wb:data>)");
  EXPECT_EQ(root.label(), "data");
  ASSERT_GE(root.children().size(), 4u);
  EXPECT_EQ(root.children()[0].label(), "xmlns");
  EXPECT_EQ(*root.children()[0].value(), "http://x");
  EXPECT_EQ(root.children()[1].label(), "page");
  const TreeNode* v = child(root, "v");
  ASSERT_NE(v, nullptr);
  ASSERT_EQ(v->children().size(), 2u);
  EXPECT_EQ(v->children()[0].label(), "id");
  EXPECT_EQ(v->children()[1].label(), kMixedTextLabel);
  EXPECT_EQ(*v->children()[1].value(), "text");
  const TreeNode* e = child(root, "e");
  ASSERT_NE(e, nullptr);
  EXPECT_TRUE(e->is_leaf());
  EXPECT_FALSE(e->value().has_value());
}

TEST(ParseXml, Malformed) {
  EXPECT_THROW(parse_xml("<a><b></a>"), ParseError);
}

TEST(ParseYaml, MatchesJsonTree) {
  auto yaml = parse_yaml(read_fixture("firm.yaml"));
  auto json = parse_json(read_fixture("firm.json"));
  EXPECT_EQ(yaml, json);
}

TEST(ParseYaml, SequenceOfMappings) {
  auto root = parse_yaml("employee:\n  - a: 1\n  - a: 2\n");
  const TreeNode* e = child(root, "employee");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->children()[0].position(), 1u);
  EXPECT_EQ(e->children()[1].position(), 2u);
}

TEST(ParseYaml, Rejections) {
  try {
    parse_yaml("a: 1\n---\nb: 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MultiDocumentUnsupported);
  }
  try {
    parse_yaml("just a scalar");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedDocument);
  }
}
