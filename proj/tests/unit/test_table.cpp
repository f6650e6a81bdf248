#include <gtest/gtest.h>

#include "webtabulate/error.hpp"
#include "webtabulate/table.hpp"

using namespace webtabulate;

TEST(Table, RowWidthIsChecked) {
  Table t("x", {"a", "b"});
  t.add_row({"1", "2"});
  EXPECT_THROW(t.add_row({"1"}), Error);
  EXPECT_EQ(t.row_count(), 1u);
}

TEST(Table, FindColumnByOccurrence) {
  Table t("x", {"url", "name", "url"});
  EXPECT_EQ(t.find_column("url"), 0u);
  EXPECT_EQ(t.find_column("url", 1), 2u);
  EXPECT_EQ(t.find_column("url", 2), Table::npos);
  EXPECT_THROW(t.column("nope"), Error);
}

TEST(Table, AddColumnFills) {
  Table t("x", {"a"});
  t.add_row({"1"});
  t.add_row({"2"});
  t.add_column("k", "v");
  EXPECT_EQ(t.column("k"), (std::vector<Cell>{"v", "v"}));
}

TEST(TableSet, MetadataFirstAndUnique) {
  TableSet s;
  EXPECT_EQ(s.names(), std::vector<std::string>{"metadata"});
  s.put(Table("a"));
  s.put(Table("metadata", {"m"}));
  EXPECT_EQ(s.names(), (std::vector<std::string>{"metadata", "a"}));
  EXPECT_EQ(s.metadata().column_count(), 1u);
  EXPECT_THROW(s.put(Table("a")), Error);
  EXPECT_TRUE(s.contains("a"));
  EXPECT_THROW(s.at("b"), Error);
}

TEST(UnionColumns, MatchesByNameAndOccurrence) {
  EXPECT_EQ(union_columns({"a", "url"}, {"url", "b", "url"}),
            (std::vector<std::string>{"a", "url", "b", "url"}));
  EXPECT_EQ(union_columns({}, {"x"}), std::vector<std::string>{"x"});
}

TEST(BindTables, RaggedUnionWithNulls) {
  Table a("t", {"x", "y"});
  a.add_row({"1", "2"});
  Table b("t", {"y", "z"});
  b.add_row({"3", "4"});
  Table c = bind_tables(a, b);
  EXPECT_EQ(c.columns(), (std::vector<std::string>{"x", "y", "z"}));
  ASSERT_EQ(c.row_count(), 2u);
  EXPECT_EQ(c.rows()[0], (Table::Row{"1", "2", std::nullopt}));
  EXPECT_EQ(c.rows()[1], (Table::Row{std::nullopt, "3", "4"}));
  try {
    bind_tables(a, Table("u"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NameMismatch);
  }
}

TEST(MergeTablesets, OrderOfFirstOccurrence) {
  TableSet s1, s2;
  Table e1("employee", {"n"});
  e1.add_row({"a"});
  s1.put(e1);
  Table h("holder", {"id"});
  h.add_row({"h"});
  s2.put(h);
  Table e2("employee", {"n", "m"});
  e2.add_row({"b", "c"});
  s2.put(e2);
  auto merged = merge_tablesets({s1, s2});
  EXPECT_EQ(merged.names(), (std::vector<std::string>{"metadata", "employee", "holder"}));
  EXPECT_EQ(merged.at("employee").row_count(), 2u);
  EXPECT_EQ(merged.at("employee").columns(), (std::vector<std::string>{"n", "m"}));
  EXPECT_EQ(merge_tablesets({}).names(), std::vector<std::string>{"metadata"});
}

TEST(MergeTablesets, AssociativeOnRows) {
  auto one = [](std::string col, std::string v) {
    TableSet s;
    Table t("t", {col});
    t.add_row({v});
    s.put(t);
    return s;
  };
  auto a = one("x", "1"), b = one("y", "2"), c = one("x", "3");
  auto left = merge_tablesets({merge_tablesets({a, b}), c});
  auto flat = merge_tablesets({a, b, c});
  EXPECT_EQ(left, flat);
}

TEST(ConformColumns, ReordersAndExtends) {
  Table t("t", {"a", "b"});
  t.add_row({"1", "2"});
  auto c = conform_columns(t, {"b", "c", "a"});
  EXPECT_EQ(c.rows()[0], (Table::Row{"2", std::nullopt, "1"}));
}
