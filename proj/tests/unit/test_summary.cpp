#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "webtabulate/ingest.hpp"
#include "webtabulate/inspect.hpp"
#include "webtabulate/mapper.hpp"

using namespace webtabulate;
using namespace testing_support;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Summary, ErgastGolden) {
  const auto set = map_tree(parse_json(read_fixture("ergast_2013_1_results.json")));
  EXPECT_EQ(render_summary(summarize(set)), read_fixture("ergast_summary.txt"));
}

TEST(Summary, XmlVariantHasSameShape) {
  const auto report = summarize(map_tree(parse_xml(read_fixture("ergast_2013_1_results.xml"))));
  ASSERT_EQ(report.tables.size(), 2u);
  EXPECT_EQ(report.tables[0].variable_count, 20u);
  EXPECT_EQ(report.tables[1].name, "Results");
  EXPECT_EQ(report.tables[1].variable_count, 27u);
}

TEST(Summary, CountsMatchTables) {
  const auto set = map_tree(parse_json(read_fixture("firm.json")));
  const auto report = summarize(set);
  ASSERT_EQ(report.tables.size(), set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_EQ(report.tables[i].name, set.tables()[i].name());
    EXPECT_EQ(report.tables[i].variables, set.tables()[i].columns());
    EXPECT_EQ(report.tables[i].variable_count, set.tables()[i].column_count());
  }
}

TEST(Summary, VariableLinesRespectWidth) {
  StructureReport report;
  TableSummary t{"wide", 0, {}};
  for (int i = 0; i < 40; ++i) t.variables.push_back("variable_" + std::to_string(i * 7));
  t.variable_count = t.variables.size();
  report.tables.push_back(t);
  for (std::size_t width : {20u, 40u, 70u, 120u}) {
    const auto lines = lines_of(render_summary(report, width));
    std::string joined;
    bool in_vars = false;
    for (const auto& line : lines) {
      if (line == "1. wide:") {
        in_vars = true;
        continue;
      }
      if (!in_vars || line.empty()) continue;
      EXPECT_LE(line.size(), width) << line;
      joined += line;
    }
    std::string expected;
    for (const auto& v : t.variables) expected += v + ",  ";
    expected.resize(expected.size() - 1);
    std::string squeezed;
    for (char c : joined) if (c != ' ') squeezed += c;
    std::string expected_squeezed;
    for (char c : expected) if (c != ' ') expected_squeezed += c;
    EXPECT_EQ(squeezed, expected_squeezed) << width;
  }
}

TEST(Summary, WrapsLikeTheReferenceListing) {
  // Ergast variable names with the numbered duplicates used by the reference
  // listing; the wrapping must fall at the same places.
  StructureReport report;
  report.tables.push_back({"metadata", 20,
                           {"xmlns", "series", "url", "limit", "offset", "total", "season", "round",
                            "1", "raceName", "circuitId", "2", "circuitName", "lat", "long",
                            "locality", "country", "date", "time", "path"}});
  const auto lines = lines_of(render_summary(report));
  const std::vector<std::string> expected{
      "xmlns,  series,  url,  limit,  offset,  total,  season,  round,  1,  ",
      "raceName,  circuitId,  2,  circuitName,  lat,  long,  locality,  ",
      "country,  date,  time,  path, "};
  ASSERT_GE(lines.size(), expected.size());
  const std::vector<std::string> tail(lines.end() - static_cast<std::ptrdiff_t>(expected.size()), lines.end());
  EXPECT_EQ(tail, expected);
}

TEST(Summary, EmptyMetadataOnly) {
  TableSet set;
  const std::string text = render_summary(summarize(set));
  EXPECT_NE(text.find("following 1 data frames"), std::string::npos) << text;
  EXPECT_NE(text.find("metadata 0"), std::string::npos) << text;
}
