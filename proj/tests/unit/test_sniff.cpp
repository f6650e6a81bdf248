#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"
#include "webtabulate/mapper.hpp"

using namespace webtabulate;
using testing_support::read_fixture;

TEST(Sniff, ContentTypeMapping) {
  EXPECT_EQ(mime_from_content_type("application/json; charset=utf-8"), MimeKind::JSON);
  EXPECT_EQ(mime_from_content_type("application/vnd.api+json"), MimeKind::JSON);
  EXPECT_EQ(mime_from_content_type("text/xml"), MimeKind::XML);
  EXPECT_EQ(mime_from_content_type("application/rss+xml"), MimeKind::RSS);
  EXPECT_EQ(mime_from_content_type("application/x-yaml"), MimeKind::YAML);
  EXPECT_EQ(mime_from_content_type("text/plain"), MimeKind::Unknown);
}

TEST(Sniff, FirstByteDetection) {
  EXPECT_EQ(detect_mime("  {\"a\":1}", std::nullopt), MimeKind::JSON);
  EXPECT_EQ(detect_mime("\xEF\xBB\xBF<a/>", std::nullopt), MimeKind::XML);
  EXPECT_EQ(detect_mime("a: 1", std::nullopt), MimeKind::YAML);
}

TEST(Sniff, MislabeledXmlStillParses) {
  auto r = sniff_and_parse(read_fixture("firm.xml"), "text/plain");
  EXPECT_EQ(r.mime, MimeKind::XML);
  EXPECT_EQ(r.tree.label(), "firm");
}

TEST(Sniff, DeclaredJsonThatIsXml) {
  auto r = sniff_and_parse(read_fixture("firm.xml"), "application/json");
  EXPECT_EQ(r.mime, MimeKind::XML);
}

TEST(Sniff, RssDetected) {
  auto r = sniff_and_parse(read_fixture("harvard_events.rss"), "text/xml");
  EXPECT_EQ(r.mime, MimeKind::RSS);
  auto set = map_tree(r.tree);
  EXPECT_EQ(set.names(), (std::vector<std::string>{"metadata", "item"}));
}

TEST(Sniff, Utf8Check) {
  EXPECT_TRUE(is_utf8_text("plain \t\r\n text \xC3\xA4"));
  EXPECT_FALSE(is_utf8_text(std::string("\x00\x01", 2)));
  EXPECT_FALSE(is_utf8_text("\xC3"));
  EXPECT_FALSE(is_utf8_text("\xFF\xFE"));
}

TEST(Sniff, Failures) {
  try {
    sniff_and_parse("\xFF\xFE\xFD");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonTextBody);
  }
  try {
    sniff_and_parse("{broken: [", "application/json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnparseableBody);
  }
}
