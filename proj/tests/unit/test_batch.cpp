#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>

#include "fixtures.hpp"
#include "mock_server.hpp"
#include "webtabulate/batch.hpp"
#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"
#include "webtabulate/tables_io.hpp"

using namespace webtabulate;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

// Item n has n % 3 + 1 rows; odd items carry an extra column.
std::string item_body(int n) {
  std::string rows;
  for (int r = 0; r <= n % 3; ++r) {
    if (!rows.empty()) rows += ",";
    rows += "{\"id\":\"" + std::to_string(n) + "-" + std::to_string(r) + "\"";
    if (n % 2 == 1) rows += ",\"odd\":\"yes\"";
    rows += "}";
  }
  return "{\"page\":{\"n\":\"" + std::to_string(n) + "\",\"rows\":[" + rows + "]}}";
}

struct ItemServer {
  MockServer server;
  ItemServer() {
    server.handle("/item", [](const MockRequest& r) {
      return MockResponse{200, item_body(std::stoi(r.param("n"))), "application/json", {}};
    });
  }
  std::vector<std::string> urls(int count) const {
    std::vector<std::string> out;
    for (int n = 1; n <= count; ++n) out.push_back(server.url("/item?n=" + std::to_string(n)));
    return out;
  }
};

std::string csv_of(const TableSet& set) {
  std::string out;
  for (const auto& t : set) out += t.name() + "\n" + to_csv(t);
  return out;
}

std::vector<std::string> legislator_urls(const MockServer& server) {
  std::vector<std::string> urls;
  for (int i = 1; i <= 13; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "DCL%06d", i);
    urls.push_back(server.url(std::string("/legislators/") + id));
  }
  return urls;
}

}  // namespace

TEST(Batch, LegislatorsBindIntoThreeTables) {
  MockServer server;
  for (int i = 1; i <= 13; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "DCL%06d", i);
    server.serve(std::string("/legislators/") + id,
                 {200, read_fixture(std::string("openstates/") + id + ".json"), "application/json", {}});
  }
  TempDir dir;
  const auto result = run(BatchJob::from_urls(legislator_urls(server), dir / "ck"));
  EXPECT_TRUE(result.failures.empty());
  EXPECT_EQ(result.tables.names(), (std::vector<std::string>{"metadata", "2013-2014", "2011-2012"}));
  EXPECT_EQ(result.tables.metadata().row_count(), 13u);
  EXPECT_EQ(result.tables.metadata().column_count(), 54u);
  EXPECT_EQ(result.tables.at("2013-2014").column_count(), 13u);
  EXPECT_EQ(result.tables.at("2011-2012").column_count(), 13u);
  // Seven legislators served in 2011-2012; six held one 2013-2014 role and six held two.
  EXPECT_EQ(result.tables.at("2011-2012").row_count(), 7u);
  EXPECT_EQ(result.tables.at("2013-2014").row_count(), 18u);
  EXPECT_EQ(result.stats.fetched, 13u);
}

TEST(Batch, EmptyJobReportsOnce) {
  TempDir dir;
  std::vector<std::pair<std::size_t, std::size_t>> calls;
  const auto result = run(BatchJob::from_urls({}, dir / "ck"),
                          [&](std::size_t d, std::size_t t) { calls.emplace_back(d, t); });
  EXPECT_EQ(calls, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}}));
  EXPECT_EQ(result.tables.size(), 1u);
  EXPECT_EQ(result.tables.metadata().row_count(), 0u);
  EXPECT_TRUE(fs::exists(dir / "ck" / kManifestFile));
}

TEST(Batch, IntervalDoesNotChangeOutput) {
  ItemServer items;
  TempDir dir;
  auto job = BatchJob::from_urls(items.urls(120), dir / "a");
  std::vector<std::size_t> progress;
  const auto chunked = run(job, [&](std::size_t d, std::size_t) { progress.push_back(d); });
  EXPECT_EQ(chunked.stats.flushes, 3u);
  EXPECT_LE(chunked.stats.max_unflushed_responses, 50u);
  ASSERT_EQ(progress.size(), 121u);
  for (std::size_t i = 0; i < progress.size(); ++i) EXPECT_EQ(progress[i], i);

  job.checkpoint_dir = dir / "b";
  job.checkpoint_interval = 1000000000;
  const auto whole = run(job);
  EXPECT_EQ(whole.stats.flushes, 1u);
  EXPECT_EQ(csv_of(chunked.tables), csv_of(whole.tables));
  EXPECT_EQ(chunked.tables.at("rows").row_count(), 40u * 1 + 40u * 2 + 40u * 3);
}

TEST(Batch, ParallelWorkersKeepRequestOrder) {
  ItemServer items;
  TempDir dir;
  auto job = BatchJob::from_urls(items.urls(60), dir / "seq");
  job.checkpoint_interval = 7;
  const auto sequential = run(job);
  job.checkpoint_dir = dir / "par";
  job.parallelism = 4;
  std::mutex m;
  std::size_t last = 0;
  bool monotonic = true;
  const auto parallel = run(job, [&](std::size_t d, std::size_t) {
    std::lock_guard lock(m);
    monotonic = monotonic && (d == 0 || d == last + 1);
    last = d;
  });
  EXPECT_TRUE(monotonic);
  EXPECT_LE(parallel.stats.max_unflushed_responses, 7u);
  EXPECT_EQ(csv_of(sequential.tables), csv_of(parallel.tables));
}

TEST(Batch, InterruptAndResumeMatchesUninterrupted) {
  ItemServer items;
  TempDir dir;
  auto job = BatchJob::from_urls(items.urls(120), dir / "ref");
  job.checkpoint_interval = 25;
  const std::string reference = csv_of(run(job).tables);

  for (std::size_t kill_at = 10; kill_at < 120; kill_at += 10) {
    job.checkpoint_dir = dir / ("k" + std::to_string(kill_at));
    job.should_stop = [kill_at](std::size_t done) { return done == kill_at; };
    try {
      run(job);
      FAIL() << kill_at;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::Interrupted);
    }
    job.should_stop = nullptr;
    const auto resumed = resume(job.checkpoint_dir, job);
    // The slice holding the kill point was never flushed.
    const std::size_t flushed = (kill_at - 1) / 25 * 25;
    EXPECT_EQ(resumed.stats.reused, flushed) << kill_at;
    EXPECT_EQ(resumed.stats.fetched, 120 - flushed) << kill_at;
    EXPECT_EQ(csv_of(resumed.tables), reference) << kill_at;
  }
}

TEST(Batch, ResumeRejectsOtherJob) {
  ItemServer items;
  TempDir dir;
  auto job = BatchJob::from_urls(items.urls(5), dir / "ck");
  run(job);
  auto other = BatchJob::from_urls(items.urls(6), dir / "ck");
  try {
    resume(dir / "ck", other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ManifestMismatch);
  }
}

TEST(Batch, TamperedChunkIsDetected) {
  ItemServer items;
  TempDir dir;
  auto job = BatchJob::from_urls(items.urls(6), dir / "ck");
  job.checkpoint_interval = 3;
  run(job);
  bool tampered = false;
  for (const auto& entry : fs::directory_iterator(dir / "ck")) {
    if (entry.path().filename().string().rfind("chunk_1__rows", 0) == 0) {
      std::ofstream(entry.path(), std::ios::app) << "[\"extra\"\n";
      tampered = true;
    }
  }
  ASSERT_TRUE(tampered);
  try {
    resume(dir / "ck", job);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CheckpointCorrupt);
  }
}

TEST(Batch, FailuresAreRecordedAndRefetchedOnResume) {
  MockServer server;
  std::atomic<bool> healthy{false};
  server.handle("/item", [&](const MockRequest& r) {
    const int n = std::stoi(r.param("n"));
    if (n == 3 && !healthy) return MockResponse{404, "gone", "text/plain", {}};
    return MockResponse{200, item_body(n), "application/json", {}};
  });
  std::vector<std::string> urls;
  for (int n = 1; n <= 5; ++n) urls.push_back(server.url("/item?n=" + std::to_string(n)));
  TempDir dir;
  auto job = BatchJob::from_urls(urls, dir / "ck");
  const auto first = run(job);
  ASSERT_EQ(first.failures.size(), 1u);
  EXPECT_EQ(first.failures[0].index, 3u);
  EXPECT_EQ(first.failures[0].url, urls[2]);
  EXPECT_NE(first.failures[0].error.find("404"), std::string::npos);
  EXPECT_EQ(first.tables.metadata().row_count(), 4u);

  healthy = true;
  const auto second = resume(dir / "ck", job);
  EXPECT_TRUE(second.failures.empty());
  EXPECT_EQ(second.stats.fetched, 1u);
  EXPECT_EQ(second.tables.metadata().column("n"),
            (std::vector<Cell>{"1", "2", "3", "4", "5"}));
}

TEST(Batch, StopsOnFirstFailureWhenAsked) {
  MockServer server;
  server.handle("/item", [](const MockRequest& r) {
    const int n = std::stoi(r.param("n"));
    if (n == 2) return MockResponse{404, "gone", "text/plain", {}};
    return MockResponse{200, item_body(n), "application/json", {}};
  });
  std::vector<std::string> urls;
  for (int n = 1; n <= 4; ++n) urls.push_back(server.url("/item?n=" + std::to_string(n)));
  TempDir dir;
  auto job = BatchJob::from_urls(urls, dir / "ck");
  job.continue_on_error = false;
  try {
    run(job);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FirstFailure);
  }
  EXPECT_EQ(server.hits("/item"), 2u);
  EXPECT_TRUE(fs::exists(dir / "ck" / kManifestFile));
}

TEST(Batch, InputColumnsAndCustomFetch) {
  TempDir dir;
  BatchJob job;
  job.checkpoint_dir = dir / "ck";
  job.input_columns = true;
  for (const char* q : {"a", "b"}) {
    ApiRequest r;
    r.base_url = "http://example.invalid/search";
    r.params = {{"q", q}};
    job.requests.push_back(r);
  }
  job.fetch = [](const ApiRequest& r) {
    return map_tree(parse_json("{\"hit\":{\"q\":\"" + r.params[0].value + "\"}}"));
  };
  const auto result = run(job);
  const Table& meta = result.tables.metadata();
  EXPECT_EQ(meta.columns(), (std::vector<std::string>{"q", "path", "INPUT_:_q"}));
  EXPECT_EQ(meta.column("INPUT_:_q"), (std::vector<Cell>{"a", "b"}));
}

TEST(Batch, InvalidSettings) {
  TempDir dir;
  auto job = BatchJob::from_urls({"http://example.invalid/"}, dir / "ck");
  job.checkpoint_interval = 0;
  EXPECT_THROW(run(job), Error);
  job.checkpoint_interval = 1;
  job.parallelism = 0;
  EXPECT_THROW(run(job), Error);
}

TEST(JobFingerprint, DependsOnOrderAndUrls) {
  const auto a = BatchJob::from_urls({"http://x/1", "http://x/2"}, "d").requests;
  const auto b = BatchJob::from_urls({"http://x/2", "http://x/1"}, "d").requests;
  EXPECT_EQ(job_fingerprint(a), job_fingerprint(a));
  EXPECT_NE(job_fingerprint(a), job_fingerprint(b));
  EXPECT_EQ(job_fingerprint(a).size(), 16u);
}
