#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "webtabulate/http_gateway.hpp"
#include "webtabulate/mapper.hpp"
#include "webtabulate/table.hpp"

namespace webtabulate {

/// Fetches and maps one request.
using FetchFunction = std::function<TableSet(const ApiRequest&)>;

/// Called as (done, total). May be invoked from worker threads, but never
/// concurrently.
using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

struct BatchJob {
  std::vector<ApiRequest> requests;
  std::filesystem::path checkpoint_dir;
  std::size_t checkpoint_interval = 50;
  std::size_t parallelism = 1;
  bool continue_on_error = true;

  ColumnMode mode = ColumnMode::Short;
  /// Append INPUT_ columns for each request's parameters.
  bool input_columns = false;

  /// Replaces the default fetch (shared HttpGateway + tabulate).
  FetchFunction fetch;
  std::shared_ptr<const HttpGateway> gateway;

  /// Test hook, consulted after each response with the number of responses
  /// finished in this invocation. Returning true aborts with Errc::Interrupted
  /// and leaves the current slice unflushed, like a killed process.
  std::function<bool(std::size_t done)> should_stop;

  static BatchJob from_urls(const std::vector<std::string>& urls, std::filesystem::path checkpoint_dir);
};

struct BatchFailure {
  std::size_t index;  // 1-based
  std::string url;
  std::string error;
  friend bool operator==(const BatchFailure&, const BatchFailure&) = default;
};

struct BatchStats {
  std::size_t fetched = 0;
  std::size_t reused = 0;
  std::size_t flushes = 0;
  /// Largest number of responses whose tables were held before a flush.
  std::size_t max_unflushed_responses = 0;
};

struct BatchResult {
  TableSet tables;
  std::vector<BatchFailure> failures;
  BatchStats stats;
};

/// Hex FNV-1a 64 of the ordered request URLs.
std::string job_fingerprint(const std::vector<ApiRequest>& requests);

/// Starts a fresh job in job.checkpoint_dir, discarding any earlier
/// checkpoint there. Throws Errc::CheckpointIoError, Errc::FirstFailure,
/// Errc::Interrupted.
BatchResult run(const BatchJob& job, const ProgressCallback& progress = {});

/// Continues the job checkpointed in `checkpoint_dir`: completed requests are
/// read back from chunk files, everything else (failures included) is fetched.
/// Throws Errc::ManifestMismatch, Errc::CheckpointCorrupt and run()'s errors.
BatchResult resume(const std::filesystem::path& checkpoint_dir, BatchJob job,
                   const ProgressCallback& progress = {});

/// resume() if a manifest exists in job.checkpoint_dir, else run().
BatchResult run_or_resume(const BatchJob& job, const ProgressCallback& progress = {});

inline constexpr const char* kManifestFile = "manifest.json";

}  // namespace webtabulate
