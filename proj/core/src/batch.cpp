#include "webtabulate/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "webtabulate/client_gen.hpp"
#include "webtabulate/error.hpp"

namespace webtabulate {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct CompletedRequest {
  std::size_t index;  // 1-based
  std::vector<std::string> tables;
};

struct Chunk {
  std::size_t number = 0;
  std::vector<std::pair<std::string, std::string>> files;  // table name -> file name
  std::vector<CompletedRequest> requests;
};

struct Manifest {
  std::string fingerprint;
  std::size_t total = 0;
  std::vector<Chunk> chunks;
  std::vector<BatchFailure> failed;

  std::set<std::size_t> completed() const {
    std::set<std::size_t> out;
    for (const auto& c : chunks)
      for (const auto& r : c.requests) out.insert(r.index);
    return out;
  }
};

std::string display_url(const ApiRequest& request) {
  try {
    return request.url();
  } catch (const Error&) {
    return request.base_url;
  }
}

[[noreturn]] void io_error(const std::string& what) { throw Error(Errc::CheckpointIoError, what); }
[[noreturn]] void corrupt(const std::string& what) { throw Error(Errc::CheckpointCorrupt, what); }

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) io_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) io_error("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string sanitize(std::string_view name) {
  std::string out;
  for (const char c : name) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_' || c == '.';
    out += keep ? c : '_';
  }
  return out.empty() ? "_" : out;
}

json cell_json(const Cell& cell) { return cell ? json(*cell) : json(nullptr); }

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

json manifest_json(const Manifest& m) {
  json j;
  j["fingerprint"] = m.fingerprint;
  j["total"] = m.total;
  j["completed"] = json::array();
  for (const auto i : m.completed()) j["completed"].push_back(i);
  j["failed"] = json::array();
  for (const auto& f : m.failed) j["failed"].push_back({{"index", f.index}, {"url", f.url}, {"error", f.error}});
  j["chunks"] = json::array();
  for (const auto& c : m.chunks) {
    json chunk;
    chunk["chunk"] = c.number;
    chunk["files"] = json::object();
    for (const auto& [table, file] : c.files) chunk["files"][table] = file;
    chunk["requests"] = json::array();
    for (const auto& r : c.requests) chunk["requests"].push_back({{"index", r.index}, {"tables", r.tables}});
    j["chunks"].push_back(std::move(chunk));
  }
  return j;
}

Manifest parse_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) corrupt("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  Manifest m;
  try {
    const json j = json::parse(text.str());
    m.fingerprint = j.at("fingerprint").get<std::string>();
    m.total = j.at("total").get<std::size_t>();
    for (const auto& f : j.at("failed")) {
      m.failed.push_back({f.at("index").get<std::size_t>(), f.at("url").get<std::string>(),
                          f.at("error").get<std::string>()});
    }
    for (const auto& c : j.at("chunks")) {
      Chunk chunk;
      chunk.number = c.at("chunk").get<std::size_t>();
      for (const auto& [table, file] : c.at("files").items()) chunk.files.emplace_back(table, file.get<std::string>());
      for (const auto& r : c.at("requests")) {
        chunk.requests.push_back({r.at("index").get<std::size_t>(), r.at("tables").get<std::vector<std::string>>()});
      }
      m.chunks.push_back(std::move(chunk));
    }
    std::set<std::size_t> listed;
    for (const auto& i : j.at("completed")) listed.insert(i.get<std::size_t>());
    if (listed != m.completed()) corrupt("manifest completed list disagrees with its chunks");
  } catch (const json::exception& ex) {
    corrupt("invalid manifest " + path.string() + ": " + ex.what());
  }
  for (const auto i : m.completed()) {
    if (i < 1 || i > m.total) corrupt("manifest lists request " + std::to_string(i) + " outside 1.." + std::to_string(m.total));
  }
  for (const auto& f : m.failed) {
    if (f.index < 1 || f.index > m.total) corrupt("manifest lists failure outside 1.." + std::to_string(m.total));
  }
  return m;
}

/// Reads one chunk back into per-request TableSets.
void read_chunk(const fs::path& dir, const Chunk& chunk, std::map<std::size_t, TableSet>& out) {
  std::map<std::size_t, std::map<std::string, Table>> fragments;
  std::set<std::size_t> members;
  for (const auto& r : chunk.requests) members.insert(r.index);

  for (const auto& [table_name, file] : chunk.files) {
    const fs::path path = dir / file;
    std::ifstream in(path, std::ios::binary);
    if (!in) corrupt("missing chunk file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> json {
      if (!std::getline(in, line)) corrupt(path.string() + ": truncated after line " + std::to_string(line_no));
      ++line_no;
      try {
        return json::parse(line);
      } catch (const json::exception& ex) {
        corrupt(path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
      }
    };
    while (in.peek() != std::char_traits<char>::eof()) {
      const json header = next_line();
      std::size_t index = 0;
      std::vector<std::string> columns;
      std::size_t rows = 0;
      try {
        if (header.at("table").get<std::string>() != table_name) corrupt(path.string() + ": foreign table fragment");
        index = header.at("request").get<std::size_t>();
        columns = header.at("columns").get<std::vector<std::string>>();
        rows = header.at("rows").get<std::size_t>();
      } catch (const json::exception& ex) {
        corrupt(path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
      }
      if (!members.contains(index)) corrupt(path.string() + ": fragment for request outside its chunk");
      Table table(table_name, columns);
      for (std::size_t r = 0; r < rows; ++r) {
        const json row = next_line();
        if (!row.is_array() || row.size() != columns.size()) {
          corrupt(path.string() + ":" + std::to_string(line_no) + ": row width mismatch");
        }
        Table::Row cells;
        cells.reserve(row.size());
        for (const auto& v : row) {
          if (v.is_null()) {
            cells.emplace_back(std::nullopt);
          } else if (v.is_string()) {
            cells.emplace_back(v.get<std::string>());
          } else {
            corrupt(path.string() + ":" + std::to_string(line_no) + ": cell is neither string nor null");
          }
        }
        table.add_row(std::move(cells));
      }
      if (!fragments[index].emplace(table_name, std::move(table)).second) {
        corrupt(path.string() + ": duplicate fragment for request " + std::to_string(index));
      }
    }
  }

  for (const auto& r : chunk.requests) {
    auto& parts = fragments[r.index];
    if (parts.size() != r.tables.size()) corrupt("chunk " + std::to_string(chunk.number) + " is missing tables");
    TableSet set;
    for (const auto& name : r.tables) {
      auto it = parts.find(name);
      if (it == parts.end()) corrupt("chunk " + std::to_string(chunk.number) + " lacks table '" + name + "'");
      set.put(std::move(it->second));
    }
    out[r.index] = std::move(set);
  }
}

class Session {
 public:
  Session(const BatchJob& job, fs::path dir, Manifest manifest, const ProgressCallback& progress)
      : job_(job), dir_(std::move(dir)), manifest_(std::move(manifest)), progress_(progress) {
    if (job_.checkpoint_interval < 1) throw Error(Errc::InvalidArgument, "checkpoint_interval must be at least 1");
    if (job_.parallelism < 1) throw Error(Errc::InvalidArgument, "parallelism must be at least 1");
    if (job_.fetch) {
      fetch_ = job_.fetch;
    } else {
      auto gateway = job_.gateway ? job_.gateway : std::make_shared<HttpGateway>();
      const ColumnMode mode = job_.mode;
      fetch_ = [gateway, mode](const ApiRequest& r) { return tabulate(*gateway, r, mode, false); };
    }
  }

  BatchResult execute() {
    const auto completed = manifest_.completed();
    std::vector<std::size_t> pending;
    for (std::size_t i = 1; i <= job_.requests.size(); ++i)
      if (!completed.contains(i)) pending.push_back(i);

    stats_.reused = completed.size();
    done_ = completed.size();
    report();

    for (std::size_t start = 0; start < pending.size(); start += job_.checkpoint_interval) {
      const std::size_t end = std::min(pending.size(), start + job_.checkpoint_interval);
      process_slice({pending.begin() + static_cast<std::ptrdiff_t>(start),
                     pending.begin() + static_cast<std::ptrdiff_t>(end)});
    }
    return assemble();
  }

 private:
  struct Slot {
    std::optional<TableSet> tables;
    std::optional<std::string> error;
  };

  void report() {
    if (progress_) progress_(done_, job_.requests.size());
  }

  void process_slice(const std::vector<std::size_t>& slice) {
    std::vector<Slot> slots(slice.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> halt{false};
    bool stopped = false;
    bool aborted = false;
    std::size_t held = 0;

    auto worker = [&] {
      while (!halt.load()) {
        const std::size_t k = next.fetch_add(1);
        if (k >= slice.size()) break;
        const ApiRequest& request = job_.requests[slice[k] - 1];
        Slot slot;
        try {
          TableSet set = fetch_(request);
          if (job_.input_columns) append_input_columns(set, request.params);
          slot.tables = std::move(set);
        } catch (const std::exception& ex) {
          slot.error = ex.what();
        }
        std::lock_guard lock(mutex_);
        const bool failed = slot.error.has_value();
        slots[k] = std::move(slot);
        ++held;
        stats_.max_unflushed_responses = std::max(stats_.max_unflushed_responses, held);
        ++stats_.fetched;
        ++done_;
        ++invocation_done_;
        report();
        if (job_.should_stop && job_.should_stop(invocation_done_)) {
          stopped = true;
          halt = true;
        }
        if (failed && !job_.continue_on_error) {
          aborted = true;
          halt = true;
        }
      }
    };

    const std::size_t threads = std::min(job_.parallelism, slice.size());
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    if (stopped) throw Error(Errc::Interrupted, "batch interrupted after " + std::to_string(invocation_done_) + " responses");
    flush(slice, slots);
    if (aborted) {
      for (std::size_t k = 0; k < slice.size(); ++k) {
        if (slots[k].error) {
          throw Error(Errc::FirstFailure, "request " + std::to_string(slice[k]) + " failed: " + *slots[k].error);
        }
      }
    }
  }

  void flush(const std::vector<std::size_t>& slice, const std::vector<Slot>& slots) {
    Chunk chunk;
    chunk.number = next_chunk_number();
    std::vector<std::pair<std::string, std::string>> contents;  // table -> file body
    std::set<std::string> used_files;

    auto file_for = [&](const std::string& table) -> std::string& {
      for (auto& [name, body] : contents)
        if (name == table) return body;
      std::string base = "chunk_" + std::to_string(chunk.number) + "__" + sanitize(table);
      std::string file = base + ".jsonl";
      for (int n = 2; used_files.contains(file); ++n) file = base + "~" + std::to_string(n) + ".jsonl";
      used_files.insert(file);
      chunk.files.emplace_back(table, file);
      return contents.emplace_back(table, std::string()).second;
    };

    for (std::size_t k = 0; k < slice.size(); ++k) {
      const std::size_t index = slice[k];
      const Slot& slot = slots[k];
      if (slot.tables) {
        CompletedRequest done{index, {}};
        for (const auto& table : *slot.tables) {
          done.tables.push_back(table.name());
          std::string& body = file_for(table.name());
          json header;
          header["request"] = index;
          header["table"] = table.name();
          header["columns"] = table.columns();
          header["rows"] = table.row_count();
          body += dump(header) + "\n";
          for (const auto& row : table.rows()) {
            json cells = json::array();
            for (const auto& c : row) cells.push_back(cell_json(c));
            body += dump(cells) + "\n";
          }
        }
        chunk.requests.push_back(std::move(done));
        std::erase_if(manifest_.failed, [&](const BatchFailure& f) { return f.index == index; });
      } else if (slot.error) {
        std::erase_if(manifest_.failed, [&](const BatchFailure& f) { return f.index == index; });
        manifest_.failed.push_back({index, display_url(job_.requests[index - 1]), *slot.error});
      }
    }
    std::sort(manifest_.failed.begin(), manifest_.failed.end(),
              [](const BatchFailure& a, const BatchFailure& b) { return a.index < b.index; });

    for (std::size_t f = 0; f < contents.size(); ++f) write_atomically(dir_ / chunk.files[f].second, contents[f].second);
    if (!chunk.requests.empty()) manifest_.chunks.push_back(std::move(chunk));
    write_atomically(dir_ / kManifestFile, manifest_json(manifest_).dump(2) + "\n");
    ++stats_.flushes;
  }

  std::size_t next_chunk_number() const {
    std::size_t n = 0;
    for (const auto& c : manifest_.chunks) n = std::max(n, c.number);
    return n + 1;
  }

  BatchResult assemble() {
    std::map<std::size_t, TableSet> per_request;
    for (const auto& chunk : manifest_.chunks) read_chunk(dir_, chunk, per_request);
    std::vector<TableSet> ordered;
    ordered.reserve(per_request.size());
    for (auto& [index, set] : per_request) ordered.push_back(std::move(set));
    BatchResult result;
    result.tables = merge_tablesets(ordered);
    result.failures = manifest_.failed;
    result.stats = stats_;
    return result;
  }

  const BatchJob& job_;
  fs::path dir_;
  Manifest manifest_;
  const ProgressCallback& progress_;
  FetchFunction fetch_;
  std::mutex mutex_;
  BatchStats stats_;
  std::size_t done_ = 0;
  std::size_t invocation_done_ = 0;
};

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) io_error("cannot create checkpoint directory " + dir.string());
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    const bool ours = name == kManifestFile || (name.starts_with("chunk_") &&
                                                (name.ends_with(".jsonl") || name.ends_with(".jsonl.tmp")));
    if (ours) fs::remove(entry.path(), ec);
  }
  if (ec) io_error("cannot clear checkpoint directory " + dir.string() + ": " + ec.message());
}

}  // namespace

BatchJob BatchJob::from_urls(const std::vector<std::string>& urls, std::filesystem::path checkpoint_dir) {
  BatchJob job;
  job.checkpoint_dir = std::move(checkpoint_dir);
  job.requests.reserve(urls.size());
  for (const auto& url : urls) job.requests.push_back(ApiRequest::from_url(url));
  return job;
}

std::string job_fingerprint(const std::vector<ApiRequest>& requests) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view text) {
    for (const unsigned char c : text) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
  };
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (i > 0) feed("\n");
    feed(display_url(requests[i]));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

BatchResult run(const BatchJob& job, const ProgressCallback& progress) {
  prepare_directory(job.checkpoint_dir);
  Manifest manifest;
  manifest.fingerprint = job_fingerprint(job.requests);
  manifest.total = job.requests.size();
  write_atomically(job.checkpoint_dir / kManifestFile, manifest_json(manifest).dump(2) + "\n");
  return Session(job, job.checkpoint_dir, std::move(manifest), progress).execute();
}

BatchResult resume(const std::filesystem::path& checkpoint_dir, BatchJob job, const ProgressCallback& progress) {
  const fs::path manifest_path = checkpoint_dir / kManifestFile;
  if (!fs::exists(manifest_path)) corrupt("no manifest in " + checkpoint_dir.string());
  Manifest manifest = parse_manifest(manifest_path);
  if (manifest.fingerprint != job_fingerprint(job.requests) || manifest.total != job.requests.size()) {
    throw Error(Errc::ManifestMismatch, "checkpoint in " + checkpoint_dir.string() + " belongs to a different job");
  }
  std::map<std::size_t, TableSet> scratch;
  for (const auto& chunk : manifest.chunks) read_chunk(checkpoint_dir, chunk, scratch);
  job.checkpoint_dir = checkpoint_dir;
  return Session(job, checkpoint_dir, std::move(manifest), progress).execute();
}

BatchResult run_or_resume(const BatchJob& job, const ProgressCallback& progress) {
  if (fs::exists(job.checkpoint_dir / kManifestFile)) return resume(job.checkpoint_dir, job, progress);
  return run(job, progress);
}

}  // namespace webtabulate
