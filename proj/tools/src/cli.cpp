#include "webtabulate/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "webtabulate/batch.hpp"
#include "webtabulate/client_gen.hpp"
#include "webtabulate/error.hpp"
#include "webtabulate/http_gateway.hpp"
#include "webtabulate/ingest.hpp"
#include "webtabulate/inspect.hpp"
#include "webtabulate/mapper.hpp"
#include "webtabulate/tables_io.hpp"
#include "webtabulate/version.hpp"

namespace webtabulate::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string out_dir = ".";
  std::string format = "csv";
  std::string columns = "short";
  std::optional<long> timeout_secs;
  int retries = 3;
  long delay_ms = 0;
  std::vector<std::string> headers;
  bool quiet = false;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

QueryParam split_pair(const std::string& text, const char* flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError(std::string(flag) + " expects name=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<Header> parse_headers(const std::vector<std::string>& raw) {
  std::vector<Header> out;
  for (const auto& h : raw) {
    const auto colon = h.find(':');
    if (colon == std::string::npos || trim(h.substr(0, colon)).empty()) {
      throw UsageError("--header expects 'Name: value', got '" + h + "'");
    }
    out.push_back({trim(h.substr(0, colon)), trim(h.substr(colon + 1))});
  }
  return out;
}

ColumnMode column_mode(const Globals& g) {
  return g.columns == "full" ? ColumnMode::Full : ColumnMode::Short;
}

GatewaySettings settings(const Globals& g) {
  GatewaySettings s;
  if (g.timeout_secs) s.timeout = std::chrono::seconds(*g.timeout_secs);
  s.max_retries = g.retries;
  s.politeness_delay = std::chrono::milliseconds(g.delay_ms);
  s.headers = parse_headers(g.headers);
  return s;
}

void apply(const GatewaySettings& s, ApiRequest& r) {
  r.timeout = s.timeout;
  r.max_retries = s.max_retries;
  r.politeness_delay = s.politeness_delay;
  r.headers = s.headers;
}

std::string file_stem(std::string_view name) {
  std::string out;
  for (const char c : name) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_' || c == '.';
    out += keep ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

std::vector<fs::path> write_tables(const TableSet& set, const Globals& g) {
  std::error_code ec;
  fs::create_directories(g.out_dir, ec);
  if (ec) throw Error(Errc::SinkError, "cannot create " + g.out_dir + ": " + ec.message());
  const std::string ext = g.format == "jsonl" ? ".jsonl" : ".csv";
  std::set<std::string> used;
  std::vector<fs::path> written;
  for (const auto& table : set) {
    std::string stem = file_stem(table.name());
    std::string candidate = stem;
    for (int n = 2; used.contains(candidate); ++n) candidate = stem + "_" + std::to_string(n);
    used.insert(candidate);
    const fs::path path = fs::path(g.out_dir) / (candidate + ext);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::SinkError, "cannot open " + path.string());
    if (g.format == "jsonl") {
      write_jsonlines(table, out);
    } else {
      write_csv(table, out);
    }
    written.push_back(path);
  }
  return written;
}

void ensure_parent(const fs::path& path) {
  if (!path.has_parent_path()) return;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(Errc::SinkError, "cannot create " + path.parent_path().string() + ": " + ec.message());
}

void report(const TableSet& set, const Globals& g, std::ostream& out) {
  if (!g.quiet) out << render_summary(summarize(set));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SinkError, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// A saved body on disk, or a URL to fetch.
TreeNode load_tree(const std::string& source, const Globals& g) {
  if (fs::is_regular_file(source)) return sniff_and_parse(decode_body(read_file(source), "")).tree;
  ApiRequest request = ApiRequest::from_url(source);
  apply(settings(g), request);
  return HttpGateway().fetch_tree(request).second;
}

ProgressCallback progress_printer(std::ostream& err, bool quiet) {
  if (quiet) return {};
  const bool tty = &err == &std::cerr && ::isatty(STDERR_FILENO) == 1;
  if (!tty) {
    return [&err](std::size_t done, std::size_t total) { err << done << '/' << total << '\n'; };
  }
  return [&err](std::size_t done, std::size_t total) {
    constexpr std::size_t kWidth = 40;
    const std::size_t filled = total == 0 ? kWidth : done * kWidth / total;
    err << "\r[" << std::string(filled, '=') << std::string(kWidth - filled, ' ') << "] " << done
        << '/' << total;
    if (done == total) err << '\n';
    err.flush();
  };
}

std::vector<std::string> read_url_list(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> urls;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty() && line.front() != '#') urls.push_back(line);
  }
  return urls;
}

struct GetArgs {
  std::string url;
  std::string base;
  std::vector<std::string> params;
};

int cmd_get(const GetArgs& a, const Globals& g, std::ostream& out) {
  if (a.url.empty() == a.base.empty()) throw UsageError("get needs either a URL or --base");
  const GatewaySettings s = settings(g);
  ApiRequest request;
  const bool with_params = !a.base.empty();
  if (with_params) {
    request.base_url = a.base;
    for (const auto& p : a.params) request.params.push_back(split_pair(p, "--param"));
  } else {
    if (!a.params.empty()) throw UsageError("--param requires --base");
    request = ApiRequest::from_url(a.url);
  }
  apply(s, request);
  const TableSet set = tabulate(HttpGateway(), request, column_mode(g), with_params);
  write_tables(set, g);
  report(set, g, out);
  return kExitOk;
}

struct BatchArgs {
  std::string urls_file;
  std::string checkpoint_dir;
  std::size_t interval = 50;
  std::size_t parallelism = 1;
  bool resume = false;
  bool strict = false;
};

int cmd_batch(const BatchArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const fs::path dir =
      a.checkpoint_dir.empty() ? fs::path(g.out_dir) / ".checkpoint" : fs::path(a.checkpoint_dir);
  BatchJob job = BatchJob::from_urls(read_url_list(a.urls_file), dir);
  const GatewaySettings s = settings(g);
  for (auto& r : job.requests) apply(s, r);
  job.checkpoint_interval = a.interval;
  job.parallelism = a.parallelism;
  job.mode = column_mode(g);

  const auto progress = progress_printer(err, g.quiet);
  const BatchResult result = a.resume ? run_or_resume(job, progress) : run(job, progress);

  write_tables(result.tables, g);
  Table failures("failures", {"index", "url", "error"});
  for (const auto& f : result.failures) failures.add_row({std::to_string(f.index), f.url, f.error});
  {
    const fs::path path = fs::path(g.out_dir) / "failures.csv";
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    write_csv(failures, file);
    if (!file) throw Error(Errc::SinkError, "cannot write " + path.string());
  }
  report(result.tables, g, out);
  if (!result.failures.empty()) {
    err << result.failures.size() << " of " << job.requests.size() << " requests failed (see failures.csv)\n";
    if (a.strict) return kExitFailure;
  }
  return kExitOk;
}

int cmd_inspect(const std::string& source, const Globals& g, std::ostream& out) {
  const TableSet set = map_tree(load_tree(source, g), column_mode(g));
  out << render_summary(summarize(set));
  return kExitOk;
}

struct PlotArgs {
  std::string source;
  std::string format = "svg";
  bool jitter = false;
  std::string output;
};

int cmd_plot(const PlotArgs& a, const Globals& g, std::ostream& out) {
  const RenderFormat format = parse_render_format(a.format);
  const std::string text = render_tree(layout_tree(load_tree(a.source, g), a.jitter), format);
  fs::path path = a.output;
  if (path.empty()) {
    path = fs::path(g.out_dir) / (std::string("tree.") + (format == RenderFormat::Svg ? "svg" : "dot"));
  }
  ensure_parent(path);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw Error(Errc::SinkError, "cannot write " + path.string());
  if (!g.quiet) out << path.string() << '\n';
  return kExitOk;
}

struct GenArgs {
  std::string base_url;
  std::vector<std::string> params;
  std::string name = "endpoint";
  std::string description;
  std::string output;
};

int cmd_gen_client(const GenArgs& a, const Globals& g, std::ostream& out) {
  EndpointSpec spec;
  spec.name = a.name;
  spec.base_url = a.base_url;
  if (!a.description.empty()) spec.description = a.description;
  for (const auto& p : a.params) {
    const auto eq = p.find('=');
    spec.params.push_back(eq == std::string::npos
                              ? EndpointParam::required_param(p)
                              : EndpointParam::with_default(p.substr(0, eq), p.substr(eq + 1)));
  }
  validate_spec(spec);
  fs::path path = a.output;
  if (path.empty()) {
    path = fs::path(g.out_dir) / (file_stem(spec.name) + ".yaml");
  }
  ensure_parent(path);
  save_spec(spec, path);
  if (!g.quiet) out << path.string() << '\n';
  return kExitOk;
}

struct CallArgs {
  std::string spec;
  std::vector<std::string> args;
};

int cmd_call(const CallArgs& a, const Globals& g, std::ostream& out) {
  const Endpoint endpoint = generate_endpoint(load_spec(a.spec), settings(g));
  std::vector<Argument> args;
  for (const auto& arg : a.args) args.push_back(split_pair(arg, "--arg"));
  const TableSet set = endpoint.call(args, column_mode(g));
  write_tables(set, g);
  report(set, g, out);
  return kExitOk;
}

bool is_usage_code(Errc code) {
  switch (code) {
    case Errc::SpecInvalid:
    case Errc::SpecFileInvalid:
    case Errc::MissingParameter:
    case Errc::UnknownParameter:
    case Errc::UnsupportedFormat:
    case Errc::InvalidBaseUrl:
    case Errc::InvalidArgument:
      return true;
    default:
      return false;
  }
}

void add_globals(CLI::App& app, Globals& g) {
  app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--format", g.format, "Table file format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  app.add_option("--columns", g.columns, "Column naming: short leaf names or full paths")
      ->check(CLI::IsMember({"short", "full"}))
      ->capture_default_str();
  app.add_option("--timeout", g.timeout_secs, "Request timeout in seconds")->check(CLI::PositiveNumber);
  app.add_option("--retries", g.retries, "Retries for transport errors and 5xx")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--delay-ms", g.delay_ms, "Minimum delay between requests to one host")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--header", g.headers, "Extra request header 'Name: value' (repeatable)");
  app.add_flag("-q,--quiet", g.quiet, "Suppress reports and progress");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fetch REST API resources and map them to flat tables", "webtabulate"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Globals g;
  add_globals(app, g);

  GetArgs get_args;
  auto* get = app.add_subcommand("get", "Fetch one resource and write one file per table");
  get->add_option("url", get_args.url, "Resource URL");
  get->add_option("--base", get_args.base, "Base URL; combine with --param");
  get->add_option("--param", get_args.params, "Query parameter name=value (repeatable)");

  BatchArgs batch_args;
  auto* batch = app.add_subcommand("batch", "Fetch many URLs with checkpointing and merge the tables");
  batch->add_option("urls", batch_args.urls_file, "File with one URL per line")->required()->check(CLI::ExistingFile);
  batch->add_option("--checkpoint-dir", batch_args.checkpoint_dir, "Checkpoint directory (default <out-dir>/.checkpoint)");
  batch->add_option("--interval", batch_args.interval, "Responses between checkpoint flushes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  batch->add_option("--parallelism", batch_args.parallelism, "Concurrent requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  batch->add_flag("--resume", batch_args.resume, "Continue an interrupted job");
  batch->add_flag("--strict", batch_args.strict, "Exit 1 if any request failed");

  std::string inspect_source;
  auto* inspect = app.add_subcommand("inspect", "Print the table structure of a resource or saved body");
  inspect->add_option("source", inspect_source, "URL or file")->required();

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Render the document tree as SVG or DOT");
  plot->add_option("source", plot_args.source, "URL or file")->required();
  plot->add_option("--format", plot_args.format, "svg or dot")->capture_default_str();
  plot->add_flag("--jitter", plot_args.jitter, "Offset sibling labels vertically");
  plot->add_option("-o,--output", plot_args.output, "Output file (default <out-dir>/tree.<format>)");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen-client", "Write an endpoint spec file");
  gen->add_option("--base-url", gen_args.base_url, "Endpoint base URL")->required();
  gen->add_option("--param", gen_args.params, "Parameter name, or name=default (repeatable)");
  gen->add_option("--name", gen_args.name, "Endpoint name")->capture_default_str();
  gen->add_option("--description", gen_args.description, "Free-text description");
  gen->add_option("-o,--output", gen_args.output, "Spec file (default <out-dir>/<name>.yaml)");

  CallArgs call_args;
  auto* call = app.add_subcommand("call", "Call an endpoint described by a spec file");
  call->add_option("--spec", call_args.spec, "Spec file")->required()->check(CLI::ExistingFile);
  call->add_option("--arg", call_args.args, "Argument name=value (repeatable)");

  for (auto* sub : {get, batch, inspect, plot, gen, call}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*get) return cmd_get(get_args, g, out);
    if (*batch) return cmd_batch(batch_args, g, out, err);
    if (*inspect) return cmd_inspect(inspect_source, g, out);
    if (*plot) return cmd_plot(plot_args, g, out);
    if (*gen) return cmd_gen_client(gen_args, g, out);
    if (*call) return cmd_call(call_args, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    for (auto* sub : {get, batch, inspect, plot, gen, call}) {
      if (*sub) err << sub->help();
    }
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_code(e.code()) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace webtabulate::cli
