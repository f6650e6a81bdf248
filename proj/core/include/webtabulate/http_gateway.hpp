#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "webtabulate/tree.hpp"

namespace webtabulate {

struct QueryParam {
  std::string name;
  std::string value;
  friend bool operator==(const QueryParam&, const QueryParam&) = default;
};

struct Header {
  std::string name;
  std::string value;
  friend bool operator==(const Header&, const Header&) = default;
};

/// 30 s unless WEBTABULATE_TIMEOUT_SECS holds a positive integer.
std::chrono::seconds default_timeout();
/// "webtabulate/<version>" unless WEBTABULATE_USER_AGENT is set.
std::string default_user_agent();

struct ApiRequest {
  std::string base_url;
  std::vector<QueryParam> params;
  std::vector<Header> headers;
  std::chrono::seconds timeout = default_timeout();
  int max_retries = 3;
  std::chrono::milliseconds politeness_delay{0};

  /// base_url with params appended (see build_url).
  std::string url() const;

  static ApiRequest from_url(std::string url);
};

struct ApiResponse {
  ApiRequest request;
  std::string final_url;
  int status = 0;
  std::vector<Header> headers;
  /// Payload after content decoding and archive extraction.
  std::string body;
  MimeKind mime = MimeKind::Unknown;
  std::chrono::system_clock::time_point retrieved_at;
  int attempts = 0;

  /// First header with this name, compared case-insensitively.
  const std::string* header(std::string_view name) const noexcept;
};

/// Appends `name=value` pairs joined by '&': after '?' if base_url has no
/// query, directly if it ends in '?' or '&', else after '&'. Names and values
/// are percent-encoded (see encode_query_component); base_url is never
/// re-encoded. Throws Errc::InvalidBaseUrl, and Errc::InvalidArgument for an
/// empty parameter name.
std::string build_url(std::string_view base_url, const std::vector<QueryParam>& params);

/// Percent-encodes everything except unreserved characters and the
/// sub-delimiters that are unambiguous inside a query pair:
/// A-Z a-z 0-9 - . _ ~ : @ / ? ! $ ' ( ) * ,
std::string encode_query_component(std::string_view text);

/// Absolute http(s) URL with a non-empty host.
bool is_absolute_http_url(std::string_view url) noexcept;
/// Lower-cased host[:port] of an absolute URL, or "" if it has none.
std::string url_host(std::string_view url);

/// Undoes Content-Encoding gzip/deflate, then unwraps bodies whose magic
/// bytes mark a gzip stream or a zip archive. Throws Errc::ArchiveError for a
/// zip with other than one file entry or a corrupt stream.
std::string decode_body(std::string body, std::string_view content_encoding);

/// Retry delays for attempts 2..max_retries+1: initial, 2*initial, 4*initial, ...
std::vector<std::chrono::milliseconds> backoff_schedule(std::chrono::milliseconds initial,
                                                        int max_retries);

struct GatewayOptions {
  std::chrono::milliseconds initial_backoff{1000};
  long max_redirects = 5;
  /// Called for backoff and politeness waits; defaults to sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

/// Executes GET requests. Safe to share between threads; requests to the same
/// host honor the request's politeness_delay between starts.
class HttpGateway {
 public:
  explicit HttpGateway(GatewayOptions options = {});

  /// Follows up to max_redirects redirects, retries transport errors and 5xx
  /// with exponential backoff, decodes the body.
  /// Throws Errc::TransportError, HttpStatusError, Errc::BinaryBodyError,
  /// Errc::ArchiveError.
  ApiResponse execute(const ApiRequest& request) const;

  /// execute() followed by sniff_and_parse(); the response's mime is updated
  /// to the format that actually parsed.
  std::pair<ApiResponse, TreeNode> fetch_tree(const ApiRequest& request) const;
  std::pair<ApiResponse, TreeNode> fetch_tree(std::string_view url) const;

  const GatewayOptions& options() const noexcept { return options_; }

 private:
  void pause(std::chrono::milliseconds delay) const;

  GatewayOptions options_;
};

}  // namespace webtabulate
