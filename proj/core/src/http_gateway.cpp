#include "webtabulate/http_gateway.hpp"

#include <curl/curl.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "webtabulate/error.hpp"
#include "webtabulate/ingest.hpp"
#include "webtabulate/version.hpp"

namespace webtabulate {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
  });
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void ensure_curl_initialized() {
  static const bool initialized = [] {
    curl_global_init(CURL_GLOBAL_DEFAULT);
    return true;
  }();
  (void)initialized;
}

struct CurlDeleter {
  void operator()(CURL* handle) const { curl_easy_cleanup(handle); }
};
struct SlistDeleter {
  void operator()(curl_slist* list) const { curl_slist_free_all(list); }
};

struct RawResponse {
  long status = 0;
  std::string final_url;
  std::vector<Header> headers;
  std::string body;
};

std::size_t on_body(char* data, std::size_t size, std::size_t count, void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}

std::size_t on_header(char* data, std::size_t size, std::size_t count, void* user) {
  auto* headers = static_cast<std::vector<Header>*>(user);
  const std::string_view line(data, size * count);
  if (line.starts_with("HTTP/")) {
    headers->clear();  // a new response in a redirect chain
  } else if (const auto colon = line.find(':'); colon != std::string_view::npos) {
    headers->push_back({std::string(trim(line.substr(0, colon))),
                        std::string(trim(line.substr(colon + 1)))});
  }
  return size * count;
}

class TransportFailure : public std::runtime_error {
 public:
  TransportFailure(const std::string& message, bool retryable)
      : std::runtime_error(message), retryable_(retryable) {}
  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

RawResponse perform_get(const std::string& url, const ApiRequest& request, long max_redirects) {
  ensure_curl_initialized();
  std::unique_ptr<CURL, CurlDeleter> curl(curl_easy_init());
  if (!curl) throw TransportFailure("cannot create curl handle", false);

  RawResponse raw;
  std::unique_ptr<curl_slist, SlistDeleter> header_list;
  bool has_user_agent = false;
  bool has_accept_encoding = false;
  for (const auto& h : request.headers) {
    has_user_agent = has_user_agent || iequals(h.name, "User-Agent");
    has_accept_encoding = has_accept_encoding || iequals(h.name, "Accept-Encoding");
    const std::string line = h.name + ": " + h.value;
    header_list.reset(curl_slist_append(header_list.release(), line.c_str()));
  }
  // Decompression is done by decode_body, so curl must not decode on its own.
  if (!has_accept_encoding) {
    header_list.reset(curl_slist_append(header_list.release(), "Accept-Encoding: gzip, deflate"));
  }
  const std::string user_agent = default_user_agent();

  CURL* h = curl.get();
  curl_easy_setopt(h, CURLOPT_URL, url.c_str());
  curl_easy_setopt(h, CURLOPT_HTTPGET, 1L);
  curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(h, CURLOPT_MAXREDIRS, max_redirects);
  curl_easy_setopt(h, CURLOPT_NOSIGNAL, 1L);
  curl_easy_setopt(h, CURLOPT_TIMEOUT, static_cast<long>(request.timeout.count()));
  curl_easy_setopt(h, CURLOPT_HTTP_VERSION, CURL_HTTP_VERSION_2TLS);
  curl_easy_setopt(h, CURLOPT_PROTOCOLS, CURLPROTO_HTTP | CURLPROTO_HTTPS);
  curl_easy_setopt(h, CURLOPT_REDIR_PROTOCOLS, CURLPROTO_HTTP | CURLPROTO_HTTPS);
  if (!has_user_agent) curl_easy_setopt(h, CURLOPT_USERAGENT, user_agent.c_str());
  if (header_list) curl_easy_setopt(h, CURLOPT_HTTPHEADER, header_list.get());
  curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, on_body);
  curl_easy_setopt(h, CURLOPT_WRITEDATA, &raw.body);
  curl_easy_setopt(h, CURLOPT_HEADERFUNCTION, on_header);
  curl_easy_setopt(h, CURLOPT_HEADERDATA, &raw.headers);

  const CURLcode rc = curl_easy_perform(h);
  if (rc != CURLE_OK) {
    const bool retryable = rc != CURLE_TOO_MANY_REDIRECTS && rc != CURLE_URL_MALFORMAT &&
                           rc != CURLE_UNSUPPORTED_PROTOCOL;
    throw TransportFailure(std::string(curl_easy_strerror(rc)) + " (" + url + ")", retryable);
  }
  curl_easy_getinfo(h, CURLINFO_RESPONSE_CODE, &raw.status);
  char* effective = nullptr;
  curl_easy_getinfo(h, CURLINFO_EFFECTIVE_URL, &effective);
  raw.final_url = effective != nullptr ? effective : url;
  return raw;
}

// Serializes request starts per host so consecutive starts are at least the
// request's politeness_delay apart.
class HostLimiter {
 public:
  static HostLimiter& instance() {
    static HostLimiter limiter;
    return limiter;
  }

  std::chrono::milliseconds reserve(const std::string& host, std::chrono::milliseconds delay) {
    using clock = std::chrono::steady_clock;
    std::lock_guard lock(mutex_);
    const auto now = clock::now();
    auto& next = next_start_[host];
    const auto start = std::max(now, next);
    next = start + delay;
    return std::chrono::ceil<std::chrono::milliseconds>(start - now);
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::chrono::steady_clock::time_point> next_start_;
};

std::string snippet(std::string_view body) {
  constexpr std::size_t kMax = 200;
  std::string out(body.substr(0, kMax));
  std::replace_if(out.begin(), out.end(), [](unsigned char c) { return c < 0x20; }, ' ');
  if (body.size() > kMax) out += "...";
  return out;
}

}  // namespace

std::chrono::seconds default_timeout() {
  if (const char* env = std::getenv("WEBTABULATE_TIMEOUT_SECS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return std::chrono::seconds(value);
  }
  return std::chrono::seconds(30);
}

std::string default_user_agent() {
  if (const char* env = std::getenv("WEBTABULATE_USER_AGENT"); env != nullptr && *env != '\0') {
    return env;
  }
  return std::string("webtabulate/") + kVersion;
}

std::string ApiRequest::url() const { return build_url(base_url, params); }

ApiRequest ApiRequest::from_url(std::string url) {
  ApiRequest request;
  request.base_url = std::move(url);
  return request;
}

const std::string* ApiResponse::header(std::string_view name) const noexcept {
  for (const auto& h : headers) {
    if (iequals(h.name, name)) return &h.value;
  }
  return nullptr;
}

std::vector<std::chrono::milliseconds> backoff_schedule(std::chrono::milliseconds initial,
                                                        int max_retries) {
  std::vector<std::chrono::milliseconds> delays;
  auto delay = initial;
  for (int i = 0; i < max_retries; ++i) {
    delays.push_back(delay);
    delay *= 2;
  }
  return delays;
}

HttpGateway::HttpGateway(GatewayOptions options) : options_(std::move(options)) {}

void HttpGateway::pause(std::chrono::milliseconds delay) const {
  if (delay.count() <= 0) return;
  if (options_.sleep) {
    options_.sleep(delay);
  } else {
    std::this_thread::sleep_for(delay);
  }
}

ApiResponse HttpGateway::execute(const ApiRequest& request) const {
  if (request.max_retries < 0) throw Error(Errc::InvalidArgument, "max_retries must be >= 0");
  const std::string url = request.url();
  const std::string host = url_host(url);
  const auto delays = backoff_schedule(options_.initial_backoff, request.max_retries);

  for (int attempt = 1;; ++attempt) {
    const bool can_retry = attempt <= request.max_retries;
    if (request.politeness_delay.count() > 0) {
      pause(HostLimiter::instance().reserve(host, request.politeness_delay));
    }

    RawResponse raw;
    try {
      raw = perform_get(url, request, options_.max_redirects);
    } catch (const TransportFailure& failure) {
      if (failure.retryable() && can_retry) {
        pause(delays[static_cast<std::size_t>(attempt - 1)]);
        continue;
      }
      throw Error(Errc::TransportError, std::string(failure.what()) + " after " +
                                            std::to_string(attempt) + " attempt(s)");
    }

    if (raw.status >= 500 && can_retry) {
      pause(delays[static_cast<std::size_t>(attempt - 1)]);
      continue;
    }
    if (raw.status >= 400) throw HttpStatusError(static_cast<int>(raw.status), raw.final_url, snippet(raw.body));

    ApiResponse response;
    response.request = request;
    response.final_url = std::move(raw.final_url);
    response.status = static_cast<int>(raw.status);
    response.headers = std::move(raw.headers);
    response.retrieved_at = std::chrono::system_clock::now();
    response.attempts = attempt;

    const std::string* encoding = response.header("Content-Encoding");
    response.body = decode_body(std::move(raw.body), encoding ? *encoding : std::string_view{});
    if (!is_utf8_text(response.body)) {
      throw Error(Errc::BinaryBodyError,
                  "unexpected binary content in response body from " + response.final_url);
    }
    const std::string* content_type = response.header("Content-Type");
    response.mime = detect_mime(response.body, content_type ? std::optional<std::string_view>(*content_type)
                                                            : std::nullopt);
    return response;
  }
}

std::pair<ApiResponse, TreeNode> HttpGateway::fetch_tree(const ApiRequest& request) const {
  ApiResponse response = execute(request);
  const std::string* content_type = response.header("Content-Type");
  auto parsed = sniff_and_parse(response.body, content_type ? std::optional<std::string_view>(*content_type)
                                                            : std::nullopt);
  response.mime = parsed.mime;
  return {std::move(response), std::move(parsed.tree)};
}

std::pair<ApiResponse, TreeNode> HttpGateway::fetch_tree(std::string_view url) const {
  return fetch_tree(ApiRequest::from_url(std::string(url)));
}

}  // namespace webtabulate
