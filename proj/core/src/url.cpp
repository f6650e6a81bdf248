#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>

#include "webtabulate/error.hpp"
#include "webtabulate/http_gateway.hpp"

namespace webtabulate {
namespace {

bool query_safe(unsigned char c) {
  if (std::isalnum(c)) return true;
  switch (c) {
    case '-': case '.': case '_': case '~':
    case ':': case '@': case '/': case '?':
    case '!': case '$': case '\'': case '(': case ')': case '*': case ',':
      return true;
    default:
      return false;
  }
}

std::string_view scheme_rest(std::string_view url) {
  for (std::string_view scheme : {"http://", "https://"}) {
    if (url.size() > scheme.size() &&
        std::equal(scheme.begin(), scheme.end(), url.begin(),
                   [](char a, char b) { return a == std::tolower(static_cast<unsigned char>(b)); })) {
      return url.substr(scheme.size());
    }
  }
  return {};
}

}  // namespace

std::string encode_query_component(std::string_view text) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (query_safe(c)) {
      out += ch;
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0x0F];
    }
  }
  return out;
}

bool is_absolute_http_url(std::string_view url) noexcept {
  const auto rest = scheme_rest(url);
  if (rest.empty()) return false;
  const auto host_end = rest.find_first_of("/?#");
  const auto authority = rest.substr(0, host_end);
  if (authority.empty() || authority.find_first_of(" \t\r\n") != std::string_view::npos) {
    return false;
  }
  const auto at = authority.rfind('@');
  const auto host = at == std::string_view::npos ? authority : authority.substr(at + 1);
  return !host.empty() && host.front() != ':';
}

std::string url_host(std::string_view url) {
  const auto rest = scheme_rest(url);
  auto authority = rest.substr(0, rest.find_first_of("/?#"));
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority.remove_prefix(at + 1);
  }
  std::string host(authority);
  std::transform(host.begin(), host.end(), host.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return host;
}

std::string build_url(std::string_view base_url, const std::vector<QueryParam>& params) {
  if (!is_absolute_http_url(base_url)) {
    throw Error(Errc::InvalidBaseUrl, "not an absolute http(s) URL: '" + std::string(base_url) + "'");
  }
  std::string url(base_url);
  if (params.empty()) return url;

  if (url.find('?') == std::string::npos) {
    url += '?';
  } else if (url.back() != '?' && url.back() != '&') {
    url += '&';
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].name.empty()) throw Error(Errc::InvalidArgument, "empty query parameter name");
    if (i > 0) url += '&';
    url += encode_query_component(params[i].name);
    url += '=';
    url += encode_query_component(params[i].value);
  }
  return url;
}

}  // namespace webtabulate
