#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace testing_support {

struct MockRequest {
  std::string path;
  std::string target;  // path plus raw query
  std::multimap<std::string, std::string> params;
  std::multimap<std::string, std::string> headers;

  std::string param(const std::string& name) const;
};

struct MockResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::vector<std::pair<std::string, std::string>> headers;
};

using MockHandler = std::function<MockResponse(const MockRequest&)>;

/// Local HTTP server on 127.0.0.1 with an ephemeral port. Unknown paths get 404.
class MockServer {
 public:
  MockServer();
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  std::string base() const;
  std::string url(const std::string& path) const { return base() + path; }

  void serve(const std::string& path, MockResponse response);
  /// Responses are used in order, the last one repeats.
  void script(const std::string& path, std::vector<MockResponse> responses);
  void handle(const std::string& path, MockHandler handler);

  std::size_t hits(const std::string& path) const;
  std::vector<MockRequest> requests() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace testing_support
