#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace webtabulate {

enum class Errc {
  // ingest
  MalformedDocument,
  MultiDocumentUnsupported,
  UnparseableBody,
  NonTextBody,
  // http_gateway
  InvalidBaseUrl,
  InvalidArgument,
  TransportError,
  HttpStatusError,
  BinaryBodyError,
  ArchiveError,
  // tables_io
  NameMismatch,
  SinkError,
  // batch
  CheckpointIoError,
  FirstFailure,
  ManifestMismatch,
  CheckpointCorrupt,
  Interrupted,
  // client_gen
  SpecInvalid,
  SpecFileInvalid,
  MissingParameter,
  UnknownParameter,
  // inspect
  UnsupportedFormat,
};

std::string_view to_string(Errc code) noexcept;

/// Base of every exception thrown by the library. `code()` identifies the
/// failure class; `what()` carries a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// MalformedDocument with the byte offset where the parser gave up.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Final 4xx/5xx status after retries were exhausted (or not attempted).
class HttpStatusError : public Error {
 public:
  HttpStatusError(int status, std::string url, std::string body_snippet);

  int status() const noexcept { return status_; }
  const std::string& url() const noexcept { return url_; }
  const std::string& body_snippet() const noexcept { return snippet_; }

 private:
  int status_;
  std::string url_;
  std::string snippet_;
};

/// Raised by client endpoints; `parameter()` names the offending argument.
class ParameterError : public Error {
 public:
  ParameterError(Errc code, std::string parameter);

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

}  // namespace webtabulate
