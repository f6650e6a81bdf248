#include "webtabulate/error.hpp"

#include <utility>

namespace webtabulate {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedDocument: return "MalformedDocument";
    case Errc::MultiDocumentUnsupported: return "MultiDocumentUnsupported";
    case Errc::UnparseableBody: return "UnparseableBody";
    case Errc::NonTextBody: return "NonTextBody";
    case Errc::InvalidBaseUrl: return "InvalidBaseUrl";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TransportError: return "TransportError";
    case Errc::HttpStatusError: return "HttpStatusError";
    case Errc::BinaryBodyError: return "BinaryBodyError";
    case Errc::ArchiveError: return "ArchiveError";
    case Errc::NameMismatch: return "NameMismatch";
    case Errc::SinkError: return "SinkError";
    case Errc::CheckpointIoError: return "CheckpointIoError";
    case Errc::FirstFailure: return "FirstFailure";
    case Errc::ManifestMismatch: return "ManifestMismatch";
    case Errc::CheckpointCorrupt: return "CheckpointCorrupt";
    case Errc::Interrupted: return "Interrupted";
    case Errc::SpecInvalid: return "SpecInvalid";
    case Errc::SpecFileInvalid: return "SpecFileInvalid";
    case Errc::MissingParameter: return "MissingParameter";
    case Errc::UnknownParameter: return "UnknownParameter";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error(Errc::MalformedDocument, message + " (at byte " + std::to_string(offset) + ")"),
      offset_(offset) {}

HttpStatusError::HttpStatusError(int status, std::string url, std::string body_snippet)
    : Error(Errc::HttpStatusError,
            "HTTP " + std::to_string(status) + " from " + url +
                (body_snippet.empty() ? std::string() : ": " + body_snippet)),
      status_(status),
      url_(std::move(url)),
      snippet_(std::move(body_snippet)) {}

ParameterError::ParameterError(Errc code, std::string parameter)
    : Error(code, "parameter '" + parameter + "'"), parameter_(std::move(parameter)) {}

}  // namespace webtabulate
