#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "webtabulate/http_gateway.hpp"
#include "webtabulate/mapper.hpp"
#include "webtabulate/table.hpp"

namespace webtabulate {

inline constexpr std::string_view kInputColumnPrefix = "INPUT_:_";

/// Appends one `INPUT_:_<name>` column per parameter to every table, holding
/// the parameter value in every row.
void append_input_columns(TableSet& set, const std::vector<QueryParam>& params);

/// Fetch, parse and map one request. With `input_columns` the request's
/// parameters are appended via append_input_columns.
TableSet tabulate(const HttpGateway& gateway, const ApiRequest& request,
                  ColumnMode mode = ColumnMode::Short, bool input_columns = false);

struct EndpointParam {
  std::string name;
  std::optional<std::string> default_value;
  bool required = true;

  static EndpointParam required_param(std::string name);
  static EndpointParam with_default(std::string name, std::string value);

  friend bool operator==(const EndpointParam&, const EndpointParam&) = default;
};

struct EndpointSpec {
  std::string name;
  std::string base_url;
  std::vector<EndpointParam> params;
  std::optional<std::string> description;

  friend bool operator==(const EndpointSpec&, const EndpointSpec&) = default;
};

/// Throws Errc::SpecInvalid: empty or duplicate parameter names, a base URL
/// that is not absolute http(s), or required != !default.
void validate_spec(const EndpointSpec& spec);

struct GatewaySettings {
  std::chrono::seconds timeout = default_timeout();
  int max_retries = 3;
  std::chrono::milliseconds politeness_delay{0};
  std::vector<Header> headers;
};

/// Named argument passed to an endpoint call.
using Argument = QueryParam;

/// A validated, reusable client for one API method.
class Endpoint {
 public:
  Endpoint(EndpointSpec spec, GatewaySettings settings, std::shared_ptr<const HttpGateway> gateway);

  const EndpointSpec& spec() const noexcept { return spec_; }
  const GatewaySettings& settings() const noexcept { return settings_; }

  /// Arguments merged with defaults, in spec order. Throws ParameterError
  /// (UnknownParameter, MissingParameter) and Errc::InvalidArgument for an
  /// argument given twice. Never touches the network.
  std::vector<QueryParam> resolve(const std::vector<Argument>& args) const;

  ApiRequest request(const std::vector<Argument>& args) const;

  /// Fetches and maps; every resolved parameter becomes an INPUT_ column.
  TableSet call(const std::vector<Argument>& args, ColumnMode mode = ColumnMode::Short) const;

 private:
  EndpointSpec spec_;
  GatewaySettings settings_;
  std::shared_ptr<const HttpGateway> gateway_;
};

/// Validates `spec` and binds it to a gateway (a default one if null).
Endpoint generate_endpoint(EndpointSpec spec, GatewaySettings settings = {},
                           std::shared_ptr<const HttpGateway> gateway = nullptr);

TableSet call(const Endpoint& endpoint, const std::vector<Argument>& args,
              ColumnMode mode = ColumnMode::Short);

/// YAML document: name, base_url, optional description, and an ordered
/// `params` list whose items carry `name` plus either `required: true` or
/// `default: <value>`. A bare string item is a required parameter.
std::string spec_to_yaml(const EndpointSpec& spec);
/// Throws Errc::SpecFileInvalid.
EndpointSpec spec_from_yaml(std::string_view text);

void save_spec(const EndpointSpec& spec, const std::filesystem::path& path);
EndpointSpec load_spec(const std::filesystem::path& path);

}  // namespace webtabulate
