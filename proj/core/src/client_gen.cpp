#include "webtabulate/client_gen.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "webtabulate/error.hpp"

namespace webtabulate {

void append_input_columns(TableSet& set, const std::vector<QueryParam>& params) {
  for (auto& table : set) {
    for (const auto& p : params) table.add_column(std::string(kInputColumnPrefix) + p.name, p.value);
  }
}

TableSet tabulate(const HttpGateway& gateway, const ApiRequest& request, ColumnMode mode,
                  bool input_columns) {
  auto [response, tree] = gateway.fetch_tree(request);
  TableSet set = map_tree(tree, mode);
  if (input_columns) append_input_columns(set, request.params);
  return set;
}

EndpointParam EndpointParam::required_param(std::string name) {
  return {std::move(name), std::nullopt, true};
}

EndpointParam EndpointParam::with_default(std::string name, std::string value) {
  return {std::move(name), std::move(value), false};
}

void validate_spec(const EndpointSpec& spec) {
  if (!is_absolute_http_url(spec.base_url)) {
    throw Error(Errc::SpecInvalid, "base_url is not an absolute http(s) URL: '" + spec.base_url + "'");
  }
  std::set<std::string> names;
  for (const auto& p : spec.params) {
    if (p.name.empty()) throw Error(Errc::SpecInvalid, "parameter with empty name");
    if (!names.insert(p.name).second) {
      throw Error(Errc::SpecInvalid, "duplicate parameter '" + p.name + "'");
    }
    if (p.required == p.default_value.has_value()) {
      throw Error(Errc::SpecInvalid, "parameter '" + p.name +
                                         "' must be either required or carry a default");
    }
  }
}

Endpoint::Endpoint(EndpointSpec spec, GatewaySettings settings,
                   std::shared_ptr<const HttpGateway> gateway)
    : spec_(std::move(spec)), settings_(std::move(settings)), gateway_(std::move(gateway)) {
  validate_spec(spec_);
  if (!gateway_) gateway_ = std::make_shared<HttpGateway>();
}

std::vector<QueryParam> Endpoint::resolve(const std::vector<Argument>& args) const {
  std::set<std::string> known;
  for (const auto& p : spec_.params) known.insert(p.name);
  std::set<std::string> given;
  for (const auto& a : args) {
    if (!known.contains(a.name)) throw ParameterError(Errc::UnknownParameter, a.name);
    if (!given.insert(a.name).second) {
      throw Error(Errc::InvalidArgument, "argument '" + a.name + "' given twice");
    }
  }

  std::vector<QueryParam> resolved;
  resolved.reserve(spec_.params.size());
  for (const auto& p : spec_.params) {
    const auto it = std::find_if(args.begin(), args.end(),
                                 [&](const Argument& a) { return a.name == p.name; });
    if (it != args.end()) {
      resolved.push_back({p.name, it->value});
    } else if (p.default_value) {
      resolved.push_back({p.name, *p.default_value});
    } else {
      throw ParameterError(Errc::MissingParameter, p.name);
    }
  }
  return resolved;
}

ApiRequest Endpoint::request(const std::vector<Argument>& args) const {
  ApiRequest request;
  request.base_url = spec_.base_url;
  request.params = resolve(args);
  request.headers = settings_.headers;
  request.timeout = settings_.timeout;
  request.max_retries = settings_.max_retries;
  request.politeness_delay = settings_.politeness_delay;
  return request;
}

TableSet Endpoint::call(const std::vector<Argument>& args, ColumnMode mode) const {
  return tabulate(*gateway_, request(args), mode, /*input_columns=*/true);
}

Endpoint generate_endpoint(EndpointSpec spec, GatewaySettings settings,
                           std::shared_ptr<const HttpGateway> gateway) {
  return Endpoint(std::move(spec), std::move(settings), std::move(gateway));
}

TableSet call(const Endpoint& endpoint, const std::vector<Argument>& args, ColumnMode mode) {
  return endpoint.call(args, mode);
}

std::string spec_to_yaml(const EndpointSpec& spec) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << spec.name;
  out << YAML::Key << "base_url" << YAML::Value << YAML::DoubleQuoted << spec.base_url;
  if (spec.description) {
    out << YAML::Key << "description" << YAML::Value << YAML::DoubleQuoted << *spec.description;
  }
  out << YAML::Key << "params" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : spec.params) {
    out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << p.name;
    if (p.default_value) {
      out << YAML::Key << "default" << YAML::Value << YAML::DoubleQuoted << *p.default_value;
    } else {
      out << YAML::Key << "required" << YAML::Value << true;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

namespace {

std::string scalar_field(const YAML::Node& node, const char* key, bool mandatory) {
  const YAML::Node field = node[key];
  if (!field) {
    if (mandatory) throw Error(Errc::SpecFileInvalid, std::string("missing '") + key + "'");
    return {};
  }
  if (!field.IsScalar()) throw Error(Errc::SpecFileInvalid, std::string("'") + key + "' must be a string");
  return field.Scalar();
}

}  // namespace

EndpointSpec spec_from_yaml(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& ex) {
    throw Error(Errc::SpecFileInvalid, ex.what());
  }
  if (!root.IsMap()) throw Error(Errc::SpecFileInvalid, "spec file must be a mapping");

  EndpointSpec spec;
  spec.name = scalar_field(root, "name", true);
  spec.base_url = scalar_field(root, "base_url", true);
  if (root["description"]) spec.description = scalar_field(root, "description", true);

  if (const YAML::Node params = root["params"]) {
    if (!params.IsSequence() && !params.IsNull()) {
      throw Error(Errc::SpecFileInvalid, "'params' must be a list");
    }
    for (const auto& item : params) {
      if (item.IsScalar()) {
        spec.params.push_back(EndpointParam::required_param(item.Scalar()));
        continue;
      }
      if (!item.IsMap()) throw Error(Errc::SpecFileInvalid, "parameter entries must be mappings");
      EndpointParam p;
      p.name = scalar_field(item, "name", true);
      const bool has_default = static_cast<bool>(item["default"]);
      if (has_default) p.default_value = item["default"].IsNull() ? std::string() : scalar_field(item, "default", true);
      if (const YAML::Node required = item["required"]) {
        try {
          p.required = required.as<bool>();
        } catch (const YAML::Exception&) {
          throw Error(Errc::SpecFileInvalid, "'required' of '" + p.name + "' must be true or false");
        }
      } else {
        p.required = !has_default;
      }
      spec.params.push_back(std::move(p));
    }
  }
  try {
    validate_spec(spec);
  } catch (const Error& ex) {
    throw Error(Errc::SpecFileInvalid, ex.what());
  }
  return spec;
}

void save_spec(const EndpointSpec& spec, const std::filesystem::path& path) {
  validate_spec(spec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << spec_to_yaml(spec);
  if (!out) throw Error(Errc::SinkError, "cannot write spec file " + path.string());
}

EndpointSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SpecFileInvalid, "cannot read spec file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return spec_from_yaml(text.str());
}

}  // namespace webtabulate
