#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "zb/quadrature.hpp"

namespace zb::cli {

using json = nlohmann::ordered_json;

/// Names of the built-in profiles (fig1 ... fig7, sweep).
std::vector<std::string> profile_names();

/// Built-in profile; throws ConfigError for an unknown name.
json builtin_profile(const std::string& name);

/// Overlay `user` onto `base`. Keys absent from `base` and type mismatches throw ConfigError.
json overlay(const json& base, const json& user, const std::string& path = "");

/// Parse a JSON file; throws ConfigError on I/O or syntax errors.
json load_config_file(const std::filesystem::path& file);

/// Profile overlaid with an optional user file.
json resolve_config(const std::string& profile, const std::filesystem::path& user_file);

QuadratureSpec quadrature_from(const json& cfg);

/// Typed accessors that raise ConfigError with the key path.
double get_number(const json& cfg, const std::string& key);
int get_int(const json& cfg, const std::string& key);
std::vector<double> get_numbers(const json& cfg, const std::string& key);

}  // namespace zb::cli
