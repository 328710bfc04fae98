#include "zb/cli/config.hpp"

#include <fstream>

#include "zb/core.hpp"

namespace zb::cli {

namespace {

json quadrature_defaults() {
  return json{{"rel_tol", 1e-10}, {"abs_tol", 1e-14}, {"max_subdivisions", 400}, {"window_sigmas", 10.0}};
}

std::string type_name(const json& j) {
  if (j.is_number()) return "number";
  return j.type_name();
}

}  // namespace

std::vector<std::string> profile_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig7", "sweep"}; }

json builtin_profile(const std::string& name) {
  if (name == "fig1")
    return json{{"mass_ratio", 273.1},     {"widths", {1.0, 2.0, 4.0}}, {"k0z", 0.8},
                {"t_min", 0.0},            {"t_max", 12.0},             {"samples", 1201},
                {"quadrature", quadrature_defaults()}};
  if (name == "fig2")
    return json{{"mass_ratio", 273.1},
                {"width", 2.0},
                {"k0", 0.8},
                {"snapshot_times", {0.0, 2.0, 4.0, 6.0, 8.0, 10.0}},
                {"modes", 2048}};
  if (name == "fig3")
    return json{{"mass_ratio", 273.1}, {"b_values", {0.0045, 0.45, 4.5}}, {"t_max", {1400.0, 50.0, 20.0}},
                {"samples", 2001},     {"charge_sign", 1}};
  if (name == "fig4")
    return json{{"mass_ratio", 273.1}, {"b", 0.45},      {"width_in_L", 2.0}, {"k0x_over_b", 0.7},
                {"t_max", 100.0},      {"samples", 5001}, {"charge_sign", 1}};
  if (name == "fig5")
    return json{{"mass_ratio", 273.1}, {"b_values", {0.0045, 0.045, 0.45, 4.5}}, {"k0z", 0.8}, {"t_max", 20.0},
                {"samples", 1001},     {"charge_sign", 1}};
  if (name == "fig7")
    return json{{"mass_ratio", 273.1}, {"width", 5.0},   {"t_max", 30.0},   {"samples", 1501},
                {"pde", true},         {"pde_dx", 0.02}, {"pde_dt", 0.015}, {"quadrature", quadrature_defaults()}};
  if (name == "sweep")
    return json{{"width", 2.0},  {"k0", 0.8},   {"width_in_L", 2.0}, {"t_max_over_decay", 4.0}, {"samples_per_unit", 50.0},
                {"quadrature", quadrature_defaults()}};
  if (name == "fig6") throw ConfigError("figure 6 is a schematic figure, no data");
  throw ConfigError("unknown profile '" + name + "'");
}

json overlay(const json& base, const json& user, const std::string& path) {
  if (!user.is_object()) throw ConfigError("configuration " + (path.empty() ? "root" : path) + " must be an object");
  json out = base;
  for (const auto& [key, value] : user.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown configuration key '" + where + "'");
    const json& ref = base.at(key);
    if (ref.is_object()) {
      out[key] = overlay(ref, value, where);
    } else if (ref.is_array()) {
      if (!value.is_array() || value.empty()) throw ConfigError("'" + where + "' must be a non-empty array");
      for (const auto& e : value)
        if (type_name(e) != type_name(ref.front()))
          throw ConfigError("'" + where + "' entries must be of type " + type_name(ref.front()));
      out[key] = value;
    } else {
      if (type_name(value) != type_name(ref))
        throw ConfigError("'" + where + "' must be of type " + type_name(ref) + ", got " + type_name(value));
      out[key] = value;
    }
  }
  return out;
}

json load_config_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open configuration file " + file.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed configuration file " + file.string() + ": " + e.what());
  }
}

json resolve_config(const std::string& profile, const std::filesystem::path& user_file) {
  json cfg = builtin_profile(profile);
  if (!user_file.empty()) cfg = overlay(cfg, load_config_file(user_file));
  return cfg;
}

QuadratureSpec quadrature_from(const json& cfg) {
  QuadratureSpec s;
  if (!cfg.contains("quadrature")) return s;
  const json& q = cfg.at("quadrature");
  s.rel_tol = get_number(q, "rel_tol");
  s.abs_tol = get_number(q, "abs_tol");
  s.max_subdivisions = get_int(q, "max_subdivisions");
  s.window_sigmas = get_number(q, "window_sigmas");
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid quadrature settings: ") + e.what());
  }
  return s;
}

double get_number(const json& cfg, const std::string& key) {
  if (!cfg.contains(key) || !cfg.at(key).is_number()) throw ConfigError("missing numeric key '" + key + "'");
  return cfg.at(key).get<double>();
}

int get_int(const json& cfg, const std::string& key) {
  const double v = get_number(cfg, key);
  if (v != static_cast<double>(static_cast<int>(v))) throw ConfigError("'" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::vector<double> get_numbers(const json& cfg, const std::string& key) {
  if (!cfg.contains(key) || !cfg.at(key).is_array()) throw ConfigError("missing array key '" + key + "'");
  std::vector<double> out;
  for (const auto& e : cfg.at(key)) {
    if (!e.is_number()) throw ConfigError("'" + key + "' must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace zb::cli
