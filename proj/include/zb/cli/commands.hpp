#pragma once

#include <filesystem>
#include <string>

#include "zb/cli/config.hpp"
#include "zb/cli/output.hpp"

namespace zb::cli {

/// Figures with data: 1, 2, 3, 4, 5, 7. Figure 6 and unknown ids throw ConfigError.
RunManifest run_figure(int id, const json& config, const std::filesystem::path& out_dir);

/// Sweep parameters: d, k0, b. Observables: n_osc, t_decay, v_inf (d, k0) and ratio (b).
struct SweepRequest {
  std::string parameter;
  std::string observable;
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  bool log_spacing = false;
};
RunManifest run_sweep(const SweepRequest& req, const json& config, const std::filesystem::path& out_dir);

/// Plain-text SI table for a string of density rho, substrate constant K and tension T.
std::string string_params_table(double rho, double K, double T);

}  // namespace zb::cli
