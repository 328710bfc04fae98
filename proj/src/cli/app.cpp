#include "zb/cli/app.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "zb/cli/commands.hpp"
#include "zb/cli/verify.hpp"
#include "zb/core.hpp"
#include "zb/string_sim.hpp"
#include "zb/version.hpp"

namespace zb::cli {

int run(int argc, char** argv) {
  CLI::App app{"Klein-Gordon Zitterbewegung laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir;

  auto* fig = app.add_subcommand("figure", "Write the data behind a figure (1, 2, 3, 4, 5, 7)");
  int fig_id = 0;
  fig->add_option("id", fig_id, "Figure number")->required();
  fig->add_option("--config", config_file, "JSON file overlaid on the built-in profile")->check(CLI::ExistingFile);
  fig->add_option("--out", out_dir, "Output directory (default $ZB_OUT_DIR or ./zb_out)");

  auto* ver = app.add_subcommand("verify", "Run an invariant battery");
  std::string suite;
  ver->add_option("suite", suite, "identities | equivalence | sumrules | operator | oracle | all")->required();

  auto* sw = app.add_subcommand("sweep", "Evaluate an observable over a parameter range");
  SweepRequest req;
  sw->add_option("--param", req.parameter, "d | k0 | b")->required();
  sw->add_option("--observable", req.observable, "n_osc | t_decay | v_inf (d, k0); ratio (b)")->required();
  sw->add_option("--from", req.from, "Range start")->required();
  sw->add_option("--to", req.to, "Range end")->required();
  sw->add_option("--points", req.points, "Number of points")->required();
  sw->add_flag("--log", req.log_spacing, "Logarithmic spacing");
  sw->add_option("--config", config_file, "JSON file overlaid on the sweep profile")->check(CLI::ExistingFile);
  sw->add_option("--out", out_dir, "Output directory");

  auto* str = app.add_subcommand("string", "Classical string analogue");
  auto* params = str->add_subcommand("params", "SI parameter table");
  str->require_subcommand(1);
  double rho = 0.0, K = 5e7, T = 1000.0, radius = 1e-3, bulk = 8940.0;
  params->add_option("--rho", rho, "Linear density kg/m (default: copper wire of --radius)");
  params->add_option("--K", K, "Substrate elastic constant N/m^2")->capture_default_str();
  params->add_option("--T", T, "Tension N")->capture_default_str();
  params->add_option("--radius", radius, "Wire radius m")->capture_default_str();
  params->add_option("--bulk-density", bulk, "Bulk density kg/m^3")->capture_default_str();

  auto* prof = app.add_subcommand("profile", "Print a built-in configuration profile");
  std::string profile_name;
  prof->add_option("name", profile_name, "fig1 | fig2 | fig3 | fig4 | fig5 | fig7 | sweep")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const std::filesystem::path dir = out_dir.empty() ? default_output_dir() : std::filesystem::path(out_dir);
    if (fig->parsed()) {
      if (fig_id == 6) throw ConfigError("figure 6 is a schematic figure, no data");
      if (fig_id < 1 || fig_id > 7) throw ConfigError("unknown figure id " + std::to_string(fig_id) + " (valid: 1, 2, 3, 4, 5, 7)");
      const json cfg = resolve_config("fig" + std::to_string(fig_id), config_file);
      const RunManifest m = run_figure(fig_id, cfg, dir);
      for (const auto& f : m.outputs) std::cout << (dir / f).string() << '\n';
      return kExitOk;
    }
    if (ver->parsed()) {
      std::vector<std::string> suites = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      for (const auto& s : suites) {
        const VerifyReport r = run_verify(s);
        std::cout << r.render();
        ok = ok && r.passed();
      }
      return ok ? kExitOk : kExitVerifyFailed;
    }
    if (sw->parsed()) {
      const RunManifest m = run_sweep(req, resolve_config("sweep", config_file), dir);
      for (const auto& f : m.outputs) std::cout << (dir / f).string() << '\n';
      return kExitOk;
    }
    if (params->parsed()) {
      if (rho == 0.0) rho = wire_linear_density(radius, bulk);
      std::cout << string_params_table(rho, K, T);
      return kExitOk;
    }
    if (prof->parsed()) {
      std::cout << builtin_profile(profile_name).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "zb: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "zb: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "zb: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace zb::cli
