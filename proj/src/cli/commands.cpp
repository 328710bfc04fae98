#include "zb/cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "zb/analysis.hpp"
#include "zb/freefield.hpp"
#include "zb/magnetic.hpp"
#include "zb/string_sim.hpp"
#include "zb/waveform.hpp"

namespace zb::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string tag(double v) {
  char buf[64];
  std::string s(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  for (auto& c : s)
    if (c == '.') c = 'p';
  return s;
}

std::vector<double> time_grid(double t_min, double t_max, int samples) {
  if (samples < 2) throw ConfigError("'samples' must be at least 2");
  if (!(t_max > t_min)) throw ConfigError("time range must satisfy t_max > t_min");
  return linspace(t_min, t_max, static_cast<std::size_t>(samples));
}

int charge_sign_from(const json& cfg) {
  const int s = get_int(cfg, "charge_sign");
  if (s != 1 && s != -1) throw ConfigError("'charge_sign' must be +1 or -1");
  return s;
}

void scale_comment(CsvTable& t, const json& cfg) {
  if (!cfg.contains("mass_ratio")) return;
  const PhysicalScale sc = scale_from_mass(get_number(cfg, "mass_ratio"));
  t.add_comment("t_c=" + format_number(sc.zb_time) + " s lambda_c=" + format_number(sc.compton_length) +
                " m B_s=" + format_number(sc.schwinger_field) + " T");
}

struct Emitter {
  RunManifest& manifest;
  const std::filesystem::path& dir;
  void operator()(const CsvTable& t, const std::string& name) {
    t.write(dir / name, manifest.digest());
    manifest.outputs.push_back(name);
  }
};

CsvTable magnetic_table() {
  return CsvTable({"t", "v_x", "v_y", "v_z", "v_x_inter", "v_y_inter", "v_z_inter", "v_x_classical",
                   "v_y_classical"});
}

void fill_magnetic(CsvTable& table, const GaussianPacket& packet, const LandauContext& ctx,
                   const std::vector<double>& times) {
  const UCoeffTable u = compute_u_table_converged(packet, ctx);
  const MagneticModel model(packet, ctx, u, times.back());
  const MagneticTrace tr = model.trace(times);
  table.add_comment("b=" + format_number(ctx.b_ratio) + " n_max=" + std::to_string(u.n_max) +
                    " u_method=" + to_string(u.method) + " kz_nodes=" + std::to_string(model.kz_nodes()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Vec3 c = nonrel_limit_velocity(packet, ctx, times[i]);
    table.add_row({times[i], tr.vx[i], tr.vy[i], tr.vz[i], tr.vx_interband[i], tr.vy_interband[i],
                   tr.vz_interband[i], c[0], c[1]});
  }
}

void figure1(const json& cfg, Emitter& emit) {
  const QuadratureSpec spec = quadrature_from(cfg);
  const auto times = time_grid(get_number(cfg, "t_min"), get_number(cfg, "t_max"), get_int(cfg, "samples"));
  const double k0 = get_number(cfg, "k0z");
  CsvTable traces({"d", "t", "v_z"});
  CsvTable summary({"d", "v_asymptotic", "t_decay_estimate", "t_decay_measured", "n_osc_estimate", "n_osc_measured"});
  scale_comment(traces, cfg);
  for (double d : get_numbers(cfg, "widths")) {
    const GaussianPacket p = GaussianPacket::isotropic(d, k0);
    p.validate();
    const VelocityTrace tr = packet_velocity_trace(p, times, spec);
    for (std::size_t i = 0; i < times.size(); ++i) traces.add_row({d, times[i], tr.values[i]});
    const SubPacketVelocities sub = subpacket_decompose(p, spec);
    const double asym = sub.v_plus + sub.v_minus;
    const DecayMeasurement m = measure_decay(tr, asym, nominal_zb_period(p));
    summary.add_row({d, asym, decay_time(p), m.decay_time, oscillation_count(p), static_cast<double>(m.oscillations)});
  }
  emit(traces, "fig1_velocity.csv");
  emit(summary, "fig1_summary.csv");
}

void figure2(const json& cfg, Emitter& emit) {
  const double d = get_number(cfg, "width");
  const double k0 = get_number(cfg, "k0");
  const auto ts = get_numbers(cfg, "snapshot_times");
  GaussianPacket p;
  p.widths = {d, d, d};
  p.k0 = {0.0, 0.0, k0};
  p.validate();
  double t_max = 0.0;
  for (double t : ts) t_max = std::max(t_max, std::abs(t));
  const auto grid = evolution_grid(d, t_max);
  const int modes = get_int(cfg, "modes");
  for (double t : ts) {
    const ComplexField1D f = evolve_packet_1d(p, t, grid, modes);
    CsvTable tab({"x", "re", "im", "abs"});
    tab.add_comment("time=" + format_number(t));
    tab.add_comment("charge=" + format_number(f.charge()) + " current=" + format_number(f.current()));
    for (std::size_t i = 0; i < grid.size(); ++i)
      tab.add_row({grid[i], f.amplitude[i].real(), f.amplitude[i].imag(), std::abs(f.amplitude[i])});
    emit(tab, "fig2_t" + tag(t) + ".csv");
  }
}

void figure3(const json& cfg, Emitter& emit) {
  const auto bs = get_numbers(cfg, "b_values");
  const auto tmax = get_numbers(cfg, "t_max");
  if (bs.size() != tmax.size()) throw ConfigError("'b_values' and 't_max' must have equal length");
  const int sign = charge_sign_from(cfg);
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const GaussianPacket p = ellipsoidal_figure_packet(bs[k]);
    const LandauContext ctx = make_landau_context(bs[k], sign);
    CsvTable tab = magnetic_table();
    scale_comment(tab, cfg);
    fill_magnetic(tab, p, ctx, time_grid(0.0, tmax[k], get_int(cfg, "samples")));
    emit(tab, "fig3_b" + tag(bs[k]) + ".csv");
  }
}

void figure4(const json& cfg, Emitter& emit) {
  const double b = get_number(cfg, "b");
  const LandauContext ctx = make_landau_context(b, charge_sign_from(cfg));
  GaussianPacket p = spherical_figure_packet(b, get_number(cfg, "width_in_L"));
  p.k0[0] = get_number(cfg, "k0x_over_b") * b;
  CsvTable tab = magnetic_table();
  scale_comment(tab, cfg);
  fill_magnetic(tab, p, ctx, time_grid(0.0, get_number(cfg, "t_max"), get_int(cfg, "samples")));
  emit(tab, "fig4.csv");
}

void figure5(const json& cfg, Emitter& emit) {
  const int sign = charge_sign_from(cfg);
  const auto times = time_grid(0.0, get_number(cfg, "t_max"), get_int(cfg, "samples"));
  CsvTable tab({"b", "t", "v_z", "v_z_inter", "v_z_classical"});
  scale_comment(tab, cfg);
  for (double b : get_numbers(cfg, "b_values")) {
    GaussianPacket p = ellipsoidal_figure_packet(b);
    p.k0[2] = get_number(cfg, "k0z");
    const LandauContext ctx = make_landau_context(b, sign);
    const UCoeffTable u = compute_u_table_converged(p, ctx);
    const MagneticModel model(p, ctx, u, times.back());
    const MagneticTrace tr = model.trace(times);
    for (std::size_t i = 0; i < times.size(); ++i)
      tab.add_row({b, times[i], tr.vz[i], tr.vz_interband[i], nonrel_limit_velocity(p, ctx, times[i])[2]});
  }
  emit(tab, "fig5.csv");
}

void figure7(const json& cfg, Emitter& emit) {
  const QuadratureSpec spec = quadrature_from(cfg);
  const double d = get_number(cfg, "width");
  const auto times = time_grid(0.0, get_number(cfg, "t_max"), get_int(cfg, "samples"));
  const bool pde = cfg.at("pde").get<bool>();
  std::vector<std::string> cols{"t", "v1c", "v1osc", "v2c", "v2osc", "v3", "cross", "total", "nonosc"};
  PdeTrace tr;
  if (pde) {
    cols.insert(cols.end(), {"pde_time", "pde_total", "pde_normalized"});
    PdeSettings s;
    s.dx = get_number(cfg, "pde_dx");
    s.dt = get_number(cfg, "pde_dt");
    tr = pde_oracle(d, times, s);
  }
  CsvTable tab(cols);
  const StringConfig sc = string_parameters(2.81e-2, 5e7, 1000.0);
  tab.add_comment("width=" + format_number(d) + " string t_c=" + format_number(sc.sim_time) +
                  " s lambda_c=" + format_number(sc.sim_compton) + " m");
  for (std::size_t i = 0; i < times.size(); ++i) {
    const VarianceBreakdown v = variance_terms(d, times[i], spec);
    std::vector<double> row{times[i], v.v1c, v.v1osc, v.v2c, v.v2osc, v.v3, v.cross, v.total, v.v1c + v.v2c};
    if (pde) row.insert(row.end(), {tr.times[i], tr.raw[i], tr.normalized[i]});
    tab.add_row(row);
  }
  emit(tab, "fig7.csv");
}

}  // namespace

RunManifest run_figure(int id, const json& config, const std::filesystem::path& out_dir) {
  if (id == 6) throw ConfigError("figure 6 is a schematic figure, no data");
  RunManifest m;
  m.command = "figure " + std::to_string(id);
  m.config = config;
  const auto start = Clock::now();
  Emitter emit{m, out_dir};
  switch (id) {
    case 1: figure1(config, emit); break;
    case 2: figure2(config, emit); break;
    case 3: figure3(config, emit); break;
    case 4: figure4(config, emit); break;
    case 5: figure5(config, emit); break;
    case 7: figure7(config, emit); break;
    default: throw ConfigError("unknown figure id " + std::to_string(id) + " (valid: 1, 2, 3, 4, 5, 7)");
  }
  m.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
  m.write(out_dir, "fig" + std::to_string(id) + "_manifest.json");
  return m;
}

RunManifest run_sweep(const SweepRequest& req, const json& config, const std::filesystem::path& out_dir) {
  const bool free_param = req.parameter == "d" || req.parameter == "k0";
  if (!free_param && req.parameter != "b") throw ConfigError("unknown sweep parameter '" + req.parameter + "'");
  const bool free_obs = req.observable == "n_osc" || req.observable == "t_decay" || req.observable == "v_inf";
  if (!free_obs && req.observable != "ratio") throw ConfigError("unknown sweep observable '" + req.observable + "'");
  if (free_param != free_obs)
    throw ConfigError("observable '" + req.observable + "' is not defined for parameter '" + req.parameter + "'");
  if (req.points < 1) throw ConfigError("sweep range is empty");
  if (req.to < req.from || (req.points == 1 && req.to != req.from)) throw ConfigError("invalid sweep range");
  if (req.log_spacing && !(req.from > 0.0)) throw ConfigError("log spacing needs a positive range");

  RunManifest m;
  m.command = "sweep " + req.parameter + " " + req.observable + " " + format_number(req.from) + " " +
              format_number(req.to) + " " + std::to_string(req.points) + (req.log_spacing ? " log" : "");
  m.config = config;
  const auto start = Clock::now();
  std::vector<double> values(static_cast<std::size_t>(req.points));
  for (int i = 0; i < req.points; ++i) {
    const double f = req.points == 1 ? 0.0 : static_cast<double>(i) / (req.points - 1);
    values[static_cast<std::size_t>(i)] = req.log_spacing ? req.from * std::pow(req.to / req.from, f)
                                                          : req.from + (req.to - req.from) * f;
  }

  std::vector<std::string> cols{req.parameter};
  if (req.observable == "n_osc") cols.insert(cols.end(), {"n_osc_measured", "n_osc_estimate"});
  if (req.observable == "t_decay") cols.insert(cols.end(), {"t_decay_measured", "t_decay_estimate"});
  if (req.observable == "v_inf") cols.insert(cols.end(), {"v_inf", "v_plus", "v_minus"});
  if (req.observable == "ratio") cols.insert(cols.end(), {"ratio"});
  CsvTable tab(cols);

  if (free_param) {
    const QuadratureSpec spec = quadrature_from(config);
    for (double x : values) {
      const double d = req.parameter == "d" ? x : get_number(config, "width");
      const double k0 = req.parameter == "k0" ? x : get_number(config, "k0");
      const GaussianPacket p = GaussianPacket::isotropic(d, k0);
      p.validate();
      const SubPacketVelocities sub = subpacket_decompose(p, spec);
      if (req.observable == "v_inf") {
        tab.add_row({x, sub.v_plus + sub.v_minus, sub.v_plus, sub.v_minus});
        continue;
      }
      const double horizon = get_number(config, "t_max_over_decay") * std::max(decay_time(p), 2.0);
      const auto n = static_cast<std::size_t>(std::ceil(horizon * get_number(config, "samples_per_unit"))) + 1;
      const VelocityTrace tr = packet_velocity_trace(p, linspace(0.0, horizon, n), spec);
      const DecayMeasurement dm = measure_decay(tr, sub.v_plus + sub.v_minus, nominal_zb_period(p));
      if (req.observable == "n_osc")
        tab.add_row({x, static_cast<double>(dm.oscillations), oscillation_count(p)});
      else
        tab.add_row({x, dm.decay_time, decay_time(p)});
    }
  } else {
    for (double b : values) {
      const LandauContext ctx = make_landau_context(b, 1);
      const GaussianPacket p = spherical_figure_packet(b, get_number(config, "width_in_L"));
      const MagneticModel model(p, ctx, compute_u_table_converged(p, ctx), 1.0);
      tab.add_row({b, model.interband_intraband_ratio()});
    }
  }
  Emitter emit{m, out_dir};
  emit(tab, "sweep_" + req.parameter + "_" + req.observable + ".csv");
  m.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
  m.write(out_dir, "sweep_manifest.json");
  return m;
}

std::string string_params_table(double rho, double K, double T) {
  const StringConfig c = string_parameters(rho, K, T);
  std::ostringstream out;
  auto line = [&](const char* name, double v, const char* unit) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-28s %14.6g  %s\n", name, v, unit);
    out << buf;
  };
  line("linear_density", c.linear_density, "kg/m");
  line("elastic_constant", c.elastic_constant, "N/m^2");
  line("tension", c.tension, "N");
  line("wave_speed", c.wave_speed, "m/s");
  line("sim_compton_length", c.sim_compton, "m");
  line("sim_freq", c.sim_freq, "1/s");
  line("zb_angular_freq", 2.0 * c.sim_freq, "1/s");
  line("zb_frequency", c.zb_frequency, "Hz");
  line("sim_time", c.sim_time, "s");
  return out.str();
}

}  // namespace zb::cli
