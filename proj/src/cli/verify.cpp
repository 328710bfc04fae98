#include "zb/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "zb/analysis.hpp"
#include "zb/core.hpp"
#include "zb/freefield.hpp"
#include "zb/magnetic.hpp"
#include "zb/operator_exact.hpp"
#include "zb/string_sim.hpp"
#include "zb/waveform.hpp"

namespace zb::cli {

namespace {

Check below(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value, bound, value <= bound, std::move(detail)};
}

Check holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)};
}

void identities(std::vector<Check>& out) {
  const TauAlgebra tau = TauAlgebra::make();
  out.push_back(below("T squared vanishes", (tau.T * tau.T).cwiseAbs().maxCoeff(), 1e-15));
  out.push_back(below("tau3 squared is identity", (tau.tau3 * tau.tau3 - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-15));

  const GaussianPacket p = GaussianPacket::isotropic(2.0, 0.8);
  const SubPacketVelocities sub = subpacket_decompose(p);
  double worst = 0.0;
  for (double t : {0.0, 0.7, 2.5, 6.0, 11.0})
    worst = std::max(worst, std::abs(sub.v_plus + sub.v_minus + sub.v_osc(t) - packet_velocity(p, t)));
  out.push_back(below("sub-packet recomposition", worst, 1e-9));

  double band = 0.0;
  for (double q : {0.05, 0.5, 1.0}) {
    const auto ts = linspace(0.0, 40.0, 8001);
    std::vector<double> v;
    for (double t : ts) v.push_back(velocity_operator_11({0.0, 0.0, q}, t));
    const double mid = 0.5 * (*std::max_element(v.begin(), v.end()) + *std::min_element(v.begin(), v.end()));
    for (double& x : v) x -= mid;
    const double w = zero_crossing_frequency(ts, v);
    const bool inside = w >= 2.0 * 0.99 && w <= 2.0 * std::sqrt(2.0) * 1.01;
    band = std::max(band, inside ? std::abs(w - 2.0 * std::sqrt(1.0 + q * q)) / w : 1.0);
  }
  out.push_back(below("single-mode frequency in [2, 2 sqrt2]", band, 0.01));

  out.push_back(holds("KG velocity exceeds c at q_z = 1.5", velocity_operator_11({0.0, 0.0, 1.5}, 0.0) > 1.0));
  const StringConfig sc = string_parameters(2.81e-2, 5e7, 1000.0);
  out.push_back(below("string u = lambda omega", std::abs(sc.wave_speed - sc.sim_compton * sc.sim_freq) / sc.wave_speed,
                      1e-12));
}

void equivalence(std::vector<Check>& out) {
  const std::vector<GaussianPacket> packets{GaussianPacket::isotropic(2.0, 0.8), GaussianPacket::isotropic(1.0, 0.5),
                                            GaussianPacket::isotropic(4.0, 1.2)};
  for (const auto& p : packets) {
    double diff = 0.0, vmax = 0.0;
    for (double t : linspace(0.0, 20.0, 81)) {
      const double v = packet_velocity(p, t);
      diff = std::max(diff, std::abs(average_current(p, t, 1.0) - v));
      vmax = std::max(vmax, std::abs(v));
    }
    out.push_back(below("current equals charge times velocity, d=" + std::to_string(p.widths[2]).substr(0, 4) +
                            " k0=" + std::to_string(p.k0[2]).substr(0, 4),
                        diff / vmax, 1e-8));
  }
  const auto c = coefficients_from_packet(GaussianPacket::isotropic(2.0, 0.8));
  out.push_back(below("1D mode charge is one", std::abs(c.charge() - 1.0), 1e-10));
}

void sumrules(std::vector<Check>& out) {
  const double b = 0.45;
  const LandauContext ctx = make_landau_context(b);
  const GaussianPacket p = ellipsoidal_figure_packet(b);
  const UCoeffTable t = compute_u_table(p, ctx, 200);
  const SumRules s = sum_rules(t);
  out.push_back(below("sum U_nn = 1", std::abs(s.s2 - 1.0), 1e-8));
  out.push_back(below("sum sqrt(n+1) U_{n+1,n} = -k0x L / sqrt2",
                      std::abs(s.s1 + p.k0[0] * ctx.magnetic_length / std::sqrt(2.0)), 1e-8));
  double asym = 0.0;
  for (int m = 0; m <= t.n_max; ++m)
    for (int n = 0; n < m; ++n) asym = std::max(asym, std::abs(t(m, n) - t(n, m)));
  out.push_back(below("U table symmetric", asym, 0.0));

  GaussianPacket q = p;
  q.widths[1] = ctx.magnetic_length;
  const UCoeffTable d6 = compute_u_table(q, ctx, 40, UMethod::D6);
  GaussianPacket near = q;
  near.widths[1] = ctx.magnetic_length * (1.0 - 1e-12);
  const UCoeffTable d4 = compute_u_table(near, ctx, 40, UMethod::D4);
  double gap = 0.0;
  for (int m = 0; m <= 40; ++m)
    for (int n = 0; n <= 40; ++n) gap = std::max(gap, std::abs(d4(m, n) - d6(m, n)));
  out.push_back(below("general overlap formula tends to the d_y = L form", gap, 1e-10));

  GaussianPacket lit = p;
  lit.widths[1] = 0.9 * ctx.magnetic_length;
  const UCoeffTable reg = compute_u_table(lit, ctx, 40, UMethod::D4);
  double lgap = 0.0;
  for (int m = 0; m <= 40; ++m)
    for (int n = 0; n <= m; ++n) lgap = std::max(lgap, std::abs(u_entry_d4_complex(lit, ctx, m, n) - reg(m, n)));
  out.push_back(below("complex overlap formula is real and matches the regrouped form", lgap, 1e-10));
}

void operator_suite(std::vector<Check>& out) {
  const LandauContext ctx = make_landau_context(0.45);
  double worst = 0.0, flip = 0.0, formula = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (int s : {1, -1})
      for (int z : {1, -1})
        for (double t : {0.5, 3.1, 10.0}) {
          const cplx exact = exact_current_element_matrix(n, s, z, t, ctx, 0.2, 1);
          worst = std::max(worst, std::abs(exact - heisenberg_current_element_matrix(n, s, z, t, ctx, 0.2)));
          flip = std::max(flip, std::abs(exact - exact_current_element_matrix(n, s, z, t, ctx, 0.2, -1)));
          formula = std::max(formula, std::abs(exact - heisenberg_current_element(n, s, z, t, ctx, 0.2)));
        }
  out.push_back(below("exact J1 + J2 elements equal Heisenberg elements", worst, 1e-12));
  out.push_back(below("eta flip invariance", flip, 1e-14));
  out.push_back(below("closed-form Heisenberg element agrees", formula, 1e-12));

  double pdiff = 0.0;
  for (double t : {0.3, 2.0, 9.0})
    pdiff = std::max(pdiff, (p_operator(3, 0.4, 0.1, t, ctx) - p_operator_heisenberg(3, 0.4, 0.1, t, ctx)).cwiseAbs().maxCoeff());
  out.push_back(below("closed-form P(t) equals e^{iHt} P e^{-iHt}", pdiff, 1e-12));

  const auto grid = linspace(-30.0, 30.0, 4001);
  double prev = 1e300;
  bool mono = true;
  double last = 0.0;
  for (int n : {10, 20, 40, 60, 80, 100}) {
    last = verify_unity_resolution(ctx, n, grid).deviation;
    mono = mono && last < prev;
    prev = last;
  }
  out.push_back(holds("unity resolution deviation decreases with n_max", mono));
  out.push_back(below("unity resolution at n_max = 100", last, 1e-6));
  out.push_back(below("unity block is 4 I", (unity_block(0.8) - 4.0 * Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-14));

  double tau = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) tau = std::max(tau, verify_tau3_exponential(seed, 1.0));
  out.push_back(below("tau3 e^O = e^{O^dag} tau3 for pseudo-Hermitian O", tau, 1e-12));
  out.push_back(holds("identity fails for a generic operator",
                      verify_tau3_exponential(7, 1.0, PseudoHermitianKind::Generic) > 1e-3));
}

void oracle(std::vector<Check>& out) {
  auto f = [](double k) { return std::exp(-k * k) * std::cos(3.0 * k); };
  const double gk = integrate(f, -8.0, 8.0, QuadratureSpec{}).value;
  out.push_back(below("adaptive quadrature vs trapezoid oracle", std::abs(gk - riemann_oracle(f, -8.0, 8.0, 4001)), 1e-12));
  out.push_back(below("adaptive quadrature vs closed form", std::abs(gk - std::sqrt(kPi) * std::exp(-2.25)), 1e-12));

  const GaussianPacket p = GaussianPacket::isotropic(2.0, 0.8);
  double xd = 0.0;
  for (double t : {1.0, 5.0}) xd = std::max(xd, std::abs(average_position(p, t, 0.0) - average_position_analytic(p, t, 0.0)));
  out.push_back(below("integrated current equals position average", xd, 1e-8));

  const double d = 5.0;
  const auto ts = linspace(0.0, 20.0, 41);
  const PdeTrace fine = pde_oracle(d, ts);
  double rel = 0.0;
  for (std::size_t i = 0; i < fine.times.size(); ++i) {
    const double v = variance_terms(d, fine.times[i]).total;
    rel = std::max(rel, std::abs(fine.raw[i] - v) / v);
  }
  out.push_back(below("PDE oracle vs spectral variance", rel, 0.01));
  PdeSettings coarse;
  coarse.dx = 0.04;
  coarse.dt = 0.03;
  const PdeTrace ct = pde_oracle(d, ts, coarse);
  double crel = 0.0;
  for (std::size_t i = 0; i < ct.times.size(); ++i) {
    const double v = variance_terms(d, ct.times[i]).total;
    crel = std::max(crel, std::abs(ct.raw[i] - v) / v);
  }
  const double ratio = crel / rel;
  out.push_back(holds("PDE second-order convergence", ratio > 3.0 && ratio < 5.0, "ratio " + std::to_string(ratio)));

  const double b = 0.45;
  const GaussianPacket mp = spherical_figure_packet(b);
  const LandauContext ctx = make_landau_context(b, -1);
  const UCoeffTable u = compute_u_table_converged(mp, ctx);
  const MagneticModel model(mp, ctx, u, 20.0);
  double kz = 0.0, raw = 0.0;
  for (double t : {0.0, 3.0, 12.0}) {
    kz = std::max(kz, std::abs(model.velocity_x(t) - model.velocity_x_adaptive(t)));
    raw = std::max({raw, std::abs(model.velocity_x(t) - model.velocity_raw(Axis::X, t, 80)),
                    std::abs(model.velocity_y(t) - model.velocity_raw(Axis::Y, t, 80))});
  }
  out.push_back(below("k_z rule vs adaptive quadrature", kz, 1e-10));
  out.push_back(below("closed forms vs raw matrix-element double sum", raw, 1e-10));
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerifyReport::render() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " value=%.3e bound=%.1e", c.value, c.bound);
    out << (c.pass ? "PASS " : "FAIL ") << suite << ": " << c.name << buf;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> suite_names() { return {"identities", "equivalence", "sumrules", "operator", "oracle"}; }

VerifyReport run_verify(const std::string& suite) {
  VerifyReport r{suite, {}};
  if (suite == "identities")
    identities(r.checks);
  else if (suite == "equivalence")
    equivalence(r.checks);
  else if (suite == "sumrules")
    sumrules(r.checks);
  else if (suite == "operator")
    operator_suite(r.checks);
  else if (suite == "oracle")
    oracle(r.checks);
  else
    throw ConfigError("unknown verification suite '" + suite + "'");
  return r;
}

}  // namespace zb::cli
