#include "zb/waveform.hpp"

#include <cmath>

namespace zb {

namespace {

double trapezoid_weight(const std::vector<double>& g, std::size_t i) {
  if (g.size() < 2) return 0.0;
  if (i == 0) return 0.5 * (g[1] - g[0]);
  if (i + 1 == g.size()) return 0.5 * (g[i] - g[i - 1]);
  return 0.5 * (g[i + 1] - g[i - 1]);
}

}  // namespace

double ComplexField1D::charge() const {
  double q = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    q -= std::imag(std::conj(amplitude[i]) * dt[i]) * trapezoid_weight(grid, i);
  return q;
}

double ComplexField1D::current() const {
  double j = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    j += std::imag(std::conj(amplitude[i]) * dx[i]) * trapezoid_weight(grid, i);
  return j;
}

double ModeCoefficients::charge() const {
  double q = 0.0;
  for (std::size_t i = 0; i < k_grid.size(); ++i) q += std::norm(a[i]) - std::norm(b_star[i]);
  return q * dk / (2.0 * kPi);
}

ModeWeights mode_weights(double k) {
  const double p0 = std::sqrt(1.0 + k * k);
  return {0.5 * (1.0 + 1.0 / p0), 0.5 * (1.0 - 1.0 / p0)};
}

ModeCoefficients coefficients_from_packet(const GaussianPacket& packet, int modes, double window) {
  packet.validate();
  if (modes < 2) throw DomainError("need at least two modes");
  const double d = packet.widths[2];
  const double k0 = packet.k0[2];
  ModeCoefficients c;
  c.dk = 2.0 * window / d / static_cast<double>(modes - 1);
  c.k_grid.resize(static_cast<std::size_t>(modes));
  c.a.resize(c.k_grid.size());
  c.b_star.resize(c.k_grid.size());
  for (std::size_t j = 0; j < c.k_grid.size(); ++j) {
    const double k = k0 - window / d + c.dk * static_cast<double>(j);
    c.k_grid[j] = k;
    const double sp = std::sqrt(std::sqrt(1.0 + k * k));
    const double w = packet_momentum_amplitude_1d(d, k0, k);
    const auto mw = mode_weights(k);
    c.a[j] = sp * w * mw.positive;
    c.b_star[j] = sp * w * mw.negative;
  }
  return c;
}

std::vector<double> evolution_grid(double d, double t_max) {
  const double half = t_max + 6.0 * d;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half * 20.0)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

ComplexField1D evaluate_field(const ModeCoefficients& c, double t, const std::vector<double>& grid) {
  ComplexField1D f;
  f.grid = grid;
  f.time = t;
  f.amplitude.assign(grid.size(), 0.0);
  f.dt.assign(grid.size(), 0.0);
  f.dx.assign(grid.size(), 0.0);
  // Time-evolved spectral amplitudes and their derivatives.
  std::vector<cplx> phat(c.k_grid.size()), dphat(c.k_grid.size());
  for (std::size_t j = 0; j < c.k_grid.size(); ++j) {
    const double k = c.k_grid[j];
    const double om = std::sqrt(1.0 + k * k);
    const cplx em = std::exp(cplx(0.0, -om * t));
    const cplx ep = std::conj(em);
    const double isp = 1.0 / std::sqrt(om);
    phat[j] = isp * (c.a[j] * em + c.b_star[j] * ep);
    dphat[j] = isp * cplx(0.0, om) * (-c.a[j] * em + c.b_star[j] * ep);
  }
  const double norm = c.dk / (2.0 * kPi);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    cplx acc = 0.0, acct = 0.0, accx = 0.0;
    for (std::size_t j = 0; j < c.k_grid.size(); ++j) {
      const cplx e = std::exp(cplx(0.0, c.k_grid[j] * x));
      const cplx v = phat[j] * e;
      acc += v;
      acct += dphat[j] * e;
      accx += cplx(0.0, c.k_grid[j]) * v;
    }
    f.amplitude[i] = acc * norm;
    f.dt[i] = acct * norm;
    f.dx[i] = accx * norm;
  }
  return f;
}

ComplexField1D evolve_packet_1d(const GaussianPacket& packet, double t, const std::vector<double>& grid, int modes) {
  if (modes < 2048) throw DomainError("evolution needs at least 2048 modes");
  if (grid.size() < 2) throw DomainError("grid needs at least two points");
  const double d = packet.widths[2];
  const double need = std::abs(t) + 6.0 * d;
  if (grid.front() > -need || grid.back() < need)
    throw DomainError("grid too small to contain both sub-packets at the requested time");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] - grid[i - 1] > 0.05 + 1e-12) throw DomainError("grid spacing exceeds 1/20");
  return evaluate_field(coefficients_from_packet(packet, modes), t, grid);
}

double average_current(const GaussianPacket& packet, double t, double charge, const QuadratureSpec& spec) {
  packet.validate();
  if (!packet.is_isotropic() || !packet.k0_along_z())
    throw DomainError("average current needs an isotropic packet with k0 along z");
  const double d = packet.widths[2];
  const double q0 = packet.k0[2];
  if (q0 == 0.0) return 0.0;
  auto f = [&](double q) {
    const double p0 = std::sqrt(1.0 + q * q);
    const double al = 0.5 * (1.0 + 1.0 / p0);
    const double be = 0.5 * (1.0 - 1.0 / p0);
    const cplx amp = al * std::exp(cplx(0.0, -p0 * t)) + be * std::exp(cplx(0.0, p0 * t));
    return q * q * q * angular_cos_density(q, q0, d) * std::norm(amp);
  };
  const double tf = truncation_norm_factor(packet);
  const double pref = std::pow(d, 3) / std::pow(kPi, 1.5) * tf * tf;
  return charge * pref * integrate_radial(f, packet, spec.for_time(t));
}

double average_position(const GaussianPacket& packet, double t, double r0, double charge,
                        const QuadratureSpec& spec) {
  if (charge == 0.0) throw DomainError("average position undefined for a neutral particle (Q = 0)");
  if (t == 0.0) return r0;
  QuadratureSpec ts = spec;
  ts.rel_tol = std::max(spec.rel_tol, 1e-11);
  ts.abs_tol = 1e-13;
  ts.max_subdivisions = 100000;
  auto j = [&](double s) { return average_current(packet, s, charge, spec); };
  return r0 + integrate(j, 0.0, t, ts).value / charge;
}

double average_position_analytic(const GaussianPacket& packet, double t, double r0, const QuadratureSpec& spec) {
  packet.validate();
  const double d = packet.widths[2];
  const double q0 = packet.k0[2];
  if (q0 == 0.0) return r0;
  auto f = [&](double q) {
    const double q2 = q * q;
    const double p0 = std::sqrt(1.0 + q2);
    const double r = q2 / (1.0 + q2);
    const double s = (1.0 - 0.5 * r) * t + 0.5 * r * std::sin(2.0 * p0 * t) / (2.0 * p0);
    return q2 * q * angular_cos_density(q, q0, d) * s;
  };
  const double tf = truncation_norm_factor(packet);
  return r0 + std::pow(d, 3) / std::pow(kPi, 1.5) * tf * tf * integrate_radial(f, packet, spec.for_time(t));
}

GroupVelocities1D subpacket_group_velocities_1d(double d, double k0) {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  auto moment = [&](double sgn, bool with_v) {
    auto f = [&](double k) {
      const double p0 = std::sqrt(1.0 + k * k);
      const double w = packet_momentum_amplitude_1d(d, k0, k);
      const double wt = w * w * (p0 + sgn) * (p0 + sgn) / (4.0 * p0);
      return with_v ? wt * k / p0 : wt;
    };
    return integrate(f, k0 - 10.0 / d, k0 + 10.0 / d, spec).value;
  };
  return {moment(1.0, true) / moment(1.0, false), -moment(-1.0, true) / moment(-1.0, false)};
}

}  // namespace zb
