#include "zb/freefield.hpp"

#include <cmath>

#include "zb/analysis.hpp"

namespace zb {

namespace {

double norm2(const Vec3& q) { return q[0] * q[0] + q[1] * q[1] + q[2] * q[2]; }

void require_radial(const GaussianPacket& p) {
  p.validate();
  if (!p.is_isotropic() || !p.k0_along_z())
    throw DomainError("free-field packet averages need an isotropic packet with k0 along z");
}

/// d^3/pi^{3/2} times the truncation renormalization.
double radial_prefactor(const GaussianPacket& p) {
  const double d = p.widths[2];
  const double f = truncation_norm_factor(p);
  return std::pow(d, 3) / std::pow(kPi, 1.5) * f * f;
}

}  // namespace

double velocity_operator_11(const Vec3& q, double t) {
  const double q2 = norm2(q);
  const double p0 = std::sqrt(1.0 + q2);
  return q[2] + 0.5 * q2 * q[2] / (1.0 + q2) * (std::cos(2.0 * t * p0) - 1.0);
}

double position_operator_11(const Vec3& q, double t, double z0) {
  const double q2 = norm2(q);
  const double e2 = 1.0 + q2;
  const double p0 = std::sqrt(e2);
  return z0 + q[2] * t - 0.5 * q2 * q[2] / e2 * t + 0.25 * q2 * q[2] / (e2 * p0) * std::sin(2.0 * t * p0);
}

double packet_velocity(const GaussianPacket& packet, double t, const QuadratureSpec& spec) {
  require_radial(packet);
  const double d = packet.widths[2];
  const double q0 = packet.k0[2];
  if (q0 == 0.0) return 0.0;
  auto f = [&](double q) {
    const double q2 = q * q;
    const double p0 = std::sqrt(1.0 + q2);
    const double bracket = 1.0 + 0.5 * q2 / (1.0 + q2) * (std::cos(2.0 * t * p0) - 1.0);
    return q2 * q * angular_cos_density(q, q0, d) * bracket;
  };
  return radial_prefactor(packet) * integrate_radial(f, packet, spec.for_time(t));
}

VelocityTrace packet_velocity_trace(const GaussianPacket& packet, const std::vector<double>& times,
                                    const QuadratureSpec& spec) {
  VelocityTrace tr;
  tr.label = "v_z";
  tr.times = times;
  tr.values.reserve(times.size());
  for (double t : times) tr.values.push_back(packet_velocity(packet, t, spec));
  return tr;
}

SubPacketVelocities subpacket_decompose(const GaussianPacket& packet, const QuadratureSpec& spec) {
  require_radial(packet);
  SubPacketVelocities s;
  const double d = packet.widths[2];
  const double q0 = packet.k0[2];
  const double pref = radial_prefactor(packet);
  auto radial = [&](auto&& g) { return pref * integrate_radial(g, packet, spec); };
  auto cosw = [&](double q) { return q * q * q * angular_cos_density(q, q0, d); };
  auto normw = [&](double q) { return q * q * angular_norm_density(q, q0, d); };

  if (q0 != 0.0) {
    s.v_plus = 0.25 * radial([&](double q) {
      const double r = 1.0 + 1.0 / std::sqrt(1.0 + q * q);
      return cosw(q) * r * r;
    });
    s.v_minus = 0.25 * radial([&](double q) {
      const double r = 1.0 - 1.0 / std::sqrt(1.0 + q * q);
      return cosw(q) * r * r;
    });
    s.v_rel = radial([&](double q) { return cosw(q) / std::sqrt(1.0 + q * q); });
  }
  s.norm_plus = radial([&](double q) {
    const double p0 = std::sqrt(1.0 + q * q);
    return normw(q) * (p0 + 1.0) * (p0 + 1.0) / (4.0 * p0);
  });
  s.norm_minus = -radial([&](double q) {
    const double p0 = std::sqrt(1.0 + q * q);
    return normw(q) * (p0 - 1.0) * (p0 - 1.0) / (4.0 * p0);
  });
  s.v_osc = [packet, spec, pref, d, q0](double t) {
    if (q0 == 0.0) return 0.0;
    auto g = [&](double q) {
      const double q2 = q * q;
      const double p0 = std::sqrt(1.0 + q2);
      return q2 * q * angular_cos_density(q, q0, d) * (1.0 - 1.0 / (1.0 + q2)) * std::cos(2.0 * p0 * t);
    };
    return 0.5 * pref * integrate_radial(g, packet, spec.for_time(t));
  };
  return s;
}

double decay_time(const GaussianPacket& packet) {
  if (packet.k0[2] == 0.0) throw DomainError("decay time undefined for k0z = 0");
  return 2.0 * packet.widths[2] / std::abs(packet.k0[2]);
}

double oscillation_count(const GaussianPacket& packet) {
  if (packet.k0[2] == 0.0) throw DomainError("oscillation count undefined for k0z = 0");
  return 2.0 / kPi * packet.widths[2] / std::abs(packet.k0[2]);
}

double nominal_zb_period(const GaussianPacket& packet) {
  const double k0 = packet.k0[2];
  return kPi / std::sqrt(1.0 + k0 * k0);
}

DecayMeasurement measure_decay(const VelocityTrace& tr, double asymptote, double period) {
  DecayMeasurement m;
  const auto env = sliding_envelope(tr.times, tr.values, period);
  m.initial_amplitude = env.front();
  m.decay_time = first_time_below(tr.times, env, 0.1);
  const double zb0 = std::abs(tr.values.front() - asymptote);
  for (std::size_t i : local_maxima(tr.values))
    if (std::abs(tr.values[i] - asymptote) > 0.1 * zb0) ++m.oscillations;
  return m;
}

double dirac_velocity_11(const Vec3& p, double t) {
  const double p2 = norm2(p);
  const double e = std::sqrt(1.0 + p2);
  return p[2] / (1.0 + p2) * (1.0 - std::cos(2.0 * e * t));
}

std::vector<SuperluminalHit> superluminal_scan(VelocityModel model, const std::vector<Vec3>& qs,
                                               const std::vector<double>& ts, double tol) {
  std::vector<SuperluminalHit> hits;
  for (const auto& q : qs)
    for (double t : ts) {
      const double v = model == VelocityModel::KleinGordon ? velocity_operator_11(q, t) : dirac_velocity_11(q, t);
      if (std::abs(v) > 1.0 + tol) hits.push_back({q, t, v});
    }
  return hits;
}

}  // namespace zb
