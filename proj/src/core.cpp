#include "zb/core.hpp"

#include <cmath>

#include "zb/quadrature.hpp"

namespace zb {

PhysicalScale scale_from_mass(double mass_ratio) {
  if (!(mass_ratio > 0.0) || !std::isfinite(mass_ratio))
    throw DomainError("mass_ratio must be positive and finite");
  PhysicalScale s{};
  s.mass_ratio = mass_ratio;
  const double m = mass_ratio * si::electron_mass;
  s.compton_length = si::hbar / (m * si::c);
  s.zb_angular_freq = m * si::c * si::c / si::hbar;
  s.zb_time = 1.0 / s.zb_angular_freq;
  s.schwinger_field = m * m * si::c * si::c / (si::hbar * si::elementary_charge);
  return s;
}

GaussianPacket GaussianPacket::isotropic(double d, double k0z, bool truncated) {
  GaussianPacket p;
  p.widths = {d, d, d};
  p.k0 = {0.0, 0.0, k0z};
  p.truncated = truncated;
  p.validate();
  return p;
}

bool GaussianPacket::is_isotropic() const {
  return widths[0] == widths[1] && widths[1] == widths[2];
}

void GaussianPacket::validate() const {
  for (double w : widths)
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("packet widths must be positive");
  for (double k : k0)
    if (!std::isfinite(k)) throw DomainError("packet k0 must be finite");
  if (truncated && !(is_isotropic() && k0_along_z()))
    throw DomainError("truncated packets must be isotropic with k0 along z");
}

double packet_momentum_amplitude(const GaussianPacket& p, const Vec3& k) {
  double amp = 1.0;
  double expo = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = p.widths[i];
    amp *= std::sqrt(2.0 * d * std::sqrt(kPi));
    const double dk = k[i] - p.k0[i];
    expo += d * d * dk * dk;
  }
  double v = amp * std::exp(-0.5 * expo);
  if (p.truncated) {
    const double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (kk > 1.0) return 0.0;
    v *= truncation_norm_factor(p);
  }
  return v;
}

cplx packet_position_amplitude(const GaussianPacket& p, const Vec3& r) {
  cplx v = 1.0;
  for (int i = 0; i < 3; ++i) v *= packet_position_amplitude_1d(p.widths[i], p.k0[i], r[i]);
  return v;
}

double packet_momentum_amplitude_1d(double d, double k0, double k) {
  const double dk = k - k0;
  return std::sqrt(2.0 * d * std::sqrt(kPi)) * std::exp(-0.5 * d * d * dk * dk);
}

cplx packet_position_amplitude_1d(double d, double k0, double x) {
  const double a = 1.0 / std::sqrt(d * std::sqrt(kPi));
  return a * std::exp(cplx(-x * x / (2.0 * d * d), k0 * x));
}

double truncation_norm_factor(const GaussianPacket& p) {
  if (!p.truncated) return 1.0;
  const double d = p.widths[0];
  const double q0 = p.k0[2];
  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-300;
  auto f = [&](double q) { return q * q * angular_norm_density(q, q0, d); };
  const double norm = std::pow(d, 3) / std::pow(kPi, 1.5) * integrate(f, 0.0, 1.0, spec).value;
  return 1.0 / std::sqrt(norm);
}

TwoComponentState TwoComponentState::from_upper(std::vector<cplx> w) {
  TwoComponentState s;
  s.lower.assign(w.size(), cplx(0.0));
  s.upper = std::move(w);
  return s;
}

double TwoComponentState::pseudo_norm(double weight) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < upper.size(); ++i) acc += std::norm(upper[i]) - std::norm(lower[i]);
  return acc * weight;
}

}  // namespace zb
