#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace zb {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid argument outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or unknown configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical constants (CODATA 2018).
namespace si {
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double c = 299792458.0;
inline constexpr double electron_mass = 9.1093837015e-31;
inline constexpr double elementary_charge = 1.602176634e-19;
}  // namespace si

/// Natural scales of a particle of given mass.
struct PhysicalScale {
  double mass_ratio;       ///< m / m_e
  double compton_length;   ///< lambda_c = hbar/(m c) [m]
  double zb_time;          ///< t_c = hbar/(m c^2) [s]
  double zb_angular_freq;  ///< omega_0 = m c^2/hbar [1/s]
  double schwinger_field;  ///< B_s = m^2 c^2/(hbar e) [T]

  double length_to_si(double x) const { return x * compton_length; }
  double length_to_natural(double x) const { return x / compton_length; }
  double time_to_si(double t) const { return t * zb_time; }
  double time_to_natural(double t) const { return t / zb_time; }
  double field_to_si(double b) const { return b * schwinger_field; }
  double field_to_natural(double b) const { return b / schwinger_field; }
  double velocity_to_si(double v) const { return v * si::c; }
  double velocity_to_natural(double v) const { return v / si::c; }
};

/// Derived scales for mass_ratio electron masses. Throws DomainError if mass_ratio <= 0.
PhysicalScale scale_from_mass(double mass_ratio);

/// Gaussian packet; widths in lambda_c, k0 in 1/lambda_c.
struct GaussianPacket {
  Vec3 widths{1.0, 1.0, 1.0};
  Vec3 k0{0.0, 0.0, 0.0};
  bool truncated = false;  ///< zero amplitude for |k| > 1, then renormalized

  static GaussianPacket isotropic(double d, double k0z, bool truncated = false);
  bool is_isotropic() const;
  bool k0_along_z() const { return k0[0] == 0.0 && k0[1] == 0.0; }
  /// Throws DomainError on non-positive widths.
  void validate() const;
};

/// Momentum amplitude w(k), unit norm under d^3k/(2 pi)^3.
double packet_momentum_amplitude(const GaussianPacket& p, const Vec3& k);

/// Real-space amplitude w(r) of an untruncated packet.
cplx packet_position_amplitude(const GaussianPacket& p, const Vec3& r);

/// 1D momentum amplitude (2 d sqrt(pi))^{1/2} exp(-d^2 (k-k0)^2/2).
double packet_momentum_amplitude_1d(double d, double k0, double k);

/// 1D position amplitude (d sqrt(pi))^{-1/2} exp(-x^2/(2d^2) + i k0 x).
cplx packet_position_amplitude_1d(double d, double k0, double x);

/// Renormalization factor applied to a truncated isotropic packet.
double truncation_norm_factor(const GaussianPacket& p);

/// Two-component Feshbach-Villars state on a common index set.
struct TwoComponentState {
  std::vector<cplx> upper;
  std::vector<cplx> lower;

  /// Upper = w, lower = 0.
  static TwoComponentState from_upper(std::vector<cplx> w);
  /// Discrete pseudo-norm sum(|upper|^2 - |lower|^2) * weight.
  double pseudo_norm(double weight) const;
};

}  // namespace zb
