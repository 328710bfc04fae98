#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zb/core.hpp"
#include "zb/quadrature.hpp"

namespace zb {

/// Time series of a packet observable in natural units.
struct VelocityTrace {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;
};

/// Velocities of the positive- and negative-energy sub-packets.
struct SubPacketVelocities {
  double v_plus = 0.0;
  double v_minus = 0.0;
  double v_rel = 0.0;
  double norm_plus = 0.0;   ///< pseudo-norm of the positive sub-packet
  double norm_minus = 0.0;  ///< pseudo-norm of the negative sub-packet (negative)
  std::function<double(double)> v_osc;

  double group_velocity_plus() const { return v_plus / norm_plus; }
  double group_velocity_minus() const { return v_minus / norm_minus; }
};

/// (1,1) element of the Heisenberg velocity operator for a plane wave.
double velocity_operator_11(const Vec3& q, double t);

/// (1,1) element of the Heisenberg position operator (z component).
double position_operator_11(const Vec3& q, double t, double z0);

/// Packet-averaged <v_z(t)>.
double packet_velocity(const GaussianPacket& packet, double t, const QuadratureSpec& spec = {});

/// <v_z> sampled on a time grid.
VelocityTrace packet_velocity_trace(const GaussianPacket& packet, const std::vector<double>& times,
                                    const QuadratureSpec& spec = {});

SubPacketVelocities subpacket_decompose(const GaussianPacket& packet, const QuadratureSpec& spec = {});

/// t_d = 2d / k0.
double decay_time(const GaussianPacket& packet);

/// N_osc = (2/pi) d / k0.
double oscillation_count(const GaussianPacket& packet);

/// Nominal ZB period pi / sqrt(1 + k0^2).
double nominal_zb_period(const GaussianPacket& packet);

/// Envelope-based decay time and extremum count measured from a trace.
struct DecayMeasurement {
  double initial_amplitude = 0.0;
  double decay_time = -1.0;  ///< negative when the envelope never drops below 10%
  int oscillations = 0;      ///< maxima after t = 0 whose ZB part exceeds 10% of the initial one
};
DecayMeasurement measure_decay(const VelocityTrace& trace, double asymptote, double period);

/// Dirac velocity (1,1) element for momentum p in units of mc.
double dirac_velocity_11(const Vec3& p, double t);

enum class VelocityModel { KleinGordon, Dirac };

struct SuperluminalHit {
  Vec3 q;
  double t;
  double v;
};

/// Grid points where |v| exceeds 1 + tol.
std::vector<SuperluminalHit> superluminal_scan(VelocityModel model, const std::vector<Vec3>& qs,
                                               const std::vector<double>& ts, double tol = 1e-12);

}  // namespace zb
