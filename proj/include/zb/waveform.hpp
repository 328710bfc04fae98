#pragma once

#include <vector>

#include "zb/core.hpp"
#include "zb/freefield.hpp"
#include "zb/quadrature.hpp"

namespace zb {

/// Wave-form field phi(x, t) with its time and space derivatives.
struct ComplexField1D {
  std::vector<double> grid;
  std::vector<cplx> amplitude;
  std::vector<cplx> dt;
  std::vector<cplx> dx;
  double time = 0.0;

  /// Q = -Im int phi* dphi/dt dx (trapezoid on the grid).
  double charge() const;
  /// int Im(phi* dphi/dx) dx.
  double current() const;
};

/// Plane-wave amplitudes of the 1D wave-form solution.
/// phi_hat(k, t) = p0^{-1/2} [a(k) e^{-i w t} + b_minus(k) e^{i w t}], b_minus(k) = b*(-k).
struct ModeCoefficients {
  std::vector<double> k_grid;
  std::vector<cplx> a;
  std::vector<cplx> b_star;
  double dk = 0.0;

  /// int (|a|^2 - |b|^2) dk / (2 pi).
  double charge() const;
};

/// Positive and negative frequency weights (1 +- 1/p0)/2 at wave number k.
struct ModeWeights {
  double positive;
  double negative;
};
ModeWeights mode_weights(double k);

/// Mode coefficients for the initial state (w, 0) along z; uniform k grid k0 +- window/d.
ModeCoefficients coefficients_from_packet(const GaussianPacket& packet, int modes = 2048, double window = 10.0);

/// Evenly spaced grid satisfying spacing <= 1/20 and extent >= 2(t_max + 6d).
std::vector<double> evolution_grid(double d, double t_max);

/// Field at time t on `grid` by direct summation over the modes. Throws DomainError if the grid
/// cannot hold both sub-packets or is coarser than 1/20.
ComplexField1D evolve_packet_1d(const GaussianPacket& packet, double t, const std::vector<double>& grid,
                                int modes = 2048);

/// Evaluate the field from precomputed coefficients (no grid checks).
ComplexField1D evaluate_field(const ModeCoefficients& c, double t, const std::vector<double>& grid);

/// Packet-averaged current <j_z(t)> from |phi_hat|^2 in momentum space, scaled by charge.
double average_current(const GaussianPacket& packet, double t, double charge = 1.0,
                       const QuadratureSpec& spec = {});

/// r0 + (1/Q) int_0^t <j> dt' by adaptive quadrature over the current trace.
double average_position(const GaussianPacket& packet, double t, double r0, double charge = 1.0,
                        const QuadratureSpec& spec = {});

/// Closed time integral of the velocity (oracle for average_position).
double average_position_analytic(const GaussianPacket& packet, double t, double r0,
                                 const QuadratureSpec& spec = {});

/// Sub-packet group velocities of the 1D packet (pseudo-norm weighted mean of k/p0).
struct GroupVelocities1D {
  double plus;
  double minus;
};
GroupVelocities1D subpacket_group_velocities_1d(double d, double k0);

}  // namespace zb
