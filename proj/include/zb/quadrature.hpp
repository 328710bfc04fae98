#pragma once

#include <functional>
#include <stdexcept>

#include "zb/core.hpp"

namespace zb {

/// Tolerances and window for momentum-space integrals.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 400;
  double window_sigmas = 10.0;  ///< half-width in units of 1/d

  void validate() const;
  /// Copy with the subdivision budget scaled by ceil(t).
  QuadratureSpec for_time(double t) const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  long evaluations = 0;
};

/// Tolerance not reached within the subdivision budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double estimate, double bound);
  double estimate;
  double bound;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec);

/// Composite trapezoid with n uniform nodes (oracle).
double riemann_oracle(const Integrand& f, double a, double b, long n);

/// Radial window [lo, hi] for an isotropic packet with k0 along z.
std::pair<double, double> radial_window(const GaussianPacket& packet, const QuadratureSpec& spec);

/// Integral of f(k) over the radial window of the packet.
double integrate_radial(const Integrand& f, const GaussianPacket& packet, const QuadratureSpec& spec);

/// Integral of f(k_z) |g_z(k_z)|^2 over k0z +- window/d_z, with |g_z|^2 = (d/sqrt(pi)) e^{-d^2 (k-k0)^2}.
double integrate_1d_gaussian(const Integrand& f, const GaussianPacket& packet, const QuadratureSpec& spec);

/// Angular integral of exp(-d^2 |q - q0 z|^2) over the unit sphere.
double angular_norm_density(double q, double q0, double d);

/// Angular integral of cos(theta) exp(-d^2 |q - q0 z|^2) over the unit sphere.
double angular_cos_density(double q, double q0, double d);

}  // namespace zb
