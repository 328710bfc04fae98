#pragma once

#include <vector>

#include "zb/core.hpp"
#include "zb/quadrature.hpp"

namespace zb {

/// Physical string: linear density rho, substrate constant K, tension T (SI).
struct StringConfig {
  double linear_density;
  double elastic_constant;
  double tension;
  double wave_speed;    ///< sqrt(T/rho)
  double sim_compton;   ///< sqrt(T/K)
  double sim_freq;      ///< sqrt(K/rho)
  double sim_time;      ///< 1/sim_freq
  double zb_frequency;  ///< 2 sim_freq / 2pi (Hz)
};

StringConfig string_parameters(double rho, double K, double T);

/// Linear density of a round wire of radius r (m) and bulk density rho3d (kg/m^3).
double wire_linear_density(double radius, double rho3d);

/// Real field (1/2pi) int w0(k) cos(kx - w_k t) dk for the zero-momentum Gaussian of width d.
double real_field(double d, double x, double t, const QuadratureSpec& spec = {});

/// Unnormalized <xi|x^2|xi> split into its spectral terms.
struct VarianceBreakdown {
  double time = 0.0;
  double v1c = 0.0;
  double v1osc = 0.0;
  double v2c = 0.0;
  double v2osc = 0.0;
  double v3 = 0.0;     ///< odd integrand, identically zero
  double cross = 0.0;  ///< even mixed term t * int k^2/w_k sin(2 w_k t)
  double total = 0.0;
};

VarianceBreakdown variance_terms(double d, double t, const QuadratureSpec& spec = {});

/// Large-time form of v2osc.
struct LargeTimeVariance {
  double printed;    ///< -(d t^2/4) sum_eta e^{2i eta t}/(d^2 + i eta t)^{3/2}
  double corrected;  ///< -(d t^2/8) sum_eta e^{2i eta t}/(d^2 - i eta t)^{3/2}
  double imag_residual;
};
LargeTimeVariance variance_large_time(double d, double t);

/// Envelope d t^2 / (2 (d^4 + t^2)^{3/4}) of the corrected large-time form.
double large_time_envelope(double d, double t);

/// Power-law exponent and angular frequency of a signal sampled on [t0, t1].
struct OscillationFit {
  double exponent;
  double frequency;
  double prefactor;  ///< C in C t^exponent
};
OscillationFit fit_power_oscillation(const std::vector<double>& times, const std::vector<double>& values);

/// Finite-difference oracle settings.
struct PdeSettings {
  double dx = 0.02;
  double dt = 0.015;
  double half_width = 0.0;  ///< 0 selects t_end + 8d
};

struct PdeTrace {
  std::vector<double> times;       ///< step times nearest the requested samples
  std::vector<double> raw;         ///< int x^2 xi^2 dx
  std::vector<double> normalized;  ///< raw / int xi^2 dx
  std::vector<double> norm;
  long steps = 0;
};

/// Leapfrog xi_tt = xi_xx - xi from (w0(x), 0); samples at the requested times (ascending).
PdeTrace pde_oracle(double d, const std::vector<double>& sample_times, const PdeSettings& settings = {});

}  // namespace zb
