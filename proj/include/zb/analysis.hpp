#pragma once

#include <cstddef>
#include <vector>

namespace zb {

/// Half peak-to-trough spread of values in a centred window of `window` time units.
std::vector<double> sliding_envelope(const std::vector<double>& times, const std::vector<double>& values,
                                     double window);

/// First time where env < fraction * env[0]; negative if never.
double first_time_below(const std::vector<double>& times, const std::vector<double>& env, double fraction);

/// Indices of strict interior local maxima.
std::vector<std::size_t> local_maxima(const std::vector<double>& values);

/// Indices of strict interior local minima.
std::vector<std::size_t> local_minima(const std::vector<double>& values);

/// Angular frequency from the mean spacing of sign changes (linear interpolation).
double zero_crossing_frequency(const std::vector<double>& times, const std::vector<double>& values);

/// Least-squares slope and intercept of y against x.
struct LineFit {
  double slope;
  double intercept;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Uniform grid of n points on [a, b].
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace zb
