#include "zb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zb/core.hpp"

namespace zb {

std::vector<double> sliding_envelope(const std::vector<double>& times, const std::vector<double>& values,
                                     double window) {
  const std::size_t n = times.size();
  std::vector<double> env(n, 0.0);
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (lo < n && times[lo] < times[i] - 0.5 * window) ++lo;
    while (hi < n && times[hi] <= times[i] + 0.5 * window) ++hi;
    const auto [mn, mx] = std::minmax_element(values.begin() + static_cast<long>(lo),
                                              values.begin() + static_cast<long>(hi));
    env[i] = 0.5 * (*mx - *mn);
  }
  return env;
}

double first_time_below(const std::vector<double>& times, const std::vector<double>& env, double fraction) {
  if (env.empty()) return -1.0;
  const double thr = fraction * env.front();
  for (std::size_t i = 0; i < env.size(); ++i)
    if (env[i] < thr) return times[i];
  return -1.0;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) out.push_back(i);
  return out;
}

std::vector<std::size_t> local_minima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] < v[i - 1] && v[i] <= v[i + 1]) out.push_back(i);
  return out;
}

double zero_crossing_frequency(const std::vector<double>& t, const std::vector<double>& v) {
  std::vector<double> cross;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] == 0.0) {
      cross.push_back(t[i]);
    } else if (v[i] * v[i + 1] < 0.0) {
      cross.push_back(t[i] + (t[i + 1] - t[i]) * v[i] / (v[i] - v[i + 1]));
    }
  }
  if (cross.size() < 2) throw DomainError("fewer than two zero crossings");
  const double spacing = (cross.back() - cross.front()) / static_cast<double>(cross.size() - 1);
  return kPi / spacing;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) throw DomainError("fit_line needs matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace zb
