#include "zb/string_sim.hpp"

#include <algorithm>
#include <cmath>

#include "zb/analysis.hpp"

namespace zb {

StringConfig string_parameters(double rho, double K, double T) {
  if (!(rho > 0.0) || !(K > 0.0) || !(T > 0.0)) throw DomainError("string parameters must be positive");
  StringConfig c{rho, K, T, std::sqrt(T / rho), std::sqrt(T / K), std::sqrt(K / rho), 0.0, 0.0};
  c.sim_time = 1.0 / c.sim_freq;
  c.zb_frequency = 2.0 * c.sim_freq / (2.0 * kPi);
  return c;
}

double wire_linear_density(double radius, double rho3d) {
  if (!(radius > 0.0) || !(rho3d > 0.0)) throw DomainError("wire radius and density must be positive");
  return kPi * radius * radius * rho3d;
}

double real_field(double d, double x, double t, const QuadratureSpec& spec) {
  if (!(d > 0.0)) throw DomainError("width must be positive");
  const double amp = std::sqrt(2.0 * d * std::sqrt(kPi));
  auto f = [&](double k) {
    return amp * std::exp(-0.5 * d * d * k * k) * std::cos(k * x - std::sqrt(1.0 + k * k) * t);
  };
  const double w = 1.5 * spec.window_sigmas / d;
  QuadratureSpec s = spec.for_time(std::abs(t) + std::abs(x));
  return integrate(f, -w, w, s).value / (2.0 * kPi);
}

VarianceBreakdown variance_terms(double d, double t, const QuadratureSpec& spec) {
  if (!(d > 0.0)) throw DomainError("width must be positive");
  const double w = spec.window_sigmas / d;
  const QuadratureSpec s = spec.for_time(t);
  auto half = [&](auto g) { return 2.0 * integrate(g, 0.0, w, s).value; };
  auto gauss = [d](double k) { return std::exp(-d * d * k * k); };
  auto om = [](double k) { return std::sqrt(1.0 + k * k); };
  const double c = d / (2.0 * std::sqrt(kPi));
  const double d4 = std::pow(d, 4);

  VarianceBreakdown v;
  v.time = t;
  v.v1c = c * d4 * half([&](double k) { return gauss(k) * k * k; });
  v.v1osc = c * d4 * half([&](double k) { return gauss(k) * k * k * std::cos(2.0 * om(k) * t); });
  if (t != 0.0) {
    v.v2c = c * t * t * half([&](double k) { return gauss(k) * k * k / (1.0 + k * k); });
    v.v2osc = -c * t * t * half([&](double k) { return gauss(k) * k * k / (1.0 + k * k) * std::cos(2.0 * om(k) * t); });
    v.cross = std::pow(d, 3) * t / std::sqrt(kPi) *
              half([&](double k) { return gauss(k) * k * k / om(k) * std::sin(2.0 * om(k) * t); });
  }
  v.v3 = 0.0;
  v.total = v.v1c + v.v1osc + v.v2c + v.v2osc + v.v3 + v.cross;
  return v;
}

LargeTimeVariance variance_large_time(double d, double t) {
  if (!(d > 0.0) || !(t > 0.0)) throw DomainError("large-time form needs d > 0 and t > 0");
  const cplx I(0.0, 1.0);
  cplx printed = 0.0, corrected = 0.0;
  for (int eta : {1, -1}) {
    const cplx ph = std::exp(2.0 * I * static_cast<double>(eta) * t);
    printed += ph / std::pow(cplx(d * d, eta * t), 1.5);
    corrected += ph / std::pow(cplx(d * d, -eta * t), 1.5);
  }
  printed *= -d * t * t / 4.0;
  corrected *= -d * t * t / 8.0;
  return {printed.real(), corrected.real(), std::max(std::abs(printed.imag()), std::abs(corrected.imag()))};
}

double large_time_envelope(double d, double t) {
  return d * t * t / (2.0 * std::pow(std::pow(d, 4) + t * t, 0.75));
}

OscillationFit fit_power_oscillation(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size() || times.size() < 8) throw DomainError("need at least eight samples");
  std::vector<double> mag(values.size());
  std::transform(values.begin(), values.end(), mag.begin(), [](double v) { return std::abs(v); });
  const auto peaks = local_maxima(mag);
  if (peaks.size() < 2) throw DomainError("too few oscillation peaks to fit");
  std::vector<double> lx, ly;
  for (auto i : peaks) {
    lx.push_back(std::log(times[i]));
    ly.push_back(std::log(mag[i]));
  }
  const LineFit f = fit_line(lx, ly);
  return {f.slope, zero_crossing_frequency(times, values), std::exp(f.intercept)};
}

PdeTrace pde_oracle(double d, const std::vector<double>& sample_times, const PdeSettings& settings) {
  if (!(d > 0.0)) throw DomainError("width must be positive");
  if (sample_times.empty()) throw DomainError("no sample times");
  if (!std::is_sorted(sample_times.begin(), sample_times.end()) || sample_times.front() < 0.0)
    throw DomainError("sample times must be non-negative and ascending");
  const double dx = settings.dx, dt = settings.dt;
  if (!(dx > 0.0) || !(dt > 0.0)) throw ConfigError("grid steps must be positive");
  if (dt / dx > 0.9) throw ConfigError("CFL condition violated: dt/dx must not exceed 0.9");
  const double t_end = sample_times.back();
  const double need = t_end + 8.0 * d;
  const double half = settings.half_width > 0.0 ? settings.half_width : need;
  if (half < need) throw DomainError("domain half-width below t_end + 8d: boundary contamination");

  const auto n = static_cast<std::size_t>(std::ceil(half / dx));
  const std::size_t N = 2 * n + 1;
  std::vector<double> x(N), prev(N), cur(N), next(N);
  const double amp = std::pow(kPi, -0.25) / std::sqrt(d);
  for (std::size_t i = 0; i < N; ++i) {
    x[i] = (static_cast<double>(i) - static_cast<double>(n)) * dx;
    cur[i] = amp * std::exp(-x[i] * x[i] / (2.0 * d * d));
  }
  const double r = (dt / dx) * (dt / dx);
  const double m = dt * dt;
  auto accel = [&](const std::vector<double>& u, std::size_t i) {
    return r * (u[i - 1] - 2.0 * u[i] + u[i + 1]) - m * u[i];
  };

  PdeTrace out;
  auto sample = [&](double t) {
    double raw = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double w = cur[i] * cur[i];
      raw += x[i] * x[i] * w;
      norm += w;
    }
    raw *= dx;
    norm *= dx;
    out.times.push_back(t);
    out.raw.push_back(raw);
    out.norm.push_back(norm);
    out.normalized.push_back(raw / norm);
  };

  std::size_t next_sample = 0;
  double t = 0.0;
  long step = 0;
  auto flush = [&] {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t + 0.5 * dt) {
      sample(t);
      ++next_sample;
    }
  };
  flush();
  if (next_sample == sample_times.size()) return out;

  // Zero initial velocity: Taylor start.
  prev = cur;
  for (std::size_t i = 1; i + 1 < N; ++i) cur[i] = prev[i] + 0.5 * accel(prev, i);
  cur.front() = cur.back() = 0.0;
  t = dt;
  step = 1;
  flush();
  while (next_sample < sample_times.size()) {
    for (std::size_t i = 1; i + 1 < N; ++i) next[i] = 2.0 * cur[i] - prev[i] + accel(cur, i);
    next.front() = next.back() = 0.0;
    std::swap(prev, cur);
    std::swap(cur, next);
    ++step;
    t = static_cast<double>(step) * dt;
    flush();
  }
  out.steps = step;
  return out;
}

}  // namespace zb
