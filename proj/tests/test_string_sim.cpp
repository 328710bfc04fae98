#include <doctest.h>

#include <chrono>
#include <cmath>

#include "zb/analysis.hpp"
#include "zb/string_sim.hpp"

using namespace zb;

TEST_CASE("worked string example") {
  const StringConfig s = string_parameters(2.81e-2, 5e7, 1000.0);
  CHECK(2.0 * s.sim_freq == doctest::Approx(8.44e4).epsilon(0.005));
  CHECK(s.zb_frequency == doctest::Approx(13.43e3).epsilon(0.005));
  CHECK(s.sim_time == doctest::Approx(2.37e-5).epsilon(0.005));
  CHECK(s.sim_compton == doctest::Approx(4.47e-3).epsilon(0.005));
  CHECK(s.wave_speed == doctest::Approx(188.7).epsilon(0.005));
  CHECK(s.wave_speed == doctest::Approx(s.sim_compton * s.sim_freq).epsilon(1e-12));
}

TEST_CASE("tension scaling") {
  const StringConfig a = string_parameters(2.81e-2, 5e7, 1000.0);
  const StringConfig b = string_parameters(2.81e-2, 5e7, 4000.0);
  CHECK(b.sim_freq == doctest::Approx(a.sim_freq).epsilon(1e-15));
  CHECK(b.wave_speed == doctest::Approx(2.0 * a.wave_speed));
  CHECK(b.sim_compton == doctest::Approx(2.0 * a.sim_compton));
  CHECK_THROWS_AS(string_parameters(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("copper wire density") {
  CHECK(wire_linear_density(1e-3, 8940.0) == doctest::Approx(2.81e-2).epsilon(0.005));
}

TEST_CASE("real field") {
  const double d = 5.0;
  for (double x : {0.0, 1.5, 7.0}) {
    const double w0 = std::pow(kPi, -0.25) / std::sqrt(d) * std::exp(-x * x / (2.0 * d * d));
    CHECK(real_field(d, x, 0.0) == doctest::Approx(w0).epsilon(1e-9));
    CHECK(real_field(d, -x, 12.0) == doctest::Approx(real_field(d, x, 12.0)).epsilon(1e-12));
  }
}

TEST_CASE("variance terms") {
  const double d = 5.0;
  const VarianceBreakdown v0 = variance_terms(d, 0.0);
  CHECK(v0.total == doctest::Approx(d * d / 2.0).epsilon(1e-10));
  for (double t : {1.0, 7.0, 40.0}) {
    const VarianceBreakdown v = variance_terms(d, t);
    CHECK(v.v3 == 0.0);
    CHECK(v.v1c >= 0.0);
    CHECK(v.v2c >= 0.0);
    CHECK(v.total == doctest::Approx(v.v1c + v.v1osc + v.v2c + v.v2osc + v.cross));
  }
}

TEST_CASE("variance against a direct spatial moment of the real field") {
  const double d = 2.0, t = 3.0;
  auto g = [&](double x) {
    const double xi = real_field(d, x, t);
    return x * x * xi * xi;
  };
  const double direct = riemann_oracle(g, -30.0, 30.0, 3001);
  CHECK(variance_terms(d, t).total == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("large-time form") {
  const auto r = variance_large_time(5.0, 300.0);
  CHECK(r.imag_residual < 1e-12 * std::abs(r.printed));
  CHECK(std::abs(r.printed) <= 2.0 * large_time_envelope(5.0, 300.0) * (1.0 + 1e-12));
  CHECK(std::abs(r.corrected) <= large_time_envelope(5.0, 300.0) * (1.0 + 1e-12));
  CHECK_THROWS_AS(variance_large_time(5.0, 0.0), DomainError);
  // Far in time the oscillating part follows its large-time form.
  const double t = 2000.0;
  CHECK(variance_terms(5.0, t).v2osc == doctest::Approx(variance_large_time(5.0, t).corrected).epsilon(0.02));
}

TEST_CASE("envelope exponent and frequency") {
  const auto ts = linspace(250.0, 2500.0, 45001);
  std::vector<double> v;
  for (double t : ts) v.push_back(variance_large_time(5.0, t).printed);
  const OscillationFit f = fit_power_oscillation(ts, v);
  CHECK(f.exponent == doctest::Approx(0.5).epsilon(0.1));
  CHECK(f.frequency == doctest::Approx(2.0).epsilon(0.01));
  // On [50, 500] the envelope has not reached its asymptotic slope.
  const auto early = linspace(50.0, 500.0, 9001);
  std::vector<double> e;
  for (double t : early) e.push_back(variance_large_time(5.0, t).printed);
  CHECK(fit_power_oscillation(early, e).exponent == doctest::Approx(0.57).epsilon(0.03));
}

TEST_CASE("PDE oracle") {
  const double d = 5.0;
  const auto ts = linspace(0.0, 20.0, 11);
  const auto start = std::chrono::steady_clock::now();
  const PdeTrace tr = pde_oracle(d, ts);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 60.0);
  CHECK(tr.raw.front() == doctest::Approx(d * d / 2.0).epsilon(1e-6));
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(tr.raw[i] == doctest::Approx(variance_terms(d, tr.times[i]).total).epsilon(0.01));

  PdeSettings bad;
  bad.dt = 0.019;
  CHECK_THROWS_AS(pde_oracle(d, ts, bad), ConfigError);
  PdeSettings narrow;
  narrow.half_width = 30.0;
  CHECK_THROWS_AS(pde_oracle(d, ts, narrow), DomainError);
}
