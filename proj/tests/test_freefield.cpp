#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "zb/analysis.hpp"
#include "zb/freefield.hpp"

using namespace zb;

TEST_CASE("single-mode velocity limits") {
  CHECK(velocity_operator_11({0.0, 0.0, 0.8}, 0.0) == doctest::Approx(0.8));
  CHECK(velocity_operator_11({0.0, 0.0, 0.0}, 3.7) == 0.0);
  const auto t = linspace(0.0, 10.0, 20001);
  double hi = -1.0, lo = 2.0;
  for (double x : t) {
    const double v = velocity_operator_11({0.0, 0.0, 1.0}, x);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  CHECK(hi == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lo == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("single-mode frequency is 2 sqrt(1+q^2)") {
  const auto t = linspace(0.0, 40.0, 40001);
  std::vector<double> v;
  for (double x : t) v.push_back(velocity_operator_11({0.0, 0.0, 1.0}, x) - 0.75);
  CHECK(zero_crossing_frequency(t, v) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("position operator") {
  const Vec3 q{0.2, -0.1, 0.7};
  CHECK(position_operator_11(q, 0.0, 1.25) == 1.25);
  const double h = 1e-6;
  for (double t : {0.3, 2.0, 5.5}) {
    const double fd = (position_operator_11(q, t + h, 0.0) - position_operator_11(q, t - h, 0.0)) / (2.0 * h);
    CHECK(fd == doctest::Approx(velocity_operator_11(q, t)).epsilon(1e-8));
  }
  // Amplitude of the trembling term at q = (0,0,1): (1/4) q^2 q_z / (1+q^2)^{3/2}.
  const Vec3 u{0.0, 0.0, 1.0};
  const double period = kPi / std::sqrt(2.0);
  const double drift = position_operator_11(u, period, 0.0) / period;
  double amp = 0.0;
  for (double t : linspace(0.0, period, 4001)) amp = std::max(amp, std::abs(position_operator_11(u, t, 0.0) - drift * t));
  CHECK(amp == doctest::Approx(0.25 / std::pow(2.0, 1.5)).epsilon(1e-6));
}

TEST_CASE("packet velocity basics") {
  CHECK(packet_velocity(GaussianPacket::isotropic(2.0, 0.0), 1.3) == 0.0);
  const GaussianPacket p = GaussianPacket::isotropic(2.0, 0.8);
  CHECK_THROWS_AS(packet_velocity(GaussianPacket{{1.0, 2.0, 3.0}, {0.0, 0.0, 0.5}}, 1.0), DomainError);
  const double v0 = packet_velocity(p, 0.0);
  CHECK(v0 > 0.0);
  CHECK(v0 < 1.0);
}

TEST_CASE("wide packet follows the single mode") {
  const GaussianPacket p = GaussianPacket::isotropic(50.0, 0.8);
  for (double t : linspace(0.0, 3.0, 13))
    CHECK(packet_velocity(p, t) == doctest::Approx(velocity_operator_11({0.0, 0.0, 0.8}, t)).epsilon(0.01));
}

TEST_CASE("decay for d = 2, k0 = 0.8") {
  const GaussianPacket p = GaussianPacket::isotropic(2.0, 0.8);
  CHECK(decay_time(p) == doctest::Approx(5.0));
  const auto tr = packet_velocity_trace(p, linspace(0.0, 12.0, 1201));
  const auto sub = subpacket_decompose(p);
  const double vinf = sub.v_plus + sub.v_minus;
  const DecayMeasurement m = measure_decay(tr, vinf, nominal_zb_period(p));
  CHECK(m.decay_time >= 4.0);
  CHECK(m.decay_time <= 7.0);
  // The envelope at t_d is below 10% of the initial ZB amplitude.
  const std::size_t i = static_cast<std::size_t>(std::lround(m.decay_time / 0.01));
  const auto env = sliding_envelope(tr.times, tr.values, nominal_zb_period(p));
  CHECK(env[i] < 0.1 * env[0]);
}

TEST_CASE("decay time and count scaling") {
  CHECK(decay_time(GaussianPacket::isotropic(4.0, 0.8)) == doctest::Approx(10.0));
  CHECK(decay_time(GaussianPacket::isotropic(2.0, 0.4)) == doctest::Approx(10.0));
  CHECK(oscillation_count(GaussianPacket::isotropic(2.0, 0.8)) == doctest::Approx(1.59).epsilon(0.005));
  CHECK(oscillation_count(GaussianPacket::isotropic(kPi, 2.0)) == doctest::Approx(1.0));
}

TEST_CASE("measured extremum count within one of the estimate") {
  for (double d : {1.0, 2.0, 4.0}) {
    const GaussianPacket p = GaussianPacket::isotropic(d, 0.8);
    const auto tr = packet_velocity_trace(p, linspace(0.0, 6.0 * decay_time(p), 2401));
    const auto s = subpacket_decompose(p);
    const auto m = measure_decay(tr, s.v_plus + s.v_minus, nominal_zb_period(p));
    CHECK(std::abs(m.oscillations - oscillation_count(p)) <= 1.0);
  }
}

TEST_CASE("sub-packet decomposition") {
  const auto zero = subpacket_decompose(GaussianPacket::isotropic(2.0, 0.0));
  CHECK(zero.v_plus == 0.0);
  CHECK(zero.v_minus == 0.0);
  CHECK(zero.v_rel == 0.0);

  const GaussianPacket p = GaussianPacket::isotropic(2.0, 0.8);
  const auto s = subpacket_decompose(p);
  CHECK(s.norm_plus - (-s.norm_minus) == doctest::Approx(1.0).epsilon(1e-9));
  for (double t : {0.0, 1.1, 4.0, 9.5})
    CHECK(std::abs(s.v_plus + s.v_minus + s.v_osc(t) - packet_velocity(p, t)) < 1e-9);

  const auto narrow = subpacket_decompose(GaussianPacket::isotropic(20.0, 1.0));
  CHECK(narrow.v_rel == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("Dirac velocity stays subluminal") {
  CHECK(dirac_velocity_11({0.3, 0.1, 0.9}, 0.0) == 0.0);
  double vmax = 0.0;
  for (double t : linspace(0.0, 5.0, 5001)) vmax = std::max(vmax, dirac_velocity_11({0.0, 0.0, 1.0}, t));
  CHECK(vmax == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("superluminal scan") {
  const auto kg = superluminal_scan(VelocityModel::KleinGordon, {{0.0, 0.0, 1.5}}, {0.0});
  REQUIRE(kg.size() == 1);
  CHECK(kg[0].v == doctest::Approx(1.5));

  std::vector<Vec3> qs;
  for (double a : linspace(-1.0, 1.0, 11))
    for (double b : linspace(-1.0, 1.0, 11))
      for (double c : linspace(-1.0, 1.0, 11))
        if (a * a + b * b + c * c <= 1.0) qs.push_back({a, b, c});
  const auto ts = linspace(0.0, 10.0, 101);
  CHECK(superluminal_scan(VelocityModel::KleinGordon, qs, ts).empty());

  std::vector<Vec3> wide;
  for (double a : linspace(-3.0, 3.0, 13))
    for (double c : linspace(-3.0, 3.0, 13)) wide.push_back({a, 0.0, c});
  CHECK(superluminal_scan(VelocityModel::Dirac, wide, ts).empty());
}
