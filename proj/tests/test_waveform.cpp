#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "zb/analysis.hpp"
#include "zb/waveform.hpp"

using namespace zb;

namespace {
const GaussianPacket kPacket = GaussianPacket::isotropic(2.0, 0.8);

std::vector<std::size_t> prominent_peaks(const ComplexField1D& f) {
  std::vector<double> a;
  for (const auto& z : f.amplitude) a.push_back(std::abs(z));
  const double top = *std::max_element(a.begin(), a.end());
  std::vector<std::size_t> out;
  for (auto i : local_maxima(a))
    if (a[i] > 0.05 * top) out.push_back(i);
  // Keep the two tallest, ordered by position.
  std::sort(out.begin(), out.end(), [&](auto x, auto y) { return a[x] > a[y]; });
  if (out.size() > 2) out.resize(2);
  std::sort(out.begin(), out.end());
  return out;
}

/// Late-time peak velocity of a dispersing sub-packet: k maximizing |A(k)| p0^{3/2}.
double stationary_peak_velocity(double d, double k0, double sign) {
  double best = -1e300, kbest = k0;
  for (double k : linspace(k0 - 3.0 / d, k0 + 3.0 / d, 600001)) {
    const double p0 = std::sqrt(1.0 + k * k);
    const double a = std::log(std::abs(1.0 + sign / p0)) - 0.5 * d * d * (k - k0) * (k - k0) + 1.5 * std::log(p0);
    if (a > best) {
      best = a;
      kbest = k;
    }
  }
  return sign * kbest / std::sqrt(1.0 + kbest * kbest);
}
}  // namespace

TEST_CASE("mode weights") {
  const ModeWeights w = mode_weights(0.0);
  CHECK(w.positive == 1.0);
  CHECK(w.negative == 0.0);
  const ModeWeights s = mode_weights(1e-3);
  CHECK(s.negative == doctest::Approx(0.25e-6).epsilon(1e-5));
  CHECK(s.positive + s.negative == doctest::Approx(1.0));
}

TEST_CASE("mode charge is one") {
  CHECK(coefficients_from_packet(kPacket).charge() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("field at t = 0 reproduces the initial state") {
  const auto grid = evolution_grid(2.0, 0.0);
  const auto f = evolve_packet_1d(kPacket, 0.0, grid);
  double err = 0.0, derr = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx w = packet_position_amplitude_1d(2.0, 0.8, grid[i]);
    err = std::max(err, std::abs(f.amplitude[i] - w));
    derr = std::max(derr, std::abs(f.dt[i] - cplx(0.0, -1.0) * w));
  }
  CHECK(err < 1e-9);
  CHECK(derr < 1e-9);
}

TEST_CASE("charge is conserved") {
  const auto grid = evolution_grid(2.0, 10.0);
  const auto c = coefficients_from_packet(kPacket);
  const double q0 = evaluate_field(c, 0.0, grid).charge();
  CHECK(q0 == doctest::Approx(1.0).epsilon(1e-8));
  for (double t : {2.0, 6.0, 10.0}) CHECK(evaluate_field(c, t, grid).charge() == doctest::Approx(q0).epsilon(1e-8));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(evolve_packet_1d(kPacket, 10.0, linspace(-5.0, 5.0, 201)), DomainError);
  CHECK_THROWS_AS(evolve_packet_1d(kPacket, 1.0, linspace(-30.0, 30.0, 101)), DomainError);
}

TEST_CASE("packet splits into two sub-packets with the right one larger") {
  const auto grid = evolution_grid(2.0, 10.0);
  const auto c = coefficients_from_packet(kPacket);
  REQUIRE(prominent_peaks(evaluate_field(c, 0.0, grid)).size() == 1);
  const auto f = evaluate_field(c, 10.0, grid);
  const auto peaks = prominent_peaks(f);
  REQUIRE(peaks.size() == 2);
  CHECK(std::abs(f.amplitude[peaks[1]]) > std::abs(f.amplitude[peaks[0]]));
}

TEST_CASE("sub-packet peaks move at the group velocities") {
  const auto grid = evolution_grid(2.0, 30.0);
  const auto c = coefficients_from_packet(kPacket);
  const auto a = evaluate_field(c, 20.0, grid);
  const auto b = evaluate_field(c, 30.0, grid);
  const auto pa = prominent_peaks(a), pb = prominent_peaks(b);
  REQUIRE(pa.size() == 2);
  REQUIRE(pb.size() == 2);
  const double right = (grid[pb[1]] - grid[pa[1]]) / 10.0;
  const double left = (grid[pb[0]] - grid[pa[0]]) / 10.0;
  CHECK(right == doctest::Approx(stationary_peak_velocity(2.0, 0.8, 1.0)).epsilon(0.05));
  CHECK(left == doctest::Approx(stationary_peak_velocity(2.0, 0.8, -1.0)).epsilon(0.05));
  // Peaks run ahead of the charge-weighted group velocities.
  const GroupVelocities1D g = subpacket_group_velocities_1d(2.0, 0.8);
  CHECK(right > g.plus);
  CHECK(left < g.minus);
  CHECK(g.plus > 0.0);
  CHECK(g.minus < 0.0);
}

TEST_CASE("current equals charge times velocity") {
  CHECK(average_current(GaussianPacket::isotropic(2.0, 0.0), 1.0) == 0.0);
  for (double t : {0.0, 1.5, 5.0, 12.0}) {
    const double v = packet_velocity(kPacket, t);
    CHECK(std::abs(average_current(kPacket, t) - v) < 1e-8 * std::abs(v));
    CHECK(average_current(kPacket, t, -1.0) == doctest::Approx(-average_current(kPacket, t)));
  }
}

TEST_CASE("current at t = 0 against a Riemann sum") {
  // |w(k)|^2 k_z over the isotropic packet, reduced to a radial integral.
  auto f = [](double q) {
    return std::pow(2.0, 3) / std::pow(kPi, 1.5) * q * q * angular_cos_density(q, 0.8, 2.0) * q;
  };
  const auto [lo, hi] = radial_window(kPacket, QuadratureSpec{});
  CHECK(average_current(kPacket, 0.0) == doctest::Approx(riemann_oracle(f, lo, hi, 1000000)).epsilon(1e-8));
}

TEST_CASE("average position") {
  CHECK(average_position(kPacket, 0.0, 0.4) == 0.4);
  const double h = 1e-3, t = 3.0;
  const double fd = (average_position(kPacket, t + h, 0.0) - average_position(kPacket, t - h, 0.0)) / (2.0 * h);
  CHECK(fd == doctest::Approx(average_current(kPacket, t)).epsilon(1e-6));
  CHECK(average_position(kPacket, 4.0, 0.0) == doctest::Approx(average_position_analytic(kPacket, 4.0, 0.0)).epsilon(1e-8));
  const double slope = (average_position_analytic(kPacket, 30.0, 0.0) - average_position_analytic(kPacket, 10.0, 0.0)) / 20.0;
  const auto s = subpacket_decompose(kPacket);
  CHECK(slope == doctest::Approx(s.v_plus + s.v_minus).epsilon(0.01));
}
