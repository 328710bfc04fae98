#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "zb/analysis.hpp"
#include "zb/magnetic.hpp"

using namespace zb;

TEST_CASE("Landau context") {
  const LandauContext c = make_landau_context(0.25, -1);
  CHECK(c.magnetic_length == doctest::Approx(2.0));
  CHECK(c.cyclotron_freq == doctest::Approx(0.25));
  CHECK(c.charge_sign == -1);
  CHECK_THROWS_AS(make_landau_context(0.0), DomainError);
  CHECK_THROWS_AS(make_landau_context(1.0, 2), DomainError);
}

TEST_CASE("Landau energies") {
  CHECK(landau_energy(0, 0.0, make_landau_context(1.0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(landau_energy(0, 0.0, make_landau_context(1e-12)) == doctest::Approx(1.0));
  const LandauContext c = make_landau_context(0.3);
  for (int n = 0; n < 50; ++n) {
    CHECK(landau_energy(n + 1, 0.4, c) > landau_energy(n, 0.4, c));
    CHECK(landau_energy(n, 0.5, c) > landau_energy(n, 0.4, c));
    const double nu = landau_nu(n, 0.4, c);
    CHECK(nu > 0.0);
    CHECK(nu <= 1.0);
  }
}

TEST_CASE("Gauss-Hermite rule") {
  const GaussRule r = gauss_hermite(30);
  double s0 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double x2 = r.nodes[i] * r.nodes[i];
    s0 += r.weights[i];
    s2 += r.weights[i] * x2;
    s4 += r.weights[i] * x2 * x2;
  }
  CHECK(s0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(s2 == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-13));
  CHECK(s4 == doctest::Approx(3.0 * std::sqrt(kPi) / 4.0).epsilon(1e-13));
}

TEST_CASE("Hermite functions") {
  CHECK(hermite_function(0, 0.0, 4.0) == doctest::Approx(std::pow(kPi, -0.25) / 2.0));
  CHECK(std::abs(hermite_function(1, 0.0)) < 1e-300);
  // Trapezoid on a wide grid is spectrally accurate for these Gaussian-decaying products.
  const int N = 60;
  const auto xs = linspace(-20.0, 20.0, 4001);
  const double h0 = xs[1] - xs[0];
  std::vector<double> gram((N + 1) * (N + 1), 0.0);
  for (double x : xs) {
    const auto h = hermite_functions(N, x);
    const double w = h0;
    for (int m = 0; m <= N; ++m)
      for (int n = 0; n <= N; ++n) gram[m * (N + 1) + n] += w * h[m] * h[n];
  }
  double err = 0.0;
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n) err = std::max(err, std::abs(gram[m * (N + 1) + n] - (m == n ? 1.0 : 0.0)));
  CHECK(err < 1e-10);
  // Large arguments stay finite.
  const auto far = hermite_functions(400, 35.0);
  CHECK(std::all_of(far.begin(), far.end(), [](double v) { return std::isfinite(v); }));
}

TEST_CASE("overlap table without transverse momentum") {
  const LandauContext c = make_landau_context(0.45);
  GaussianPacket p;
  p.widths = {c.magnetic_length, c.magnetic_length, 1.0};
  const UCoeffTable t = compute_u_table(p, c, 60);
  CHECK(t.method == UMethod::D6);
  CHECK(t(0, 0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  for (int n = 0; n < 60; ++n) {
    CHECK(t(n + 1, n) == 0.0);
    CHECK(t(n, n + 1) == 0.0);
  }
  const SumRules s = sum_rules(compute_u_table(p, c, 200));
  CHECK(std::abs(s.s1) < 1e-14);
  CHECK(s.s2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("general overlap formula approaches the d_y = L form") {
  const LandauContext c = make_landau_context(0.45);
  GaussianPacket p = ellipsoidal_figure_packet(0.45);
  p.widths[1] = c.magnetic_length;
  const UCoeffTable d6 = compute_u_table(p, c, 40, UMethod::D6);
  p.widths[1] = c.magnetic_length * (1.0 - 1e-12);
  const UCoeffTable d4 = compute_u_table(p, c, 40, UMethod::D4);
  double gap = 0.0;
  for (int m = 0; m <= 40; ++m)
    for (int n = 0; n <= 40; ++n) gap = std::max(gap, std::abs(d4(m, n) - d6(m, n)));
  CHECK(gap < 1e-10);
  p.widths[1] = 0.5 * c.magnetic_length;
  CHECK_THROWS_AS(compute_u_table(p, c, 10, UMethod::D6), DomainError);
}

TEST_CASE("routes agree and tables are symmetric") {
  const LandauContext c = make_landau_context(0.45);
  const GaussianPacket p = ellipsoidal_figure_packet(0.45);
  const UCoeffTable a = compute_u_table(p, c, 80, UMethod::D4);
  const UCoeffTable q = compute_u_table(p, c, 80, UMethod::Quadrature);
  double gap = 0.0, asym = 0.0;
  for (int m = 0; m <= 80; ++m)
    for (int n = 0; n <= 80; ++n) {
      gap = std::max(gap, std::abs(a(m, n) - q(m, n)));
      asym = std::max(asym, std::abs(a(m, n) - a(n, m)));
    }
  CHECK(gap < 1e-12);
  CHECK(asym == 0.0);
  CHECK(u_entry_d4_complex(p, c, 3, 5) == doctest::Approx(a(3, 5)).epsilon(1e-10));
  CHECK(to_string(UMethod::D4) == "d4");
}

TEST_CASE("sum rules for the ellipsoidal packet") {
  const LandauContext c = make_landau_context(0.45);
  const GaussianPacket p = ellipsoidal_figure_packet(0.45);
  const SumRules s = sum_rules(compute_u_table(p, c, 200));
  CHECK(std::abs(s.s2 - 1.0) < 1e-8);
  CHECK(std::abs(s.s1 + p.k0[0] * c.magnetic_length / std::sqrt(2.0)) < 1e-8);
}

TEST_CASE("truncated table is detected") {
  const LandauContext c = make_landau_context(0.0045);
  CHECK_THROWS_AS(compute_u_table_converged(ellipsoidal_figure_packet(0.0045), c, 20, 1e-10, 40), TruncationError);
}

TEST_CASE("velocity matrix elements") {
  const LandauContext c = make_landau_context(0.45);
  CHECK(std::abs(velocity_matrix_element({2, 0.0, 0.3, 1}, {4, 0.0, 0.3, 1}, Axis::X, c)) == 0.0);
  const double expect = landau_nu(0, 0.3, c) * landau_nu(1, 0.3, c) / (std::sqrt(2.0) * c.magnetic_length);
  CHECK(std::abs(velocity_matrix_element({0, 0.0, 0.3, 1}, {1, 0.0, 0.3, 1}, Axis::Y, c)) == doctest::Approx(expect));
  const double nu = landau_nu(3, 0.3, c);
  CHECK(velocity_matrix_element({3, 0.0, 0.3, 1}, {3, 0.0, 0.3, -1}, Axis::Z, c).real() == doctest::Approx(0.3 * nu * nu));
  CHECK(std::abs(velocity_matrix_element({3, 0.0, 0.3, 1}, {4, 0.0, 0.3, 1}, Axis::Z, c)) == 0.0);
}

TEST_CASE("classical limit orbit") {
  const LandauContext c = make_landau_context(0.01);
  GaussianPacket p;
  p.k0 = {0.02, 0.0, 0.3};
  const Vec3 v0 = nonrel_limit_velocity(p, c, 0.0);
  CHECK(v0[0] == doctest::Approx(0.02));
  CHECK(v0[1] == 0.0);
  CHECK(v0[2] == doctest::Approx(0.3));
  for (double t : {13.0, 77.0, 301.0}) {
    const Vec3 v = nonrel_limit_velocity(p, c, t);
    CHECK(v[0] * v[0] + v[1] * v[1] == doctest::Approx(0.02 * 0.02));
  }
  const Vec3 period = nonrel_limit_velocity(p, c, 2.0 * kPi / c.cyclotron_freq);
  CHECK(period[0] == doctest::Approx(0.02));
  CHECK(std::abs(period[1]) < 1e-15);
}

TEST_CASE("no transverse momentum means no transverse motion") {
  const LandauContext c = make_landau_context(0.45);
  GaussianPacket p = spherical_figure_packet(0.45);
  p.k0 = {0.0, 0.0, 0.5};
  const MagneticModel m(p, c, compute_u_table_converged(p, c), 20.0);
  for (double t : {0.0, 3.0, 17.0}) {
    CHECK(std::abs(m.velocity_x(t)) < 1e-14);
    CHECK(std::abs(m.velocity_y(t)) < 1e-14);
  }
}

TEST_CASE("weak field gives nearly constant longitudinal velocity") {
  const double b = 0.0045;
  const LandauContext c = make_landau_context(b);
  GaussianPacket p = spherical_figure_packet(b);
  p.k0[2] = 0.05;
  const MagneticModel m(p, c, compute_u_table_converged(p, c), 20.0);
  const double v0 = m.velocity_z(0.0);
  CHECK(v0 == doctest::Approx(0.05).epsilon(0.01));
  for (double t : linspace(0.0, 20.0, 21)) CHECK(m.velocity_z(t) == doctest::Approx(v0).epsilon(0.01));
}

TEST_CASE("closed forms agree with the raw double sum") {
  const double b = 0.45;
  const LandauContext c = make_landau_context(b, -1);
  const GaussianPacket p = spherical_figure_packet(b);
  const MagneticModel m(p, c, compute_u_table_converged(p, c), 10.0);
  for (double t : {0.0, 2.5, 9.0}) {
    CHECK(std::abs(m.velocity_x(t) - m.velocity_raw(Axis::X, t, 80)) < 1e-10);
    CHECK(std::abs(m.velocity_y(t) - m.velocity_raw(Axis::Y, t, 80)) < 1e-10);
    CHECK(std::abs(m.velocity_x(t) - m.velocity_x_adaptive(t)) < 1e-10);
  }
  const auto tr = m.trace({0.0, 2.5, 9.0});
  CHECK(tr.vx[1] == doctest::Approx(m.velocity_x(2.5)).epsilon(1e-12));
}

TEST_CASE("interband weight grows with the field") {
  double prev = 0.0;
  for (double b : {0.01, 0.1, 1.0}) {
    const LandauContext c = make_landau_context(b);
    const GaussianPacket p = spherical_figure_packet(b);
    const MagneticModel m(p, c, compute_u_table_converged(p, c), 1.0);
    const double r = m.interband_intraband_ratio();
    CHECK(r > prev);
    prev = r;
  }
}
