#include "zb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace zb {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double s = f(c - x) + f(c + x);
    resk += kWgk[j] * s;
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be >= 1");
  if (!(window_sigmas >= 6.0)) throw ConfigError("window_sigmas must be >= 6");
}

QuadratureSpec QuadratureSpec::for_time(double t) const {
  QuadratureSpec s = *this;
  const double scale = std::max(1.0, std::ceil(std::abs(t)));
  s.max_subdivisions = static_cast<int>(std::min(1e7, max_subdivisions * scale));
  return s;
}

ConvergenceError::ConvergenceError(double est, double bnd)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "quadrature did not converge: estimate " << est << ", error bound " << bnd;
        return os.str();
      }()),
      estimate(est),
      bound(bnd) {}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  QuadResult r;
  if (a == b) return r;
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  int n = 1;
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (n >= spec.max_subdivisions) throw ConvergenceError(total, err);
    Segment s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    Segment l = gk15(f, s.a, m);
    Segment u = gk15(f, m, s.b);
    total += l.value + u.value - s.value;
    err += l.error + u.error - s.error;
    heap.push(l);
    heap.push(u);
    ++n;
  }
  // Re-sum to remove drift from incremental updates.
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  r.value = v;
  r.error = e;
  r.intervals = n;
  r.evaluations = 15L * (2L * n - 1);
  return r;
}

double riemann_oracle(const Integrand& f, double a, double b, long n) {
  if (n < 2) throw DomainError("riemann_oracle needs at least two nodes");
  const double h = (b - a) / static_cast<double>(n - 1);
  double acc = 0.5 * (f(a) + f(b));
  for (long i = 1; i < n - 1; ++i) acc += f(a + h * static_cast<double>(i));
  return acc * h;
}

std::pair<double, double> radial_window(const GaussianPacket& packet, const QuadratureSpec& spec) {
  const double d = packet.widths[2];
  const double k0 = std::abs(packet.k0[2]);
  double lo = std::max(0.0, k0 - spec.window_sigmas / d);
  double hi = k0 + spec.window_sigmas / d;
  if (packet.truncated) hi = std::min(hi, 1.0);
  if (lo > hi) lo = hi;
  return {lo, hi};
}

double integrate_radial(const Integrand& f, const GaussianPacket& packet, const QuadratureSpec& spec) {
  if (!packet.is_isotropic() || !packet.k0_along_z())
    throw DomainError("radial reduction needs an isotropic packet with k0 along z");
  auto [lo, hi] = radial_window(packet, spec);
  return integrate(f, lo, hi, spec).value;
}

double integrate_1d_gaussian(const Integrand& f, const GaussianPacket& packet, const QuadratureSpec& spec) {
  const double d = packet.widths[2];
  const double k0 = packet.k0[2];
  const double norm = d / std::sqrt(kPi);
  auto g = [&](double k) {
    const double dk = k - k0;
    return f(k) * norm * std::exp(-d * d * dk * dk);
  };
  return integrate(g, k0 - spec.window_sigmas / d, k0 + spec.window_sigmas / d, spec).value;
}

double angular_norm_density(double q, double q0, double d) {
  const double d2 = d * d;
  const double a = 2.0 * d2 * q * q0;
  if (std::abs(a) < 0.1) {
    const double a2 = a * a;
    const double s = 2.0 + a2 / 3.0 + a2 * a2 / 60.0 + a2 * a2 * a2 / 2520.0 + a2 * a2 * a2 * a2 / 181440.0;
    return 2.0 * kPi * std::exp(-d2 * (q * q + q0 * q0)) * s;
  }
  return 2.0 * kPi * (std::exp(-d2 * (q - q0) * (q - q0)) - std::exp(-d2 * (q + q0) * (q + q0))) / a;
}

double angular_cos_density(double q, double q0, double d) {
  const double d2 = d * d;
  const double a = 2.0 * d2 * q * q0;
  if (std::abs(a) < 0.1) {
    // 2 sum_{n>=1} 2n a^{2n-1}/(2n+1)!
    double term = a;
    double fact = 6.0;
    double s = 0.0;
    for (int n = 1; n <= 6; ++n) {
      s += 2.0 * (2.0 * n) * term / fact;
      term *= a * a;
      fact *= (2.0 * n + 2.0) * (2.0 * n + 3.0);
    }
    return 2.0 * kPi * std::exp(-d2 * (q * q + q0 * q0)) * s;
  }
  return 2.0 * kPi *
         ((a - 1.0) * std::exp(-d2 * (q - q0) * (q - q0)) + (a + 1.0) * std::exp(-d2 * (q + q0) * (q + q0))) /
         (a * a);
}

}  // namespace zb
