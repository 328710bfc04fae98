#include "zb/magnetic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "zb/quadrature.hpp"

namespace zb {

namespace {

constexpr double kFloor = 1e-14;

double lgf(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

struct Geometry {
  double dx, dy, L, k0x, S, eps, r, D, Q, W, Y;
};

Geometry geometry(const GaussianPacket& p, const LandauContext& ctx) {
  Geometry g{};
  g.dx = p.widths[0];
  g.dy = p.widths[1];
  g.L = ctx.magnetic_length;
  g.k0x = p.k0[0];
  g.S = g.L * g.L + g.dy * g.dy;
  g.eps = g.L * g.L - g.dy * g.dy;
  g.r = g.eps / g.S;
  g.D = g.L * g.L / std::sqrt(g.S);
  g.Q = 1.0 / std::sqrt(g.dx * g.dx + g.D * g.D);
  g.W = g.dx * g.D * g.Q * g.k0x;
  g.Y = g.dx * g.dx * g.k0x * g.Q;
  return g;
}

/// Plain complex product (no inf/nan recovery).
inline cplx cmul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void apply_floor(UCoeffTable& t) {
  for (double& v : t.data)
    if (std::abs(v) < kFloor) v = 0.0;
}

/// Regrouped real form; returns false if the estimated rounding error exceeds 1e-12.
bool table_d4(const Geometry& g, UCoeffTable& t) {
  const int N = t.n_max;
  const double L3 = g.L * g.L * g.L;
  const double z = (g.eps * g.S - L3 * L3 * g.Q * g.Q) / (g.S * g.S);
  const double u = -g.Q * g.Y * L3 / g.S;
  std::vector<double> h(static_cast<std::size_t>(2 * N + 2), 0.0);
  h[0] = 1.0;
  if (2 * N + 1 >= 1) h[1] = std::sqrt(2.0) * u;
  for (int j = 1; j < 2 * N + 1; ++j)
    h[j + 1] = u * std::sqrt(2.0 / (j + 1)) * h[j] - z * std::sqrt(static_cast<double>(j) / (j + 1)) * h[j - 1];
  const double pref = (2.0 * kPi * g.dy * g.dy / g.S) * g.L * g.Q * g.dx * std::exp(-g.W * g.W) / (kPi * g.dy);
  double worst = 0.0;
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= m; ++n) {
      double s = 0.0, sabs = 0.0;
      for (int l = 0; l <= n; ++l) {
        const int j = m + n - 2 * l;
        const double lc = 0.5 * (lgf(m) + lgf(n) + lgf(j)) - lgf(l) - lgf(m - l) - lgf(n - l);
        const double term = std::exp(lc) * std::pow(g.r, l) * h[static_cast<std::size_t>(j)];
        s += term;
        sabs += std::abs(term);
      }
      const double v = pref * s;
      if (!std::isfinite(v)) return false;
      worst = std::max(worst, pref * sabs * 1e-16 * (m + n + 10));
      if (worst > 1e-12) return false;
      t.at(m, n) = v;
      t.at(n, m) = v;
    }
  return worst <= 1e-12;
}

void table_d6(const Geometry& g, UCoeffTable& t) {
  const int N = t.n_max;
  const double P = std::sqrt(g.dx * g.dx + 0.5 * g.L * g.L);
  const double s = g.L / (2.0 * P);
  const double y = g.dx * g.dx * g.k0x / P;
  // q_j = (-i)^j H_j(-i y) s^j / sqrt(2^j j!)
  std::vector<double> q(static_cast<std::size_t>(2 * N + 2), 0.0);
  q[0] = 1.0;
  q[1] = -std::sqrt(2.0) * y * s;
  for (int j = 1; j < 2 * N + 1; ++j)
    q[j + 1] = -y * s * std::sqrt(2.0 / (j + 1)) * q[j] + s * s * std::sqrt(static_cast<double>(j) / (j + 1)) * q[j - 1];
  const double pref = 2.0 * g.dx / g.L * s * std::exp(-g.dx * g.dx * g.k0x * g.k0x * g.L * g.L / (2.0 * P * P));
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= m; ++n) {
      const double binom = std::exp(0.5 * (lgf(m + n) - lgf(m) - lgf(n)));
      const double v = pref * binom * q[static_cast<std::size_t>(m + n)];
      t.at(m, n) = v;
      t.at(n, m) = v;
    }
}

/// F_n(k) on a uniform grid; returns matrix (N+1) x nk scaled by sqrt(dk).
Eigen::MatrixXd f_samples(const Geometry& g, int N, double R, int nk) {
  const double a = g.dx * g.dx + g.D * g.D;
  const double kc = g.k0x * g.dx * g.dx / a;
  const double dk = 2.0 * R / (nk - 1);
  const double L3 = g.L * g.L * g.L;
  const double c0 = std::sqrt(2.0) * std::sqrt(2.0 * kPi) * g.dy / std::sqrt(g.S) * std::sqrt(g.L * g.dx) /
                    std::sqrt(2.0 * kPi * g.dy) / std::pow(kPi, 0.25);
  Eigen::MatrixXd F(N + 1, nk);
  for (int i = 0; i < nk; ++i) {
    const double k = kc - R + dk * i;
    const double up = -k * L3 / g.S;
    const double pre = c0 * std::exp(-0.5 * g.dx * g.dx * (k - g.k0x) * (k - g.k0x) - 0.5 * k * k * g.D * g.D);
    F(0, i) = pre;
    if (N >= 1) F(1, i) = std::sqrt(2.0) * up * pre;
    for (int n = 1; n < N; ++n)
      F(n + 1, i) = up * std::sqrt(2.0 / (n + 1)) * F(n, i) - g.r * std::sqrt(static_cast<double>(n) / (n + 1)) * F(n - 1, i);
  }
  return F * std::sqrt(dk);
}

/// Diagonal U_nn, n = 0..N, streamed over the k grid without storing F.
std::vector<double> diagonal_quadrature(const Geometry& g, int N) {
  const double a = g.dx * g.dx + g.D * g.D;
  const double R = 14.0 / std::sqrt(a);
  const int nk = 2 * (200 + 2 * N) + 1;
  const double kc = g.k0x * g.dx * g.dx / a;
  const double dk = 2.0 * R / (nk - 1);
  const double L3 = g.L * g.L * g.L;
  const double c0 = std::sqrt(2.0) * std::sqrt(2.0 * kPi) * g.dy / std::sqrt(g.S) * std::sqrt(g.L * g.dx) /
                    std::sqrt(2.0 * kPi * g.dy) / std::pow(kPi, 0.25);
  std::vector<double> diag(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = 0; i < nk; ++i) {
    const double k = kc - R + dk * i;
    const double up = -k * L3 / g.S;
    double fm1 = 0.0;
    double f = c0 * std::exp(-0.5 * g.dx * g.dx * (k - g.k0x) * (k - g.k0x) - 0.5 * k * k * g.D * g.D);
    diag[0] += f * f * dk;
    for (int n = 0; n < N; ++n) {
      const double fn = n == 0 ? std::sqrt(2.0) * up * f
                               : up * std::sqrt(2.0 / (n + 1)) * f - g.r * std::sqrt(static_cast<double>(n) / (n + 1)) * fm1;
      fm1 = f;
      f = fn;
      diag[static_cast<std::size_t>(n) + 1] += f * f * dk;
    }
  }
  return diag;
}

void table_quadrature(const Geometry& g, UCoeffTable& t) {
  const int N = t.n_max;
  const double a = g.dx * g.dx + g.D * g.D;
  double R = 14.0 / std::sqrt(a);
  int nk = 2 * (200 + 2 * N) + 1;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::MatrixXd F = f_samples(g, N, R, nk);
    const double peak = F.cwiseAbs().maxCoeff();
    const double edge = std::max(F.col(0).cwiseAbs().maxCoeff(), F.col(nk - 1).cwiseAbs().maxCoeff());
    if (!(edge <= 1e-18 * peak)) {
      R *= 1.5;
      nk = 2 * nk - 1;
      continue;
    }
    // Halved-resolution comparison on the diagonal detects under-sampling.
    Eigen::VectorXd full = F.rowwise().squaredNorm();
    Eigen::VectorXd half = Eigen::VectorXd::Zero(N + 1);
    for (int i = 0; i < nk; i += 2) half += F.col(i).cwiseAbs2();
    half *= 2.0;
    if ((full - half).cwiseAbs().maxCoeff() > 1e-13) {
      nk = 2 * nk - 1;
      continue;
    }
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(N + 1, N + 1);
    U.selfadjointView<Eigen::Lower>().rankUpdate(F);
    for (int m = 0; m <= N; ++m)
      for (int n = 0; n <= m; ++n) t.at(m, n) = t.at(n, m) = U(m, n);
    return;
  }
  throw TruncationError(N, -1.0);
}

}  // namespace

LandauContext make_landau_context(double b_ratio, int charge_sign) {
  if (!(b_ratio > 0.0) || !std::isfinite(b_ratio)) throw DomainError("B/B_s must be positive");
  if (charge_sign != 1 && charge_sign != -1) throw DomainError("charge sign must be +1 or -1");
  return {b_ratio, 1.0 / std::sqrt(b_ratio), charge_sign, b_ratio};
}

double landau_energy(int n, double kz, const LandauContext& ctx) {
  if (n < 0) throw DomainError("Landau index must be non-negative");
  return std::sqrt(1.0 + 2.0 * ctx.b_ratio * (n + 0.5) + kz * kz);
}

double landau_nu(int n, double kz, const LandauContext& ctx) { return 1.0 / std::sqrt(landau_energy(n, kz, ctx)); }

std::vector<double> hermite_functions(int n_max, double xi) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  // Mantissa recurrence with a running log scale keeps large |xi| and n finite.
  double log_scale = -0.5 * xi * xi;
  double hm1 = 0.0;
  double h = std::pow(kPi, -0.25);
  out[0] = h * std::exp(log_scale);
  for (int n = 0; n < n_max; ++n) {
    const double hn = std::sqrt(2.0 / (n + 1)) * xi * h - std::sqrt(static_cast<double>(n) / (n + 1)) * hm1;
    hm1 = h;
    h = hn;
    if (std::abs(h) > 1e100) {
      h *= 1e-100;
      hm1 *= 1e-100;
      log_scale += 100.0 * std::log(10.0);
    }
    out[static_cast<std::size_t>(n) + 1] = h * std::exp(log_scale);
  }
  return out;
}

double hermite_function(int n, double xi, double L) {
  if (n < 0) throw DomainError("oscillator index must be non-negative");
  return hermite_functions(n, xi)[static_cast<std::size_t>(n)] / std::sqrt(L);
}

GaussRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("Gauss-Hermite order must be positive");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(0.5 * i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    r.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    r.weights[static_cast<std::size_t>(i)] = std::sqrt(kPi) * v * v;
  }
  return r;
}

std::string to_string(UMethod m) {
  switch (m) {
    case UMethod::Auto: return "auto";
    case UMethod::D4: return "d4";
    case UMethod::D4Complex: return "d4-complex";
    case UMethod::D6: return "d6";
    case UMethod::Quadrature: return "quadrature";
  }
  return "unknown";
}

double UCoeffTable::trace() const {
  double s = 0.0;
  for (int n = 0; n <= n_max; ++n) s += (*this)(n, n);
  return s;
}

TruncationError::TruncationError(int n, double tr)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "overlap series truncated: n_max = " << n << ", sum U_nn = " << tr;
        return os.str();
      }()),
      n_max(n),
      trace(tr) {}

UAux u_aux(const GaussianPacket& packet, const LandauContext& ctx) {
  const Geometry g = geometry(packet, ctx);
  UAux a;
  a.D = g.D;
  a.c = g.L * g.L * g.L / std::sqrt(cplx(std::pow(g.L, 4) - std::pow(g.dy, 4), 0.0));
  a.P = std::sqrt(g.dx * g.dx + 0.5 * g.L * g.L);
  a.Q = g.Q;
  a.W = g.W;
  a.Y = g.Y;
  a.r = g.r;
  return a;
}

double u_entry_d4_complex(const GaussianPacket& packet, const LandauContext& ctx, int m, int n) {
  const Geometry g = geometry(packet, ctx);
  const UAux aux = u_aux(packet, ctx);
  auto A = [&](int k) {
    return std::sqrt(2.0 * kPi) * g.dy / std::sqrt(g.S) * std::pow(std::sqrt(cplx(g.r, 0.0)), k);
  };
  auto C = [&](int k) { return std::exp(0.5 * (k * std::log(2.0) + lgf(k) + 0.5 * std::log(kPi))); };
  const cplx cq = aux.c * g.Q;
  const cplx root = std::sqrt(1.0 - cq * cq);
  const cplx x = -cq * g.Y / root;
  const int jmax = m + n;
  std::vector<cplx> H(static_cast<std::size_t>(jmax) + 2);
  H[0] = 1.0;
  H[1] = 2.0 * x;
  for (int j = 1; j < jmax; ++j) H[j + 1] = 2.0 * x * H[j] - 2.0 * static_cast<double>(j) * H[j - 1];
  cplx s = 0.0;
  for (int l = 0; l <= std::min(m, n); ++l) {
    const int j = m + n - 2 * l;
    const double w = std::exp(l * std::log(2.0) + lgf(l) + (lgf(m) - lgf(l) - lgf(m - l)) + (lgf(n) - lgf(l) - lgf(n - l)));
    s += w * std::pow(root, j) * H[static_cast<std::size_t>(j)];
  }
  const cplx v = A(m) * A(n) * g.L * g.Q * g.dx * std::sqrt(kPi) * std::exp(-g.W * g.W) / (kPi * C(m) * C(n) * g.dy) * s;
  if (std::abs(v.imag()) > 1e-10) throw DomainError("overlap coefficient has a non-negligible imaginary part");
  return v.real();
}

UCoeffTable compute_u_table(const GaussianPacket& packet, const LandauContext& ctx, int n_max, UMethod method) {
  packet.validate();
  if (packet.k0[1] != 0.0) throw DomainError("overlap formulas assume k0y = 0");
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  const Geometry g = geometry(packet, ctx);
  UCoeffTable t;
  t.n_max = n_max;
  t.aux = u_aux(packet, ctx);
  t.data.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1), 0.0);
  const bool dy_is_L = std::abs(g.dy - g.L) <= 1e-14 * g.L;
  switch (method) {
    case UMethod::D6:
      if (!dy_is_L) throw DomainError("special-case formula requires d_y = L");
      table_d6(g, t);
      break;
    case UMethod::D4:
      table_d4(g, t);
      break;
    case UMethod::D4Complex:
      for (int m = 0; m <= n_max; ++m)
        for (int n = 0; n <= m; ++n) t.at(m, n) = t.at(n, m) = u_entry_d4_complex(packet, ctx, m, n);
      break;
    case UMethod::Quadrature:
      table_quadrature(g, t);
      break;
    case UMethod::Auto:
      if (dy_is_L) {
        table_d6(g, t);
        method = UMethod::D6;
      } else if (table_d4(g, t)) {
        method = UMethod::D4;
      } else {
        table_quadrature(g, t);
        method = UMethod::Quadrature;
      }
      break;
  }
  t.method = method;
  apply_floor(t);
  return t;
}

UCoeffTable compute_u_table_converged(const GaussianPacket& packet, const LandauContext& ctx, int n_start,
                                      double tol, int n_limit) {
  auto converged = [tol](const UCoeffTable& t) {
    // Tail weight in the last tenth of the table must also be negligible.
    double tail = 0.0;
    for (int k = t.n_max - t.n_max / 10; k <= t.n_max; ++k) tail += std::abs(t(k, k));
    return std::abs(t.trace() - 1.0) < tol && tail < tol;
  };
  int n = std::max(8, n_start);
  UCoeffTable t = compute_u_table(packet, ctx, n);
  if (converged(t)) return t;
  // Locate the cutoff from the cheap diagonal, then build the full table once.
  const std::vector<double> diag = diagonal_quadrature(geometry(packet, ctx), n_limit);
  double tail = 0.0;
  int cut = n_limit;
  for (int k = n_limit; k > 0; --k) {
    tail += diag[static_cast<std::size_t>(k)];
    if (tail > 0.01 * tol) break;
    cut = k;
  }
  n = std::max(n, cut + cut / 8);
  for (;;) {
    if (n > n_limit) throw TruncationError(n_limit, t.trace());
    t = compute_u_table(packet, ctx, n);
    if (converged(t)) return t;
    if (n == n_limit) throw TruncationError(n, t.trace());
    n = std::min(n_limit, n + n / 2);
  }
}

SumRules sum_rules(const UCoeffTable& t) {
  SumRules s{0.0, 0.0};
  for (int n = 0; n <= t.n_max; ++n) {
    s.s2 += t(n, n);
    if (n < t.n_max) s.s1 += std::sqrt(n + 1.0) * t(n + 1, n);
  }
  return s;
}

cplx velocity_matrix_element(const LandauState& bra, const LandauState& ket, Axis axis, const LandauContext& ctx) {
  if (bra.kx != ket.kx || bra.kz != ket.kz) return 0.0;
  const int n = bra.n, m = ket.n;
  const double nn = landau_nu(n, bra.kz, ctx) * landau_nu(m, ket.kz, ctx);
  const double L = ctx.magnetic_length;
  const double up = (m == n + 1) ? std::sqrt(n + 1.0) : 0.0;
  const double down = (m == n - 1) ? std::sqrt(static_cast<double>(n)) : 0.0;
  switch (axis) {
    case Axis::X: return nn / (std::sqrt(2.0) * L) * (up + down);
    case Axis::Y: return static_cast<double>(ctx.charge_sign) * nn / (cplx(0.0, 1.0) * std::sqrt(2.0) * L) * (up - down);
    case Axis::Z: return m == n ? cplx(bra.kz * nn) : cplx(0.0);
  }
  return 0.0;
}

MagneticModel::MagneticModel(GaussianPacket packet, LandauContext ctx, UCoeffTable table, double t_max)
    : packet_(packet), ctx_(ctx), table_(std::move(table)) {
  const int N = table_.n_max;
  n_used_ = 0;
  for (int n = 0; n <= N; ++n) {
    const bool diag = table_(n, n) != 0.0;
    const bool off = n < N && (table_(n + 1, n) != 0.0 || table_(n, n + 1) != 0.0);
    if (diag || off) n_used_ = n + 1;
  }
  n_used_ = std::min(n_used_, N);
  offdiag_.assign(static_cast<std::size_t>(n_used_) + 1, 0.0);
  for (int n = 0; n < n_used_ && n < N; ++n) offdiag_[n] = std::sqrt(n + 1.0) * (table_(n + 1, n) + table_(n, n + 1));

  // Refine the k_z rule until the components at t_max settle.
  int nodes = 25;
  build_rule(nodes);
  double prev[6];
  components(t_max, prev);
  for (;;) {
    nodes = 2 * nodes - 1;
    build_rule(nodes);
    double cur[6];
    components(t_max, cur);
    double diff = 0.0;
    for (int i = 0; i < 6; ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]));
    if (diff < 1e-12 || nodes >= 6145) break;
    std::copy(cur, cur + 6, prev);
  }
}

void MagneticModel::build_rule(int n) {
  // Trapezoid on x = d_z (k_z - k0z) in [-W, W]; e^{-W^2} is below double resolution.
  const double W = 6.5;
  const double h = 2.0 * W / (n - 1);
  const double dz = packet_.widths[2];
  kz_.clear();
  for (int i = 0; i < n; ++i) {
    const double x = -W + h * i;
    kz_.push_back({packet_.k0[2] + x / dz, h * std::exp(-x * x) / std::sqrt(kPi)});
  }
  energy_.assign(static_cast<std::size_t>(n_used_ + 1) * kz_.size(), 0.0);
  for (int m = 0; m <= n_used_; ++m)
    for (std::size_t i = 0; i < kz_.size(); ++i) energy_[m * kz_.size() + i] = landau_energy(m, kz_[i].kz, ctx_);

  const std::size_t K = kz_.size();
  for (auto* v : {&fd_, &fs_, &wa_, &wb_, &wc_, &wd_, &fz_, &wz_}) v->clear();
  for (int m = 0; m < n_used_; ++m) {
    const double A = offdiag_[static_cast<std::size_t>(m)];
    if (A == 0.0) continue;
    for (std::size_t i = 0; i < K; ++i) {
      const double e0 = energy_[m * K + i], e1 = energy_[(m + 1) * K + i];
      const double n0 = 1.0 / e0, n1 = 1.0 / e1;
      const double w = A * kz_[i].w;
      fd_.push_back(e1 - e0);
      fs_.push_back(e1 + e0);
      wa_.push_back(w * (1.0 + n1 * n0));
      wb_.push_back(w * (1.0 - n1 * n0));
      wc_.push_back(w * (n1 + n0));
      wd_.push_back(w * (n1 - n0));
    }
  }
  z_const_ = 0.0;
  if (packet_.k0[2] != 0.0) {
    for (int m = 0; m <= n_used_; ++m) {
      const double U = table_(m, m);
      if (U == 0.0) continue;
      for (std::size_t i = 0; i < K; ++i) {
        const double e = energy_[m * K + i];
        const double nu4 = 1.0 / (e * e);
        const double w = 0.5 * U * kz_[i].w * kz_[i].kz;
        z_const_ += w * (1.0 + nu4);
        fz_.push_back(2.0 * e);
        wz_.push_back(w * (1.0 - nu4));
      }
    }
  }
}

void MagneticModel::components(double t, double* out) const {
  double ax_intra = 0, ax_inter = 0, ay_intra = 0, ay_inter = 0, z_osc = 0;
  for (std::size_t j = 0; j < fd_.size(); ++j) {
    const double cd = std::cos(fd_[j] * t), sd = std::sin(fd_[j] * t);
    const double cs = std::cos(fs_[j] * t), ss = std::sin(fs_[j] * t);
    ax_intra += wa_[j] * cd;
    ax_inter += wb_[j] * cs;
    ay_intra += wc_[j] * sd;
    ay_inter += wd_[j] * ss;
  }
  for (std::size_t j = 0; j < fz_.size(); ++j) z_osc += wz_[j] * std::cos(fz_[j] * t);
  const double pref = -1.0 / (2.0 * std::sqrt(2.0) * ctx_.magnetic_length);
  out[0] = pref * (ax_intra + ax_inter);
  out[1] = pref * (ay_intra + ay_inter);
  out[2] = z_const_ + z_osc;
  out[3] = pref * ax_inter;
  out[4] = pref * ay_inter;
  out[5] = z_osc;
}

double MagneticModel::velocity_x(double t) const {
  double c[6];
  components(t, c);
  return c[0];
}

double MagneticModel::velocity_y(double t) const {
  double c[6];
  components(t, c);
  return c[1];
}

double MagneticModel::velocity_z(double t) const {
  double c[6];
  components(t, c);
  return c[2];
}

MagneticTrace MagneticModel::trace(const std::vector<double>& times) const {
  MagneticTrace tr;
  tr.times = times;
  const std::size_t T = times.size();
  for (auto* v : {&tr.vx, &tr.vy, &tr.vz, &tr.vx_interband, &tr.vy_interband, &tr.vz_interband}) v->resize(T);
  auto store = [&](std::size_t k, const double* c) {
    tr.vx[k] = c[0];
    tr.vy[k] = c[1];
    tr.vz[k] = c[2];
    tr.vx_interband[k] = c[3];
    tr.vy_interband[k] = c[4];
    tr.vz_interband[k] = c[5];
  };
  bool uniform = T > 2;
  const double step = uniform ? (times.back() - times.front()) / static_cast<double>(T - 1) : 0.0;
  for (std::size_t k = 0; uniform && k < T; ++k)
    uniform = std::abs(times[k] - (times.front() + step * static_cast<double>(k))) <= 1e-12 * (1.0 + std::abs(times.back()));
  if (!uniform) {
    for (std::size_t k = 0; k < T; ++k) {
      double c[6];
      components(times[k], c);
      store(k, c);
    }
    return tr;
  }
  // Uniform grid: advance phasors by a fixed rotation, resynchronizing exactly every 64 steps.
  const std::size_t J = fd_.size(), Z = fz_.size();
  std::vector<cplx> pd(J), ps(J), rd(J), rs(J), pz(Z), rz(Z);
  for (std::size_t j = 0; j < J; ++j) {
    rd[j] = std::polar(1.0, fd_[j] * step);
    rs[j] = std::polar(1.0, fs_[j] * step);
  }
  for (std::size_t j = 0; j < Z; ++j) rz[j] = std::polar(1.0, fz_[j] * step);
  const double pref = -1.0 / (2.0 * std::sqrt(2.0) * ctx_.magnetic_length);
  for (std::size_t k = 0; k < T; ++k) {
    if (k % 64 == 0) {
      const double t = times[k];
      for (std::size_t j = 0; j < J; ++j) {
        pd[j] = std::polar(1.0, fd_[j] * t);
        ps[j] = std::polar(1.0, fs_[j] * t);
      }
      for (std::size_t j = 0; j < Z; ++j) pz[j] = std::polar(1.0, fz_[j] * t);
    }
    double ax_intra = 0, ax_inter = 0, ay_intra = 0, ay_inter = 0, z_osc = 0;
    for (std::size_t j = 0; j < J; ++j) {
      ax_intra += wa_[j] * pd[j].real();
      ax_inter += wb_[j] * ps[j].real();
      ay_intra += wc_[j] * pd[j].imag();
      ay_inter += wd_[j] * ps[j].imag();
      pd[j] = cmul(pd[j], rd[j]);
      ps[j] = cmul(ps[j], rs[j]);
    }
    for (std::size_t j = 0; j < Z; ++j) {
      z_osc += wz_[j] * pz[j].real();
      pz[j] = cmul(pz[j], rz[j]);
    }
    const double c[6] = {pref * (ax_intra + ax_inter), pref * (ay_intra + ay_inter), z_const_ + z_osc,
                         pref * ax_inter, pref * ay_inter, z_osc};
    store(k, c);
  }
  return tr;
}

double MagneticModel::velocity_raw(Axis axis, double t, int n_cut) const {
  n_cut = std::min(n_cut, table_.n_max);
  double total = 0.0;
  for (const auto& node : kz_) {
    cplx acc = 0.0;
    for (int n = 0; n <= n_cut; ++n)
      for (int m = 0; m <= n_cut; ++m) {
        const double U = ((n + m) % 2 == 0 ? 1.0 : -1.0) * table_(n, m);
        if (U == 0.0) continue;
        const LandauState bra{n, 0.0, node.kz, 1}, ket{m, 0.0, node.kz, 1};
        const cplx v = velocity_matrix_element(bra, ket, axis, ctx_);
        if (v == 0.0) continue;
        const double nun = landau_nu(n, node.kz, ctx_), num = landau_nu(m, node.kz, ctx_);
        const double en = landau_energy(n, node.kz, ctx_), em = landau_energy(m, node.kz, ctx_);
        for (int s : {1, -1})
          for (int sp : {1, -1}) {
            const double mun = nun + s / nun, mum = num + sp / num;
            const double w = s * sp * 0.25 * mun * mum * U;
            acc += w * std::exp(cplx(0.0, (s * en - sp * em) * t)) * v;
          }
      }
    total += node.w * acc.real();
  }
  return total;
}

double MagneticModel::velocity_x_adaptive(double t) const {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-15;
  spec = spec.for_time(t);
  double acc = 0.0;
  for (int n = 0; n < n_used_; ++n) {
    const double A = offdiag_[static_cast<std::size_t>(n)];
    if (A == 0.0) continue;
    auto f = [&](double kz) {
      const double e0 = landau_energy(n, kz, ctx_), e1 = landau_energy(n + 1, kz, ctx_);
      const double p = 1.0 / (e0 * e1);
      return (1.0 + p) * std::cos((e1 - e0) * t) + (1.0 - p) * std::cos((e1 + e0) * t);
    };
    acc += A * integrate_1d_gaussian(f, packet_, spec);
  }
  return -acc / (2.0 * std::sqrt(2.0) * ctx_.magnetic_length);
}

double MagneticModel::interband_intraband_ratio() const {
  const std::size_t K = kz_.size();
  double inter = 0.0, intra = 0.0;
  for (int n = 0; n < n_used_; ++n) {
    const double A = std::abs(offdiag_[static_cast<std::size_t>(n)]);
    for (std::size_t i = 0; i < K; ++i) {
      const double p = 1.0 / (energy_[n * K + i] * energy_[(n + 1) * K + i]);
      inter += A * kz_[i].w * (1.0 - p);
      intra += A * kz_[i].w * (1.0 + p);
    }
  }
  return intra == 0.0 ? 0.0 : inter / intra;
}

Vec3 nonrel_limit_velocity(const GaussianPacket& packet, const LandauContext& ctx, double t) {
  const double w = ctx.cyclotron_freq * t;
  return {packet.k0[0] * std::cos(w), packet.k0[0] * std::sin(w), packet.k0[2]};
}

GaussianPacket ellipsoidal_figure_packet(double b) {
  GaussianPacket p;
  p.widths = {0.91 / b, 0.82 / b, 0.68 / b};
  p.k0 = {std::abs(b - 4.5) < 1e-12 ? 1.0 : 0.7 * b, 0.0, 0.0};
  return p;
}

GaussianPacket spherical_figure_packet(double b, double width_in_L) {
  const double d = width_in_L / std::sqrt(b);
  GaussianPacket p;
  p.widths = {d, d, d};
  p.k0 = {0.7 * b, 0.0, 0.0};
  return p;
}

}  // namespace zb
