#include "zb/operator_exact.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <random>

namespace zb {

namespace {

const cplx I(0.0, 1.0);

double sector_h(int n, double kz, const LandauContext& ctx) { return ctx.b_ratio * (n + 0.5) + 0.5 * kz * kz; }

Mat2 block_from_h(double h) {
  const TauAlgebra tau = TauAlgebra::make();
  return h * tau.T + tau.tau3;
}

}  // namespace

TauAlgebra TauAlgebra::make() {
  TauAlgebra t;
  t.tau1 << 0, 1, 1, 0;
  t.tau2 << 0, -I, I, 0;
  t.tau3 << 1, 0, 0, -1;
  t.T = t.tau3 + I * t.tau2;
  return t;
}

MatX expm(const MatX& a) { return a.exp(); }

Mat2 expm_2x2_closed(const Mat2& a) {
  const cplx half_tr = 0.5 * a.trace();
  const Mat2 b = a - half_tr * Mat2::Identity();
  const cplx s = std::sqrt(-b.determinant());  // b^2 = s^2 I
  const cplx sinc = std::abs(s) < 1e-8 ? cplx(1.0) + s * s / 6.0 : std::sinh(s) / s;
  return std::exp(half_tr) * (std::cosh(s) * Mat2::Identity() + sinc * b);
}

Mat2 landau_sector_hamiltonian(int n, double kz, const LandauContext& ctx) {
  return block_from_h(sector_h(n, kz, ctx));
}

Mat2 free_hamiltonian(double q) { return block_from_h(0.5 * q * q); }

Eigen::Vector2cd landau_spinor(int n, double kz, int s, const LandauContext& ctx) {
  const double nu = landau_nu(n, kz, ctx);
  return Eigen::Vector2cd(0.5 * (nu + s / nu), 0.5 * (nu - s / nu));
}

LandauOperatorBasis::LandauOperatorBasis(const LandauContext& ctx, double kz, int n_max)
    : ctx_(ctx), kz_(kz), n_max_(n_max) {
  if (n_max < 1) throw DomainError("operator basis needs n_max >= 1");
  H_ = MatX::Zero(dim(), dim());
  tau3_ = MatX::Zero(dim(), dim());
  const TauAlgebra tau = TauAlgebra::make();
  for (int n = 0; n <= n_max_; ++n) {
    H_.block(2 * n, 2 * n, 2, 2) = landau_sector_hamiltonian(n, kz_, ctx_);
    tau3_.block(2 * n, 2 * n, 2, 2) = tau.tau3;
  }
}

MatX LandauOperatorBasis::annihilation() const {
  MatX a = MatX::Zero(dim(), dim());
  for (int n = 0; n < n_max_; ++n)
    for (int c = 0; c < 2; ++c) a(2 * n + c, 2 * (n + 1) + c) = std::sqrt(n + 1.0);
  return a;
}

MatX LandauOperatorBasis::creation() const { return annihilation().adjoint(); }

MatX LandauOperatorBasis::T() const {
  MatX t = MatX::Zero(dim(), dim());
  const TauAlgebra tau = TauAlgebra::make();
  for (int n = 0; n <= n_max_; ++n) t.block(2 * n, 2 * n, 2, 2) = tau.T;
  return t;
}

Eigen::VectorXcd LandauOperatorBasis::state(int n, int s) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
  v.segment(2 * n, 2) = landau_spinor(n, kz_, s, ctx_);
  return v;
}

MatX LandauOperatorBasis::spectral_m(int power, int eta) const {
  Eigen::ComplexEigenSolver<MatX> es(H_);
  MatX out = MatX::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k) {
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    const double p = (v.adjoint() * tau3_ * v)(0, 0).real();
    const double s = p > 0 ? 1.0 : -1.0;
    v /= std::sqrt(std::abs(p));
    const cplx lam = es.eigenvalues()(k);
    const cplx m = static_cast<double>(eta) * std::sqrt(lam * lam + 2.0 * ctx_.b_ratio);
    out += s * std::pow(m, power) * v * (v.adjoint() * tau3_);
  }
  return out;
}

MatX LandauOperatorBasis::spectral_exp_m(double t, int sign, int eta) const {
  Eigen::ComplexEigenSolver<MatX> es(H_);
  MatX out = MatX::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k) {
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    const double p = (v.adjoint() * tau3_ * v)(0, 0).real();
    const double s = p > 0 ? 1.0 : -1.0;
    v /= std::sqrt(std::abs(p));
    const cplx lam = es.eigenvalues()(k);
    const cplx m = static_cast<double>(eta) * std::sqrt(lam * lam + 2.0 * ctx_.b_ratio);
    out += s * std::exp(static_cast<double>(sign) * I * m * t) * v * (v.adjoint() * tau3_);
  }
  return out;
}

cplx LandauOperatorBasis::element(const MatX& X, int n, int s, int m, int z) const {
  return (state(n, s).adjoint() * tau3_ * X * state(m, z))(0, 0);
}

cplx heisenberg_current_element(int n, int s, int z, double t, const LandauContext& ctx, double kz) {
  const double j0 = std::sqrt(n + 1.0) * landau_nu(n, kz, ctx) * landau_nu(n + 1, kz, ctx);
  const double wn = landau_energy(n, kz, ctx), wn1 = landau_energy(n + 1, kz, ctx);
  return j0 * std::exp(I * (s * wn * t)) * std::exp(-I * (z * wn1 * t));
}

cplx exact_current_element(int n, int s, int z, double t, const LandauContext& ctx, double kz, int eta) {
  const double j0 = std::sqrt(n + 1.0) * landau_nu(n, kz, ctx) * landau_nu(n + 1, kz, ctx);
  const double wn = landau_energy(n, kz, ctx), wn1 = landau_energy(n + 1, kz, ctx);
  const cplx left = std::exp(I * (s * wn * t));
  const cplx j1 = 0.5 * (1.0 + eta * z) * j0 * left * std::exp(-I * (eta * wn1 * t));
  const cplx j2 = 0.5 * (1.0 - eta * z) * j0 * left * std::exp(I * (eta * wn1 * t));
  return j1 + j2;
}

cplx heisenberg_current_element_matrix(int n, int s, int z, double t, const LandauContext& ctx, double kz) {
  const LandauOperatorBasis B(ctx, kz, n + 2);
  const MatX J0 = B.T() * B.annihilation();
  const MatX U = expm(I * t * B.hamiltonian());
  const MatX Ui = expm(-I * t * B.hamiltonian());
  return B.element(U * J0 * Ui, n, s, n + 1, z);
}

cplx exact_current_element_matrix(int n, int s, int z, double t, const LandauContext& ctx, double kz, int eta) {
  const LandauOperatorBasis B(ctx, kz, n + 2);
  const MatX J0 = B.T() * B.annihilation();
  const MatX& O = B.hamiltonian();
  const MatX eO = expm(I * t * O);
  const MatX Minv = B.spectral_m(-1, eta);
  const MatX core = Minv * J0 * O;
  const MatX J1 = 0.5 * eO * B.spectral_exp_m(t, -1, eta) * (J0 + core);
  const MatX J2 = 0.5 * eO * B.spectral_exp_m(t, +1, eta) * (J0 - core);
  return B.element(J1 + J2, n, s, n + 1, z);
}

Mat2 p_operator(int n, double kx, double kz, double t, const LandauContext& ctx) {
  const TauAlgebra tau = TauAlgebra::make();
  const Mat2 H = landau_sector_hamiltonian(n, kz, ctx);
  const double E = landau_energy(n, kz, ctx);
  const Mat2 e2 = expm_2x2_closed(2.0 * I * t * H);
  return I * kx * (tau.T + H / (E * E) * (e2 - Mat2::Identity()) * tau.tau1);
}

Mat2 p_operator_heisenberg(int n, double kx, double kz, double t, const LandauContext& ctx) {
  const TauAlgebra tau = TauAlgebra::make();
  const Mat2 H = landau_sector_hamiltonian(n, kz, ctx);
  const MatX U = expm(MatX(I * t * H));
  const MatX Ui = expm(MatX(-I * t * H));
  return Mat2(U * MatX(I * kx * tau.T) * Ui);
}

cplx p_operator_element(int n, int s, int sp, double kx, double kz, double t, const LandauContext& ctx) {
  const TauAlgebra tau = TauAlgebra::make();
  return (landau_spinor(n, kz, s, ctx).adjoint() * tau.tau3 * p_operator(n, kx, kz, t, ctx) *
          landau_spinor(n, kz, sp, ctx))(0, 0);
}

Mat2 p_operator_derivative(int n, double kx, double kz, double t, const LandauContext& ctx) {
  const TauAlgebra tau = TauAlgebra::make();
  const Mat2 H = landau_sector_hamiltonian(n, kz, ctx);
  return 2.0 * I * expm_2x2_closed(2.0 * I * t * H) * tau.tau1 * (I * kx);
}

MatX current_operator(const LandauOperatorBasis& B, Axis axis, const LandauContext& ctx) {
  const double L = ctx.magnetic_length;
  const MatX J = B.T() * B.annihilation();
  const MatX Jd = B.T() * B.creation();
  switch (axis) {
    case Axis::X: return (J + Jd) / (std::sqrt(2.0) * L);
    case Axis::Y: return -I * static_cast<double>(ctx.charge_sign) * (J - Jd) / (std::sqrt(2.0) * L);
    case Axis::Z: break;
  }
  throw DomainError("current operator defined for x and y only");
}

UnityResult verify_unity_resolution(const LandauContext& ctx, int n_max, const std::vector<double>& grid,
                                    double width, double center, double kz) {
  if (grid.size() < 3) throw DomainError("grid too small");
  const TauAlgebra tau = TauAlgebra::make();
  const std::size_t G = grid.size();
  std::vector<std::vector<double>> h(G);
  for (std::size_t i = 0; i < G; ++i) h[i] = hermite_functions(n_max, grid[i]);
  std::vector<Eigen::Vector2cd> f(G);
  double fmax = 0.0;
  for (std::size_t i = 0; i < G; ++i) {
    const double x = grid[i] - center;
    const double g = std::exp(-x * x / (2.0 * width * width));
    f[i] = Eigen::Vector2cd(g, 0.3 * g);
    fmax = std::max(fmax, f[i].cwiseAbs().maxCoeff());
  }
  auto wgt = [&](std::size_t i) {
    if (i == 0) return 0.5 * (grid[1] - grid[0]);
    if (i + 1 == G) return 0.5 * (grid[i] - grid[i - 1]);
    return 0.5 * (grid[i + 1] - grid[i - 1]);
  };
  std::vector<Eigen::Vector2cd> rec(G, Eigen::Vector2cd::Zero());
  for (int n = 0; n <= n_max; ++n)
    for (int s : {1, -1}) {
      const Eigen::Vector2cd u = landau_spinor(n, kz, s, ctx);
      const Eigen::RowVector2cd proj = u.adjoint() * tau.tau3;
      cplx c = 0.0;
      for (std::size_t i = 0; i < G; ++i) c += h[i][static_cast<std::size_t>(n)] * (proj * f[i])(0, 0) * wgt(i);
      for (std::size_t i = 0; i < G; ++i) rec[i] += static_cast<double>(s) * u * h[i][static_cast<std::size_t>(n)] * c;
    }
  double dev = 0.0;
  for (std::size_t i = 0; i < G; ++i) dev = std::max(dev, (rec[i] - f[i]).cwiseAbs().maxCoeff());
  return {dev, fmax};
}

Mat2 unity_block(double nu) {
  const TauAlgebra tau = TauAlgebra::make();
  Mat2 acc = Mat2::Zero();
  for (int s : {1, -1}) {
    const Eigen::Vector2cd mu(nu + s / nu, nu - s / nu);
    acc += static_cast<double>(s) * mu * mu.transpose() * tau.tau3;
  }
  return acc;
}

Mat2 random_operator(std::uint64_t seed, double t, PseudoHermitianKind kind) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto disc = [&] {
    const double r = std::sqrt(u(rng));
    const double th = 2.0 * kPi * u(rng);
    return std::polar(r, th);
  };
  Mat2 A;
  A << disc(), disc(), disc(), disc();
  const TauAlgebra tau = TauAlgebra::make();
  switch (kind) {
    case PseudoHermitianKind::PseudoHermitian: return t * 0.5 * (A + tau.tau3 * A.adjoint() * tau.tau3);
    case PseudoHermitianKind::HermitianCommuting: {
      Mat2 D = Mat2::Zero();
      D(0, 0) = A(0, 0).real();
      D(1, 1) = A(1, 1).real();
      return t * D;
    }
    case PseudoHermitianKind::Generic: return t * A;
  }
  return A;
}

double verify_tau3_exponential(std::uint64_t seed, double t, PseudoHermitianKind kind) {
  const TauAlgebra tau = TauAlgebra::make();
  const Mat2 O = random_operator(seed, t, kind);
  const MatX lhs = MatX(tau.tau3) * expm(MatX(O));
  const MatX rhs = expm(MatX(O.adjoint())) * MatX(tau.tau3);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace zb
