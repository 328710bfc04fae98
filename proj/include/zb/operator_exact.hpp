#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "zb/core.hpp"
#include "zb/magnetic.hpp"

namespace zb {

using Mat2 = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;

/// Pauli matrices and T = tau3 + i tau2.
struct TauAlgebra {
  Mat2 tau1, tau2, tau3, T;
  static TauAlgebra make();
};

/// Matrix exponential (scaling and squaring with Pade approximant).
MatX expm(const MatX& a);

/// Closed form exp of a 2x2 matrix: e^{tr/2}(cosh s I + sinh s / s (A - tr/2 I)).
Mat2 expm_2x2_closed(const Mat2& a);

/// Single-sector Hamiltonian h T + tau3 with h = b(n + 1/2) + kz^2/2.
Mat2 landau_sector_hamiltonian(int n, double kz, const LandauContext& ctx);

/// Free Hamiltonian block for wave number q.
Mat2 free_hamiltonian(double q);

/// Pseudo-normalized eigenvector (nu + s/nu, nu - s/nu)/2 of sector n.
Eigen::Vector2cd landau_spinor(int n, double kz, int s, const LandauContext& ctx);

/// Oscillator-times-spinor representation for fixed (kx, kz), n = 0..n_max.
class LandauOperatorBasis {
 public:
  LandauOperatorBasis(const LandauContext& ctx, double kz, int n_max);

  int dim() const { return 2 * (n_max_ + 1); }
  const MatX& hamiltonian() const { return H_; }
  const MatX& tau3() const { return tau3_; }
  MatX annihilation() const;  ///< a tensor identity
  MatX creation() const;
  MatX T() const;
  Eigen::VectorXcd state(int n, int s) const;

  /// f(M) defined spectrally through M^2 = H^2 + 2 b; M|n> = eta E_{n+1}|n>.
  MatX spectral_m(int power, int eta) const;
  MatX spectral_exp_m(double t, int sign, int eta) const;

  /// <n,s| tau3 X |m,z>.
  cplx element(const MatX& X, int n, int s, int m, int z) const;

 private:
  LandauContext ctx_;
  double kz_;
  int n_max_;
  MatX H_, tau3_;
};

/// e^{i s w_n t} e^{-i z w_{n+1} t} J(0)_{nn'} with J(0)_{nn'} = sqrt(n+1) nu_n nu_{n+1}.
cplx heisenberg_current_element(int n, int s, int z, double t, const LandauContext& ctx, double kz = 0.0);

/// Sum of the two branches of the exact solution for sign choice eta.
cplx exact_current_element(int n, int s, int z, double t, const LandauContext& ctx, double kz = 0.0,
                           int eta = 1);

/// Heisenberg element via explicit matrix exponentials in the truncated basis.
cplx heisenberg_current_element_matrix(int n, int s, int z, double t, const LandauContext& ctx, double kz = 0.0);

/// Exact element via spectrally defined M operators in the truncated basis.
cplx exact_current_element_matrix(int n, int s, int z, double t, const LandauContext& ctx, double kz = 0.0,
                                  int eta = 1);

/// Closed-form P(t) on sector n for plane-wave factor e^{i kx x}: ikx[T + (H/E^2)(e^{2iHt} - 1) tau1].
Mat2 p_operator(int n, double kx, double kz, double t, const LandauContext& ctx);

/// e^{iHt} P(0) e^{-iHt} on sector n.
Mat2 p_operator_heisenberg(int n, double kx, double kz, double t, const LandauContext& ctx);

/// <n,s| tau3 P(t) |n,s'>.
cplx p_operator_element(int n, int s, int sp, double kx, double kz, double t, const LandauContext& ctx);

/// Analytic d/dt of P(t): 2i e^{2iHt} tau1 ikx.
Mat2 p_operator_derivative(int n, double kx, double kz, double t, const LandauContext& ctx);

/// Current operators J_x = (J + J^dag)/(sqrt2 L), J_y = -i eta (J - J^dag)/(sqrt2 L) in the basis.
MatX current_operator(const LandauOperatorBasis& basis, Axis axis, const LandauContext& ctx);

/// Max deviation between the truncated resolution applied to a smooth test function and the function.
struct UnityResult {
  double deviation;
  double norm;
};
UnityResult verify_unity_resolution(const LandauContext& ctx, int n_max, const std::vector<double>& grid,
                                    double width = 2.0, double center = 0.5, double kz = 0.3);

/// Sum_s s mu_s mu_s^T tau3 for given nu.
Mat2 unity_block(double nu);

enum class PseudoHermitianKind { PseudoHermitian, HermitianCommuting, Generic };

/// Random 2x2 operator of the requested kind (entries in the unit disc), scaled by t.
Mat2 random_operator(std::uint64_t seed, double t, PseudoHermitianKind kind);

/// max |tau3 e^O - e^{O^dag} tau3| for a random operator.
double verify_tau3_exponential(std::uint64_t seed, double t,
                               PseudoHermitianKind kind = PseudoHermitianKind::PseudoHermitian);

}  // namespace zb
