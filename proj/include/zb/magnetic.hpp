#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zb/core.hpp"

namespace zb {

/// Uniform field B along z in the gauge A = B(-y, 0, 0).
struct LandauContext {
  double b_ratio;          ///< B / B_s
  double magnetic_length;  ///< L = 1/sqrt(b_ratio)
  int charge_sign;         ///< eta_q = +-1
  double cyclotron_freq;   ///< omega_c = b_ratio (units omega_0)
};

/// Throws DomainError unless b_ratio > 0 and charge_sign = +-1.
LandauContext make_landau_context(double b_ratio, int charge_sign = 1);

struct LandauState {
  int n = 0;
  double kx = 0.0;
  double kz = 0.0;
  int s = 1;
};

/// E_{n,kz} = sqrt(1 + 2b(n + 1/2) + kz^2).
double landau_energy(int n, double kz, const LandauContext& ctx);

/// nu_{n,kz} = E^{-1/2}.
double landau_nu(int n, double kz, const LandauContext& ctx);

/// Normalized oscillator functions h_0..h_nmax at xi (orthonormal in xi).
std::vector<double> hermite_functions(int n_max, double xi);

/// phi_n(xi) = h_n(xi)/sqrt(L), so that L int phi_n^2 dxi = 1.
double hermite_function(int n, double xi, double L = 1.0);

/// Gauss-Hermite nodes and weights for weight exp(-x^2).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_hermite(int n);

enum class UMethod { Auto, D4, D4Complex, D6, Quadrature };
std::string to_string(UMethod m);

/// Auxiliary constants of the Gaussian overlap formulas.
struct UAux {
  double D = 0.0;
  cplx c{0.0, 0.0};  ///< L^3 / sqrt(L^4 - d_y^4)
  double P = 0.0;    ///< sqrt(d_x^2 + L^2/2)
  double Q = 0.0;
  double W = 0.0;
  double Y = 0.0;
  double r = 0.0;  ///< (L^2 - d_y^2)/(L^2 + d_y^2)
};

/// Symmetric real table U_{m,n}, 0 <= m, n <= n_max.
struct UCoeffTable {
  int n_max = 0;
  UMethod method = UMethod::Auto;
  UAux aux;
  std::vector<double> data;

  double operator()(int m, int n) const { return data[static_cast<std::size_t>(m) * (n_max + 1) + n]; }
  double& at(int m, int n) { return data[static_cast<std::size_t>(m) * (n_max + 1) + n]; }
  double trace() const;
};

/// Series truncated before the requested accuracy.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(int n_max, double trace);
  int n_max;
  double trace;
};

UAux u_aux(const GaussianPacket& packet, const LandauContext& ctx);

/// Table by the requested route. D6 requires d_y = L. Entries below 1e-14 are set to zero.
UCoeffTable compute_u_table(const GaussianPacket& packet, const LandauContext& ctx, int n_max,
                            UMethod method = UMethod::Auto);

/// Grow n_max from n_start until |trace - 1| < tol; throws TruncationError past n_limit.
UCoeffTable compute_u_table_converged(const GaussianPacket& packet, const LandauContext& ctx, int n_start = 200,
                                      double tol = 1e-10, int n_limit = 4000);

/// Single entry of the printed complex formula; throws DomainError if its imaginary part exceeds 1e-10.
double u_entry_d4_complex(const GaussianPacket& packet, const LandauContext& ctx, int m, int n);

struct SumRules {
  double s1;  ///< sum sqrt(n+1) U_{n+1,n}
  double s2;  ///< sum U_{n,n}
};
SumRules sum_rules(const UCoeffTable& table);

enum class Axis { X, Y, Z };

/// <n|tau3 v_axis|m> for states sharing kx, kz (s, s' arbitrary).
cplx velocity_matrix_element(const LandauState& bra, const LandauState& ket, Axis axis, const LandauContext& ctx);

/// Velocity traces of a packet in the field.
struct MagneticTrace {
  std::vector<double> times;
  std::vector<double> vx, vy, vz;
  std::vector<double> vx_interband, vy_interband, vz_interband;
};

/// Packet, context and overlap table with a k_z rule fit for a time horizon.
class MagneticModel {
 public:
  MagneticModel(GaussianPacket packet, LandauContext ctx, UCoeffTable table, double t_max);

  double velocity_x(double t) const;
  double velocity_y(double t) const;
  double velocity_z(double t) const;
  MagneticTrace trace(const std::vector<double>& times) const;

  /// Double sum over raw velocity matrix elements (physical Fourier sign for U), n <= n_cut.
  double velocity_raw(Axis axis, double t, int n_cut) const;

  /// Same closed-form components with an adaptive 1D k_z quadrature (slow oracle).
  double velocity_x_adaptive(double t) const;

  /// Interband/intraband weight ratio of v_x at t = 0.
  double interband_intraband_ratio() const;

  const UCoeffTable& table() const { return table_; }
  const LandauContext& context() const { return ctx_; }
  const GaussianPacket& packet() const { return packet_; }
  int kz_nodes() const { return static_cast<int>(kz_.size()); }

 private:
  struct Node {
    double kz, w;
  };
  void build_rule(int n);
  void components(double t, double* out) const;  // vx, vy, vz, and interband parts

  GaussianPacket packet_;
  LandauContext ctx_;
  UCoeffTable table_;
  int n_used_ = 0;
  std::vector<Node> kz_;
  std::vector<double> energy_;  // (n_used_+1) x nodes
  std::vector<double> offdiag_;  // sqrt(n+1)(U_{n+1,n}+U_{n,n+1})
  // Flattened (n, k_z) terms: transverse weights at frequencies E1-E0 and E1+E0, longitudinal at 2E.
  std::vector<double> fd_, fs_, wa_, wb_, wc_, wd_;
  std::vector<double> fz_, wz_;
  double z_const_ = 0.0;
};

/// Classical limit (k0x cos(w_c t), k0x sin(w_c t), k0z).
Vec3 nonrel_limit_velocity(const GaussianPacket& packet, const LandauContext& ctx, double t);

/// Packet of the ellipsoidal figure profile at B/B_s = b.
GaussianPacket ellipsoidal_figure_packet(double b);

/// Spherical packet of width 2L with k0x = 0.7 b.
GaussianPacket spherical_figure_packet(double b, double width_in_L = 2.0);

}  // namespace zb
