#pragma once

// Pauli / gamma matrix algebra in the chiral basis and pure Lorentz boosts,
// exact and first order in the rapidity, on coordinates and bispinors.
// Metric signature (+,-,-,-); natural units (hbar = c = 1) throughout.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace twdirac {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;

inline constexpr cplx imag_unit{0.0, 1.0};

struct FourVector {
  double t = 0, x = 0, y = 0, z = 0;

  FourVector() = default;
  FourVector(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}
  FourVector(double t_, const Vec3& r) : t(t_), x(r.x()), y(r.y()), z(r.z()) {}

  double operator[](int mu) const {
    switch (mu) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
  Vec3 spatial() const { return {x, y, z}; }
};

enum class BoostMode { Exact, FirstOrder };

/// Pure boost parameterized by beta = v/c; eta = atanh(|beta|).
struct BoostSpec {
  Vec3 beta = Vec3::Zero();
  double eta = 0.0;
  Vec3 nhat = Vec3::UnitZ();  // direction; arbitrary unit vector when beta = 0

  static BoostSpec from_beta(const Vec3& beta);           // throws if |beta| >= 1
  static BoostSpec from_rapidity(double eta, Vec3 nhat);  // eta >= 0, |nhat| = 1

  BoostSpec inverse() const { return from_rapidity(eta, -nhat); }
  bool is_zero() const { return eta == 0.0; }
  /// Rapidity vector eta * nhat; the first-order expansion parameter.
  Vec3 rapidity_vector() const { return eta * nhat; }
};

/// 4x4 coordinate boost; Exact satisfies L^T g L = g, FirstOrder replaces
/// cosh -> 1, sinh -> eta.
struct LorentzMatrix {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  BoostMode mode = BoostMode::Exact;

  FourVector apply(const FourVector& v) const;
};

/// Bispinor boost, block diagonal in the chiral basis.
struct SpinorBoost {
  Mat4 matrix = Mat4::Identity();
  BoostMode mode = BoostMode::Exact;
  BoostSpec boost;
};

/// sigma^0..sigma^3 with sigma^0 = identity.
Mat2 pauli(int i);

/// sigma . v for a real or complex 3-vector.
Mat2 sigma_dot(const Vec3& v);
Mat2 sigma_dot(const Vec3c& v);

/// gamma^0..gamma^3 in the chiral basis: gamma^mu = offdiag(sigma^mu, sigmabar^mu).
const std::array<Mat4, 4>& gamma_weyl();

/// Minkowski metric diag(1,-1,-1,-1).
const Eigen::Matrix4d& minkowski_metric();

LorentzMatrix lorentz_boost(const BoostSpec& b, BoostMode mode);
SpinorBoost spinor_boost(const BoostSpec& b, BoostMode mode);

/// Max entrywise deviation of Lambda_1/2^-1 gamma^mu Lambda_1/2 = Lambda^mu_nu gamma^nu
/// over mu (Exact mode both sides).
double check_covariance(const BoostSpec& b);

/// Max entrywise deviation of (P.sigma)(v.sigma) = P.v + i (P x v).sigma.
double sigma_product_check(const Vec3& p, const Vec3& v);

/// Max |L^T g L - g| entry; identity-quality measure for the exact boost.
double metric_preservation_deviation(const LorentzMatrix& lam);

}  // namespace twdirac
