#include "twdirac/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace twdirac {

BoostSpec BoostSpec::from_beta(const Vec3& beta) {
  const double mag = beta.norm();
  if (!(mag < 1.0)) throw std::domain_error("beta magnitude must be < 1");
  BoostSpec b;
  b.beta = beta;
  b.eta = std::atanh(mag);
  b.nhat = mag > 0.0 ? Vec3(beta / mag) : Vec3::UnitZ();
  return b;
}

BoostSpec BoostSpec::from_rapidity(double eta, Vec3 nhat) {
  BoostSpec b;
  if (eta < 0.0) {
    eta = -eta;
    nhat = -nhat;
  }
  const double nn = nhat.norm();
  if (eta > 0.0 && std::abs(nn - 1.0) > 1e-12)
    throw std::invalid_argument("boost direction must be a unit vector");
  b.eta = eta;
  b.nhat = nn > 0.0 ? Vec3(nhat / nn) : Vec3::UnitZ();
  b.beta = std::tanh(eta) * b.nhat;
  return b;
}

FourVector LorentzMatrix::apply(const FourVector& v) const {
  Eigen::Vector4d in(v.t, v.x, v.y, v.z);
  Eigen::Vector4d out = m * in;
  return {out[0], out[1], out[2], out[3]};
}

Mat2 pauli(int i) {
  Mat2 s;
  switch (i) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -imag_unit, imag_unit, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli index must be in 0..3");
  }
  return s;
}

Mat2 sigma_dot(const Vec3& v) {
  Mat2 s;
  s << v.z(), cplx(v.x(), -v.y()), cplx(v.x(), v.y()), -v.z();
  return s;
}

Mat2 sigma_dot(const Vec3c& v) {
  return v.x() * pauli(1) + v.y() * pauli(2) + v.z() * pauli(3);
}

const std::array<Mat4, 4>& gamma_weyl() {
  static const std::array<Mat4, 4> g = [] {
    std::array<Mat4, 4> a;
    for (int mu = 0; mu < 4; ++mu) {
      const Mat2 s = pauli(mu);
      const Mat2 sbar = mu == 0 ? s : Mat2(-s);  // sigmabar^mu = (1, -sigma^i)
      Mat4 gm = Mat4::Zero();
      gm.block<2, 2>(0, 2) = s;
      gm.block<2, 2>(2, 0) = sbar;
      a[mu] = gm;
    }
    return a;
  }();
  return g;
}

const Eigen::Matrix4d& minkowski_metric() {
  static const Eigen::Matrix4d g = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  return g;
}

LorentzMatrix lorentz_boost(const BoostSpec& b, BoostMode mode) {
  LorentzMatrix lam;
  lam.mode = mode;
  const Vec3 n = b.nhat;
  const double ch = mode == BoostMode::Exact ? std::cosh(b.eta) : 1.0;
  const double sh = mode == BoostMode::Exact ? std::sinh(b.eta) : b.eta;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = ch;
  for (int i = 0; i < 3; ++i) {
    m(0, i + 1) = sh * n[i];
    m(i + 1, 0) = sh * n[i];
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (ch - 1.0) * n[i] * n[j];
  }
  lam.m = m;
  return lam;
}

SpinorBoost spinor_boost(const BoostSpec& b, BoostMode mode) {
  SpinorBoost s;
  s.mode = mode;
  s.boost = b;
  const Mat2 sn = sigma_dot(b.nhat);
  const Mat2 id = Mat2::Identity();
  Mat2 left, right;
  if (mode == BoostMode::Exact) {
    const double ep = std::exp(b.eta / 2), em = std::exp(-b.eta / 2);
    left = ep * (id - sn) / 2 + em * (id + sn) / 2;
    right = ep * (id + sn) / 2 + em * (id - sn) / 2;
  } else {
    left = id - (b.eta / 2) * sn;
    right = id + (b.eta / 2) * sn;
  }
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = left;
  m.block<2, 2>(2, 2) = right;
  s.matrix = m;
  return s;
}

double check_covariance(const BoostSpec& b) {
  const auto& g = gamma_weyl();
  const LorentzMatrix lam = lorentz_boost(b, BoostMode::Exact);
  const Mat4 s = spinor_boost(b, BoostMode::Exact).matrix;
  const Mat4 sinv = s.inverse();
  double dev = 0;
  for (int mu = 0; mu < 4; ++mu) {
    Mat4 rhs = Mat4::Zero();
    for (int nu = 0; nu < 4; ++nu) rhs += lam.m(mu, nu) * g[nu];
    dev = std::max(dev, (sinv * g[mu] * s - rhs).cwiseAbs().maxCoeff());
  }
  return dev;
}

double sigma_product_check(const Vec3& p, const Vec3& v) {
  const Mat2 lhs = sigma_dot(p) * sigma_dot(v);
  const Mat2 rhs = p.dot(v) * Mat2::Identity() + imag_unit * sigma_dot(Vec3(p.cross(v)));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double metric_preservation_deviation(const LorentzMatrix& lam) {
  const Eigen::Matrix4d& g = minkowski_metric();
  return (lam.m.transpose() * g * lam.m - g).cwiseAbs().maxCoeff();
}

}  // namespace twdirac
