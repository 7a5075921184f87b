#include "twdirac/em.hpp"

#include <cmath>
#include <stdexcept>

namespace twdirac {

PotentialFamily potential_family_from_string(const std::string& name) {
  if (name == "constant") return PotentialFamily::Constant;
  if (name == "linear") return PotentialFamily::Linear;
  if (name == "plane") return PotentialFamily::Plane;
  throw std::invalid_argument("unknown potential family: " + name);
}

std::string to_string(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::Constant: return "constant";
    case PotentialFamily::Linear: return "linear";
    default: return "plane";
  }
}

EMPotential constant_potential(double phi0, const Vec3& a0) {
  EMPotential p;
  p.family = "constant";
  p.phi = [phi0](const FourVector&) { return phi0; };
  p.dphi = [](int, const FourVector&) { return 0.0; };
  p.avec = [a0](const FourVector&) { return a0; };
  p.davec = [](int, const FourVector&) { return Vec3::Zero().eval(); };
  return p;
}

EMPotential linear_potential(const Vec3& e0, const Vec3& b0) {
  EMPotential p;
  p.family = "linear";
  p.phi = [e0](const FourVector& x) { return -e0.dot(x.spatial()); };
  p.dphi = [e0](int mu, const FourVector&) { return mu == 0 ? 0.0 : -e0[mu - 1]; };
  p.avec = [b0](const FourVector& x) { return Vec3(0.5 * b0.cross(x.spatial())); };
  p.davec = [b0](int mu, const FourVector&) -> Vec3 {
    if (mu == 0) return Vec3::Zero();
    return 0.5 * b0.cross(Vec3::Unit(mu - 1));
  };
  return p;
}

EMPotential plane_potential(double phi0, const Vec3& amp, double kappa, const Vec3& khat) {
  EMPotential p;
  p.family = "plane";
  const Vec3 k = khat.normalized();
  auto arg = [kappa, k](const FourVector& x) { return kappa * (x.t - k.dot(x.spatial())); };
  auto darg = [kappa, k](int mu) { return mu == 0 ? kappa : -kappa * k[mu - 1]; };
  p.phi = [phi0, arg](const FourVector& x) { return phi0 * std::cos(arg(x)); };
  p.dphi = [phi0, arg, darg](int mu, const FourVector& x) {
    return -phi0 * std::sin(arg(x)) * darg(mu);
  };
  p.avec = [amp, arg](const FourVector& x) { return Vec3(amp * std::cos(arg(x))); };
  p.davec = [amp, arg, darg](int mu, const FourVector& x) {
    return Vec3(amp * (-std::sin(arg(x)) * darg(mu)));
  };
  return p;
}

EMPotential uniform_b_potential(double b0) {
  EMPotential p = linear_potential(Vec3::Zero(), Vec3(0, 0, b0));
  p.family = "uniform-b";
  return p;
}

EMPotential boost_adapted_potential(PotentialFamily fam, const BoostSpec& b) {
  const Vec3 n = b.nhat;
  switch (fam) {
    case PotentialFamily::Constant:
      return constant_potential(0.75, Vec3(0.4, -0.3, 0.5));
    case PotentialFamily::Linear: {
      // uniform B along the boost keeps (v.grad)A = 0; E is unconstrained
      Vec3 e0(0.35, 0.2, -0.4);
      return linear_potential(e0, 0.6 * n);
    }
    case PotentialFamily::Plane: {
      // transverse wave: propagation perpendicular to the boost, polarization
      // along it, so dA/dt || v and (v.grad)A = 0
      Vec3 ref = std::abs(n.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
      const Vec3 khat = n.cross(ref).normalized();
      return plane_potential(0.0, 0.5 * n, 1.3, khat);
    }
  }
  throw std::logic_error("unhandled potential family");
}

EMPotential relabel_potential(const EMPotential& a, const BoostSpec& b) {
  const LorentzMatrix inv = lorentz_boost(b.inverse(), BoostMode::Exact);
  const Eigen::Matrix4d li = inv.m;
  EMPotential p;
  p.family = a.family + "-relabeled";
  auto pull = [inv](const FourVector& x) { return inv.apply(x); };
  p.phi = [a, pull](const FourVector& x) { return a.phi(pull(x)); };
  p.dphi = [a, pull, li](int mu, const FourVector& x) {
    const FourVector y = pull(x);
    double out = 0;
    for (int nu = 0; nu < 4; ++nu) out += li(nu, mu) * a.dphi(nu, y);
    return out;
  };
  p.avec = [a, pull](const FourVector& x) { return a.avec(pull(x)); };
  p.davec = [a, pull, li](int mu, const FourVector& x) {
    const FourVector y = pull(x);
    Vec3 out = Vec3::Zero();
    for (int nu = 0; nu < 4; ++nu) out += li(nu, mu) * a.davec(nu, y);
    return out;
  };
  return p;
}

EMPotential transform_potential(const EMPotential& a, const BoostSpec& b) {
  const EMPotential r = relabel_potential(a, b);
  const Vec3 v = b.beta;
  EMPotential p;
  p.family = a.family + "-boosted";
  p.phi = [r, v](const FourVector& x) { return r.phi(x) + v.dot(r.avec(x)); };
  p.dphi = [r, v](int mu, const FourVector& x) { return r.dphi(mu, x) + v.dot(r.davec(mu, x)); };
  p.avec = [r, v](const FourVector& x) { return Vec3(r.avec(x) + v * r.phi(x)); };
  p.davec = [r, v](int mu, const FourVector& x) {
    return Vec3(r.davec(mu, x) + v * r.dphi(mu, x));
  };
  return p;
}

namespace {
Vec3 curl_of(const EMPotential& a, const FourVector& x) {
  const Vec3 dx = a.davec(1, x), dy = a.davec(2, x), dz = a.davec(3, x);
  return {dy.z() - dz.y(), dz.x() - dx.z(), dx.y() - dy.x()};
}
}  // namespace

Vec3 curl_avec(const EMPotential& a, const FourVector& x) { return curl_of(a, x); }

Vec3 grad_phi(const EMPotential& a, const FourVector& x) {
  return {a.dphi(1, x), a.dphi(2, x), a.dphi(3, x)};
}

Vec3 dt_avec(const EMPotential& a, const FourVector& x) { return a.davec(0, x); }

EMFields derive_fields(const EMPotential& a) {
  EMFields f;
  f.evec = [a](const FourVector& x) { return Vec3(-grad_phi(a, x) - dt_avec(a, x)); };
  f.bvec = [a](const FourVector& x) { return curl_of(a, x); };
  return f;
}

ResidualReport check_amu_identities(const EMPotential& a, const BoostSpec& b,
                                    const SamplePlan& plan, double tolerance) {
  const Vec3 v = b.beta;
  const auto events = plan.events();
  double sum2 = 0, maxr = 0, ref1 = 0, ref2 = 0;
  for (const auto& x : events) {
    const Vec3 e = -grad_phi(a, x) - dt_avec(a, x);
    const Vec3 bb = curl_of(a, x);
    // curl(A + v phi) = B + v x E
    const Vec3 lhs1 = curl_of(a, x) + grad_phi(a, x).cross(v);
    const Vec3 rhs1 = bb + v.cross(e);
    // -grad(phi + v.A): grad(v.A) = sum_i v_i grad A_i
    Vec3 grad_va = Vec3::Zero();
    for (int i = 1; i < 4; ++i) {
      const Vec3 da = a.davec(i, x);
      grad_va[i - 1] = v.dot(da);
    }
    const Vec3 lhs2 = -grad_phi(a, x) - grad_va;
    const Vec3 rhs2 = e - v.cross(bb) + dt_avec(a, x) + v * a.dphi(0, x);
    const Vec3 r1 = lhs1 - rhs1, r2 = lhs2 - rhs2;
    sum2 += r1.squaredNorm() + r2.squaredNorm();
    maxr = std::max({maxr, r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff()});
    ref1 += std::max(lhs1.squaredNorm(), rhs1.squaredNorm());
    ref2 += std::max(lhs2.squaredNorm(), rhs2.squaredNorm());
  }
  ResidualReport rep;
  rep.equation = "amu_identities";
  rep.family = a.family;
  rep.beta = b.beta;
  rep.mode = "exact";
  rep.samples = static_cast<int>(events.size());
  rep.l2_residual = std::sqrt(sum2);
  rep.max_residual = maxr;
  rep.l2_reference = std::sqrt(std::max({ref1, ref2, 1e-300}));
  rep.tolerance = tolerance;
  rep.finalize();
  return rep;
}

double fd_check_potential(const EMPotential& a, const SamplePlan& plan, double h) {
  if (!(h > 0)) throw std::domain_error("fd step must be positive");
  double dev = 0, scale = 1e-300;
  for (const auto& x : plan.events()) {
    for (int mu = 0; mu < 4; ++mu) {
      FourVector xp = x, xm = x;
      switch (mu) {
        case 0: xp.t += h; xm.t -= h; break;
        case 1: xp.x += h; xm.x -= h; break;
        case 2: xp.y += h; xm.y -= h; break;
        default: xp.z += h; xm.z -= h; break;
      }
      const double fd_phi = (a.phi(xp) - a.phi(xm)) / (2 * h);
      dev = std::max(dev, std::abs(a.dphi(mu, x) - fd_phi));
      scale = std::max(scale, std::abs(a.dphi(mu, x)));
      const Vec3 fd_a = (a.avec(xp) - a.avec(xm)) / (2 * h);
      dev = std::max(dev, (a.davec(mu, x) - fd_a).cwiseAbs().maxCoeff());
      scale = std::max(scale, a.davec(mu, x).cwiseAbs().maxCoeff());
    }
  }
  return dev / scale;
}

}  // namespace twdirac
