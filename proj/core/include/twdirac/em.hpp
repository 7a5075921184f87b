#pragma once

// Electromagnetic four-potential families, their O(v) boost transform, field
// derivation E = -grad(phi) - dA/dt, B = curl A, and the curl/gradient
// substitution identities used by the traveling Pauli derivation.

#include <functional>
#include <string>

#include "twdirac/fields.hpp"
#include "twdirac/report.hpp"

namespace twdirac {

/// Scalar + vector potential with closed-form first derivatives.
struct EMPotential {
  std::string family;
  std::function<double(const FourVector&)> phi;
  std::function<double(int, const FourVector&)> dphi;   // d_mu phi
  std::function<Vec3(const FourVector&)> avec;
  std::function<Vec3(int, const FourVector&)> davec;    // d_mu A
};

/// Field evaluators derived from a potential.
struct EMFields {
  std::function<Vec3(const FourVector&)> evec;
  std::function<Vec3(const FourVector&)> bvec;
};

enum class PotentialFamily { Constant, Linear, Plane };
PotentialFamily potential_family_from_string(const std::string& name);
std::string to_string(PotentialFamily f);

EMPotential constant_potential(double phi0, const Vec3& a0);
/// phi = -e0.x, A = (1/2) b0 x r: uniform E = e0 and B = b0.
EMPotential linear_potential(const Vec3& e0, const Vec3& b0);
/// phi = phi0 cos(kappa(t - khat.x)), A = amp cos(kappa(t - khat.x)).
EMPotential plane_potential(double phi0, const Vec3& amp, double kappa, const Vec3& khat);
/// Symmetric gauge A = (1/2) B0 z^ x r; uniform magnetic field along z.
EMPotential uniform_b_potential(double b0);

/// Family with geometry adapted to the boost direction so that the
/// substitution identities hold at every order in v: static uniform B along
/// the boost, plane wave propagating perpendicular to the boost and polarized
/// along it.
EMPotential boost_adapted_potential(PotentialFamily fam, const BoostSpec& b);

/// Argument relabeling only: components unchanged, evaluated at Lambda^-1 x.
EMPotential relabel_potential(const EMPotential& a, const BoostSpec& b);

/// O(v) transformed pair (phi + v.A, A + v phi) with arguments relabeled
/// through Lambda^-1. v = beta.
EMPotential transform_potential(const EMPotential& a, const BoostSpec& b);

EMFields derive_fields(const EMPotential& a);

/// curl of A + v phi and gradient of phi + v.A at one event.
Vec3 curl_avec(const EMPotential& a, const FourVector& x);
Vec3 grad_phi(const EMPotential& a, const FourVector& x);
Vec3 dt_avec(const EMPotential& a, const FourVector& x);

/// Both substitution identities evaluated pointwise over the plan:
///   curl(A + v phi)   = B + v x E
///   -grad(phi + v.A)  = E - v x B + d/dt (A + v phi)
/// with E, B derived from the untransformed pair. v = beta.
ResidualReport check_amu_identities(const EMPotential& a, const BoostSpec& b,
                                    const SamplePlan& plan, double tolerance = 1e-12);

/// Finite-difference cross-check of the potential derivative evaluators.
double fd_check_potential(const EMPotential& a, const SamplePlan& plan, double h);

}  // namespace twdirac
