#pragma once

// Manufactured analytic fields: plane-wave spinors, boosted fields, Gaussian
// packets. Values and first/second space-time derivatives are closed form;
// finite differences exist only as a test-side cross check (fd_check).

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "twdirac/algebra.hpp"

namespace twdirac {

using VecC = Eigen::VectorXcd;

/// Field with n complex components and closed-form derivative evaluators.
/// d(mu, x) = d/dx^mu; d2 may be absent for derived fields (product-rule
/// chains that would need third derivatives of their input).
struct AnalyticField {
  int components = 1;
  std::string family;
  std::vector<std::pair<std::string, double>> params;

  std::function<VecC(const FourVector&)> value;
  std::function<VecC(int, const FourVector&)> d;
  std::function<VecC(int, int, const FourVector&)> d2;

  bool has_d2() const { return static_cast<bool>(d2); }
};

/// splitmix64; fixed algorithm so seeded sample plans are bit-reproducible.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// Uniform double in [lo, hi) from the top 53 bits.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
};

/// Deterministic sample events: a regular lattice on [0,T] x [-L,L]^3 plus
/// seeded pseudo-random extra events (t, x, y, z drawn in that order).
struct SamplePlan {
  double half_width = 2.0;
  double time_extent = 2.0;
  int lattice_per_axis = 5;
  int random_events = 125;
  std::uint64_t seed = 12345;

  std::vector<FourVector> events() const;

  static SamplePlan lattice_only(int per_axis = 5);
  static SamplePlan randomized(int n, std::uint64_t seed);
};

/// amp * exp(i (k.x - omega t)); the common core of all mode-type families.
AnalyticField mode_field(const VecC& amp, double omega, const Vec3& k, std::string family);

/// Positive-energy Dirac plane wave psi = u(p) e^{-i(Et - p.x)}, chiral basis,
/// u(p) from the exact spinor boost of the rest spinor sqrt(m)(xi, xi).
AnalyticField dirac_plane_wave(const Vec3& p, double m, int spin);

/// Two-component massless wave chi e^{-iE(t - n.x)} with (sigma.n) chi = -chi
/// for the left equation and +chi for the right one.
enum class Chirality { Left, Right };
AnalyticField weyl_plane_wave(const Vec3& k, Chirality chi);

/// chi_s eigenvector of sigma.n with eigenvalue +1 (s=0) or -1 (s=1).
Eigen::Vector2cd sigma_eigenvector(const Vec3& nhat, int sign_index);

/// f~(x) = f(Lambda^-1 x); derivatives by exact chain rule.
AnalyticField boost_field(const AnalyticField& f, const BoostSpec& b);

/// e^{+imt} f; removes the rest-mass phase.
AnalyticField strip_rest_mass(const AnalyticField& f, double m);

/// exp(-|r|^2/(2 width^2)) e^{i k0.r} (1 + t) chi.
AnalyticField gaussian_packet(const Vec3& k0, double width, int components);
AnalyticField gaussian_packet(const Vec3& k0, double width, const VecC& chi);

/// Single-mode Schrodinger-type field e^{i(k.x - omega t)} (componentwise).
AnalyticField schrodinger_mode(const Vec3& k, double omega, int components);

/// Constant-coefficient linear maps and field arithmetic.
AnalyticField map_components(const AnalyticField& f, const Eigen::MatrixXcd& m,
                             std::string family = {});
AnalyticField scale_field(const AnalyticField& f, cplx a);
AnalyticField add_fields(const AnalyticField& f, const AnalyticField& g);

/// Psi_L + Psi_R and Psi_L - Psi_R of a 4-component field.
AnalyticField big_component(const AnalyticField& f4);
AnalyticField small_component_exact(const AnalyticField& f4);

/// Max deviation of closed-form first derivatives against central differences
/// with step h, relative to the largest derivative magnitude over the plan.
double fd_check(const AnalyticField& f, const SamplePlan& plan, double h);

}  // namespace twdirac
