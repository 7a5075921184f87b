#pragma once

// Bargmann-Wigner multi-spinor machinery: rank 2s fields (s = 1/2, 1) obeying
// a Dirac-type equation in every spinor index, and their traveling-wave form
// with the bispinor boost applied on all indices.

#include "twdirac/equations.hpp"

namespace twdirac {

/// Rank-1 or rank-2 multi-spinor with 4^rank components; index (a1, a2)
/// flattens to a1*4 + a2. The symmetric flag asserts invariance under index
/// exchange, validated at sample events before residual evaluation.
struct MultiSpinorField {
  int rank = 1;
  bool symmetric = false;
  std::string family;
  std::vector<std::pair<std::string, double>> params;
  std::function<VecC(const FourVector&)> value;
  std::function<VecC(int, const FourVector&)> d;
};

/// Apply a 4x4 matrix on spinor index k (0-based) of a flattened value.
VecC apply_on_index(const Mat4& m, const VecC& v, int rank, int k);

/// Exchange the two indices of a rank-2 flattened value.
VecC swap_indices(const VecC& v);

MultiSpinorField from_analytic(const AnalyticField& f);

/// sym(u(p,s1) (x) u(p,s2)) e^{-ip.x}; an exact rank-2 solution.
MultiSpinorField dirac_product_wave(const Vec3& p, double m, int spin1, int spin2);

/// Unsymmetrized u(p,s1) (x) u(q,s2) e^{-i(p+q).x}/2-style product of two
/// plane waves (each factor on-shell), useful for symmetrization tests.
MultiSpinorField unsymmetrized_product_wave(const Vec3& p, double m, int spin1, int spin2);

/// Rank-2 smooth non-solution probe: constant tensor times a gaussian packet.
MultiSpinorField gaussian_multispinor(const Vec3& k0, double width);

MultiSpinorField symmetrize(const MultiSpinorField& f);
MultiSpinorField boost_multispinor(const MultiSpinorField& f, const BoostSpec& b);
MultiSpinorField apply_matrix_all_indices(const MultiSpinorField& f, const Mat4& m);

/// Max symmetry deviation |F - F^swap| over a few plan events (rank 2).
double symmetry_deviation(const MultiSpinorField& f, const SamplePlan& plan);

/// (i gamma^mu d_mu - m) on index k.
ResidualReport bw_residual(const MultiSpinorField& f, double m, int k, const SamplePlan& plan,
                           double tolerance = 1e-12);

/// Pointwise value of the traveling BW operator on index k (dress applied on
/// all indices first); used for operator-truncation probes.
VecC traveling_bw_apply(const MultiSpinorField& f, double m, const BoostSpec& b, BoostMode mode,
                        int k, const FourVector& x);

/// Lambda_1/2(mode) on every index, then the Dirac operator on index k.
ResidualReport traveling_bw_residual(const MultiSpinorField& f, double m, const BoostSpec& b,
                                     BoostMode mode, int k, const SamplePlan& plan,
                                     double tolerance = 1e-10);

}  // namespace twdirac
