#pragma once

// Ordinary and traveling-wave Pauli residuals with one signed coupling q:
// the covariant combinations are (i d0 - q phi) and (grad - i q A), which is
// gauge covariant under phi -> phi - d0(chi), A -> A + grad(chi),
// Psi -> e^{i q chi} Psi.

#include "twdirac/em.hpp"
#include "twdirac/equations.hpp"

namespace twdirac {

struct PauliParams {
  double m = 1.0;
  double q = 1.0;
  BoostSpec boost;
};

/// [i d0 - q phi] + (1/2m)(grad - iqA)^2 + (q/2m) sigma.B, two components.
FieldOperator pauli_op(const EMPotential& a, const PauliParams& p);

/// Final traveling-wave Pauli display. The supplied potential is the
/// old-frame one; the operator relabels it through Lambda^-1 internally and
/// builds the mixed combinations (phi' + v.A, A + v phi') itself. v = eta*nhat.
FieldOperator traveling_pauli_op(const EMPotential& a_old, const PauliParams& p);

/// Pre-simplification traveling form (quadratic in the shifted covariant
/// derivative, sigma.(B + v x E) magnetic term, dA/dt quarter-terms).
FieldOperator traveling_pauli_intermediate_op(const EMPotential& a_old, const PauliParams& p);

/// Mechanical covariant substitution applied to the sigma-factored
/// non-relativistic reduction: an independent encoding of the same display.
FieldOperator covariant_substituted_nr_op(const EMPotential& a_old, const PauliParams& p);

/// Ordinary Pauli operator after the naive Galilean replacements.
FieldOperator naive_galilean_pauli_op(const EMPotential& a_old, const PauliParams& p);

/// Registered closed-form difference traveling - naive (nonzero for v != 0).
FieldOperator pauli_difference_prediction(const EMPotential& a_old, const PauliParams& p);

ResidualReport residual_pauli(const AnalyticField& f, const EMPotential& a, const PauliParams& p,
                              const SamplePlan& plan, double tolerance = 1e-12);
ResidualReport residual_traveling_pauli(const AnalyticField& f, const EMPotential& a_old,
                                        const PauliParams& p, const SamplePlan& plan,
                                        double tolerance = 1e-12);

/// Deviation between the mechanical substitution and the hand-implemented
/// intermediate display on the same inputs.
ResidualReport pauli_chain_check(const AnalyticField& f, const EMPotential& a_old,
                                 const PauliParams& p, const SamplePlan& plan,
                                 double tolerance = 1e-12);

/// Closed-form real scalar gauge function chi with first and second derivatives.
struct GaugeFunction {
  std::function<double(const FourVector&)> value;
  std::function<double(int, const FourVector&)> d;
  std::function<double(int, int, const FourVector&)> d2;
};

/// c0 t + cvec.r + amp cos(kappa(t - khat.r))
GaugeFunction gauge_function(double c0, const Vec3& cvec, double amp, double kappa,
                             const Vec3& khat);

/// phi -> phi - d0 chi, A -> A + grad chi.
EMPotential gauge_shift_potential(const EMPotential& a, const GaugeFunction& chi);

/// Psi -> e^{i q chi} Psi with product-rule derivatives.
AnalyticField gauge_phase_multiply(const AnalyticField& f, const GaugeFunction& chi, double q);

/// Exact zero-energy lowest-Landau-level state for the symmetric-gauge
/// uniform field B0 z^: Psi = (e^{-qB0 (x^2+y^2)/4}, 0); requires q*B0 > 0.
AnalyticField landau_ground_state(double q, double b0);

}  // namespace twdirac
