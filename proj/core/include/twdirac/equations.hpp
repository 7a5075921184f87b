#pragma once

// Residual evaluators for the displayed field equations: Dirac, its
// traveling-wave form, the two-component and Weyl reductions, the
// non-relativistic limits, and the naive-Galilean counterparts. Each operator
// is a sum of terms kept at display granularity; the relative residual
// normalizes by the largest single term so truncation-order fits are
// insensitive to field scaling.
//
// First-order operators read the displays' velocity vector as the rapidity
// vector w = eta * nhat, which makes the two-component block form agree with
// the FirstOrder four-component form entrywise.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twdirac/fields.hpp"
#include "twdirac/report.hpp"

namespace twdirac {

enum class EquationId {
  Dirac,
  TravelingDirac,
  TwoComponentTraveling,
  WeylTravelingLeft,
  WeylTravelingRight,
  NaiveGalileanWeylLeft,
  NaiveGalileanWeylRight,
  MassiveTwoComponentTraveling,
  NrDirac,
  NrSchrodingerTraveling,
  NaiveGalileanSchrodinger,
};

std::string to_string(EquationId id);
EquationId equation_from_string(const std::string& name);  // accepts '-' or '_'

/// Linear differential operator as a list of display-level terms.
struct FieldOperator {
  std::string name;
  int components_in = 0;  // 0 = any
  std::vector<std::function<VecC(const AnalyticField&, const FourVector&)>> terms;

  VecC apply(const AnalyticField& f, const FourVector& x) const;
};

/// (i gamma^mu d_mu - m) f
FieldOperator dirac_op(double m);
/// (i gamma^mu d_mu - m) Lambda_1/2(mode) f
FieldOperator traveling_dirac_op(double m, const BoostSpec& b, BoostMode mode);
/// Two-component block form; rows 0-1 carry the left equation, rows 2-3 the right.
FieldOperator two_component_traveling_op(double m, const BoostSpec& b);
/// Massless two-component equations with the sigma-product expanded.
FieldOperator weyl_traveling_op(const BoostSpec& b, Chirality chi);
/// Weyl operator after the naive replacements d0 -> d0 + v.grad, grad -> grad + v d0.
FieldOperator naive_galilean_weyl_op(const BoostSpec& b, Chirality chi);
/// Massive two-component form with expanded sigma products and (1 +- sigma.v/2) mass couplings.
FieldOperator massive_two_component_traveling_op(double m, const BoostSpec& b);
/// Non-relativistic two-component reduction, every displayed term kept.
FieldOperator nr_dirac_op(double m, const BoostSpec& b);
/// i d0 + lap/2m + (1/2m)(v.grad) d0, componentwise.
FieldOperator nr_schrodinger_traveling_op(double m, const BoostSpec& b);
/// i(d0 + v.grad) + lap/2m + (1/m)(v.grad) d0.
FieldOperator naive_galilean_schrodinger_op(double m, const BoostSpec& b);

FieldOperator equation_op(EquationId id, double m, const BoostSpec& b,
                          BoostMode mode = BoostMode::Exact);

/// Residual norms of op applied to f over the plan.
ResidualReport evaluate_residual(const FieldOperator& op, const AnalyticField& f,
                                 const SamplePlan& plan, double tolerance);

ResidualReport residual_dirac(const AnalyticField& f, double m, const SamplePlan& plan,
                              double tolerance = 1e-12);
ResidualReport residual_traveling_dirac(const AnalyticField& f, double m, const BoostSpec& b,
                                        BoostMode mode, const SamplePlan& plan,
                                        double tolerance = 1e-10);
ResidualReport residual_two_component_traveling(const AnalyticField& f, double m,
                                                const BoostSpec& b, const SamplePlan& plan,
                                                double tolerance = 1e-12);
ResidualReport residual_weyl_traveling(const AnalyticField& f, const BoostSpec& b, Chirality chi,
                                       const SamplePlan& plan, double tolerance = 1e-12);
ResidualReport residual_massive_two_component_traveling(const AnalyticField& f, double m,
                                                        const BoostSpec& b,
                                                        const SamplePlan& plan,
                                                        double tolerance = 1e-12);
ResidualReport residual_nr_dirac(const AnalyticField& f, double m, const BoostSpec& b,
                                 const SamplePlan& plan, double tolerance = 1e-12);
ResidualReport residual_nr_schrodinger_traveling(const AnalyticField& f, double m,
                                                 const BoostSpec& b, const SamplePlan& plan,
                                                 double tolerance = 1e-12);
ResidualReport residual_naive_galilean_schrodinger(const AnalyticField& f, double m,
                                                   const BoostSpec& b, const SamplePlan& plan,
                                                   double tolerance = 1e-12);

/// Closed-form predicted difference operator for a registered (idA, idB) pair;
/// any id paired with itself predicts zero. Throws for unregistered pairs.
FieldOperator registered_difference_op(EquationId a, EquationId b, double m, const BoostSpec& bs);

/// Evaluates (OpA - OpB - prediction) f; the report measures deviation from
/// the registered prediction, normalized by the largest term of either side.
ResidualReport operator_difference(EquationId a, EquationId b, const AnalyticField& f,
                                   const BoostSpec& bs, double m, const SamplePlan& plan,
                                   double tolerance = 1e-13);

/// { (sigma.v)/2 + i(sigma.grad)/2m + (i/2m)(sigma.v)/2 d0 } applied to the
/// big component; value and first derivatives are closed form.
AnalyticField small_component(const AnalyticField& big, double m, const BoostSpec& b);

}  // namespace twdirac
