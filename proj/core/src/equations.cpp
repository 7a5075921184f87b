#include "twdirac/equations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twdirac {

namespace {

std::string canon(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

// sigma.grad f on a 2-component field
VecC sigma_grad(const AnalyticField& f, const FourVector& x) {
  VecC out = VecC::Zero(2);
  for (int i = 0; i < 3; ++i) out += pauli(i + 1) * f.d(i + 1, x);
  return out;
}

// (w x grad) f as the sigma-contracted vector: sum_k sigma_k eps_kij w_i d_j f
VecC sigma_w_cross_grad(const Vec3& w, const AnalyticField& f, const FourVector& x) {
  const VecC dx = f.d(1, x), dy = f.d(2, x), dz = f.d(3, x);
  const VecC ux = w.y() * dz - w.z() * dy;
  const VecC uy = w.z() * dx - w.x() * dz;
  const VecC uz = w.x() * dy - w.y() * dx;
  return pauli(1) * ux + pauli(2) * uy + pauli(3) * uz;
}

VecC w_dot_grad(const Vec3& w, const AnalyticField& f, const FourVector& x) {
  return w.x() * f.d(1, x) + w.y() * f.d(2, x) + w.z() * f.d(3, x);
}

VecC laplacian(const AnalyticField& f, const FourVector& x) {
  return f.d2(1, 1, x) + f.d2(2, 2, x) + f.d2(3, 3, x);
}

VecC w_grad_d0(const Vec3& w, const AnalyticField& f, const FourVector& x) {
  return w.x() * f.d2(0, 1, x) + w.y() * f.d2(0, 2, x) + w.z() * f.d2(0, 3, x);
}

using Term = std::function<VecC(const AnalyticField&, const FourVector&)>;

// stacks a per-block evaluation (left rows 0-1, right rows 2-3)
template <class FnL, class FnR>
Term stack2(FnL l, FnR r) {
  return [l, r](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out(4);
    out.segment<2>(0) = l(f, x);
    out.segment<2>(2) = r(f, x);
    return out;
  };
}

}  // namespace

std::string to_string(EquationId id) {
  switch (id) {
    case EquationId::Dirac: return "dirac";
    case EquationId::TravelingDirac: return "traveling_dirac";
    case EquationId::TwoComponentTraveling: return "two_component_traveling";
    case EquationId::WeylTravelingLeft: return "weyl_traveling_left";
    case EquationId::WeylTravelingRight: return "weyl_traveling_right";
    case EquationId::NaiveGalileanWeylLeft: return "naive_galilean_weyl_left";
    case EquationId::NaiveGalileanWeylRight: return "naive_galilean_weyl_right";
    case EquationId::MassiveTwoComponentTraveling: return "massive_two_component_traveling";
    case EquationId::NrDirac: return "nr_dirac";
    case EquationId::NrSchrodingerTraveling: return "nr_schrodinger_traveling";
    case EquationId::NaiveGalileanSchrodinger: return "naive_galilean_schrodinger";
  }
  return "unknown";
}

EquationId equation_from_string(const std::string& name) {
  const std::string s = canon(name);
  for (EquationId id :
       {EquationId::Dirac, EquationId::TravelingDirac, EquationId::TwoComponentTraveling,
        EquationId::WeylTravelingLeft, EquationId::WeylTravelingRight,
        EquationId::NaiveGalileanWeylLeft, EquationId::NaiveGalileanWeylRight,
        EquationId::MassiveTwoComponentTraveling, EquationId::NrDirac,
        EquationId::NrSchrodingerTraveling, EquationId::NaiveGalileanSchrodinger}) {
    if (to_string(id) == s) return id;
  }
  throw std::invalid_argument("unknown equation id: " + name);
}

VecC FieldOperator::apply(const AnalyticField& f, const FourVector& x) const {
  VecC out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    VecC t = terms[i](f, x);
    if (i == 0)
      out = std::move(t);
    else
      out += t;
  }
  return out;
}

FieldOperator dirac_op(double m) {
  FieldOperator op;
  op.name = "dirac";
  op.components_in = 4;
  op.terms.push_back([](const AnalyticField& f, const FourVector& x) -> VecC {
    const auto& g = gamma_weyl();
    VecC out = VecC::Zero(4);
    for (int mu = 0; mu < 4; ++mu) out += imag_unit * (g[mu] * f.d(mu, x));
    return out;
  });
  op.terms.push_back(
      [m](const AnalyticField& f, const FourVector& x) -> VecC { return -m * f.value(x); });
  return op;
}

FieldOperator traveling_dirac_op(double m, const BoostSpec& b, BoostMode mode) {
  FieldOperator op;
  op.name = "traveling_dirac";
  op.components_in = 4;
  const Mat4 s = spinor_boost(b, mode).matrix;
  op.terms.push_back([s](const AnalyticField& f, const FourVector& x) -> VecC {
    const auto& g = gamma_weyl();
    VecC out = VecC::Zero(4);
    for (int mu = 0; mu < 4; ++mu) out += imag_unit * (g[mu] * (s * f.d(mu, x)));
    return out;
  });
  op.terms.push_back([m, s](const AnalyticField& f, const FourVector& x) -> VecC {
    return -m * (s * f.value(x));
  });
  return op;
}

FieldOperator two_component_traveling_op(double m, const BoostSpec& b) {
  FieldOperator op;
  op.name = "two_component_traveling";
  op.components_in = 4;
  const Mat2 ml = Mat2::Identity() - 0.5 * sigma_dot(b.rapidity_vector());
  const Mat2 mr = Mat2::Identity() + 0.5 * sigma_dot(b.rapidity_vector());
  // i(d0 -+ sigma.grad) applied to the dressed blocks
  op.terms.push_back([ml, mr](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out(4);
    VecC accl = imag_unit * (ml * f.d(0, x).segment<2>(0));
    VecC accr = imag_unit * (mr * f.d(0, x).segment<2>(2));
    for (int i = 1; i < 4; ++i) {
      const Mat2 si = pauli(i);
      accl -= imag_unit * (si * (ml * f.d(i, x).segment<2>(0)));
      accr += imag_unit * (si * (mr * f.d(i, x).segment<2>(2)));
    }
    out.segment<2>(0) = accl;
    out.segment<2>(2) = accr;
    return out;
  });
  op.terms.push_back([m, ml, mr](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out(4);
    const VecC v = f.value(x);
    out.segment<2>(0) = -m * (mr * v.segment<2>(2));
    out.segment<2>(2) = -m * (ml * v.segment<2>(0));
    return out;
  });
  return op;
}

namespace {

AnalyticField block_of(const AnalyticField& f4, int offset) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 4);
  m(0, offset) = 1;
  m(1, offset + 1) = 1;
  return map_components(f4, m);
}

// the four display terms of the expanded traveling Weyl operator
std::vector<Term> weyl_terms(const Vec3& w, double sign) {
  std::vector<Term> t;
  t.push_back([](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * f.d(0, x);
  });
  t.push_back([sign](const AnalyticField& f, const FourVector& x) -> VecC {
    return sign * imag_unit * sigma_grad(f, x);
  });
  const Mat2 sw = sigma_dot(w);
  t.push_back([sign, sw](const AnalyticField& f, const FourVector& x) -> VecC {
    return sign * (imag_unit * 0.5) * (sw * f.d(0, x));
  });
  t.push_back([w](const AnalyticField& f, const FourVector& x) -> VecC {
    return (imag_unit * 0.5) * w_dot_grad(w, f, x) + 0.5 * sigma_w_cross_grad(w, f, x);
  });
  return t;
}

}  // namespace

FieldOperator weyl_traveling_op(const BoostSpec& b, Chirality chi) {
  FieldOperator op;
  op.name = chi == Chirality::Left ? "weyl_traveling_left" : "weyl_traveling_right";
  op.components_in = 2;
  op.terms = weyl_terms(b.rapidity_vector(), chi == Chirality::Left ? -1.0 : +1.0);
  return op;
}

FieldOperator naive_galilean_weyl_op(const BoostSpec& b, Chirality chi) {
  FieldOperator op;
  op.name =
      chi == Chirality::Left ? "naive_galilean_weyl_left" : "naive_galilean_weyl_right";
  op.components_in = 2;
  const Vec3 w = b.rapidity_vector();
  const double sign = chi == Chirality::Left ? -1.0 : +1.0;
  op.terms.push_back([](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * f.d(0, x);
  });
  op.terms.push_back([w](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * w_dot_grad(w, f, x);
  });
  op.terms.push_back([sign](const AnalyticField& f, const FourVector& x) -> VecC {
    return sign * imag_unit * sigma_grad(f, x);
  });
  const Mat2 sw = sigma_dot(w);
  op.terms.push_back([sign, sw](const AnalyticField& f, const FourVector& x) -> VecC {
    return sign * imag_unit * (sw * f.d(0, x));
  });
  return op;
}

FieldOperator massive_two_component_traveling_op(double m, const BoostSpec& b) {
  FieldOperator op;
  op.name = "massive_two_component_traveling";
  op.components_in = 4;
  const Vec3 w = b.rapidity_vector();
  auto tl = weyl_terms(w, -1.0);
  auto tr = weyl_terms(w, +1.0);
  for (std::size_t k = 0; k < tl.size(); ++k) {
    op.terms.push_back(stack2(
        [k, tl](const AnalyticField& f, const FourVector& x) {
          return VecC(tl[k](block_of(f, 0), x));
        },
        [k, tr](const AnalyticField& f, const FourVector& x) {
          return VecC(tr[k](block_of(f, 2), x));
        }));
  }
  const Mat2 ml = Mat2::Identity() - 0.5 * sigma_dot(w);
  const Mat2 mr = Mat2::Identity() + 0.5 * sigma_dot(w);
  op.terms.push_back([m, ml, mr](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out(4);
    const VecC v = f.value(x);
    out.segment<2>(0) = -m * (mr * v.segment<2>(2));
    out.segment<2>(2) = -m * (ml * v.segment<2>(0));
    return out;
  });
  return op;
}

FieldOperator nr_dirac_op(double m, const BoostSpec& b) {
  if (!(m > 0)) throw std::domain_error("nr_dirac requires m > 0");
  FieldOperator op;
  op.name = "nr_dirac";
  op.components_in = 2;
  const Vec3 w = b.rapidity_vector();
  // G = (w.grad) - i sigma.(w x grad), the expanded (sigma.grad)(sigma.w)
  auto g_term = [w](const AnalyticField& f, const FourVector& x) -> VecC {
    return w_dot_grad(w, f, x) - imag_unit * sigma_w_cross_grad(w, f, x);
  };
  op.terms.push_back([](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * f.d(0, x);
  });
  op.terms.push_back([g_term](const AnalyticField& f, const FourVector& x) -> VecC {
    return (imag_unit * 0.5) * g_term(f, x);
  });
  op.terms.push_back([m](const AnalyticField& f, const FourVector& x) -> VecC {
    return laplacian(f, x) / (2 * m);
  });
  op.terms.push_back([g_term](const AnalyticField& f, const FourVector& x) -> VecC {
    return (-imag_unit * 0.5) * g_term(f, x);
  });
  const Mat2 sw = sigma_dot(w);
  op.terms.push_back([m, sw](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = VecC::Zero(2);
    for (int i = 1; i < 4; ++i) out += sw * (pauli(i) * f.d2(0, i, x));
    return out / (4 * m);
  });
  op.terms.push_back([m, sw](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = VecC::Zero(2);
    for (int i = 1; i < 4; ++i) out += pauli(i) * (sw * f.d2(0, i, x));
    return out / (4 * m);
  });
  return op;
}

FieldOperator nr_schrodinger_traveling_op(double m, const BoostSpec& b) {
  if (!(m > 0)) throw std::domain_error("nr_schrodinger_traveling requires m > 0");
  FieldOperator op;
  op.name = "nr_schrodinger_traveling";
  const Vec3 w = b.rapidity_vector();
  op.terms.push_back([](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * f.d(0, x);
  });
  op.terms.push_back([m](const AnalyticField& f, const FourVector& x) -> VecC {
    return laplacian(f, x) / (2 * m);
  });
  op.terms.push_back([m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    return w_grad_d0(w, f, x) / (2 * m);
  });
  return op;
}

FieldOperator naive_galilean_schrodinger_op(double m, const BoostSpec& b) {
  if (!(m > 0)) throw std::domain_error("naive_galilean_schrodinger requires m > 0");
  FieldOperator op;
  op.name = "naive_galilean_schrodinger";
  const Vec3 w = b.rapidity_vector();
  op.terms.push_back([](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * f.d(0, x);
  });
  op.terms.push_back([w](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * w_dot_grad(w, f, x);
  });
  op.terms.push_back([m](const AnalyticField& f, const FourVector& x) -> VecC {
    return laplacian(f, x) / (2 * m);
  });
  op.terms.push_back([m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    return w_grad_d0(w, f, x) / m;
  });
  return op;
}

FieldOperator equation_op(EquationId id, double m, const BoostSpec& b, BoostMode mode) {
  switch (id) {
    case EquationId::Dirac: return dirac_op(m);
    case EquationId::TravelingDirac: return traveling_dirac_op(m, b, mode);
    case EquationId::TwoComponentTraveling: return two_component_traveling_op(m, b);
    case EquationId::WeylTravelingLeft: return weyl_traveling_op(b, Chirality::Left);
    case EquationId::WeylTravelingRight: return weyl_traveling_op(b, Chirality::Right);
    case EquationId::NaiveGalileanWeylLeft: return naive_galilean_weyl_op(b, Chirality::Left);
    case EquationId::NaiveGalileanWeylRight: return naive_galilean_weyl_op(b, Chirality::Right);
    case EquationId::MassiveTwoComponentTraveling:
      return massive_two_component_traveling_op(m, b);
    case EquationId::NrDirac: return nr_dirac_op(m, b);
    case EquationId::NrSchrodingerTraveling: return nr_schrodinger_traveling_op(m, b);
    case EquationId::NaiveGalileanSchrodinger: return naive_galilean_schrodinger_op(m, b);
  }
  throw std::logic_error("unhandled equation id");
}

ResidualReport evaluate_residual(const FieldOperator& op, const AnalyticField& f,
                                 const SamplePlan& plan, double tolerance) {
  if (op.components_in != 0 && f.components != op.components_in)
    throw std::invalid_argument(op.name + " expects a " + std::to_string(op.components_in) +
                                "-component field");
  const auto events = plan.events();
  double sum2 = 0, maxr = 0;
  std::vector<double> term2(op.terms.size(), 0.0);
  for (const auto& x : events) {
    VecC r;
    for (std::size_t k = 0; k < op.terms.size(); ++k) {
      VecC t = op.terms[k](f, x);
      term2[k] += t.squaredNorm();
      if (k == 0)
        r = std::move(t);
      else
        r += t;
    }
    sum2 += r.squaredNorm();
    maxr = std::max(maxr, r.cwiseAbs().maxCoeff());
  }
  ResidualReport rep;
  rep.equation = op.name;
  rep.family = f.family;
  rep.params = f.params;
  rep.samples = static_cast<int>(events.size());
  rep.l2_residual = std::sqrt(sum2);
  rep.max_residual = maxr;
  rep.l2_reference = std::sqrt(*std::max_element(term2.begin(), term2.end()));
  rep.tolerance = tolerance;
  rep.finalize();
  return rep;
}

namespace {
ResidualReport with_boost(ResidualReport rep, const BoostSpec& b, const std::string& mode) {
  rep.beta = b.beta;
  rep.mode = mode;
  return rep;
}
}  // namespace

ResidualReport residual_dirac(const AnalyticField& f, double m, const SamplePlan& plan,
                              double tolerance) {
  return evaluate_residual(dirac_op(m), f, plan, tolerance);
}

ResidualReport residual_traveling_dirac(const AnalyticField& f, double m, const BoostSpec& b,
                                        BoostMode mode, const SamplePlan& plan, double tolerance) {
  return with_boost(evaluate_residual(traveling_dirac_op(m, b, mode), f, plan, tolerance), b,
                    mode == BoostMode::Exact ? "exact" : "first-order");
}

ResidualReport residual_two_component_traveling(const AnalyticField& f, double m,
                                                const BoostSpec& b, const SamplePlan& plan,
                                                double tolerance) {
  return with_boost(evaluate_residual(two_component_traveling_op(m, b), f, plan, tolerance), b,
                    "first-order");
}

ResidualReport residual_weyl_traveling(const AnalyticField& f, const BoostSpec& b, Chirality chi,
                                       const SamplePlan& plan, double tolerance) {
  return with_boost(evaluate_residual(weyl_traveling_op(b, chi), f, plan, tolerance), b,
                    "first-order");
}

ResidualReport residual_massive_two_component_traveling(const AnalyticField& f, double m,
                                                        const BoostSpec& b, const SamplePlan& plan,
                                                        double tolerance) {
  return with_boost(
      evaluate_residual(massive_two_component_traveling_op(m, b), f, plan, tolerance), b,
      "first-order");
}

ResidualReport residual_nr_dirac(const AnalyticField& f, double m, const BoostSpec& b,
                                 const SamplePlan& plan, double tolerance) {
  return with_boost(evaluate_residual(nr_dirac_op(m, b), f, plan, tolerance), b, "first-order");
}

ResidualReport residual_nr_schrodinger_traveling(const AnalyticField& f, double m,
                                                 const BoostSpec& b, const SamplePlan& plan,
                                                 double tolerance) {
  return with_boost(evaluate_residual(nr_schrodinger_traveling_op(m, b), f, plan, tolerance), b,
                    "first-order");
}

ResidualReport residual_naive_galilean_schrodinger(const AnalyticField& f, double m,
                                                   const BoostSpec& b, const SamplePlan& plan,
                                                   double tolerance) {
  return with_boost(evaluate_residual(naive_galilean_schrodinger_op(m, b), f, plan, tolerance), b,
                    "first-order");
}

FieldOperator registered_difference_op(EquationId a, EquationId b, double m, const BoostSpec& bs) {
  const Vec3 w = bs.rapidity_vector();
  FieldOperator op;
  op.name = "difference_" + to_string(a) + "_minus_" + to_string(b);
  if (a == b) return op;  // empty term list: identically zero

  double flip = 1.0;
  auto is_pair = [&](EquationId x, EquationId y) {
    if (a == x && b == y) return true;
    if (a == y && b == x) {
      flip = -1.0;
      return true;
    }
    return false;
  };

  if (is_pair(EquationId::NrSchrodingerTraveling, EquationId::NaiveGalileanSchrodinger)) {
    op.terms.push_back([w, flip](const AnalyticField& f, const FourVector& x) -> VecC {
      return flip * (-imag_unit) * w_dot_grad(w, f, x);
    });
    op.terms.push_back([w, flip, m](const AnalyticField& f, const FourVector& x) -> VecC {
      return flip * (-1.0 / (2 * m)) * w_grad_d0(w, f, x);
    });
    return op;
  }
  const bool left = is_pair(EquationId::WeylTravelingLeft, EquationId::NaiveGalileanWeylLeft);
  const bool right =
      !left && is_pair(EquationId::WeylTravelingRight, EquationId::NaiveGalileanWeylRight);
  if (left || right) {
    op.components_in = 2;
    const double s = left ? +1.0 : -1.0;  // sign of the (sigma.w) d0 piece
    const Mat2 sw = sigma_dot(w);
    op.terms.push_back([sw, s, flip](const AnalyticField& f, const FourVector& x) -> VecC {
      return flip * s * (imag_unit * 0.5) * (sw * f.d(0, x));
    });
    op.terms.push_back([w, flip](const AnalyticField& f, const FourVector& x) -> VecC {
      return flip * (-imag_unit * 0.5) * w_dot_grad(w, f, x);
    });
    op.terms.push_back([w, flip](const AnalyticField& f, const FourVector& x) -> VecC {
      return flip * 0.5 * sigma_w_cross_grad(w, f, x);
    });
    return op;
  }
  throw std::invalid_argument("no registered difference expression for (" + to_string(a) + ", " +
                              to_string(b) + ")");
}

ResidualReport operator_difference(EquationId a, EquationId b, const AnalyticField& f,
                                   const BoostSpec& bs, double m, const SamplePlan& plan,
                                   double tolerance) {
  const FieldOperator opa = equation_op(a, m, bs);
  const FieldOperator opb = equation_op(b, m, bs);
  const FieldOperator pred = registered_difference_op(a, b, m, bs);
  FieldOperator dev;
  dev.name = "operator_difference_" + to_string(a) + "_vs_" + to_string(b);
  dev.components_in = std::max(opa.components_in, opb.components_in);
  for (const auto& t : opa.terms) dev.terms.push_back(t);
  for (const auto& t : opb.terms)
    dev.terms.push_back([t](const AnalyticField& g, const FourVector& x) -> VecC {
      return -t(g, x);
    });
  for (const auto& t : pred.terms)
    dev.terms.push_back([t](const AnalyticField& g, const FourVector& x) -> VecC {
      return -t(g, x);
    });
  ResidualReport rep = evaluate_residual(dev, f, plan, tolerance);
  rep.beta = bs.beta;
  rep.mode = "first-order";
  return rep;
}

AnalyticField small_component(const AnalyticField& big, double m, const BoostSpec& b) {
  if (!(m > 0)) throw std::domain_error("small_component requires m > 0");
  if (big.components != 2)
    throw std::invalid_argument("small_component expects a 2-component field");
  if (!big.has_d2())
    throw std::invalid_argument("small_component needs second derivatives of the big component");
  const Mat2 half_sw = 0.5 * sigma_dot(b.rapidity_vector());
  const cplx i_over_2m = imag_unit / (2 * m);
  AnalyticField out;
  out.components = 2;
  out.family = "small-approx-" + big.family;
  out.params = big.params;
  out.value = [big, half_sw, i_over_2m](const FourVector& x) -> VecC {
    VecC v = half_sw * big.value(x);
    VecC sg = VecC::Zero(2);
    for (int i = 1; i < 4; ++i) sg += pauli(i) * big.d(i, x);
    v += i_over_2m * sg;
    v += i_over_2m * (half_sw * big.d(0, x));
    return v;
  };
  out.d = [big, half_sw, i_over_2m](int mu, const FourVector& x) -> VecC {
    VecC v = half_sw * big.d(mu, x);
    VecC sg = VecC::Zero(2);
    for (int i = 1; i < 4; ++i) sg += pauli(i) * big.d2(i, mu, x);
    v += i_over_2m * sg;
    v += i_over_2m * (half_sw * big.d2(0, mu, x));
    return v;
  };
  return out;
}

}  // namespace twdirac
