#include "twdirac/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace twdirac {

namespace {

using Term = std::function<VecC(const AnalyticField&, const FourVector&)>;

void check_params(const PauliParams& p) {
  if (!(p.m > 0)) throw std::domain_error("pauli operators require m > 0");
}

double div_avec(const EMPotential& a, const FourVector& x) {
  return a.davec(1, x).x() + a.davec(2, x).y() + a.davec(3, x).z();
}

// (grad - iqA)^2 f = lap f - iq(div A) f - 2iq A.grad f - q^2 A^2 f
VecC covariant_laplacian(const EMPotential& a, double q, const AnalyticField& f,
                         const FourVector& x) {
  VecC out = f.d2(1, 1, x) + f.d2(2, 2, x) + f.d2(3, 3, x);
  const Vec3 av = a.avec(x);
  VecC agrad = av.x() * f.d(1, x) + av.y() * f.d(2, x) + av.z() * f.d(3, x);
  out -= imag_unit * q * (div_avec(a, x) * f.value(x) + 2.0 * agrad);
  out -= q * q * av.squaredNorm() * f.value(x);
  return out;
}

VecC sigma_dot_apply(const Vec3& v, const VecC& f2) {
  return sigma_dot(v) * f2;
}

}  // namespace

FieldOperator pauli_op(const EMPotential& a, const PauliParams& p) {
  check_params(p);
  const double m = p.m, q = p.q;
  FieldOperator op;
  op.name = "pauli";
  op.components_in = 2;
  op.terms.push_back([a, q](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * f.d(0, x) - q * a.phi(x) * f.value(x);
  });
  op.terms.push_back([a, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    return covariant_laplacian(a, q, f, x) / (2 * m);
  });
  op.terms.push_back([a, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    return (q / (2 * m)) * sigma_dot_apply(curl_avec(a, x), f.value(x));
  });
  return op;
}

FieldOperator traveling_pauli_op(const EMPotential& a_old, const PauliParams& p) {
  check_params(p);
  const double m = p.m, q = p.q;
  const Vec3 w = p.boost.rapidity_vector();
  const EMPotential a = relabel_potential(a_old, p.boost);
  FieldOperator op;
  op.name = "traveling_pauli";
  op.components_in = 2;
  op.terms.push_back([a, q, w](const AnalyticField& f, const FourVector& x) -> VecC {
    const double pot = a.phi(x) + w.dot(a.avec(x));
    return imag_unit * f.d(0, x) - q * pot * f.value(x);
  });
  op.terms.push_back([a, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    return covariant_laplacian(a, q, f, x) / (2 * m);
  });
  op.terms.push_back([a, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    return (q / (2 * m)) * sigma_dot_apply(curl_avec(a, x), f.value(x));
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = w.x() * f.d2(0, 1, x) + w.y() * f.d2(0, 2, x) + w.z() * f.d2(0, 3, x);
    out -= imag_unit * q * w.dot(a.avec(x)) * f.d(0, x);
    return out / (2 * m);
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    const Vec3 e = -grad_phi(a, x) - dt_avec(a, x);
    const Vec3 u = grad_phi(a, x) + e;  // grad(phi') + E
    VecC out = w.dot(u) * f.value(x) + imag_unit * sigma_dot_apply(w.cross(u), f.value(x));
    return (imag_unit * q / (4 * m)) * out;
  });
  return op;
}

FieldOperator traveling_pauli_intermediate_op(const EMPotential& a_old, const PauliParams& p) {
  check_params(p);
  const double m = p.m, q = p.q;
  const Vec3 w = p.boost.rapidity_vector();
  const EMPotential a = relabel_potential(a_old, p.boost);
  // shifted vector potential A^ = A + w phi'
  EMPotential ah;
  ah.family = a.family + "-shifted";
  ah.phi = a.phi;
  ah.dphi = a.dphi;
  ah.avec = [a, w](const FourVector& x) { return Vec3(a.avec(x) + w * a.phi(x)); };
  ah.davec = [a, w](int mu, const FourVector& x) {
    return Vec3(a.davec(mu, x) + w * a.dphi(mu, x));
  };
  FieldOperator op;
  op.name = "traveling_pauli_intermediate";
  op.components_in = 2;
  op.terms.push_back([a, q, w](const AnalyticField& f, const FourVector& x) -> VecC {
    const double pot = a.phi(x) + w.dot(a.avec(x));
    return imag_unit * f.d(0, x) - q * pot * f.value(x);
  });
  op.terms.push_back([ah, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    return covariant_laplacian(ah, q, f, x) / (2 * m);
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    const Vec3 e = -grad_phi(a, x) - dt_avec(a, x);
    const Vec3 bb = curl_avec(a, x);
    return (q / (2 * m)) * sigma_dot_apply(bb + w.cross(e), f.value(x));
  });
  op.terms.push_back([ah, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = w.x() * f.d2(0, 1, x) + w.y() * f.d2(0, 2, x) + w.z() * f.d2(0, 3, x);
    out -= imag_unit * q * w.dot(ah.avec(x)) * f.d(0, x);
    return out / (2 * m);
  });
  op.terms.push_back([ah, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    const Vec3 u = dt_avec(ah, x);
    VecC out = w.dot(u) * f.value(x) + imag_unit * sigma_dot_apply(w.cross(u), f.value(x));
    return -(imag_unit * q / (4 * m)) * out;
  });
  return op;
}

FieldOperator covariant_substituted_nr_op(const EMPotential& a_old, const PauliParams& p) {
  check_params(p);
  const double m = p.m, q = p.q;
  const Vec3 w = p.boost.rapidity_vector();
  const EMPotential a = relabel_potential(a_old, p.boost);
  // D~_j f = d_j f - iq A^_j f with A^ = A + w phi'
  auto ahat = [a, w](const FourVector& x) { return Vec3(a.avec(x) + w * a.phi(x)); };
  auto dahat = [a, w](int mu, const FourVector& x) {
    return Vec3(a.davec(mu, x) + w * a.dphi(mu, x));
  };
  auto cov_d = [ahat, q](const AnalyticField& f, int j, const FourVector& x) -> VecC {
    return f.d(j, x) - imag_unit * q * ahat(x)[j - 1] * f.value(x);
  };
  const Mat2 sw = sigma_dot(w);
  FieldOperator op;
  op.name = "covariant_substituted_nr";
  op.components_in = 2;
  op.terms.push_back([a, q, w](const AnalyticField& f, const FourVector& x) -> VecC {
    const double pot = a.phi(x) + w.dot(a.avec(x));
    return imag_unit * f.d(0, x) - q * pot * f.value(x);
  });
  // (i/2)(sigma.D~)(sigma.w) and its negative, kept verbatim
  auto sdw_sd = [cov_d, sw](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = VecC::Zero(2);
    for (int j = 1; j < 4; ++j) out += pauli(j) * (sw * cov_d(f, j, x));
    return out;
  };
  op.terms.push_back([sdw_sd](const AnalyticField& f, const FourVector& x) -> VecC {
    return (imag_unit * 0.5) * sdw_sd(f, x);
  });
  // (1/2m)(sigma.D~)(sigma.D~)
  op.terms.push_back([cov_d, ahat, dahat, q, m](const AnalyticField& f,
                                                const FourVector& x) -> VecC {
    VecC out = VecC::Zero(2);
    const Vec3 av = ahat(x);
    for (int i = 1; i < 4; ++i)
      for (int j = 1; j < 4; ++j) {
        // D~_i D~_j f
        VecC dd = f.d2(i, j, x);
        dd -= imag_unit * q * dahat(i, x)[j - 1] * f.value(x);
        dd -= imag_unit * q * av[j - 1] * f.d(i, x);
        dd -= imag_unit * q * av[i - 1] * f.d(j, x);
        dd -= q * q * av[i - 1] * av[j - 1] * f.value(x);
        out += pauli(i) * (pauli(j) * dd);
      }
    return out / (2 * m);
  });
  op.terms.push_back([sdw_sd](const AnalyticField& f, const FourVector& x) -> VecC {
    return (-imag_unit * 0.5) * sdw_sd(f, x);
  });
  // (1/4m)(sigma.w) d0 (sigma.D~) : d0 acts on the shifted potential too
  op.terms.push_back([cov_d, ahat, dahat, sw, q, m](const AnalyticField& f,
                                                    const FourVector& x) -> VecC {
    VecC out = VecC::Zero(2);
    for (int j = 1; j < 4; ++j) {
      VecC d0cov = f.d2(0, j, x);
      d0cov -= imag_unit * q * (dahat(0, x)[j - 1] * f.value(x) + ahat(x)[j - 1] * f.d(0, x));
      out += sw * (pauli(j) * d0cov);
    }
    return out / (4 * m);
  });
  // (1/4m)(sigma.D~) d0 (sigma.w) : the inner d0 sees only the field
  op.terms.push_back([ahat, sw, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = VecC::Zero(2);
    const Vec3 av = ahat(x);
    for (int j = 1; j < 4; ++j) {
      VecC inner = sw * f.d2(j, 0, x);
      inner -= imag_unit * q * av[j - 1] * (sw * f.d(0, x));
      out += pauli(j) * inner;
    }
    return out / (4 * m);
  });
  return op;
}

FieldOperator naive_galilean_pauli_op(const EMPotential& a_old, const PauliParams& p) {
  check_params(p);
  const double m = p.m, q = p.q;
  const Vec3 w = p.boost.rapidity_vector();
  const EMPotential a = relabel_potential(a_old, p.boost);
  FieldOperator op;
  op.name = "naive_galilean_pauli";
  op.components_in = 2;
  op.terms.push_back([a, q](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * f.d(0, x) - q * a.phi(x) * f.value(x);
  });
  op.terms.push_back([w](const AnalyticField& f, const FourVector& x) -> VecC {
    return imag_unit * (w.x() * f.d(1, x) + w.y() * f.d(2, x) + w.z() * f.d(3, x));
  });
  op.terms.push_back([a, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    return covariant_laplacian(a, q, f, x) / (2 * m);
  });
  op.terms.push_back([a, q, m](const AnalyticField& f, const FourVector& x) -> VecC {
    return (q / (2 * m)) * sigma_dot_apply(curl_avec(a, x), f.value(x));
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = w.x() * f.d2(0, 1, x) + w.y() * f.d2(0, 2, x) + w.z() * f.d2(0, 3, x);
    out -= imag_unit * q * w.dot(a.avec(x)) * f.d(0, x);
    return out / m;
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    return (-imag_unit * q / (2 * m)) * w.dot(dt_avec(a, x)) * f.value(x);
  });
  return op;
}

FieldOperator pauli_difference_prediction(const EMPotential& a_old, const PauliParams& p) {
  check_params(p);
  const double m = p.m, q = p.q;
  const Vec3 w = p.boost.rapidity_vector();
  const EMPotential a = relabel_potential(a_old, p.boost);
  FieldOperator op;
  op.name = "traveling_minus_naive_pauli_prediction";
  op.components_in = 2;
  op.terms.push_back([a, q, w](const AnalyticField& f, const FourVector& x) -> VecC {
    return -q * w.dot(a.avec(x)) * f.value(x);
  });
  op.terms.push_back([w](const AnalyticField& f, const FourVector& x) -> VecC {
    return -imag_unit * (w.x() * f.d(1, x) + w.y() * f.d(2, x) + w.z() * f.d(3, x));
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    VecC out = -(w.x() * f.d2(0, 1, x) + w.y() * f.d2(0, 2, x) + w.z() * f.d2(0, 3, x));
    out += imag_unit * q * w.dot(a.avec(x)) * f.d(0, x);
    return out / (2 * m);
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    return (imag_unit * q / (2 * m)) * w.dot(dt_avec(a, x)) * f.value(x);
  });
  op.terms.push_back([a, q, m, w](const AnalyticField& f, const FourVector& x) -> VecC {
    const Vec3 e = -grad_phi(a, x) - dt_avec(a, x);
    const Vec3 u = grad_phi(a, x) + e;
    VecC out = w.dot(u) * f.value(x) + imag_unit * sigma_dot_apply(w.cross(u), f.value(x));
    return (imag_unit * q / (4 * m)) * out;
  });
  return op;
}

namespace {
ResidualReport finish(ResidualReport rep, const PauliParams& p) {
  rep.beta = p.boost.beta;
  rep.params.emplace_back("m", p.m);
  rep.params.emplace_back("q", p.q);
  return rep;
}
}  // namespace

ResidualReport residual_pauli(const AnalyticField& f, const EMPotential& a, const PauliParams& p,
                              const SamplePlan& plan, double tolerance) {
  ResidualReport rep = evaluate_residual(pauli_op(a, p), f, plan, tolerance);
  rep.family = f.family + "/" + a.family;
  return finish(std::move(rep), p);
}

ResidualReport residual_traveling_pauli(const AnalyticField& f, const EMPotential& a_old,
                                        const PauliParams& p, const SamplePlan& plan,
                                        double tolerance) {
  ResidualReport rep = evaluate_residual(traveling_pauli_op(a_old, p), f, plan, tolerance);
  rep.family = f.family + "/" + a_old.family;
  rep.mode = "first-order";
  return finish(std::move(rep), p);
}

ResidualReport pauli_chain_check(const AnalyticField& f, const EMPotential& a_old,
                                 const PauliParams& p, const SamplePlan& plan, double tolerance) {
  const FieldOperator mech = covariant_substituted_nr_op(a_old, p);
  const FieldOperator hand = traveling_pauli_intermediate_op(a_old, p);
  FieldOperator dev;
  dev.name = "pauli_chain_check";
  dev.components_in = 2;
  for (const auto& t : mech.terms) dev.terms.push_back(t);
  for (const auto& t : hand.terms)
    dev.terms.push_back(
        [t](const AnalyticField& g, const FourVector& x) -> VecC { return -t(g, x); });
  ResidualReport rep = evaluate_residual(dev, f, plan, tolerance);
  rep.family = f.family + "/" + a_old.family;
  rep.mode = "first-order";
  return finish(std::move(rep), p);
}

GaugeFunction gauge_function(double c0, const Vec3& cvec, double amp, double kappa,
                             const Vec3& khat) {
  GaugeFunction g;
  const Vec3 k = khat.normalized();
  auto arg = [kappa, k](const FourVector& x) { return kappa * (x.t - k.dot(x.spatial())); };
  auto darg = [kappa, k](int mu) { return mu == 0 ? kappa : -kappa * k[mu - 1]; };
  g.value = [c0, cvec, amp, arg](const FourVector& x) {
    return c0 * x.t + cvec.dot(x.spatial()) + amp * std::cos(arg(x));
  };
  g.d = [c0, cvec, amp, arg, darg](int mu, const FourVector& x) {
    const double lin = mu == 0 ? c0 : cvec[mu - 1];
    return lin - amp * std::sin(arg(x)) * darg(mu);
  };
  g.d2 = [amp, arg, darg](int mu, int nu, const FourVector& x) {
    return -amp * std::cos(arg(x)) * darg(mu) * darg(nu);
  };
  return g;
}

EMPotential gauge_shift_potential(const EMPotential& a, const GaugeFunction& chi) {
  EMPotential p;
  p.family = a.family + "-gauged";
  p.phi = [a, chi](const FourVector& x) { return a.phi(x) - chi.d(0, x); };
  p.dphi = [a, chi](int mu, const FourVector& x) { return a.dphi(mu, x) - chi.d2(0, mu, x); };
  p.avec = [a, chi](const FourVector& x) {
    return Vec3(a.avec(x) + Vec3(chi.d(1, x), chi.d(2, x), chi.d(3, x)));
  };
  p.davec = [a, chi](int mu, const FourVector& x) {
    return Vec3(a.davec(mu, x) +
                Vec3(chi.d2(mu, 1, x), chi.d2(mu, 2, x), chi.d2(mu, 3, x)));
  };
  return p;
}

AnalyticField gauge_phase_multiply(const AnalyticField& f, const GaugeFunction& chi, double q) {
  AnalyticField g;
  g.components = f.components;
  g.family = f.family + "-gauged";
  g.params = f.params;
  auto phase = [chi, q](const FourVector& x) {
    return std::exp(imag_unit * (q * chi.value(x)));
  };
  g.value = [f, phase](const FourVector& x) -> VecC { return phase(x) * f.value(x); };
  g.d = [f, chi, q, phase](int mu, const FourVector& x) -> VecC {
    return phase(x) * (f.d(mu, x) + imag_unit * q * chi.d(mu, x) * f.value(x));
  };
  if (f.has_d2()) {
    g.d2 = [f, chi, q, phase](int mu, int nu, const FourVector& x) -> VecC {
      const cplx iq(0.0, q);
      VecC out = f.d2(mu, nu, x);
      out += iq * chi.d(mu, x) * f.d(nu, x);
      out += iq * chi.d(nu, x) * f.d(mu, x);
      out += (iq * chi.d2(mu, nu, x) + iq * chi.d(mu, x) * iq * chi.d(nu, x)) * f.value(x);
      return phase(x) * out;
    };
  }
  return g;
}

AnalyticField landau_ground_state(double q, double b0) {
  if (!(q * b0 > 0)) throw std::domain_error("landau_ground_state requires q*B0 > 0");
  const double a = q * b0 / 4;
  AnalyticField f;
  f.components = 2;
  f.family = "landau-ground";
  f.params = {{"q", q}, {"b0", b0}};
  auto g_of = [a](const FourVector& x) {
    return std::exp(-a * (x.x * x.x + x.y * x.y));
  };
  auto fac = [a](const FourVector& x, int i) {  // d_i g / g for i in 1..3
    if (i == 1) return -2 * a * x.x;
    if (i == 2) return -2 * a * x.y;
    return 0.0;
  };
  f.value = [g_of](const FourVector& x) -> VecC {
    VecC v(2);
    v << g_of(x), 0.0;
    return v;
  };
  f.d = [g_of, fac](int mu, const FourVector& x) -> VecC {
    VecC v = VecC::Zero(2);
    if (mu != 0) v[0] = fac(x, mu) * g_of(x);
    return v;
  };
  f.d2 = [g_of, fac, a](int mu, int nu, const FourVector& x) -> VecC {
    VecC v = VecC::Zero(2);
    if (mu == 0 || nu == 0) return v;
    double coef = fac(x, mu) * fac(x, nu);
    if (mu == nu && mu <= 2) coef -= 2 * a;
    v[0] = coef * g_of(x);
    return v;
  };
  return f;
}

}  // namespace twdirac
