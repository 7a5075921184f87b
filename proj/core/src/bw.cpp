#include "twdirac/bw.hpp"

#include <cmath>
#include <stdexcept>

namespace twdirac {

VecC apply_on_index(const Mat4& m, const VecC& v, int rank, int k) {
  if (rank == 1) return m * v;
  VecC out = VecC::Zero(16);
  if (k == 0) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) out[a * 4 + b] += m(a, c) * v[c * 4 + b];
  } else {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) out[a * 4 + b] += m(b, c) * v[a * 4 + c];
  }
  return out;
}

VecC swap_indices(const VecC& v) {
  VecC out(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out[a * 4 + b] = v[b * 4 + a];
  return out;
}

MultiSpinorField from_analytic(const AnalyticField& f) {
  if (f.components != 4) throw std::invalid_argument("rank-1 multi-spinor needs 4 components");
  MultiSpinorField m;
  m.rank = 1;
  m.symmetric = true;
  m.family = f.family;
  m.params = f.params;
  m.value = f.value;
  m.d = f.d;
  return m;
}

namespace {
MultiSpinorField product_mode(const VecC& tensor, double energy, const Vec3& k,
                              std::string family) {
  MultiSpinorField m;
  m.rank = 2;
  m.family = std::move(family);
  auto phase = [energy, k](const FourVector& x) {
    return std::exp(imag_unit * (k.dot(x.spatial()) - energy * x.t));
  };
  m.value = [tensor, phase](const FourVector& x) -> VecC { return tensor * phase(x); };
  m.d = [tensor, phase, energy, k](int mu, const FourVector& x) -> VecC {
    const cplx fac = mu == 0 ? cplx(0, -energy) : cplx(0, k[mu - 1]);
    return tensor * (fac * phase(x));
  };
  return m;
}

VecC spinor_of(const AnalyticField& pw) {
  // plane-wave amplitude at the origin event
  return pw.value(FourVector{0, 0, 0, 0});
}
}  // namespace

MultiSpinorField dirac_product_wave(const Vec3& p, double m, int spin1, int spin2) {
  const VecC u1 = spinor_of(dirac_plane_wave(p, m, spin1));
  const VecC u2 = spinor_of(dirac_plane_wave(p, m, spin2));
  VecC tensor(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      tensor[a * 4 + b] = 0.5 * (u1[a] * u2[b] + u2[a] * u1[b]);
  const double energy = std::hypot(p.norm(), m);
  MultiSpinorField f = product_mode(tensor, energy, p, "bw-product-planewave");
  f.symmetric = true;
  f.params = {{"m", m}, {"spin1", double(spin1)}, {"spin2", double(spin2)}};
  return f;
}

MultiSpinorField unsymmetrized_product_wave(const Vec3& p, double m, int spin1, int spin2) {
  const VecC u1 = spinor_of(dirac_plane_wave(p, m, spin1));
  const VecC u2 = spinor_of(dirac_plane_wave(p, m, spin2));
  VecC tensor(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) tensor[a * 4 + b] = u1[a] * u2[b];
  const double energy = std::hypot(p.norm(), m);
  MultiSpinorField f = product_mode(tensor, energy, p, "bw-unsym-product");
  f.symmetric = false;
  f.params = {{"m", m}, {"spin1", double(spin1)}, {"spin2", double(spin2)}};
  return f;
}

MultiSpinorField gaussian_multispinor(const Vec3& k0, double width) {
  const AnalyticField g = gaussian_packet(k0, width, 1);
  VecC tensor(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      tensor[a * 4 + b] = cplx(1.0 + 0.1 * a + 0.05 * b, 0.2 * a - 0.15 * b);
  MultiSpinorField m;
  m.rank = 2;
  m.symmetric = false;
  m.family = "bw-gaussian";
  m.value = [g, tensor](const FourVector& x) -> VecC { return tensor * g.value(x)[0]; };
  m.d = [g, tensor](int mu, const FourVector& x) -> VecC { return tensor * g.d(mu, x)[0]; };
  return m;
}

MultiSpinorField symmetrize(const MultiSpinorField& f) {
  if (f.rank != 2) return f;
  MultiSpinorField s = f;
  s.symmetric = true;
  s.family = "sym-" + f.family;
  auto fv = f.value;
  auto fd = f.d;
  s.value = [fv](const FourVector& x) -> VecC {
    const VecC v = fv(x);
    return 0.5 * (v + swap_indices(v));
  };
  s.d = [fd](int mu, const FourVector& x) -> VecC {
    const VecC v = fd(mu, x);
    return 0.5 * (v + swap_indices(v));
  };
  return s;
}

MultiSpinorField boost_multispinor(const MultiSpinorField& f, const BoostSpec& b) {
  const LorentzMatrix inv = lorentz_boost(b.inverse(), BoostMode::Exact);
  const Eigen::Matrix4d li = inv.m;
  MultiSpinorField g = f;
  g.family = "boosted-" + f.family;
  auto fv = f.value;
  auto fd = f.d;
  const int n = f.rank == 1 ? 4 : 16;
  auto pull = [inv](const FourVector& x) { return inv.apply(x); };
  g.value = [fv, pull](const FourVector& x) -> VecC { return fv(pull(x)); };
  g.d = [fd, pull, li, n](int mu, const FourVector& x) -> VecC {
    const FourVector y = pull(x);
    VecC out = VecC::Zero(n);
    for (int nu = 0; nu < 4; ++nu) out += li(nu, mu) * fd(nu, y);
    return out;
  };
  return g;
}

MultiSpinorField apply_matrix_all_indices(const MultiSpinorField& f, const Mat4& m) {
  MultiSpinorField g = f;
  auto fv = f.value;
  auto fd = f.d;
  const int rank = f.rank;
  auto apply_all = [m, rank](VecC v) {
    v = apply_on_index(m, v, rank, 0);
    if (rank == 2) v = apply_on_index(m, v, rank, 1);
    return v;
  };
  g.value = [fv, apply_all](const FourVector& x) -> VecC { return apply_all(fv(x)); };
  g.d = [fd, apply_all](int mu, const FourVector& x) -> VecC { return apply_all(fd(mu, x)); };
  return g;
}

double symmetry_deviation(const MultiSpinorField& f, const SamplePlan& plan) {
  if (f.rank != 2) return 0.0;
  const auto events = plan.events();
  double dev = 0, scale = 1e-300;
  const std::size_t stride = std::max<std::size_t>(1, events.size() / 8);
  for (std::size_t i = 0; i < events.size(); i += stride) {
    const VecC v = f.value(events[i]);
    dev = std::max(dev, (v - swap_indices(v)).cwiseAbs().maxCoeff());
    scale = std::max(scale, v.cwiseAbs().maxCoeff());
  }
  return dev / scale;
}

namespace {
ResidualReport bw_evaluate(const MultiSpinorField& f, double m, const Mat4& dress, int k,
                           const SamplePlan& plan, double tolerance, std::string name) {
  if (k < 0 || k >= f.rank) throw std::out_of_range("spinor index out of range");
  if (f.symmetric && f.rank == 2) {
    const double sdev = symmetry_deviation(f, plan);
    if (sdev > 1e-12)
      throw std::invalid_argument("multi-spinor flagged symmetric violates index symmetry");
  }
  const auto& g = gamma_weyl();
  const auto events = plan.events();
  const bool dressed = !dress.isIdentity(0.0);
  double sum2 = 0, maxr = 0, ref_kin = 0, ref_mass = 0;
  for (const auto& x : events) {
    VecC kin;
    bool first = true;
    for (int mu = 0; mu < 4; ++mu) {
      VecC dv = f.d(mu, x);
      if (dressed) {
        dv = apply_on_index(dress, dv, f.rank, 0);
        if (f.rank == 2) dv = apply_on_index(dress, dv, f.rank, 1);
      }
      VecC t = imag_unit * apply_on_index(g[mu], dv, f.rank, k);
      if (first) {
        kin = std::move(t);
        first = false;
      } else {
        kin += t;
      }
    }
    VecC v = f.value(x);
    if (dressed) {
      v = apply_on_index(dress, v, f.rank, 0);
      if (f.rank == 2) v = apply_on_index(dress, v, f.rank, 1);
    }
    const VecC mass = -m * v;
    const VecC r = kin + mass;
    sum2 += r.squaredNorm();
    maxr = std::max(maxr, r.cwiseAbs().maxCoeff());
    ref_kin += kin.squaredNorm();
    ref_mass += mass.squaredNorm();
  }
  ResidualReport rep;
  rep.equation = std::move(name);
  rep.family = f.family;
  rep.params = f.params;
  rep.params.emplace_back("index", double(k));
  rep.samples = static_cast<int>(events.size());
  rep.l2_residual = std::sqrt(sum2);
  rep.max_residual = maxr;
  rep.l2_reference = std::sqrt(std::max({ref_kin, ref_mass, 1e-300}));
  rep.tolerance = tolerance;
  rep.finalize();
  return rep;
}
}  // namespace

ResidualReport bw_residual(const MultiSpinorField& f, double m, int k, const SamplePlan& plan,
                           double tolerance) {
  return bw_evaluate(f, m, Mat4::Identity(), k, plan, tolerance, "bw_dirac");
}

VecC traveling_bw_apply(const MultiSpinorField& f, double m, const BoostSpec& b, BoostMode mode,
                        int k, const FourVector& x) {
  const Mat4 s = spinor_boost(b, mode).matrix;
  const auto& g = gamma_weyl();
  auto dress_all = [&](VecC v) {
    v = apply_on_index(s, v, f.rank, 0);
    if (f.rank == 2) v = apply_on_index(s, v, f.rank, 1);
    return v;
  };
  VecC out = -m * dress_all(f.value(x));
  for (int mu = 0; mu < 4; ++mu)
    out += imag_unit * apply_on_index(g[mu], dress_all(f.d(mu, x)), f.rank, k);
  return out;
}

ResidualReport traveling_bw_residual(const MultiSpinorField& f, double m, const BoostSpec& b,
                                     BoostMode mode, int k, const SamplePlan& plan,
                                     double tolerance) {
  const Mat4 s = spinor_boost(b, mode).matrix;
  ResidualReport rep = bw_evaluate(f, m, s, k, plan, tolerance, "traveling_bw");
  rep.beta = b.beta;
  rep.mode = mode == BoostMode::Exact ? "exact" : "first-order";
  return rep;
}

}  // namespace twdirac
