#include "twdirac/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace twdirac {

std::vector<FourVector> SamplePlan::events() const {
  std::vector<FourVector> ev;
  const int n = lattice_per_axis;
  if (n > 0) {
    ev.reserve(static_cast<std::size_t>(n) * n * n * n + random_events);
    auto coord = [](double lo, double hi, int i, int count) {
      return count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    };
    for (int it = 0; it < n; ++it)
      for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
          for (int iz = 0; iz < n; ++iz)
            ev.emplace_back(coord(0, time_extent, it, n), coord(-half_width, half_width, ix, n),
                            coord(-half_width, half_width, iy, n),
                            coord(-half_width, half_width, iz, n));
  }
  SplitMix64 rng(seed);
  for (int i = 0; i < random_events; ++i) {
    const double t = rng.uniform(0, time_extent);
    const double x = rng.uniform(-half_width, half_width);
    const double y = rng.uniform(-half_width, half_width);
    const double z = rng.uniform(-half_width, half_width);
    ev.emplace_back(t, x, y, z);
  }
  if (ev.empty()) throw std::invalid_argument("sample plan has no events");
  return ev;
}

SamplePlan SamplePlan::lattice_only(int per_axis) {
  SamplePlan p;
  p.lattice_per_axis = per_axis;
  p.random_events = 0;
  return p;
}

SamplePlan SamplePlan::randomized(int n, std::uint64_t seed) {
  SamplePlan p;
  p.lattice_per_axis = 0;
  p.random_events = n;
  p.seed = seed;
  return p;
}

AnalyticField mode_field(const VecC& amp, double omega, const Vec3& k, std::string family) {
  AnalyticField f;
  f.components = static_cast<int>(amp.size());
  f.family = std::move(family);
  f.params = {{"omega", omega}, {"kx", k.x()}, {"ky", k.y()}, {"kz", k.z()}};
  auto phase = [omega, k](const FourVector& x) {
    return std::exp(imag_unit * (k.dot(x.spatial()) - omega * x.t));
  };
  auto factor = [omega, k](int mu) {
    return mu == 0 ? cplx(0, -omega) : cplx(0, k[mu - 1]);
  };
  f.value = [amp, phase](const FourVector& x) -> VecC { return amp * phase(x); };
  f.d = [amp, phase, factor](int mu, const FourVector& x) -> VecC {
    return amp * (factor(mu) * phase(x));
  };
  f.d2 = [amp, phase, factor](int mu, int nu, const FourVector& x) -> VecC {
    return amp * (factor(mu) * factor(nu) * phase(x));
  };
  return f;
}

Eigen::Vector2cd sigma_eigenvector(const Vec3& n, int sign_index) {
  Eigen::Vector2cd v;
  const cplx nxy(n.x(), n.y());
  if (sign_index == 0) {  // eigenvalue +1
    if (n.z() > -0.5)
      v << cplx(1.0 + n.z(), 0.0), nxy;
    else
      v << std::conj(nxy), cplx(1.0 - n.z(), 0.0);
  } else {  // eigenvalue -1
    if (n.z() < 0.5)
      v << cplx(n.z() - 1.0, 0.0), nxy;
    else
      v << -std::conj(nxy), cplx(1.0 + n.z(), 0.0);
  }
  v.normalize();
  return v;
}

AnalyticField dirac_plane_wave(const Vec3& p, double m, int spin) {
  if (!(m > 0)) throw std::domain_error("dirac_plane_wave requires m > 0");
  if (spin != 0 && spin != 1) throw std::out_of_range("spin index must be 0 or 1");
  const double pm = p.norm();
  const double energy = std::hypot(pm, m);
  Eigen::Vector2cd xi = Eigen::Vector2cd::Zero();
  xi[spin] = 1.0;
  VecC u(4);
  u.segment<2>(0) = std::sqrt(m) * xi;
  u.segment<2>(2) = std::sqrt(m) * xi;
  if (pm > 0) {
    const BoostSpec bp = BoostSpec::from_rapidity(std::atanh(pm / energy), p / pm);
    u = spinor_boost(bp, BoostMode::Exact).matrix * u;
  }
  AnalyticField f = mode_field(u, energy, p, "planewave");
  f.params.insert(f.params.begin(), {{"m", m}, {"spin", static_cast<double>(spin)}});
  return f;
}

AnalyticField weyl_plane_wave(const Vec3& k, Chirality chi) {
  const double e = k.norm();
  if (!(e > 0)) throw std::domain_error("weyl_plane_wave requires |k| > 0");
  const Vec3 n = k / e;
  // left solutions carry the -1 helicity eigenvector, right the +1 one
  const Eigen::Vector2cd amp = sigma_eigenvector(n, chi == Chirality::Left ? 1 : 0);
  VecC a(2);
  a << amp[0], amp[1];
  AnalyticField f = mode_field(a, e, k, "weyl-planewave");
  f.params.insert(f.params.begin(),
                  {{"chirality", chi == Chirality::Left ? 0.0 : 1.0}});
  return f;
}

AnalyticField boost_field(const AnalyticField& f, const BoostSpec& b) {
  const LorentzMatrix inv = lorentz_boost(b.inverse(), BoostMode::Exact);
  const Eigen::Matrix4d li = inv.m;
  AnalyticField g;
  g.components = f.components;
  g.family = f.family.empty() ? "boosted" : "boosted-" + f.family;
  g.params = f.params;
  g.params.emplace_back("boost_eta", b.eta);
  g.params.emplace_back("boost_nx", b.nhat.x());
  g.params.emplace_back("boost_ny", b.nhat.y());
  g.params.emplace_back("boost_nz", b.nhat.z());
  auto pullback = [inv](const FourVector& x) { return inv.apply(x); };
  g.value = [f, pullback](const FourVector& x) { return f.value(pullback(x)); };
  g.d = [f, pullback, li](int mu, const FourVector& x) -> VecC {
    const FourVector y = pullback(x);
    VecC out = VecC::Zero(f.components);
    for (int nu = 0; nu < 4; ++nu) out += li(nu, mu) * f.d(nu, y);
    return out;
  };
  if (f.has_d2()) {
    g.d2 = [f, pullback, li](int mu, int nu, const FourVector& x) -> VecC {
      const FourVector y = pullback(x);
      VecC out = VecC::Zero(f.components);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) out += li(a, mu) * li(c, nu) * f.d2(a, c, y);
      return out;
    };
  }
  return g;
}

AnalyticField strip_rest_mass(const AnalyticField& f, double m) {
  if (m == 0.0) return f;
  AnalyticField g;
  g.components = f.components;
  g.family = "stripped-" + f.family;
  g.params = f.params;
  auto phase = [m](const FourVector& x) { return std::exp(imag_unit * (m * x.t)); };
  const cplx im_m = imag_unit * m;
  g.value = [f, phase](const FourVector& x) -> VecC { return phase(x) * f.value(x); };
  g.d = [f, phase, im_m](int mu, const FourVector& x) -> VecC {
    VecC out = f.d(mu, x);
    if (mu == 0) out += im_m * f.value(x);
    return phase(x) * out;
  };
  if (f.has_d2()) {
    g.d2 = [f, phase, im_m](int mu, int nu, const FourVector& x) -> VecC {
      VecC out = f.d2(mu, nu, x);
      if (mu == 0) out += im_m * f.d(nu, x);
      if (nu == 0) out += im_m * f.d(mu, x);
      if (mu == 0 && nu == 0) out += im_m * im_m * f.value(x);
      return phase(x) * out;
    };
  }
  return g;
}

namespace {
VecC default_chi(int n) {
  static const cplx table[4] = {{1.0, 0.0}, {0.7, 0.2}, {-0.3, 0.4}, {0.15, -0.55}};
  VecC chi(n);
  for (int i = 0; i < n; ++i) chi[i] = table[i % 4];
  return chi;
}
}  // namespace

AnalyticField gaussian_packet(const Vec3& k0, double width, int components) {
  return gaussian_packet(k0, width, default_chi(components));
}

AnalyticField gaussian_packet(const Vec3& k0, double width, const VecC& chi) {
  if (!(width > 0)) throw std::domain_error("gaussian_packet requires width > 0");
  AnalyticField f;
  f.components = static_cast<int>(chi.size());
  f.family = "gaussian";
  f.params = {{"k0x", k0.x()}, {"k0y", k0.y()}, {"k0z", k0.z()}, {"width", width}};
  const double w2 = width * width;
  // value = g(r) h(t) chi with g = exp(-|r|^2/2w^2 + i k0.r), h = 1 + t
  auto g_of = [k0, w2](const FourVector& x) {
    const Vec3 r = x.spatial();
    return std::exp(cplx(-r.squaredNorm() / (2 * w2), k0.dot(r)));
  };
  auto gfac = [k0, w2](const FourVector& x, int i) {  // d_i g / g
    const Vec3 r = x.spatial();
    return cplx(-r[i] / w2, k0[i]);
  };
  f.value = [chi, g_of](const FourVector& x) -> VecC { return chi * (g_of(x) * (1.0 + x.t)); };
  f.d = [chi, g_of, gfac, w2](int mu, const FourVector& x) -> VecC {
    const cplx g = g_of(x);
    if (mu == 0) return chi * g;
    return chi * (gfac(x, mu - 1) * g * (1.0 + x.t));
  };
  f.d2 = [chi, g_of, gfac, w2](int mu, int nu, const FourVector& x) -> VecC {
    const cplx g = g_of(x);
    if (mu == 0 && nu == 0) return VecC::Zero(chi.size());
    if (mu == 0) return chi * (gfac(x, nu - 1) * g);
    if (nu == 0) return chi * (gfac(x, mu - 1) * g);
    const int i = mu - 1, j = nu - 1;
    cplx coef = gfac(x, i) * gfac(x, j);
    if (i == j) coef -= 1.0 / w2;
    return chi * (coef * g * (1.0 + x.t));
  };
  return f;
}

AnalyticField schrodinger_mode(const Vec3& k, double omega, int components) {
  AnalyticField f = mode_field(default_chi(components), omega, k, "mode");
  return f;
}

AnalyticField map_components(const AnalyticField& f, const Eigen::MatrixXcd& m,
                             std::string family) {
  if (m.cols() != f.components)
    throw std::invalid_argument("component map has wrong input dimension");
  AnalyticField g;
  g.components = static_cast<int>(m.rows());
  g.family = family.empty() ? f.family : std::move(family);
  g.params = f.params;
  g.value = [f, m](const FourVector& x) -> VecC { return m * f.value(x); };
  g.d = [f, m](int mu, const FourVector& x) -> VecC { return m * f.d(mu, x); };
  if (f.has_d2())
    g.d2 = [f, m](int mu, int nu, const FourVector& x) -> VecC { return m * f.d2(mu, nu, x); };
  return g;
}

AnalyticField scale_field(const AnalyticField& f, cplx a) {
  AnalyticField g = f;
  g.value = [f, a](const FourVector& x) -> VecC { return a * f.value(x); };
  g.d = [f, a](int mu, const FourVector& x) -> VecC { return a * f.d(mu, x); };
  if (f.has_d2())
    g.d2 = [f, a](int mu, int nu, const FourVector& x) -> VecC { return a * f.d2(mu, nu, x); };
  else
    g.d2 = nullptr;
  return g;
}

AnalyticField add_fields(const AnalyticField& f, const AnalyticField& g) {
  if (f.components != g.components)
    throw std::invalid_argument("cannot add fields with different component counts");
  AnalyticField h;
  h.components = f.components;
  h.family = f.family + "+" + g.family;
  h.value = [f, g](const FourVector& x) -> VecC { return f.value(x) + g.value(x); };
  h.d = [f, g](int mu, const FourVector& x) -> VecC { return f.d(mu, x) + g.d(mu, x); };
  if (f.has_d2() && g.has_d2())
    h.d2 = [f, g](int mu, int nu, const FourVector& x) -> VecC {
      return f.d2(mu, nu, x) + g.d2(mu, nu, x);
    };
  return h;
}

namespace {
Eigen::MatrixXcd half_sum_matrix(double sign) {
  Eigen::MatrixXcd m(2, 4);
  m << 1, 0, sign, 0, 0, 1, 0, sign;
  return m;
}
}  // namespace

AnalyticField big_component(const AnalyticField& f4) {
  if (f4.components != 4) throw std::invalid_argument("big_component expects a 4-component field");
  return map_components(f4, half_sum_matrix(+1.0), "big-" + f4.family);
}

AnalyticField small_component_exact(const AnalyticField& f4) {
  if (f4.components != 4)
    throw std::invalid_argument("small_component_exact expects a 4-component field");
  return map_components(f4, half_sum_matrix(-1.0), "small-" + f4.family);
}

double fd_check(const AnalyticField& f, const SamplePlan& plan, double h) {
  if (!(h > 0)) throw std::domain_error("fd_check requires h > 0");
  const auto events = plan.events();
  double max_abs_dev = 0, scale = 0;
  for (const auto& x : events) {
    scale = std::max(scale, f.value(x).cwiseAbs().maxCoeff());
    for (int mu = 0; mu < 4; ++mu) {
      FourVector xp = x, xm = x;
      switch (mu) {
        case 0: xp.t += h; xm.t -= h; break;
        case 1: xp.x += h; xm.x -= h; break;
        case 2: xp.y += h; xm.y -= h; break;
        default: xp.z += h; xm.z -= h; break;
      }
      const VecC fd = (f.value(xp) - f.value(xm)) / (2 * h);
      const VecC cf = f.d(mu, x);
      max_abs_dev = std::max(max_abs_dev, (cf - fd).cwiseAbs().maxCoeff());
      scale = std::max(scale, cf.cwiseAbs().maxCoeff());
    }
  }
  return max_abs_dev / std::max(scale, 1e-300);
}

}  // namespace twdirac
