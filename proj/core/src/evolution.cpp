#include "twdirac/evolution.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "twdirac/report.hpp"

namespace twdirac {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_grid(const GridState& g) {
  if (g.dim != 1 && g.dim != 3) throw std::invalid_argument("grid dimension must be 1 or 3");
  if (!power_of_two(g.n)) throw std::invalid_argument("grid size must be a power of two");
  const long total = g.dim == 1 ? g.n : long(g.n) * g.n * g.n;
  if (g.amp.size() != total) throw std::invalid_argument("amplitude array size mismatch");
}

double cell_measure(const GridState& g) {
  const double dx = g.box / g.n;
  return g.dim == 1 ? dx : dx * dx * dx;
}

// forward transform of the amplitude array along every axis
std::vector<cplx> to_modes(const GridState& g) {
  std::vector<cplx> a(g.amp.data(), g.amp.data() + g.amp.size());
  if (g.dim == 1) {
    fft_radix2(a, -1);
    return a;
  }
  const int n = g.n;
  std::vector<cplx> line(n);
  // x lines
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y) {
      const long base = (long(z) * n + y) * n;
      for (int x = 0; x < n; ++x) line[x] = a[base + x];
      fft_radix2(line, -1);
      for (int x = 0; x < n; ++x) a[base + x] = line[x];
    }
  // y lines
  for (int z = 0; z < n; ++z)
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) line[y] = a[(long(z) * n + y) * n + x];
      fft_radix2(line, -1);
      for (int y = 0; y < n; ++y) a[(long(z) * n + y) * n + x] = line[y];
    }
  // z lines
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      for (int z = 0; z < n; ++z) line[z] = a[(long(z) * n + y) * n + x];
      fft_radix2(line, -1);
      for (int z = 0; z < n; ++z) a[(long(z) * n + y) * n + x] = line[z];
    }
  return a;
}

void from_modes(GridState& g, std::vector<cplx> a) {
  const double scale = 1.0 / double(g.amp.size());
  if (g.dim == 1) {
    fft_radix2(a, +1);
  } else {
    const int n = g.n;
    std::vector<cplx> line(n);
    for (int z = 0; z < n; ++z)
      for (int y = 0; y < n; ++y) {
        const long base = (long(z) * n + y) * n;
        for (int x = 0; x < n; ++x) line[x] = a[base + x];
        fft_radix2(line, +1);
        for (int x = 0; x < n; ++x) a[base + x] = line[x];
      }
    for (int z = 0; z < n; ++z)
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) line[y] = a[(long(z) * n + y) * n + x];
        fft_radix2(line, +1);
        for (int y = 0; y < n; ++y) a[(long(z) * n + y) * n + x] = line[y];
      }
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        for (int z = 0; z < n; ++z) line[z] = a[(long(z) * n + y) * n + x];
        fft_radix2(line, +1);
        for (int z = 0; z < n; ++z) a[(long(z) * n + y) * n + x] = line[z];
      }
  }
  for (long i = 0; i < g.amp.size(); ++i) g.amp[i] = a[i] * scale;
}

Vec3 mode_wave_vector(const GridState& g, long idx) {
  if (g.dim == 1) return {0, 0, wave_number(int(idx), g.n, g.box)};
  const int n = g.n;
  const int ix = int(idx % n), iy = int((idx / n) % n), iz = int(idx / (long(n) * n));
  return {wave_number(ix, n, g.box), wave_number(iy, n, g.box), wave_number(iz, n, g.box)};
}

std::vector<double> mode_frequencies(const GridState& g, Scheme s, const Vec3& v, double m) {
  std::vector<double> om(g.amp.size());
  for (long i = 0; i < g.amp.size(); ++i) om[i] = dispersion(s, mode_wave_vector(g, i), v, m);
  return om;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Traveling: return "traveling";
    case Scheme::Ordinary: return "ordinary";
    default: return "naive";
  }
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "traveling") return Scheme::Traveling;
  if (name == "ordinary") return Scheme::Ordinary;
  if (name == "naive" || name == "naive-galilean" || name == "naive_galilean")
    return Scheme::NaiveGalilean;
  throw std::invalid_argument("unknown scheme: " + name);
}

double GridState::l2_norm() const {
  return std::sqrt(amp.squaredNorm() * cell_measure(*this));
}

double dispersion(Scheme s, const Vec3& k, const Vec3& v, double m) {
  if (!(m > 0)) throw std::domain_error("dispersion requires m > 0");
  const double kinetic = k.squaredNorm() / (2 * m);
  switch (s) {
    case Scheme::Ordinary: return kinetic;
    case Scheme::NaiveGalilean: return kinetic + v.dot(k);
    case Scheme::Traveling: {
      const double denom = 1.0 + v.dot(k) / (2 * m);
      if (denom < 0.5)
        throw std::domain_error("dispersion guard violated: 1 + v.k/2m = " +
                                format_double17(denom) + " < 0.5");
      return kinetic / denom;
    }
  }
  throw std::logic_error("unhandled scheme");
}

void fft_radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / double(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx t = w * a[i + k + len / 2];
        a[i + k] = u + t;
        a[i + k + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
}

double wave_number(int j, int n, double box) {
  const int f = j <= n / 2 - 1 ? j : j - n;
  return 2.0 * std::numbers::pi * f / box;
}

GridState gaussian_grid_state(int dim, int n, double box, const Vec3& k0, double width) {
  if (!(width > 0)) throw std::domain_error("packet width must be positive");
  GridState g;
  g.dim = dim;
  g.n = n;
  g.box = box;
  const long total = dim == 1 ? n : long(n) * n * n;
  g.amp.resize(total);
  const double dx = box / n;
  auto coord = [&](int i) { return -box / 2 + dx * i; };
  if (dim == 1) {
    for (int i = 0; i < n; ++i) {
      const double z = coord(i);
      g.amp[i] = std::exp(cplx(-z * z / (2 * width * width), k0.z() * z));
    }
  } else {
    for (int iz = 0; iz < n; ++iz)
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const Vec3 r(coord(ix), coord(iy), coord(iz));
          g.amp[(long(iz) * n + iy) * n + ix] =
              std::exp(cplx(-r.squaredNorm() / (2 * width * width), k0.dot(r)));
        }
  }
  check_grid(g);
  return g;
}

GridState single_mode_state(int dim, int n, double box, const Eigen::Vector3i& mode) {
  GridState g;
  g.dim = dim;
  g.n = n;
  g.box = box;
  const long total = dim == 1 ? n : long(n) * n * n;
  g.amp.resize(total);
  const double dx = box / n;
  auto kc = [&](int m) { return 2.0 * std::numbers::pi * m / box; };
  if (dim == 1) {
    for (int i = 0; i < n; ++i) g.amp[i] = std::exp(imag_unit * (kc(mode.z()) * (dx * i)));
  } else {
    for (int iz = 0; iz < n; ++iz)
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
          g.amp[(long(iz) * n + iy) * n + ix] = std::exp(
              imag_unit * (kc(mode.x()) * (dx * ix) + kc(mode.y()) * (dx * iy) +
                           kc(mode.z()) * (dx * iz)));
  }
  check_grid(g);
  return g;
}

GridState propagate(const GridState& g, Scheme s, const Vec3& v, double m, double dt, int steps) {
  check_grid(g);
  if (!(dt > 0)) throw std::domain_error("time step must be positive");
  if (steps < 0) throw std::invalid_argument("step count must be non-negative");
  GridState out = g;
  if (steps == 0) return out;
  const auto om = mode_frequencies(g, s, v, m);  // guard enforced per mode here
  std::vector<cplx> modes = to_modes(g);
  const double tt = dt * steps;
  for (std::size_t i = 0; i < modes.size(); ++i)
    modes[i] *= std::exp(imag_unit * (-om[i] * tt));
  from_modes(out, std::move(modes));
  out.time = g.time + tt;
  return out;
}

CompareSeries compare_runs(const GridState& g, const std::vector<Scheme>& schemes, const Vec3& v,
                           double m, double dt, int steps) {
  check_grid(g);
  if (schemes.empty()) throw std::invalid_argument("at least one scheme required");
  CompareSeries out;
  out.schemes = schemes;
  const double meas = cell_measure(g) / double(g.amp.size());  // Parseval factor
  const std::vector<cplx> base = to_modes(g);
  std::vector<std::vector<double>> om;
  std::vector<std::vector<cplx>> state(schemes.size(), base);
  for (auto s : schemes) om.push_back(mode_frequencies(g, s, v, m));
  for (std::size_t a = 0; a < schemes.size(); ++a)
    for (std::size_t b = a + 1; b < schemes.size(); ++b)
      out.pairs.emplace_back(int(a), int(b));
  out.norms.resize(schemes.size());
  out.deviations.resize(out.pairs.size());
  for (int step = 0; step <= steps; ++step) {
    out.t.push_back(g.time + dt * step);
    if (step > 0) {
      for (std::size_t s = 0; s < schemes.size(); ++s)
        for (std::size_t i = 0; i < base.size(); ++i)
          state[s][i] *= std::exp(imag_unit * (-om[s][i] * dt));
    }
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      double n2 = 0;
      for (const cplx& c : state[s]) n2 += std::norm(c);
      out.norms[s].push_back(std::sqrt(n2 * meas));
    }
    for (std::size_t p = 0; p < out.pairs.size(); ++p) {
      const auto& sa = state[out.pairs[p].first];
      const auto& sb = state[out.pairs[p].second];
      double d2 = 0;
      for (std::size_t i = 0; i < base.size(); ++i) d2 += std::norm(sa[i] - sb[i]);
      out.deviations[p].push_back(std::sqrt(d2 * meas));
    }
  }
  return out;
}

void write_csv(const CompareSeries& series, std::ostream& os) {
  os << "t";
  for (auto s : series.schemes) os << ",norm_" << to_string(s);
  auto tag = [&](Scheme s) {
    switch (s) {
      case Scheme::Traveling: return "trav";
      case Scheme::Ordinary: return "ord";
      default: return "naive";
    }
  };
  for (const auto& p : series.pairs)
    os << ",dev_" << tag(series.schemes[p.first]) << "_" << tag(series.schemes[p.second]);
  os << "\n";
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    os << format_double17(series.t[i]);
    for (const auto& n : series.norms) os << "," << format_double17(n[i]);
    for (const auto& d : series.deviations) os << "," << format_double17(d[i]);
    os << "\n";
  }
}

double deviation_growth_rate(const GridState& g, Scheme a, Scheme b, const Vec3& v, double m) {
  check_grid(g);
  const std::vector<cplx> modes = to_modes(g);
  const double meas = cell_measure(g) / double(g.amp.size());
  double acc = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const Vec3 k = mode_wave_vector(g, long(i));
    const double gap = dispersion(a, k, v, m) - dispersion(b, k, v, m);
    acc += std::norm(modes[i]) * gap * gap;
  }
  return std::sqrt(acc * meas);
}

}  // namespace twdirac
