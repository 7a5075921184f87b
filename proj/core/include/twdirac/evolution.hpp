#pragma once

// Exact per-mode spectral evolution on periodic grids for the traveling-wave
// Schrodinger equation, the ordinary one, and the naive-Galilean form. All
// equations in scope are linear constant-coefficient, so the propagator is
// diagonal in mode space and carries no time-discretization error.

#include <iosfwd>
#include <string>
#include <vector>

#include "twdirac/algebra.hpp"

namespace twdirac {

enum class Scheme { Traveling, Ordinary, NaiveGalilean };
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct GridState {
  int dim = 1;        // 1 or 3
  int n = 0;          // points per axis, power of two
  double box = 1.0;   // periodic box length per axis
  double time = 0.0;
  Eigen::VectorXcd amp;  // n^dim values; 3D index ((iz*n)+iy)*n+ix

  double l2_norm() const;
};

/// Per-mode frequency. Traveling: (k^2/2m)/(1 + v.k/2m) with the validity
/// guard 1 + v.k/2m >= 0.5; ordinary: k^2/2m; naive: k^2/2m + v.k.
double dispersion(Scheme s, const Vec3& k, const Vec3& v, double m);

/// In-place radix-2 FFT; sign = -1 forward, +1 inverse (unscaled).
void fft_radix2(std::vector<cplx>& a, int sign);

/// Wave number of FFT bin j on an n-point axis of length box.
double wave_number(int j, int n, double box);

GridState gaussian_grid_state(int dim, int n, double box, const Vec3& k0, double width);
GridState single_mode_state(int dim, int n, double box, const Eigen::Vector3i& mode);

/// Spectral step: forward transform, phase e^{-i omega dt steps}, inverse.
GridState propagate(const GridState& g, Scheme s, const Vec3& v, double m, double dt, int steps);

struct CompareSeries {
  std::vector<Scheme> schemes;
  std::vector<double> t;
  // norms[s][step], deviations[pair][step] with pairs in canonical order
  std::vector<std::vector<double>> norms;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<double>> deviations;
};

/// Evolves copies of g under each scheme; per-step norms and pairwise L2
/// deviations, computed in mode space (Parseval).
CompareSeries compare_runs(const GridState& g, const std::vector<Scheme>& schemes, const Vec3& v,
                           double m, double dt, int steps);

/// CSV with header t,norm_<scheme>...,dev_<a>_<b>...; 17 significant digits.
void write_csv(const CompareSeries& series, std::ostream& os);

/// sqrt(sum |amp_k|^2 dOmega (deltaOmega)^2 / ...): the mode-weighted RMS
/// dispersion gap between two schemes; the predicted initial deviation growth
/// rate of compare_runs.
double deviation_growth_rate(const GridState& g, Scheme a, Scheme b, const Vec3& v, double m);

}  // namespace twdirac
