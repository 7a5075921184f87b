#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "twdirac/evolution.hpp"
#include "twdirac/fields.hpp"
#include "twdirac/harness.hpp"

using namespace twdirac;

TEST_CASE("dispersion relations") {
  const double m = 1.0;
  SUBCASE("all schemes coincide at v = 0") {
    const Vec3 k(0.4, -0.7, 1.1);
    const double want = k.squaredNorm() / (2 * m);
    for (auto s : {Scheme::Traveling, Scheme::Ordinary, Scheme::NaiveGalilean})
      CHECK(dispersion(s, k, Vec3::Zero(), m) == doctest::Approx(want).epsilon(1e-15));
  }
  SUBCASE("traveling mode frequency for k = z^, v = 0.1 z^") {
    const double om = dispersion(Scheme::Traveling, Vec3(0, 0, 1), Vec3(0, 0, 0.1), m);
    CHECK(om == doctest::Approx(0.5 / 1.05).epsilon(1e-14));
    CHECK(om == doctest::Approx(0.47619048).epsilon(1e-8));
  }
  SUBCASE("naive frequency adds v.k") {
    CHECK(dispersion(Scheme::NaiveGalilean, Vec3(0, 0, 1), Vec3(0, 0, 0.1), m) ==
          doctest::Approx(0.6).epsilon(1e-15));
  }
  SUBCASE("validity guard") {
    CHECK_THROWS_AS(dispersion(Scheme::Traveling, Vec3(0, 0, -20), Vec3(0, 0, 0.1), m),
                    std::domain_error);
    CHECK_NOTHROW(dispersion(Scheme::NaiveGalilean, Vec3(0, 0, -20), Vec3(0, 0, 0.1), m));
  }
  SUBCASE("leading traveling-naive gap is -(v.k)(1 + k^2/4m^2)") {
    const Vec3 k(0.3, 0.2, 0.9);
    std::vector<double> vs, gaps, dev_from_lead;
    for (int i = 0; i < 6; ++i) {
      const double v = 1e-3 * std::pow(10.0, i / 2.0);
      const Vec3 vv(0, 0, v);
      const double gap = dispersion(Scheme::Traveling, k, vv, m) -
                         dispersion(Scheme::NaiveGalilean, k, vv, m);
      const double lead = -vv.dot(k) * (1.0 + k.squaredNorm() / (4 * m * m));
      vs.push_back(v);
      gaps.push_back(std::abs(gap));
      dev_from_lead.push_back(std::abs(gap - lead));
    }
    const FitResult f1 = fit_slope(vs, gaps);
    CHECK(f1.slope == doctest::Approx(1.0).epsilon(0.05));
    const FitResult f2 = fit_slope(vs, dev_from_lead);
    CHECK(f2.slope >= 1.9);  // the registered leading form captures all of O(v)
  }
}

TEST_CASE("radix-2 fft") {
  SUBCASE("transform of a single mode is a delta") {
    const int n = 64;
    std::vector<cplx> a(n);
    for (int j = 0; j < n; ++j)
      a[j] = std::exp(imag_unit * (2.0 * std::numbers::pi * 5.0 * j / n));
    fft_radix2(a, -1);
    for (int j = 0; j < n; ++j) {
      const double want = j == 5 ? double(n) : 0.0;
      CHECK(std::abs(a[j] - want) <= 1e-11);
    }
  }
  SUBCASE("forward then inverse is n times the identity") {
    SplitMix64 rng(2);
    std::vector<cplx> a(128), orig;
    for (auto& c : a) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    orig = a;
    fft_radix2(a, -1);
    // parseval
    double phys = 0, spec = 0;
    for (const auto& c : orig) phys += std::norm(c);
    for (const auto& c : a) spec += std::norm(c);
    CHECK(spec / a.size() == doctest::Approx(phys).epsilon(1e-12));
    fft_radix2(a, +1);
    for (std::size_t j = 0; j < a.size(); ++j)
      CHECK(std::abs(a[j] / double(a.size()) - orig[j]) <= 1e-13);
  }
  SUBCASE("non-power-of-two sizes are rejected") {
    std::vector<cplx> a(48);
    CHECK_THROWS_AS(fft_radix2(a, -1), std::invalid_argument);
  }
}

TEST_CASE("spectral propagation") {
  const double m = 1.0;
  const Vec3 v(0, 0, 0.05);
  SUBCASE("single-mode evolution matches the analytic phase for any dt") {
    const GridState g = single_mode_state(1, 128, 40.0, Eigen::Vector3i(0, 0, 7));
    const double k = 2.0 * std::numbers::pi * 7 / 40.0;
    const double om = dispersion(Scheme::Traveling, Vec3(0, 0, k), v, m);
    for (double dt : {0.37, 4.9}) {
      const GridState out = propagate(g, Scheme::Traveling, v, m, dt, 3);
      const cplx expect = std::exp(imag_unit * (-om * dt * 3.0));
      double dev = 0;
      for (long i = 0; i < out.amp.size(); ++i)
        dev = std::max(dev, std::abs(out.amp[i] - expect * g.amp[i]));
      CHECK(dev <= 1e-12);
    }
  }
  SUBCASE("zero steps is the identity") {
    const GridState g = gaussian_grid_state(1, 64, 40.0, Vec3(0, 0, 0.5), 2.0);
    const GridState out = propagate(g, Scheme::Ordinary, v, m, 0.1, 0);
    CHECK((out.amp - g.amp).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("traveling at v = 0 matches ordinary bitwise") {
    const GridState g = gaussian_grid_state(1, 64, 40.0, Vec3(0, 0, 0.5), 2.0);
    const GridState a = propagate(g, Scheme::Traveling, Vec3::Zero(), m, 0.2, 5);
    const GridState b = propagate(g, Scheme::Ordinary, Vec3::Zero(), m, 0.2, 5);
    for (long i = 0; i < a.amp.size(); ++i) CHECK(a.amp[i] == b.amp[i]);
  }
  SUBCASE("norm conservation over 1000 steps") {
    const GridState g = gaussian_grid_state(1, 128, 40.0, Vec3(0, 0, 0.5), 2.0);
    const double n0 = g.l2_norm();
    for (auto s : {Scheme::Traveling, Scheme::Ordinary, Scheme::NaiveGalilean}) {
      const CompareSeries series = compare_runs(g, {s}, v, m, 0.05, 1000);
      for (double n : series.norms[0]) CHECK(std::abs(n - n0) <= 1e-12 * n0);
    }
  }
  SUBCASE("guard violation in propagate is an error") {
    const GridState g = gaussian_grid_state(1, 256, 40.0, Vec3(0, 0, 0.5), 2.0);
    CHECK_THROWS_AS(propagate(g, Scheme::Traveling, Vec3(0, 0, 0.1), m, 0.1, 1),
                    std::domain_error);
  }
  SUBCASE("3d round trip") {
    const GridState g = gaussian_grid_state(3, 16, 20.0, Vec3(0.3, 0.2, 0.4), 2.0);
    const GridState fwd = propagate(g, Scheme::Ordinary, Vec3::Zero(), m, 0.5, 2);
    CHECK(std::abs(fwd.l2_norm() - g.l2_norm()) <= 1e-12);
  }
  SUBCASE("malformed grids and steps are rejected") {
    GridState g = gaussian_grid_state(1, 64, 40.0, Vec3(0, 0, 0.5), 2.0);
    CHECK_THROWS_AS(propagate(g, Scheme::Ordinary, Vec3::Zero(), m, -0.1, 1), std::domain_error);
    CHECK_THROWS_AS(propagate(g, Scheme::Ordinary, Vec3::Zero(), m, 0.1, -1),
                    std::invalid_argument);
    g.n = 48;  // not a power of two
    g.amp.resize(48);
    CHECK_THROWS_AS(propagate(g, Scheme::Ordinary, Vec3::Zero(), m, 0.1, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("scheme comparison runs") {
  const double m = 1.0;
  const GridState g = gaussian_grid_state(1, 128, 40.0, Vec3(0, 0, 0.5), 2.0);
  SUBCASE("all pairwise deviations vanish at v = 0") {
    const CompareSeries s = compare_runs(
        g, {Scheme::Traveling, Scheme::Ordinary, Scheme::NaiveGalilean}, Vec3::Zero(), m, 0.1, 20);
    for (const auto& dev : s.deviations)
      for (double d : dev) CHECK(d <= 1e-12);
  }
  SUBCASE("a scheme against itself never deviates") {
    const CompareSeries s =
        compare_runs(g, {Scheme::Traveling, Scheme::Traveling}, Vec3(0, 0, 0.05), m, 0.1, 10);
    for (double d : s.deviations[0]) CHECK(d == 0.0);
  }
  SUBCASE("traveling-vs-naive deviation grows at the mode-weighted gap rate") {
    const Vec3 v(0, 0, 0.05);
    const CompareSeries s =
        compare_runs(g, {Scheme::Traveling, Scheme::NaiveGalilean}, v, m, 0.05, 40);
    const double predicted = deviation_growth_rate(g, Scheme::Traveling, Scheme::NaiveGalilean, v, m);
    // fit dev(t) ~ rate * t over the early, small-deviation stretch
    std::vector<double> ts(s.t.begin() + 1, s.t.end());
    std::vector<double> ds(s.deviations[0].begin() + 1, s.deviations[0].end());
    const FitResult fit = fit_slope(ts, ds);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.02));  // linear growth
    const double rate = ds.back() / ts.back();
    CHECK(rate == doctest::Approx(predicted).epsilon(0.1));
  }
  SUBCASE("csv layout") {
    const CompareSeries s = compare_runs(
        g, {Scheme::Traveling, Scheme::Ordinary, Scheme::NaiveGalilean}, Vec3(0, 0, 0.02), m, 0.1,
        2);
    std::ostringstream os;
    write_csv(s, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "t,norm_traveling,norm_ordinary,norm_naive,dev_trav_ord,dev_trav_naive,dev_ord_naive");
    int rows = 0;
    std::string line;
    while (std::getline(is, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 3);
  }
}

TEST_CASE("scheme names") {
  CHECK(scheme_from_string("traveling") == Scheme::Traveling);
  CHECK(scheme_from_string("naive-galilean") == Scheme::NaiveGalilean);
  CHECK(scheme_from_string("naive") == Scheme::NaiveGalilean);
  CHECK_THROWS_AS(scheme_from_string("leapfrog"), std::invalid_argument);
}
