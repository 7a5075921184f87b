#pragma once

// Order-of-accuracy sweeps, slope fitting, and report aggregation. Expected
// slope windows are data: they live in the sweep manifest (one JSON blob,
// sweep_manifest_json) so acceptance runs are auditable.

#include <filesystem>
#include <optional>

#include "twdirac/em.hpp"
#include "twdirac/equations.hpp"
#include "twdirac/pauli.hpp"

namespace twdirac {

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double r2 = 1;
};

/// Ordinary least squares on (log x, log y); throws on non-positive input,
/// fewer than two points, or coincident xs.
FitResult fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct SweepSpec {
  std::string id;
  std::string equation;
  std::string family;
  std::string measurement;
  double window_lo = 1.8;
  double window_hi = 2.5;
  double r2_min = 0.98;
  double eps_min = 1e-3;
  double eps_max = 1e-1;
  int points = 8;
  bool expect_floor_error = false;
};

/// The manifest, verbatim.
const std::string& sweep_manifest_json();
/// Parsed manifest entries, in manifest order.
const std::vector<SweepSpec>& registered_sweeps();
const SweepSpec& sweep_spec(const std::string& id);

struct SweepResult {
  std::string id;
  std::string equation;
  std::string family;
  Vec3 direction = Vec3::UnitZ();
  std::vector<double> eps;
  std::vector<double> residuals;
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  double window_lo = 0;
  double window_hi = 0;
  double r2_min = 0;
  bool pass = false;

  std::string to_json() const;
};

/// Runs the registered sweep `id` along `direction` over a geometric epsilon
/// grid. Joint scaling: beta = eps, |p|/m = eps/2 where a manufactured
/// solution is involved. Throws if any decaying-sweep residual reaches the
/// 1e-14 floor.
SweepResult order_sweep(const std::string& id, const Vec3& direction, double eps_min,
                        double eps_max, int points,
                        const SamplePlan& plan = SamplePlan{});

/// Sweep with the manifest's default grid.
SweepResult order_sweep(const std::string& id, const Vec3& direction = Vec3::UnitZ(),
                        const SamplePlan& plan = SamplePlan{});

/// Exact boosted, rest-mass-stripped plane-wave data assembled with
/// cancellation-free frequency arithmetic (E' - m built from small pieces).
struct StrippedModeData {
  AnalyticField big;          // Psi_L + Psi_R, 2 components
  AnalyticField small_exact;  // Psi_L - Psi_R
  AnalyticField full;         // 4-component stripped field
  double omega = 0;
  Vec3 k = Vec3::Zero();
};
StrippedModeData stripped_boosted_plane_wave(const Vec3& p, double m, const BoostSpec& b,
                                             int spin = 0);

/// Field families for single-equation verification runs.
AnalyticField manufactured_field(EquationId eq, const std::string& family, const Vec3& p,
                                 double m, const BoostSpec& b, std::uint64_t seed = 12345);

/// Writes reports/<equation>__<family>__<index>.json plus summary.md and
/// summary.json under out_dir; returns the overall pass conjunction.
bool aggregate(const std::vector<std::string>& report_jsons,
               const std::filesystem::path& out_dir);

}  // namespace twdirac
