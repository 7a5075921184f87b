#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twdirac/algebra.hpp"

namespace twdirac {

/// Residual norms for one equation/field/boost combination.
/// relative = l2_residual / max(l2_reference, 1e-300); pass <=> relative <= tolerance.
struct ResidualReport {
  std::string equation;
  std::string family;
  std::vector<std::pair<std::string, double>> params;
  Vec3 beta = Vec3::Zero();
  std::string mode = "exact";
  int samples = 0;
  double l2_residual = 0;
  double max_residual = 0;
  double l2_reference = 0;
  double relative = 0;
  double tolerance = 0;
  bool pass = false;

  void finalize();  // recomputes relative and pass from the norms
  std::string to_json() const;
};

/// Doubles serialized with 17 significant digits (round-trip exact).
std::string format_double17(double v);

/// Minimal JSON string escaping (quotes, backslashes, control characters).
std::string json_escape(const std::string& s);

}  // namespace twdirac
