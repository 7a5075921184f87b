#include "twdirac/harness.hpp"

namespace twdirac {

// Expected truncation orders as data. "solution-residual" sweeps measure the
// relative residual of the equation on the exact boosted manufactured
// solution; "operator-truncation" sweeps measure the deviation between the
// first-order and exact operators on a fixed smooth probe field (on exact
// solutions the leading truncation term is annihilated and the residual
// super-converges one order higher, which the *_exact entries document).
const std::string& sweep_manifest_json() {
  static const std::string manifest = R"json({
  "sweeps": [
    {
      "id": "traveling_dirac_first_order",
      "equation": "traveling_dirac",
      "family": "gaussian-probe",
      "measurement": "operator-truncation",
      "window": [1.8, 2.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "traveling_dirac_solution_residual",
      "equation": "traveling_dirac",
      "family": "boosted-planewave",
      "measurement": "solution-residual",
      "window": [2.5, 3.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "traveling_dirac_exact",
      "equation": "traveling_dirac",
      "family": "boosted-planewave",
      "measurement": "solution-residual-exact-mode",
      "window": [0, 0], "r2_min": 0,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8,
      "expect_floor_error": true
    },
    {
      "id": "weyl_traveling_left",
      "equation": "weyl_traveling_left",
      "family": "gaussian-probe",
      "measurement": "operator-truncation",
      "window": [1.8, 2.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "weyl_traveling_right",
      "equation": "weyl_traveling_right",
      "family": "gaussian-probe",
      "measurement": "operator-truncation",
      "window": [1.8, 2.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "nr_dirac",
      "equation": "nr_dirac",
      "family": "stripped-planewave",
      "measurement": "solution-residual",
      "window": [1.8, 2.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "nr_schrodinger_traveling",
      "equation": "nr_schrodinger_traveling",
      "family": "stripped-planewave",
      "measurement": "solution-residual",
      "window": [1.8, 2.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "small_component",
      "equation": "small_component",
      "family": "stripped-planewave",
      "measurement": "formula-vs-exact, relative to the exact small component",
      "window": [1.8, 2.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "naive_galilean_contrast",
      "equation": "nr_schrodinger_traveling",
      "family": "gaussian",
      "measurement": "norm of (traveling - naive) on a fixed field",
      "window": [0.9, 1.1], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "bw_first_order",
      "equation": "traveling_bw",
      "family": "bw-gaussian-probe",
      "measurement": "operator-truncation, per index",
      "window": [1.7, 2.3], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "pauli_intermediate_vs_final",
      "equation": "traveling_pauli",
      "family": "gaussian/plane",
      "measurement": "intermediate-minus-final with potential amplitude scaled jointly with beta",
      "window": [1.8, 2.5], "r2_min": 0.98,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    },
    {
      "id": "em_amu_flatness",
      "equation": "amu_identities",
      "family": "plane-adapted",
      "measurement": "identity residual (clamped at 1e-14) vs beta; exact identity, no slope",
      "window": [-0.1, 0.1], "r2_min": 0,
      "eps_min": 1e-3, "eps_max": 1e-1, "points": 8
    }
  ]
})json";
  return manifest;
}

}  // namespace twdirac
