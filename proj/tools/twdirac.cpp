// Command-line front end: algebra self-tests, single-equation verification,
// truncation-order sweeps, spectral evolution runs, EM identity checks,
// Bargmann-Wigner verification, and report aggregation.
//
// Exit codes: 0 all checks pass, 1 tolerance/window failure, 2 usage or
// validation error. Diagnostics go to stderr, data to files or stdout.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twdirac/bw.hpp"
#include "twdirac/evolution.hpp"
#include "twdirac/harness.hpp"

namespace fs = std::filesystem;
using namespace twdirac;

namespace {

Vec3 parse_triple(const std::string& s, const std::string& flag) {
  Vec3 v;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> v.x() >> c1 >> v.y() >> c2 >> v.z()) || c1 != ',' || c2 != ',')
    throw CLI::ValidationError(flag, "expected three comma-separated numbers");
  std::string rest;
  if (is >> rest) throw CLI::ValidationError(flag, "expected three comma-separated numbers");
  return v;
}

BoostSpec boost_from_flag(const std::string& beta_str) {
  const Vec3 beta = parse_triple(beta_str, "--beta");
  if (!(beta.norm() < 1.0)) throw std::domain_error("beta magnitude must be < 1");
  return BoostSpec::from_beta(beta);
}

SamplePlan plan_from_flags(int samples, std::uint64_t seed) {
  SamplePlan plan;
  plan.random_events = samples;
  plan.seed = seed;
  return plan;
}

void write_file(const fs::path& path, const std::string& payload) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << payload << "\n";
}

int run_algebra_selftest(double tol) {
  struct Check {
    std::string name;
    double deviation;
  };
  std::vector<Check> checks;
  const auto& g = gamma_weyl();
  const auto& metric = minkowski_metric();
  double clifford = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Mat4 anti = g[mu] * g[nu] + g[nu] * g[mu];
      const Mat4 want = 2.0 * metric(mu, nu) * Mat4::Identity();
      clifford = std::max(clifford, (anti - want).cwiseAbs().maxCoeff());
    }
  checks.push_back({"clifford_relations", clifford});

  SplitMix64 rng(20240901);
  double sig = 0;
  for (int i = 0; i < 64; ++i) {
    Vec3 p, v;
    for (int j = 0; j < 3; ++j) p[j] = rng.uniform(-1, 1);
    for (int j = 0; j < 3; ++j) v[j] = rng.uniform(-1, 1);
    sig = std::max(sig, sigma_product_check(p, v));
  }
  checks.push_back({"sigma_product_formula", sig});

  double cov = 0, det = 0, metric_dev = 0, group = 0;
  for (int i = 0; i < 20; ++i) {
    Vec3 dir;
    for (int j = 0; j < 3; ++j) dir[j] = rng.uniform(-1, 1);
    if (dir.norm() < 1e-6) dir = Vec3::UnitZ();
    dir.normalize();
    const double bmag = rng.uniform(0.0, 0.9);
    const BoostSpec b = BoostSpec::from_beta(bmag * dir);
    cov = std::max(cov, check_covariance(b));
    const SpinorBoost s = spinor_boost(b, BoostMode::Exact);
    det = std::max(det, std::abs(s.matrix.determinant() - cplx(1.0, 0.0)));
    metric_dev =
        std::max(metric_dev, metric_preservation_deviation(lorentz_boost(b, BoostMode::Exact)));
    const BoostSpec half = BoostSpec::from_rapidity(b.eta / 2, b.nhat);
    const Eigen::Matrix4d prod = lorentz_boost(half, BoostMode::Exact).m *
                                 lorentz_boost(half, BoostMode::Exact).m;
    group = std::max(group,
                     (prod - lorentz_boost(b, BoostMode::Exact).m).cwiseAbs().maxCoeff());
  }
  checks.push_back({"spinor_covariance", cov});
  checks.push_back({"spinor_boost_determinant", det});
  checks.push_back({"metric_preservation", metric_dev});
  checks.push_back({"boost_group_property", group});

  double worst = 0;
  std::ostringstream os;
  os << "{\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    worst = std::max(worst, checks[i].deviation);
    if (i) os << ",";
    os << "{\"name\":\"" << checks[i].name
       << "\",\"deviation\":" << format_double17(checks[i].deviation) << "}";
  }
  const bool pass = worst <= tol;
  os << "],\"max_deviation\":" << format_double17(worst) << ",\"tolerance\":"
     << format_double17(tol) << ",\"pass\":" << (pass ? "true" : "false") << "}";
  std::cout << os.str() << "\n";
  return pass ? 0 : 1;
}

int run_verify(const std::string& equation, const std::string& family, const std::string& beta,
               const std::string& p_str, double m, double q, const std::string& mode_str,
               int samples, std::uint64_t seed, double tol, const std::string& out) {
  const BoostSpec b = boost_from_flag(beta);
  const Vec3 p = parse_triple(p_str, "--p");
  const SamplePlan plan = plan_from_flags(samples, seed);
  const BoostMode mode = mode_str == "first-order" ? BoostMode::FirstOrder : BoostMode::Exact;
  std::string eq = equation;
  std::replace(eq.begin(), eq.end(), '-', '_');

  ResidualReport rep;
  if (eq == "pauli" || eq == "traveling_pauli") {
    PauliParams params{m, q, b};
    const EMPotential pot = boost_adapted_potential(PotentialFamily::Plane, b);
    AnalyticField f = family == "gaussian"
                          ? gaussian_packet(p, 1.0, 2)
                          : schrodinger_mode(p, p.squaredNorm() / (2 * m), 2);
    rep = eq == "pauli" ? residual_pauli(f, pot, params, plan, tol)
                        : residual_traveling_pauli(f, pot, params, plan, tol);
  } else {
    const EquationId id = equation_from_string(eq);
    const AnalyticField f = manufactured_field(id, family, p, m, b, seed);
    const FieldOperator op = equation_op(id, m, b, mode);
    rep = evaluate_residual(op, f, plan, tol);
    rep.beta = b.beta;
    rep.mode = mode == BoostMode::Exact ? "exact" : "first-order";
  }
  write_file(out, rep.to_json());
  return rep.pass ? 0 : 1;
}

int run_sweep(const std::string& equation, const std::string& dir_str, double eps_min,
              double eps_max, int points, const std::string& out) {
  std::string id = equation;
  std::replace(id.begin(), id.end(), '-', '_');
  const Vec3 dir = parse_triple(dir_str, "--direction");
  const SweepResult res = order_sweep(id, dir, eps_min, eps_max, points, SamplePlan{});
  write_file(out, res.to_json());
  return res.pass ? 0 : 1;
}

int run_evolve(int dim, int n, double box, const std::string& beta, double m,
               const std::string& k0_str, double width, double dt, int steps,
               const std::string& schemes_str, const std::string& out) {
  const BoostSpec b = boost_from_flag(beta);
  const Vec3 k0 = parse_triple(k0_str, "--k0");
  std::vector<Scheme> schemes;
  std::stringstream ss(schemes_str);
  std::string tok;
  while (std::getline(ss, tok, ',')) schemes.push_back(scheme_from_string(tok));
  if (schemes.empty()) throw std::invalid_argument("no schemes given");
  const GridState g0 = gaussian_grid_state(dim, n, box, k0, width);
  const CompareSeries series = compare_runs(g0, schemes, b.beta, m, dt, steps);
  std::ostringstream os;
  write_csv(series, os);
  write_file(out, os.str().substr(0, os.str().size() - 1));  // write_file appends one \n
  return 0;
}

int run_em_check(const std::string& beta, const std::string& family, const std::string& out) {
  const BoostSpec b = boost_from_flag(beta);
  const PotentialFamily fam = potential_family_from_string(family);
  const EMPotential pot = boost_adapted_potential(fam, b);
  const ResidualReport rep = check_amu_identities(pot, b, SamplePlan{});
  write_file(out, rep.to_json());
  return rep.pass ? 0 : 1;
}

int run_bw_verify(double spin, const std::string& beta, const std::string& p_str, double m,
                  const std::string& mode_str) {
  const BoostSpec b = boost_from_flag(beta);
  const Vec3 p = parse_triple(p_str, "--p");
  const BoostMode mode = mode_str == "first-order" ? BoostMode::FirstOrder : BoostMode::Exact;
  const SamplePlan plan{};
  std::vector<ResidualReport> reps;
  if (spin == 0.5) {
    const MultiSpinorField f =
        boost_multispinor(from_analytic(dirac_plane_wave(p, m, 0)), b);
    reps.push_back(traveling_bw_residual(f, m, b, mode, 0, plan));
  } else if (spin == 1.0) {
    const MultiSpinorField f = boost_multispinor(dirac_product_wave(p, m, 0, 1), b);
    for (int k = 0; k < 2; ++k) reps.push_back(traveling_bw_residual(f, m, b, mode, k, plan));
  } else {
    throw std::invalid_argument("spin must be 0.5 or 1");
  }
  bool pass = true;
  std::cout << "[";
  for (std::size_t i = 0; i < reps.size(); ++i) {
    pass = pass && reps[i].pass;
    if (i) std::cout << ",";
    std::cout << reps[i].to_json();
  }
  std::cout << "]\n";
  return pass ? 0 : 1;
}

int run_report(const std::string& in_dir, const std::string& out_dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::string> payloads;
  for (const auto& f : files) {
    std::ifstream is(f);
    std::stringstream buf;
    buf << is.rdbuf();
    std::string s = buf.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (!s.empty()) payloads.push_back(std::move(s));
  }
  return aggregate(payloads, out_dir) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"traveling-wave Dirac/Pauli verification toolkit"};
  app.require_subcommand(1);

  // reserved: only natural units (hbar = c = 1) are implemented
  std::string units = "natural";
  app.add_option("--units", units)->check(CLI::IsMember({"natural"}));

  // algebra-selftest
  double tol = 1e-12;
  auto* selftest = app.add_subcommand("algebra-selftest", "run the algebra identity battery");
  selftest->add_option("--tol", tol, "max allowed deviation");

  // verify
  std::string equation = "traveling-dirac", family = "planewave", beta = "0,0,0",
              p_str = "0,0,0.05", mode = "exact", out = "report.json";
  double m = 1.0, q = 1.0, vtol = 1e-12;
  int samples = 125;
  std::uint64_t seed = 12345;
  auto* verify = app.add_subcommand("verify", "evaluate one equation residual");
  verify->add_option("--equation", equation, "equation id");
  verify->add_option("--family", family, "planewave|gaussian|stripped-planewave");
  verify->add_option("--beta", beta, "boost velocity x,y,z");
  verify->add_option("--p", p_str, "momentum (or packet k0) x,y,z");
  verify->add_option("--m", m, "mass");
  verify->add_option("--q", q, "charge coupling (pauli equations)");
  verify->add_option("--mode", mode)->check(CLI::IsMember({"exact", "first-order"}));
  verify->add_option("--samples", samples, "extra seeded sample events");
  verify->add_option("--seed", seed, "sample seed");
  verify->add_option("--tol", vtol, "pass tolerance on the relative residual");
  verify->add_option("--out", out, "report path");

  // sweep
  std::string sweep_eq = "traveling_dirac_first_order", dir_str = "0,0,1",
              sweep_out = "sweep.json";
  double eps_min = 1e-3, eps_max = 1e-1;
  int points = 8;
  auto* sweep = app.add_subcommand("sweep", "truncation-order sweep");
  sweep->add_option("--equation", sweep_eq, "registered sweep id");
  sweep->add_option("--direction", dir_str, "sweep direction x,y,z");
  sweep->add_option("--eps-min", eps_min);
  sweep->add_option("--eps-max", eps_max);
  sweep->add_option("--points", points);
  sweep->add_option("--out", sweep_out, "sweep result path");

  // evolve
  int dim = 1, n = 128, steps = 200;
  double box = 40.0, width = 2.0, dt = 0.05, em_mass = 1.0;
  std::string k0_str = "0,0,0.5", schemes = "traveling,ordinary,naive",
              evolve_beta = "0,0,0.05", evolve_out = "evolution.csv";
  auto* evolve = app.add_subcommand("evolve", "exact spectral evolution comparison");
  evolve->add_option("--dim", dim)->check(CLI::IsMember({1, 3}));
  evolve->add_option("--n", n, "points per axis (power of two)");
  evolve->add_option("--box", box, "periodic box length");
  evolve->add_option("--beta", evolve_beta, "scheme velocity x,y,z");
  evolve->add_option("--m", em_mass, "mass");
  evolve->add_option("--k0", k0_str, "packet carrier x,y,z");
  evolve->add_option("--width", width, "packet width");
  evolve->add_option("--dt", dt, "output interval");
  evolve->add_option("--steps", steps, "number of steps");
  evolve->add_option("--schemes", schemes, "comma list: traveling,ordinary,naive");
  evolve->add_option("--out", evolve_out, "CSV path");

  // em-check
  std::string em_beta = "0,0,0.1", em_family = "plane", em_out = "em.json";
  auto* em = app.add_subcommand("em-check", "potential-transform identity check");
  em->add_option("--beta", em_beta);
  em->add_option("--potential", em_family, "constant|plane|linear");
  em->add_option("--out", em_out);

  // bw-verify
  double spin = 0.5;
  std::string bw_beta = "0,0,0.1", bw_p = "0,0,0.05", bw_mode = "exact";
  double bw_m = 1.0;
  auto* bw = app.add_subcommand("bw-verify", "multi-spinor residuals per index");
  bw->add_option("--spin", spin)->check(CLI::IsMember({0.5, 1.0}));
  bw->add_option("--beta", bw_beta);
  bw->add_option("--p", bw_p);
  bw->add_option("--m", bw_m);
  bw->add_option("--mode", bw_mode)->check(CLI::IsMember({"exact", "first-order"}));

  // report
  std::string rep_in = "reports", rep_out = "summary";
  auto* report = app.add_subcommand("report", "aggregate report directory");
  report->add_option("--in", rep_in, "directory of report JSON files");
  report->add_option("--out", rep_out, "output directory for summary.md / summary.json");

  try {
    app.parse(argc, argv);
    if (selftest->parsed()) return run_algebra_selftest(tol);
    if (verify->parsed())
      return run_verify(equation, family, beta, p_str, m, q, mode, samples, seed, vtol, out);
    if (sweep->parsed()) return run_sweep(sweep_eq, dir_str, eps_min, eps_max, points, sweep_out);
    if (evolve->parsed())
      return run_evolve(dim, n, box, evolve_beta, em_mass, k0_str, width, dt, steps, schemes,
                        evolve_out);
    if (em->parsed()) return run_em_check(em_beta, em_family, em_out);
    if (bw->parsed()) return run_bw_verify(spin, bw_beta, bw_p, bw_m, bw_mode);
    if (report->parsed()) return run_report(rep_in, rep_out);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
