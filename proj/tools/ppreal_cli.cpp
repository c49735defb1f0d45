// Command-line front end: file-based pipelines over the library operations.
// Exit codes: 0 = all checks pass, 2 = a realizability check answered "no",
// 1 = usage or computation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppreal/ppreal.hpp"

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

ppr::CorrelationSpec load_spec(const std::string& path) {
  return ppr::spec_from_json(read_json(path));
}

struct GridRange {
  double from, to, step;
};

GridRange parse_grid(const std::string& s) {
  GridRange g;
  char colon1, colon2;
  std::istringstream in(s);
  if (!(in >> g.from >> colon1 >> g.to >> colon2 >> g.step) || colon1 != ':' || colon2 != ':' ||
      g.step <= 0)
    throw std::runtime_error("grid must be A:B:STEP with positive STEP");
  return g;
}

int run_check(const std::string& spec_path, const std::string& out_path) {
  auto spec = load_spec(spec_path);
  std::ostringstream csv;
  csv << "condition,quantity,value,pass\n";
  bool all_pass = true;

  auto issues = ppr::check_pointwise(spec);
  csv << "pointwise,negative_entries," << issues.size() << "," << (issues.empty() ? 1 : 0)
      << "\n";
  all_pass = all_pass && issues.empty();

  auto psd = ppr::covariance_psd(spec);
  csv << "covariance_psd,min_eigenvalue," << fmt(psd.min_eigenvalue) << "," << (psd.pass ? 1 : 0)
      << "\n";
  all_pass = all_pass && psd.pass;

  if (spec.translation_invariant() && spec.domain.periodic()) {
    auto sf = ppr::structure_function(spec);
    csv << "structure_function,min_value," << fmt(sf.min_value) << "," << (sf.pass ? 1 : 0)
        << "\n";
    all_pass = all_pass && sf.pass;
  }

  auto ym = ppr::yamada_check(spec);
  double slack = 0;
  if (ym.binding_window >= 0) {
    const auto& w = ym.windows[ym.binding_window];
    slack = w.variance - w.bound;
  }
  csv << "yamada,binding_slack," << fmt(slack) << "," << (ym.pass ? 1 : 0) << "\n";
  all_pass = all_pass && ym.pass;

  write_text(out_path, csv.str());
  std::cerr << (all_pass ? "all conditions pass" : "some condition failed") << "\n";
  return all_pass ? 0 : 2;
}

int run_build_exact(const std::string& spec_path, const std::string& out_path) {
  auto spec = load_spec(spec_path);
  auto oracle =
      spec.triplet ? ppr::triplet_ansatz_oracle(spec) : ppr::pair_ansatz_oracle(spec);
  auto mu = ppr::inclusion_exclusion_measure(oracle, spec.domain);
  write_text(out_path, ppr::measure_to_json(mu, spec.domain).dump(2) + "\n");
  bool ok = mu.is_unsigned();
  std::cerr << "measure " << (ok ? "unsigned" : "signed") << ", total " << fmt(mu.total())
            << ", min weight " << fmt(mu.min_weight()) << "\n";
  return ok ? 0 : 2;
}

int run_maxent(const std::string& spec_path, const std::string& out_path,
               const std::string& measure_out) {
  auto spec = load_spec(spec_path);
  try {
    auto [mu, pot] = ppr::maxent_gibbs(spec);
    write_text(out_path, ppr::potentials_to_json(pot).dump(2) + "\n");
    if (!measure_out.empty())
      write_text(measure_out, ppr::measure_to_json(mu, spec.domain).dump(2) + "\n");
    std::cerr << "maxent solved, logZ " << fmt(pot.log_z) << "\n";
    return 0;
  } catch (const ppr::infeasible_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ppr::boundary_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

int run_radius(const std::string& spec_path, const std::string& out_path) {
  auto spec = load_spec(spec_path);
  std::ostringstream csv;
  csv << "quantity,value,inputs\n";
  double c = spec.pair.c_of_g();
  double b = ppr::stability_b(spec.pair);
  csv << "C," << fmt(c) << ",g\n";
  csv << "b," << fmt(b) << ",g\n";
  csv << "as_radius," << fmt(ppr::as_radius(b, c)) << ",e*b*C\n";
  if (spec.triplet) {
    int d = spec.domain.dimension();
    ppr::StabilityConstants k;
    k.b = b;
    k.c = c;
    k.c3 = spec.triplet->c3();
    k.hard_core_range = spec.triplet->hard_core_range();
    k.triplet_range = spec.triplet->triplet_range();
    csv << "C3," << fmt(k.c3) << ",g3\n";
    csv << "v_d," << fmt(ppr::sphere_volume(d)) << "," << d << "\n";
    csv << "triplet_radius," << fmt(ppr::triplet_radius(k, d)) << ",default_b3\n";
  }
  write_text(out_path, csv.str());
  return 0;
}

int run_leeyang(const std::string& spec_path, const std::string& out_path) {
  auto spec = load_spec(spec_path);
  std::ostringstream csv;
  csv << "quantity,value,inputs\n";
  double b = ppr::leeyang_b(spec.pair, spec.domain);
  csv << "b," << fmt(b) << ",G2\n";
  csv << "threshold," << fmt(ppr::leeyang_threshold(b)) << ",1/b\n";
  int code = 0;
  if (spec.domain.size() <= 16) {
    auto scan = ppr::leeyang_scan(spec);
    csv << "min_xi," << fmt(scan.min_xi) << ",exhaustive\n";
    csv << "z_lower_bound," << fmt(scan.z_lower_bound) << ",(rho*b)^-1\n";
    if (!scan.all_positive) code = 2;
  }
  write_text(out_path, csv.str());
  return code;
}

int run_bounds_alpha(const std::string& grid, const std::string& out_path) {
  auto g = parse_grid(grid);
  std::vector<double> alphas;
  for (double a = g.from; a <= g.to + 1e-12; a += g.step) alphas.push_back(a);
  auto rows = ppr::bounds_table(alphas);
  std::ostringstream csv;
  csv << "alpha,R_F,R_Y,r_A,r_S,r_B\n";
  for (const auto& r : rows) {
    csv << fmt(r.alpha) << "," << fmt(r.rf) << "," << fmt(r.ry) << "," << fmt(r.ra) << ",";
    if (r.rs) csv << fmt(*r.rs);
    csv << ",";
    if (r.rb) csv << fmt(*r.rb);
    csv << "\n";
  }
  write_text(out_path, csv.str());
  return 0;
}

int run_sample(const std::string& measure_path, std::size_t count, std::uint64_t seed,
               const std::string& out_path) {
  auto [mu, dom] = ppr::measure_from_json(read_json(measure_path));
  auto samples = ppr::sample_measure(mu, count, seed);
  std::ostringstream out;
  for (ppr::Config c : samples) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%x\n", c);
    out << buf;
  }
  write_text(out_path, out.str());
  return 0;
}

int run_estimate(const std::string& samples_path, int ring, int max_lag,
                 const std::string& spec_path, const std::string& out_path) {
  std::ifstream in(samples_path);
  if (!in) throw std::runtime_error("cannot open " + samples_path);
  std::vector<ppr::Config> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    samples.push_back(static_cast<ppr::Config>(std::stoul(line, nullptr, 16)));
  }
  auto rep = ppr::estimate_correlations(samples, ring, max_lag);
  bool pass = true;
  if (!spec_path.empty()) pass = ppr::compare(rep, load_spec(spec_path));
  std::ostringstream csv;
  csv << "lag,estimate,stderr,target,z\n";
  csv << "0," << fmt(rep.rho_hat) << "," << fmt(rep.rho_stderr) << "," << fmt(rep.rho_target)
      << "," << fmt(rep.rho_z) << "\n";
  for (const auto& le : rep.lags)
    csv << le.lag << "," << fmt(le.estimate) << "," << fmt(le.stderr_) << "," << fmt(le.target)
        << "," << fmt(le.z) << "\n";
  write_text(out_path, csv.str());
  return pass ? 0 : 2;
}

int run_certify(const std::string& spec_path, const std::string& out_path) {
  auto spec = load_spec(spec_path);
  auto out = ppr::lp_feasible(spec);
  if (out.feasible) {
    write_text(out_path, ppr::measure_to_json(*out.measure, spec.domain).dump(2) + "\n");
    std::cerr << "feasible; realizing measure written\n";
    return 0;
  }
  const auto& cert = *out.certificate;
  nlohmann::json j;
  j["f0"] = cert.f0;
  j["f1"] = cert.f1;
  nlohmann::json f2 = nlohmann::json::array();
  int n = static_cast<int>(cert.f1.size());
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (cert.f2[i][k] != 0.0) f2.push_back({{"i", i}, {"j", k}, {"value", cert.f2[i][k]}});
  j["f2"] = std::move(f2);
  j["pairing_value"] = ppr::pairing_value(cert, spec);
  j["admissible"] = ppr::verify_certificate(cert, spec.domain);
  write_text(out_path, j.dump(2) + "\n");
  std::cerr << "infeasible; certificate written, pairing value "
            << fmt(ppr::pairing_value(cert, spec)) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-process realizability toolkit"};
  app.require_subcommand(1);

  std::string spec_path, out_path, measure_path, measure_out, samples_path, grid;
  std::uint64_t seed = 0;
  std::size_t count = 1000;
  int ring = 0, max_lag = 1;

  auto* check = app.add_subcommand("check", "run the necessary conditions on a spec");
  check->add_option("--spec", spec_path)->required();
  check->add_option("--out", out_path)->required();

  auto* build = app.add_subcommand("build-exact", "inclusion-exclusion measure from the ansatz");
  build->add_option("--spec", spec_path)->required();
  build->add_option("--out", out_path)->required();

  auto* maxent = app.add_subcommand("maxent", "entropy-maximizing Gibbs realization");
  maxent->add_option("--spec", spec_path)->required();
  maxent->add_option("--out", out_path)->required();
  maxent->add_option("--measure-out", measure_out);

  auto* radius = app.add_subcommand("radius", "cluster-expansion realizability radii");
  radius->add_option("--spec", spec_path)->required();
  radius->add_option("--out", out_path)->required();

  auto* leeyang = app.add_subcommand("leeyang", "Lee-Yang threshold and partition sums");
  leeyang->add_option("--spec", spec_path)->required();
  leeyang->add_option("--out", out_path)->required();

  auto* bounds = app.add_subcommand("bounds-alpha", "bound curves for the alpha family");
  bounds->add_option("--grid", grid)->required();
  bounds->add_option("--out", out_path)->required();

  auto* sample = app.add_subcommand("sample", "draw configurations from a measure");
  sample->add_option("--measure", measure_path)->required();
  sample->add_option("--count", count);
  sample->add_option("--seed", seed);
  sample->add_option("--out", out_path)->required();

  auto* estimate = app.add_subcommand("estimate", "estimate correlations from samples");
  estimate->add_option("--samples", samples_path)->required();
  estimate->add_option("--ring", ring)->required();
  estimate->add_option("--max-lag", max_lag)->required();
  estimate->add_option("--spec", spec_path);
  estimate->add_option("--out", out_path)->required();

  auto* certify = app.add_subcommand("certify", "LP feasibility with Farkas certificate");
  certify->add_option("--spec", spec_path)->required();
  certify->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) return run_check(spec_path, out_path);
    if (*build) return run_build_exact(spec_path, out_path);
    if (*maxent) return run_maxent(spec_path, out_path, measure_out);
    if (*radius) return run_radius(spec_path, out_path);
    if (*leeyang) return run_leeyang(spec_path, out_path);
    if (*bounds) return run_bounds_alpha(grid, out_path);
    if (*sample) return run_sample(measure_path, count, seed, out_path);
    if (*estimate) return run_estimate(samples_path, ring, max_lag, spec_path, out_path);
    if (*certify) return run_certify(spec_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
