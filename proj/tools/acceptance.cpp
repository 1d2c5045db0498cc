#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcm/config.hpp"
#include "qcm/pipeline.hpp"
#include "qcm/verify.hpp"

using namespace qcm;

namespace {

struct Outcome {
  int id;
  bool pass;
  std::string detail;
  double seconds;
};

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

green::GreenConfig noiseless(const RunConfig& cfg) {
  green::GreenConfig gc = cfg.green_config();
  gc.mode = vqe::EvalMode::Exact;
  return gc;
}

Outcome c1(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = pipeline::make_model(cfg.hubbard(3.0));
  const auto r = vqe::minimize(m.h, vqe::default_dimer_layout(), cfg.phi_samples, vqe::EvalMode::Exact);
  const double s = since(t0);
  const double err = std::abs(r.estimate.value + 4.0);
  return {1, err < 1e-6 && s < 1.0, "E=" + num(r.estimate.value) + " |E+4|=" + num(err) + " (< 1e-6), " + num(s) + " s (< 1 s)", s};
}

Outcome c2(const RunConfig& base, int seeds) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg = base;
  cfg.u_sweep = {0, 1, 2, 3, 4, 5};
  cfg.mode = vqe::EvalMode::Exact;
  double worst = 0.0;
  for (const auto& row : pipeline::ground_sweep(cfg)) worst = std::max(worst, std::abs(row.raw - row.exact));
  cfg.mode = vqe::EvalMode::Sampled;
  cfg.noise = 1e-4;
  cfg.shots = 12000;
  cfg.mitigation_seeds = seeds;
  int better = 0;
  std::ostringstream rows;
  for (const auto& row : pipeline::ground_sweep(cfg)) {
    const double er = std::abs(row.raw - row.exact), em = std::abs(row.mitigated - row.exact);
    better += em < er;
    rows << " U" << row.U << ":" << er << "/" << em;
  }
  const double s = since(t0);
  return {2, worst < 1e-6 && better >= 5 && s < 600.0,
          "exact max dev " + num(worst) + " (< 1e-6); mitigated closer for " + std::to_string(better) +
              "/6 (>= 5) over " + std::to_string(seeds) + " seeds, |raw-ED|/|dzne-ED|" + rows.str() + "; " +
              num(s) + " s (< 600 s)",
          s};
}

Outcome c3(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = pipeline::make_model(cfg.hubbard(3.0));
  const auto prep = green::GroundPreparation::exact(m.ground_state());
  const auto plan = green::resolve(cfg.green_config().plan, m.h, m.ordering);
  std::mt19937_64 rng(mix_seed(cfg.seed, 0xacc3));
  std::uniform_int_distribution<int> q(0, m.ordering.nqubits() - 1);
  std::uniform_real_distribution<double> t(0.0, 30.0);
  double dev = 0.0, ident = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto li = jw_ladder(q(rng), m.ordering.nqubits()), lj = jw_ladder(q(rng), m.ordering.nqubits());
    const PauliString si = (rng() & 1) ? li.xbar : li.ybar, sj = (rng() & 1) ? lj.xbar : lj.ybar;
    const Circuit u = green::trotter_circuit(m.h, t(rng), plan);
    const auto out = green::hadamard_test_F(si, sj, u, prep, vqe::EvalMode::Exact);
    dev = std::max(dev, std::abs(out.F - green::direct_F(si, sj, u, m.ground_state())));
    ident = std::max(ident, std::abs(out.F - 2 * (2 * out.p_plus - 1)));
  }
  return {3, dev < 1e-10 && ident == 0.0,
          "max |F - direct| " + num(dev) + " (< 1e-10) on 20 cases; max |F - 2(2p+ - 1)| " + num(ident), since(t0)};
}

struct GreenRuns {
  pipeline::ClusterModel model;
  spectral::QuadratureRule rule;
  green::GreenTimeSeries clean, noisy;
  std::vector<cplx> ref;
  double seconds = 0.0;
};

GreenRuns green_runs(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  GreenRuns r;
  r.model = pipeline::make_model(cfg.hubbard(3.0));
  r.rule = spectral::legendre_rule(cfg.quadrature_nodes, cfg.t_max);
  const auto prep = green::GroundPreparation::exact(r.model.ground_state());
  const int q = r.model.ordering.qubit({0, Spin::Up});
  r.clean = green::retarded_g(r.model.h, r.model.ordering, 0, 0, Spin::Up, r.rule.nodes, prep, noiseless(cfg));
  green::GreenConfig gc = cfg.green_config();
  gc.mode = vqe::EvalMode::Sampled;
  gc.sampling.noise = {1e-4, mix_seed(cfg.seed, 0xacc4)};
  gc.sampling.shots = 12000;
  r.noisy = green::retarded_g(r.model.h, r.model.ordering, 0, 0, Spin::Up, r.rule.nodes, prep, gc);
  r.ref = ed::exact_g_t(r.model.ed, q, q, r.rule.nodes);
  r.seconds = since(t0);
  return r;
}

Outcome c4(const RunConfig& cfg, const GreenRuns& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto window = spectral::uniform_grid(0.0, 10.0, 201);
  const auto prep = green::GroundPreparation::exact(g.model.ground_state());
  auto gc = noiseless(cfg);
  gc.plan.n_tau = 60;
  const auto s = green::retarded_g(g.model.h, g.model.ordering, 0, 0, Spin::Up, window, prep, gc);
  const int q = g.model.ordering.qubit({0, Spin::Up});
  const auto ref = ed::exact_g_t(g.model.ed, q, q, window);
  double small_t = 0.0, damped = 0.0, raw_noisy = 0.0;
  for (std::size_t k = 0; k < window.size(); ++k) small_t = std::max(small_t, std::abs(s.g[k].imag() - ref[k].imag()));
  for (std::size_t k = 0; k < g.rule.size(); ++k) {
    const double t = g.rule.nodes[k];
    damped = std::max(damped, std::exp(-0.2 * t) * std::abs(g.noisy.g[k] - g.ref[k]));
    if (t <= 10.0) raw_noisy = std::max(raw_noisy, std::abs(g.noisy.g[k].imag() - g.ref[k].imag()));
  }
  return {4, small_t < 0.05 && damped < 0.05,
          "noiseless max |Im G - ED| on [0,10] " + num(small_t) + " (< 0.05); p=1e-4 max |Im G - ED| on [0,10] " +
              num(raw_noisy) + ", damped max dev on t<=30 " + num(damped) + " (< 0.05)",
          since(t0) + g.seconds};
}

Outcome c5(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = pipeline::make_model(cfg.hubbard(3.0));
  const auto window = spectral::uniform_grid(0.0, 10.0, 201);
  const auto prep = green::GroundPreparation::exact(m.ground_state());
  const int q = m.ordering.qubit({0, Spin::Up});
  const auto ref = ed::exact_g_t(m.ed, q, q, window);
  std::vector<double> errs;
  std::ostringstream d;
  for (int n : {15, 30, 60, 120, 240}) {
    auto gc = noiseless(cfg);
    gc.plan.n_tau = n;
    const auto s = green::retarded_g(m.h, m.ordering, 0, 0, Spin::Up, window, prep, gc);
    double e = 0.0;
    for (std::size_t k = 0; k < window.size(); ++k) e = std::max(e, std::abs(s.g[k].imag() - ref[k].imag()));
    errs.push_back(e);
    d << " " << n << ":" << e;
  }
  bool mono = true;
  for (std::size_t k = 1; k < errs.size(); ++k) mono = mono && errs[k] < errs[k - 1];
  return {5, mono, "max |Im G - ED| on [0,10] per N_tau" + d.str(), since(t0)};
}

Outcome c6(const RunConfig& cfg, const GreenRuns& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto omega = cfg.omega_grid();
  const double step = omega[1] - omega[0];
  const auto clean = spectral::spectral(spectral::to_frequency(g.rule, g.clean.t, g.clean.g, omega, cfg.eta));
  const auto noisy = spectral::spectral(spectral::to_frequency(g.rule, g.noisy.t, g.noisy.g, omega, cfg.eta));
  const auto peaks = spectral::find_peaks(clean, 0.05);
  const int q = g.model.ordering.qubit({0, Spin::Up});
  double pole_dev = 0.0;
  std::ostringstream poles;
  for (const auto& p : ed::lehmann_poles(g.model.ed, q, q)) {
    if (std::abs(p.residue) < 1e-3) continue;
    double best = 1e9;
    for (double w : peaks) best = std::min(best, std::abs(w - p.energy));
    pole_dev = std::max(pole_dev, best);
    poles << " " << p.energy;
  }
  const double s_clean = spectral::sum_rule(clean).value, s_noisy = spectral::sum_rule(noisy).value;
  const bool a = pole_dev <= step + cfg.eta / 2, b = std::abs(s_clean - 1.0) <= 0.02,
             c = std::abs(s_noisy - 0.88) <= 0.05;
  return {6, a && b && c,
          std::string(a ? "poles ok" : "poles FAIL") + " (max offset " + num(pole_dev) + " <= " +
              num(step + cfg.eta / 2) + ", Lehmann poles" + poles.str() + "); " + (b ? "noiseless sum ok" : "noiseless sum FAIL") +
              " (" + num(s_clean) + " in 1.00 +- 0.02); " + (c ? "noisy sum ok" : "noisy sum FAIL") + " (" +
              num(s_noisy) + " in 0.88 +- 0.05)",
          since(t0)};
}

Outcome c7(const RunConfig& base) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg = base;
  cfg.U = 0.0;
  cfg.mode = vqe::EvalMode::Exact;
  cfg.validate();
  const auto m = pipeline::make_model(cfg.hubbard());
  const auto path = cpt::gamma_x_m_path(cfg.points_per_segment);
  const auto grid = cpt::excitation_spectra(pipeline::circuit_cluster_green(cfg, m).frequency, cfg.tiling(0.0), path);
  const double step = grid.omega[1] - grid.omega[0];
  double worst = 0.0;
  std::size_t wk = 0;
  for (std::size_t k = 0; k < path.k.size(); ++k) {
    std::size_t best = 0;
    for (std::size_t w = 1; w < grid.omega.size(); ++w)
      if (grid.at(0, k, w) > grid.at(0, k, best)) best = w;
    const double eps = -2 * cfg.gamma * (std::cos(path.k[k][0]) + std::cos(path.k[k][1])) - cfg.resolved_mu(0.0);
    if (std::abs(grid.omega[best] - eps) > worst) {
      worst = std::abs(grid.omega[best] - eps);
      wk = k;
    }
  }
  return {7, worst <= step,
          "max |argmax_w A(k,w) - eps_k| " + num(worst) + " at k index " + std::to_string(wk) + " (<= grid step " +
              num(step) + ")",
          since(t0)};
}

Outcome c8(const RunConfig& base) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg = base;
  cfg.U = 3.0;
  cfg.mode = vqe::EvalMode::Exact;
  cfg.validate();
  const auto m = pipeline::make_model(cfg.hubbard());
  const auto path = cpt::gamma_x_m_path(cfg.points_per_segment);
  const auto circuit = pipeline::gap_metrics(
      cpt::excitation_spectra(pipeline::circuit_cluster_green(cfg, m).frequency, cfg.tiling(3.0), path));
  const auto oracle =
      pipeline::gap_metrics(cpt::excitation_spectra(pipeline::ed_cluster_green(cfg, m), cfg.tiling(3.0), path));
  const auto gapped = [](const pipeline::GapMetrics& g) { return g.at_zero < 0.02 && g.maximum > 0.5; };
  const double s = since(t0);
  RunConfig strong = cfg;
  strong.U = 8.0;
  strong.validate();
  const auto ms = pipeline::make_model(strong.hubbard());
  const auto ref =
      pipeline::gap_metrics(cpt::excitation_spectra(pipeline::ed_cluster_green(strong, ms), strong.tiling(8.0), path));
  return {8, gapped(circuit) && gapped(oracle) && s < 300.0,
          "circuit max_k rho(k,0) " + num(circuit.at_zero) + " (< 0.02), max rho " + num(circuit.maximum) +
              " (> 0.5); ED oracle " + num(oracle.at_zero) + ", " + num(oracle.maximum) + "; verdicts " +
              (gapped(circuit) == gapped(oracle) ? "agree" : "differ") + "; ED at U=8: " + num(ref.at_zero) + ", " +
              num(ref.maximum) + "; " + num(s) + " s (< 300 s)",
          s};
}

Outcome c9(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ok = verify(cfg);
  RunConfig coarse = cfg;
  coarse.n_tau = 5;
  const auto bad = verify(coarse);
  const Check* trotter = bad.find("trotter_accuracy_t_le_10");
  int failed = 0;
  std::string names;
  for (const auto& c : ok.checks)
    if (!c.passed) {
      ++failed;
      names += " " + c.name;
    }
  return {9, ok.passed() && !bad.passed() && trotter && !trotter->passed,
          std::to_string(ok.checks.size() - failed) + "/" + std::to_string(ok.checks.size()) +
              " default checks pass" + names + "; n_tau=5 suite " + (bad.passed() ? "passes" : "fails") +
              " with trotter check " + (trotter ? num(trotter->value) : std::string("missing")),
          since(t0)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9"};
  std::vector<int> known_red;
  std::string json_path;
  int seeds = 1000;
  app.add_option("--known-red", known_red, "criteria expected to fail")->delimiter(',');
  app.add_option("--json", json_path, "write results as JSON");
  app.add_option("--seeds", seeds, "seeds averaged for the energy sweep (>= 20)")->check(CLI::Range(20, 100000));
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  cfg.validate();
  std::vector<Outcome> out;
  auto report = [&](Outcome o) {
    std::cout << "criterion " << o.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    out.push_back(std::move(o));
  };
  report(c1(cfg));
  report(c2(cfg, seeds));
  report(c3(cfg));
  const auto g = green_runs(cfg);
  report(c4(cfg, g));
  report(c5(cfg));
  report(c6(cfg, g));
  report(c7(cfg));
  report(c8(cfg));
  report(c9(cfg));

  const std::set<int> expected(known_red.begin(), known_red.end());
  std::set<int> failed;
  nlohmann::json j = nlohmann::json::array();
  for (const auto& o : out) {
    if (!o.pass) failed.insert(o.id);
    j.push_back({{"criterion", o.id}, {"pass", o.pass}, {"detail", o.detail}, {"seconds", o.seconds}});
  }
  if (!json_path.empty()) std::ofstream(json_path) << j.dump(2) << "\n";
  std::cout << "passed " << out.size() - failed.size() << "/" << out.size();
  if (!expected.empty()) {
    std::cout << "; known red:";
    for (int k : expected) std::cout << " " << k;
  }
  std::cout << std::endl;
  if (failed != expected) {
    std::cout << "failures differ from the known-red list" << std::endl;
    return 1;
  }
  return 0;
}
