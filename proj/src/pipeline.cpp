#include "qcm/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <omp.h>

#include "qcm/io.hpp"

namespace qcm::pipeline {

namespace fs = std::filesystem;

namespace {

const char* spin_name(int s) { return s == 0 ? "up" : "down"; }

std::string pair_tag(int i, int j, int spin) {
  return "i" + std::to_string(i) + "j" + std::to_string(j) + "_" + spin_name(spin);
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void apply_jobs(const RunConfig& cfg) {
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
}

template <class F>
StageReport stage(const std::string& name, F&& body) {
  StageReport r;
  r.name = name;
  Timer t;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  r.seconds = t.seconds();
  return r;
}

void emit(StageReport& r, const fs::path& path, const std::string& text) {
  io::write_file(path, text);
  r.files.push_back(path.string());
}

}  // namespace

StateVector ClusterModel::ground_state() const {
  return StateVector(ordering.nqubits(), std::vector<cplx>(ed.ground.data(), ed.ground.data() + ed.ground.size()));
}

std::vector<double> ClusterModel::term_expectations() const {
  const StateVector g = ground_state();
  std::vector<double> out;
  for (const auto& t : h.non_identity_terms()) out.push_back(expectation(g, t.string));
  return out;
}

std::vector<int> ClusterModel::modes(Spin s) const {
  std::vector<int> out;
  for (int i = 0; i < spec.nsites(); ++i) out.push_back(ordering.qubit({i, s}));
  return out;
}

ClusterModel make_model(const HubbardSpec& spec, QubitOrder order) {
  spec.validate();
  ClusterModel m;
  m.spec = spec;
  m.ordering = QubitOrdering(spec.nsites(), order);
  m.h = hubbard_pauli_hamiltonian(spec, m.ordering);
  m.ed = ed::solve(ed::occupation_hamiltonian(build_hubbard_cluster(spec), m.ordering));
  return m;
}

std::vector<GroundRow> ground_sweep(const RunConfig& cfg) {
  apply_jobs(cfg);
  std::vector<GroundRow> rows;
  for (std::size_t ui = 0; ui < cfg.u_sweep.size(); ++ui) {
    GroundRow row;
    row.U = cfg.u_sweep[ui];
    try {
      const ClusterModel model = make_model(cfg.hubbard(row.U), cfg.qubit_order);
      if (model.ordering.nqubits() != 4 || cfg.qubit_order != QubitOrder::SpinMajor)
        throw Error("the single-parameter ansatz is defined for the spin-major two-site cluster");
      const auto layout = vqe::default_dimer_layout();
      row.exact = model.ed.e0;
      row.exact_terms = model.term_expectations();
      const auto exact = vqe::minimize(model.h, layout, cfg.phi_samples, vqe::EvalMode::Exact);
      row.phi0 = exact.fit.phi0;
      if (exact.fit.flat) row.status = exact.fit.message;
      if (cfg.mode == vqe::EvalMode::Exact) {
        row.raw = row.mitigated = exact.estimate.value;
        row.mean = exact.estimate;
      } else {
        const vqe::DzneOptions dz{cfg.dzne_scales, cfg.dzne_order};
        int flat = 0;
        for (int s = 0; s < cfg.mitigation_seeds; ++s) {
          vqe::SamplingConfig sc = cfg.sampling();
          sc.noise.seed = mix_seed(mix_seed(cfg.seed, 0x6a0 + ui), static_cast<std::uint64_t>(s));
          const auto r = vqe::minimize(model.h, layout, cfg.phi_samples, vqe::EvalMode::Sampled, sc, dz);
          flat += r.fit.flat;
          if (s == 0) {
            row.mean = r.estimate;
          } else {
            for (std::size_t k = 0; k < r.estimate.terms.size(); ++k) {
              auto& m = row.mean.terms[k];
              const auto& t = r.estimate.terms[k];
              m.raw += t.raw;
              m.mitigated += t.mitigated;
              m.clamped = m.clamped || t.clamped;
              for (const auto& [sc_, v] : t.per_scale) m.per_scale[sc_] += v;
            }
            row.mean.raw += r.estimate.raw;
            row.mean.value += r.estimate.value;
            row.mean.clamp_warning = row.mean.clamp_warning || r.estimate.clamp_warning;
          }
        }
        const double n = cfg.mitigation_seeds;
        for (auto& m : row.mean.terms) {
          m.raw /= n;
          m.mitigated /= n;
          for (auto& [sc_, v] : m.per_scale) v /= n;
        }
        row.mean.raw /= n;
        row.mean.value /= n;
        row.raw = row.mean.raw;
        row.mitigated = row.mean.value;
        if (flat) row.status = std::to_string(flat) + " seeds with flat landscape";
        if (row.mean.clamp_warning) row.status = row.status == "ok" ? "dzne clamp" : row.status + "; dzne clamp";
      }
    } catch (const Error& e) {
      row.status = std::string("failed: ") + e.what();
      row.raw = row.mitigated = row.exact = std::nan("");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

StageReport run_ground(const RunConfig& cfg) {
  return stage("ground", [&](StageReport& r) {
    const auto rows = ground_sweep(cfg);
    std::ostringstream csv;
    csv << "U,raw,mitigated,exact,phi0,status\n";
    for (const auto& row : rows) {
      csv << fmt(row.U) << ',' << fmt(row.raw) << ',' << fmt(row.mitigated) << ',' << fmt(row.exact) << ','
          << fmt(row.phi0) << ',' << row.status << '\n';
      if (row.status.rfind("failed", 0) == 0) {
        r.warnings.push_back("U=" + fmt(row.U) + ": " + row.status);
        continue;
      }
      std::ostringstream terms;
      vqe::write_mitigation_csv(terms, row.mean, row.exact_terms);
      std::ostringstream name;
      name << "mitigation_U" << row.U << ".csv";
      emit(r, fs::path(cfg.out_dir) / name.str(), terms.str());
      r.summary["U"][fmt(row.U)] = {{"raw", row.raw}, {"mitigated", row.mitigated}, {"exact", row.exact},
                                    {"status", row.status}};
    }
    emit(r, fs::path(cfg.out_dir) / "energy_sweep.csv", csv.str());
  });
}

green::GroundPreparation ground_preparation(const RunConfig& cfg, const ClusterModel& model) {
  if (cfg.exact_ground_state) return green::GroundPreparation::exact(model.ground_state());
  if (model.ordering.nqubits() != 4 || cfg.qubit_order != QubitOrder::SpinMajor)
    throw Error("circuit ground-state preparation is defined for the spin-major two-site cluster");
  const auto layout = vqe::default_dimer_layout();
  const auto r = vqe::minimize(model.h, layout, cfg.phi_samples, vqe::EvalMode::Exact);
  return green::GroundPreparation::from_circuit(vqe::build_ansatz(layout, r.fit.phi0));
}

ClusterGreen circuit_cluster_green(const RunConfig& cfg, const ClusterModel& model) {
  apply_jobs(cfg);
  ClusterGreen out;
  out.rule = spectral::legendre_rule(cfg.quadrature_nodes, cfg.t_max);
  const auto prep = ground_preparation(cfg, model);
  const auto omega = cfg.omega_grid();
  const int L = model.spec.nsites();
  out.frequency.omega = omega;
  out.frequency.eta = cfg.eta;
  for (int s = 0; s < 2; ++s) {
    out.frequency.g[s].assign(omega.size(), Eigen::MatrixXcd::Zero(L, L));
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) {
        green::GreenConfig gc = cfg.green_config();
        gc.sampling.noise.seed = mix_seed(cfg.seed, 0x9e00 + static_cast<std::uint64_t>((s * L + i) * L + j));
        auto series = green::retarded_g(model.h, model.ordering, i, j, static_cast<Spin>(s), out.rule.nodes, prep, gc);
        const auto fg = spectral::to_frequency(out.rule, series.t, series.g, omega, cfg.eta);
        for (std::size_t w = 0; w < omega.size(); ++w) out.frequency.g[s][w](i, j) = fg.values[w];
        out.series.push_back(std::move(series));
      }
  }
  return out;
}

cpt::ClusterGreenMatrix ed_cluster_green(const RunConfig& cfg, const ClusterModel& model) {
  cpt::ClusterGreenMatrix g;
  g.omega = cfg.omega_grid();
  g.eta = cfg.eta;
  for (int s = 0; s < 2; ++s) {
    const auto modes = model.modes(static_cast<Spin>(s));
    for (double w : g.omega) g.g[s].push_back(ed::lehmann_green_matrix(model.ed, modes, cplx(w, cfg.eta)));
  }
  return g;
}

StageReport run_green(const RunConfig& cfg) {
  return stage("green", [&](StageReport& r) {
    const ClusterModel model = make_model(cfg.hubbard(), cfg.qubit_order);
    const ClusterGreen cg = circuit_cluster_green(cfg, model);
    const auto omega = cfg.omega_grid();
    for (const auto& s : cg.series) {
      const int qi = model.ordering.qubit({s.i, s.spin}), qj = model.ordering.qubit({s.j, s.spin});
      const auto tag = pair_tag(s.i, s.j, static_cast<int>(s.spin));
      std::vector<cplx> ref;
      if (!model.ed.degenerate) ref = ed::exact_g_t(model.ed, qi, qj, s.t);
      std::ostringstream t_csv, w_csv;
      green::write_csv(t_csv, s, cfg.eta, ref);
      emit(r, fs::path(cfg.out_dir) / ("green_t_" + tag + ".csv"), t_csv.str());
      const auto fg = spectral::to_frequency(cg.rule, s.t, s.g, omega, cfg.eta);
      spectral::write_csv(w_csv, fg);
      emit(r, fs::path(cfg.out_dir) / ("green_w_" + tag + ".csv"), w_csv.str());
      if (s.i != s.j) continue;
      const auto rho = spectral::spectral(fg);
      const auto sr = spectral::sum_rule(rho);
      nlohmann::json entry{{"sum_rule", sr.value}, {"edge_weight", sr.edge_weight},
                           {"peaks", spectral::find_peaks(rho, 0.05)}};
      if (sr.edge_warning)
        r.warnings.push_back(tag + ": spectral weight " + fmt(sr.edge_weight) + " at the window edge");
      if (!ref.empty()) {
        const auto lg = ed::lehmann_green(model.ed, qi, qj, omega, cfg.eta);
        spectral::SpectralSeries ls{omega, {}};
        for (const auto& v : lg) ls.rho.push_back(-v.imag() / kPi);
        double dev = 0.0, damped = 0.0;
        for (std::size_t k = 0; k < s.t.size(); ++k) {
          if (s.t[k] <= 10.0) dev = std::max(dev, std::abs(s.g[k].imag() - ref[k].imag()));
          damped = std::max(damped, std::exp(-cfg.eta * s.t[k]) * std::abs(s.g[k] - ref[k]));
        }
        entry["lehmann_peaks"] = spectral::find_peaks(ls, 0.05);
        entry["lehmann_sum_rule"] = spectral::sum_rule(ls).value;
        entry["max_im_deviation_t_le_10"] = dev;
        entry["max_damped_deviation"] = damped;
      }
      r.summary[tag] = entry;
    }
    std::ostringstream cluster;
    io::write_cluster_green(cluster, cg.frequency);
    emit(r, fs::path(cfg.out_dir) / "cluster_green.csv", cluster.str());
    emit(r, fs::path(cfg.out_dir) / "green_summary.json", r.summary.dump(2) + "\n");
  });
}

GapMetrics gap_metrics(const cpt::SpectralGrid& g, int spin) {
  GapMetrics m;
  std::size_t w0 = 0;
  for (std::size_t w = 1; w < g.omega.size(); ++w)
    if (std::abs(g.omega[w]) < std::abs(g.omega[w0])) w0 = w;
  for (std::size_t k = 0; k < g.path.k.size(); ++k) {
    m.at_zero = std::max(m.at_zero, g.at(spin, k, w0));
    for (std::size_t w = 0; w < g.omega.size(); ++w) m.maximum = std::max(m.maximum, g.at(spin, k, w));
  }
  return m;
}

StageReport run_spectra(const RunConfig& cfg) {
  return stage("spectra", [&](StageReport& r) {
    apply_jobs(cfg);
    const fs::path src = fs::path(cfg.out_dir) / "cluster_green.csv";
    std::ifstream in(src);
    if (!in) throw Error("spectra stage needs " + src.string() + " (run the green stage first)");
    const auto g = io::read_cluster_green(in);
    const auto tiling = cfg.tiling(cfg.U);
    if (g.g[0].empty() || g.g[0].front().rows() != tiling.nsites())
      throw Error("cluster_green.csv does not match the configured cluster");
    const auto grid = cpt::excitation_spectra(g, tiling, cpt::gamma_x_m_path(cfg.points_per_segment));
    for (int s = 0; s < 2; ++s) {
      std::ostringstream long_csv, dense;
      cpt::write_long_csv(long_csv, grid, s);
      cpt::write_dense(dense, grid, s);
      const std::string base = std::string("spectra_") + spin_name(s);
      emit(r, fs::path(cfg.out_dir) / (base + "_long.csv"), long_csv.str());
      emit(r, fs::path(cfg.out_dir) / (base + "_dense.txt"), dense.str());
      emit(r, fs::path(cfg.out_dir) / ("plot_" + base + ".py"),
           io::plot_script(base + "_dense.txt", grid, std::string("spin ") + spin_name(s) + ", U = " + fmt(cfg.U)));
    }
    const auto gm = gap_metrics(grid);
    double spin_diff = 0.0, min_intensity = 0.0;
    for (std::size_t c = 0; c < grid.intensity[0].size(); ++c) {
      spin_diff = std::max(spin_diff, std::abs(grid.intensity[0][c] - grid.intensity[1][c]));
      min_intensity = std::min({min_intensity, grid.intensity[0][c], grid.intensity[1][c]});
    }
    const auto [kmin, kmax] = std::minmax_element(grid.k_integral[0].begin(), grid.k_integral[0].end());
    r.summary = {{"singular_cells", grid.singular_cells},
                 {"max_rho_at_omega0", gm.at_zero},
                 {"max_rho", gm.maximum},
                 {"min_rho", min_intensity},
                 {"spin_max_abs_difference", spin_diff},
                 {"k_integral_min", *kmin},
                 {"k_integral_max", *kmax},
                 {"k_points", grid.path.k.size()},
                 {"omega_points", grid.omega.size()}};
    if (grid.singular_cells > 0) r.warnings.push_back(std::to_string(grid.singular_cells) + " singular grid cells");
    emit(r, fs::path(cfg.out_dir) / "spectra_qc.json", r.summary.dump(2) + "\n");
  });
}

nlohmann::json manifest(const RunConfig& cfg, const std::vector<StageReport>& stages) {
  nlohmann::json m;
  m["config"] = to_json(cfg);
  m["seeds"] = {{"master", cfg.seed},
                {"derivation", "splitmix64 mix of the master seed with stage, term, scale and node indices"}};
  m["versions"] = {{"qcm", "0.1.0"},
                   {"compiler", __VERSION__},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"openmp", _OPENMP}};
  for (const auto& s : stages) {
    m["stages"][s.name] = {{"ok", s.ok}, {"seconds", s.seconds}, {"warnings", s.warnings}, {"summary", s.summary}};
    if (!s.ok) m["stages"][s.name]["error"] = s.error;
    for (const auto& f : s.files) m["files"].push_back(fs::path(f).filename().string());
  }
  return m;
}

std::vector<StageReport> run_all(const RunConfig& cfg) {
  std::vector<StageReport> stages{run_ground(cfg), run_green(cfg)};
  if (stages.back().ok)
    stages.push_back(run_spectra(cfg));
  else {
    StageReport skipped;
    skipped.name = "spectra";
    skipped.ok = false;
    skipped.error = "skipped: green stage failed";
    stages.push_back(skipped);
  }
  io::write_file(fs::path(cfg.out_dir) / "manifest.json", manifest(cfg, stages).dump(2) + "\n");
  return stages;
}

}  // namespace qcm::pipeline
