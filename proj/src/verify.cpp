#include "qcm/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <omp.h>

#include "qcm/io.hpp"
#include "qcm/pipeline.hpp"

namespace qcm {

namespace {

using pipeline::ClusterModel;

class Suite {
 public:
  /// Passes when value <= threshold.
  void below(const std::string& module, const std::string& name, double value, double threshold,
             std::string detail = {}) {
    checks.push_back({module, name, std::isfinite(value) && value <= threshold, value, threshold, std::move(detail)});
  }
  void holds(const std::string& module, const std::string& name, bool ok, std::string detail = {}) {
    checks.push_back({module, name, ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)});
  }
  /// Runs `body`; an exception becomes a failed check named after the group.
  template <class F>
  void guarded(const std::string& module, const std::string& group, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      checks.push_back({module, group, false, 0.0, 0.0, std::string("exception: ") + e.what()});
    }
  }
  std::vector<Check> checks;
};

Circuit random_circuit(int n, int ngates, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 6), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  Circuit c(n);
  while (static_cast<int>(c.size()) < ngates) {
    const int q = qubit(rng);
    switch (kind(rng)) {
      case 0: c.add(Gate::h(q)); break;
      case 1: c.add(Gate::x(q)); break;
      case 2: c.add(Gate::rx(q, angle(rng))); break;
      case 3: c.add(Gate::ry(q, angle(rng))); break;
      case 4: c.add(Gate::rz(q, angle(rng))); break;
      case 5: {
        const int t = qubit(rng);
        if (t != q) c.add(Gate::cnot(q, t));
        break;
      }
      default: {
        PauliString p(n);
        const char letters[] = "IXYZ";
        for (int k = 0; k < n; ++k) p.set(k, letters[std::uniform_int_distribution<int>(0, 3)(rng)]);
        if (!p.is_identity()) c.add(Gate::pauli_rotation(p, angle(rng)));
      }
    }
  }
  return c;
}

PauliString random_pauli(int n, std::mt19937_64& rng) {
  PauliString p(n);
  const char letters[] = "IXYZ";
  do {
    for (int k = 0; k < n; ++k) p.set(k, letters[std::uniform_int_distribution<int>(0, 3)(rng)]);
  } while (p.is_identity());
  return p;
}

std::vector<double> sector_spectrum(const Eigen::MatrixXcd& h, int particles) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index b = 0; b < h.rows(); ++b)
    if (std::popcount(static_cast<std::uint64_t>(b)) == particles) idx.push_back(b);
  Eigen::MatrixXcd block(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = h(idx[a], idx[b]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

green::GreenConfig noiseless_green(const RunConfig& cfg, int n_tau) {
  green::GreenConfig gc;
  gc.plan.n_tau = n_tau;
  gc.plan.ordering = cfg.trotter_order;
  gc.mode = vqe::EvalMode::Exact;
  gc.assembly = cfg.assembly;
  return gc;
}

/// max_t |Im G_00(t) - Im G_00^ED(t)| of spin up over `times`.
double trotter_error(const ClusterModel& m, const RunConfig& cfg, int n_tau, const std::vector<double>& times) {
  const auto prep = green::GroundPreparation::exact(m.ground_state());
  const auto s = green::retarded_g(m.h, m.ordering, 0, 0, Spin::Up, times, prep, noiseless_green(cfg, n_tau));
  const int q = m.ordering.qubit({0, Spin::Up});
  const auto ref = ed::exact_g_t(m.ed, q, q, times);
  double err = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) err = std::max(err, std::abs(s.g[k].imag() - ref[k].imag()));
  return err;
}

double rms(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

void fermion_checks(Suite& s, const RunConfig& cfg, const ClusterModel& m) {
  s.guarded("fermion-model", "fermion_model", [&] {
    const Eigen::MatrixXcd h = m.h.dense();
    s.below("fermion-model", "hamiltonian_hermitian", (h - h.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    const Eigen::MatrixXcd occ = ed::occupation_hamiltonian(build_hubbard_cluster(m.spec), m.ordering);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(h, Eigen::EigenvaluesOnly), b(occ, Eigen::EigenvaluesOnly);
    s.below("fermion-model", "jw_spectrum_matches_occupation_basis",
            (a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);

    const int n = std::min(4, m.ordering.nqubits());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Eigen::MatrixXcd ci = jw_operator(i, n, false).dense(), cj = jw_operator(j, n, true).dense();
        Eigen::MatrixXcd ac = ci * cj + cj * ci;
        if (i == j) ac -= Eigen::MatrixXcd::Identity(ac.rows(), ac.cols());
        worst = std::max(worst, ac.cwiseAbs().maxCoeff());
      }
    s.below("fermion-model", "anticommutation", worst, 1e-12);

    if (cfg.half_filling) {
      const int L = m.spec.nsites();
      double ph = 0.0;
      for (int n_p = 0; n_p <= 2 * L; ++n_p) {
        const auto lo = sector_spectrum(occ, n_p), hi = sector_spectrum(occ, 2 * L - n_p);
        for (std::size_t k = 0; k < lo.size(); ++k) ph = std::max(ph, std::abs(lo[k] - hi[k]));
      }
      s.below("fermion-model", "particle_hole_spectrum", ph, 1e-10);
      if (L == 2) {
        const double g = cfg.gamma, u = m.spec.U;
        const double closed = (u - std::sqrt(u * u + 16 * g * g)) / 2 - u;
        s.below("fermion-model", "dimer_closed_form_ground_energy", std::abs(m.ed.e0 - closed), 1e-10);
      }
    }
  });
}

void circuit_checks(Suite& s, const RunConfig& cfg) {
  s.guarded("circuit-sim", "circuit_sim", [&] {
    std::mt19937_64 rng(mix_seed(cfg.seed, 11));
    StateVector st(5);
    apply(st, random_circuit(5, 10000, rng));
    s.below("circuit-sim", "unitarity_10k_gates", std::abs(st.norm() - 1.0), 1e-10);

    double fold_loss = 0.0, traj = 0.0;
    const std::int64_t shots = 4000;
    for (int trial = 0; trial < 5; ++trial) {
      const Circuit c = random_circuit(4, 40, rng);
      const StateVector ref = run(c);
      for (int scale : {3, 5}) fold_loss = std::max(fold_loss, 1.0 - std::norm(ref.inner(run(fold(c, scale)))));
      const PauliString p = random_pauli(4, rng);
      const double est = sample_expectation(c, p, shots, {0.0, mix_seed(cfg.seed, 100 + trial)});
      traj = std::max(traj, std::abs(est - expectation(ref, p)) * std::sqrt(static_cast<double>(shots)));
    }
    s.below("circuit-sim", "fold_fidelity_loss", fold_loss, 1e-10);
    s.below("circuit-sim", "trajectory_mean_noiseless_in_sqrt_shots_units", traj, 4.0);
  });
}

void vqe_checks(Suite& s, const RunConfig& cfg, const ClusterModel& m) {
  s.guarded("vqe-ground", "vqe_ground", [&] {
    if (m.ordering.nqubits() != 4 || cfg.qubit_order != QubitOrder::SpinMajor) {
      s.holds("vqe-ground", "ansatz_applicable", false, "ansatz is defined for the spin-major dimer");
      return;
    }
    const auto layout = vqe::default_dimer_layout();
    std::vector<std::pair<double, double>> samples;
    double below_bound = 0.0;
    double sector_leak = 0.0;
    for (double phi : vqe::phi_grid(100)) {
      const double e = vqe::energy(m.h, layout, phi, vqe::EvalMode::Exact).value;
      samples.emplace_back(phi, e);
      below_bound = std::max(below_bound, m.ed.e0 - e);
      const StateVector out = run(vqe::build_ansatz(layout, phi));
      for (std::size_t b = 0; b < out.dim(); ++b)
        if (std::popcount(b & 0x3u) != 1 || std::popcount(b & 0xcu) != 1) sector_leak += std::norm(out[b]);
    }
    s.below("vqe-ground", "variational_bound", below_bound, 1e-9);
    s.below("vqe-ground", "ansatz_conserves_spin_sectors", sector_leak, 1e-12);
    const auto fit = vqe::fit_minimize(samples);
    s.below("vqe-ground", "exact_sinusoid_residual", fit.residual, 1e-9);
    const auto g = vqe::minimize(m.h, layout, cfg.phi_samples, vqe::EvalMode::Exact);
    s.below("vqe-ground", "exact_minimum_vs_ed", std::abs(g.estimate.value - m.ed.e0), 1e-6);

    // Mitigation direction at U = 3, p = 1e-4, averaged over seeds.
    const auto m3 = pipeline::make_model(cfg.hubbard(3.0), cfg.qubit_order);
    vqe::SamplingConfig sc = cfg.sampling();
    sc.noise.p = 1e-4;
    double raw = 0.0, mit = 0.0;
    const int seeds = std::max(1000, cfg.mitigation_seeds);
    for (int k = 0; k < seeds; ++k) {
      sc.noise.seed = mix_seed(cfg.seed, 0x7700 + k);
      const auto r = vqe::minimize(m3.h, layout, cfg.phi_samples, vqe::EvalMode::Sampled, sc,
                                   vqe::DzneOptions{cfg.dzne_scales, cfg.dzne_order});
      raw += r.estimate.raw / seeds;
      mit += r.estimate.value / seeds;
    }
    std::ostringstream d;
    d << "seeds=" << seeds << " raw=" << raw << " mitigated=" << mit << " exact=" << m3.ed.e0;
    s.holds("vqe-ground", "mitigation_improves_energy", std::abs(mit - m3.ed.e0) < std::abs(raw - m3.ed.e0), d.str());
  });
}

void green_checks(Suite& s, const RunConfig& cfg, const ClusterModel& m) {
  s.guarded("green-time", "green_time", [&] {
    if (m.ed.degenerate) {
      s.holds("green-time", "nondegenerate_ground_state", false, "ED ground state is degenerate");
      return;
    }
    const auto prep = green::GroundPreparation::exact(m.ground_state());
    const auto nodes = spectral::legendre_rule(cfg.quadrature_nodes, cfg.t_max).nodes;
    std::vector<double> with_zero{0.0};
    with_zero.insert(with_zero.end(), nodes.begin(), nodes.end());
    double g0 = 0.0, re = 0.0;
    for (int i = 0; i < m.spec.nsites(); ++i) {
      const auto series = green::retarded_g(m.h, m.ordering, i, i, Spin::Up, with_zero, prep,
                                            noiseless_green(cfg, cfg.n_tau));
      g0 = std::max(g0, std::abs(series.g[0] + kI));
      for (const auto& v : series.g) re = std::max(re, std::abs(v.real()));
    }
    s.below("green-time", "g_ii_at_zero_is_minus_i", g0, 1e-10);
    if (cfg.half_filling) s.below("green-time", "particle_hole_re_g_ii_vanishes", re, 1e-6);

    std::vector<double> window = spectral::uniform_grid(0.0, 10.0, 201);
    const double err = trotter_error(m, cfg, cfg.n_tau, window);
    s.below("green-time", "trotter_accuracy_t_le_10", err, 0.05, "n_tau=" + std::to_string(cfg.n_tau));

    std::vector<double> errs;
    std::ostringstream d;
    for (int n : {15, 30, 60, 120, 240}) {
      errs.push_back(trotter_error(m, cfg, n, window));
      d << (n == 15 ? "" : " ") << n << ':' << errs.back();
    }
    bool mono = true;
    for (std::size_t k = 1; k < errs.size(); ++k) mono = mono && errs[k] < errs[k - 1];
    s.holds("green-time", "trotter_convergence_monotone", mono, d.str());

    std::mt19937_64 rng(mix_seed(cfg.seed, 21));
    std::uniform_int_distribution<int> pick(0, m.ordering.nqubits() - 1);
    std::uniform_real_distribution<double> tt(0.0, 10.0);
    green::TrotterPlan plan = green::resolve(noiseless_green(cfg, cfg.n_tau).plan, m.h, m.ordering);
    double hdiff = 0.0, psum = 0.0, frange = 0.0;
    vqe::SamplingConfig sc = cfg.sampling();
    sc.noise.p = 1e-4;
    for (int k = 0; k < 20; ++k) {
      const auto li = jw_ladder(pick(rng), m.ordering.nqubits()), lj = jw_ladder(pick(rng), m.ordering.nqubits());
      const PauliString& si = (rng() & 1) ? li.xbar : li.ybar;
      const PauliString& sj = (rng() & 1) ? lj.xbar : lj.ybar;
      const Circuit u = green::trotter_circuit(m.h, tt(rng), plan);
      const auto out = green::hadamard_test_F(si, sj, u, prep, vqe::EvalMode::Exact);
      hdiff = std::max(hdiff, std::abs(out.F - green::direct_F(si, sj, u, m.ground_state())));
      psum = std::max(psum, std::abs(out.p_plus + out.p_minus - 1.0));
      frange = std::max(frange, std::abs(out.F - 2 * (2 * out.p_plus - 1)));
      if (k < 4) {
        sc.noise.seed = mix_seed(cfg.seed, 0x5100 + k);
        const auto noisy = green::hadamard_test_F(si, sj, u, prep, vqe::EvalMode::Sampled, sc);
        frange = std::max(frange, std::max(0.0, std::abs(noisy.F) - 2.0));
      }
    }
    s.below("green-time", "hadamard_vs_direct_20_cases", hdiff, 1e-10);
    s.below("green-time", "probabilities_sum_to_one", psum, 1e-12);
    s.below("green-time", "f_equals_2_2pplus_minus_1_and_bounded", frange, 1e-12);
  });
}

void spectral_checks(Suite& s, const RunConfig& cfg, const ClusterModel& m) {
  s.guarded("spectral-transform", "spectral_transform", [&] {
    const auto rule = spectral::legendre_rule(cfg.quadrature_nodes, cfg.t_max);
    double wsum = 0.0;
    bool interior = true;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      wsum += rule.weights[k];
      interior = interior && rule.weights[k] > 0 && rule.nodes[k] > 0 && rule.nodes[k] < rule.t_max &&
                 (k == 0 || rule.nodes[k] > rule.nodes[k - 1]);
    }
    s.below("spectral-transform", "quadrature_weight_sum", std::abs(wsum - rule.t_max), 1e-10);
    s.holds("spectral-transform", "quadrature_nodes_interior_weights_positive", interior);

    const auto omega = cfg.omega_grid();
    std::mt19937_64 rng(mix_seed(cfg.seed, 31));
    std::normal_distribution<double> nd;
    std::vector<cplx> g1(rule.size()), g2(rule.size()), mix(rule.size());
    const cplx a(0.7, -1.3), b(-2.1, 0.4);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      g1[k] = {nd(rng), nd(rng)};
      g2[k] = {nd(rng), nd(rng)};
      mix[k] = a * g1[k] + b * g2[k];
    }
    const auto f1 = spectral::to_frequency(rule, rule.nodes, g1, omega, cfg.eta);
    const auto f2 = spectral::to_frequency(rule, rule.nodes, g2, omega, cfg.eta);
    const auto fm = spectral::to_frequency(rule, rule.nodes, mix, omega, cfg.eta);
    double lin = 0.0;
    for (std::size_t w = 0; w < omega.size(); ++w)
      lin = std::max(lin, std::abs(fm.values[w] - (a * f1.values[w] + b * f2.values[w])));
    s.below("spectral-transform", "linearity", lin, 1e-12);

    if (m.ed.degenerate) return;
    const auto prep = green::GroundPreparation::exact(m.ground_state());
    const auto series =
        green::retarded_g(m.h, m.ordering, 0, 0, Spin::Up, rule.nodes, prep, noiseless_green(cfg, cfg.n_tau));
    const auto fg = spectral::to_frequency(rule, series.t, series.g, omega, cfg.eta);
    const auto rho = spectral::spectral(fg);
    const auto kk = spectral::kramers_kronig_real(rho);
    std::vector<double> diff, direct;
    for (std::size_t w = 0; w < omega.size(); ++w) {
      diff.push_back(kk[w] - fg.values[w].real());
      direct.push_back(fg.values[w].real());
    }
    s.below("spectral-transform", "kramers_kronig_relative_rms", rms(diff) / rms(direct), 0.02);
    s.below("spectral-transform", "diagonal_positivity", -*std::min_element(rho.rho.begin(), rho.rho.end()), 1e-6);
    const auto sr = spectral::sum_rule(rho);
    s.below("spectral-transform", "noiseless_sum_rule", std::abs(sr.value - 1.0), 0.02,
            "edge_weight=" + std::to_string(sr.edge_weight));
  });
}

void cpt_checks(Suite& s, const RunConfig& cfg, const ClusterModel& m) {
  s.guarded("cpt-lattice", "cpt_lattice", [&] {
    const auto tiling = cfg.tiling(m.spec.U);
    tiling.validate();
    const auto part = cpt::partition_hoppings(tiling);
    s.below("cpt-lattice", "exact_partition_mismatches", cpt::partition_mismatches(tiling, part), 0.0);
    s.below("cpt-lattice", "t0_hermitian", (part.t0 - part.t0.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    double inv = 0.0;
    for (const auto& [r, t] : part.inter) {
      const auto it = part.inter.find({-r[0], -r[1]});
      inv = it == part.inter.end() ? 1.0 : std::max(inv, (it->second - t.adjoint()).cwiseAbs().maxCoeff());
    }
    s.below("cpt-lattice", "t_minus_r_is_adjoint", inv, 1e-14);

    const auto path = cpt::gamma_x_m_path(cfg.points_per_segment);
    const auto gmat = pipeline::ed_cluster_green(cfg, m);
    double herm = 0.0, ident = 0.0, local = 0.0;
    const int L = m.spec.nsites();
    for (std::size_t k = 0; k < path.k.size(); k += 16) {
      const auto q = cpt::fold_to_reduced_zone(path.k[k], tiling);
      const Eigen::MatrixXcd tq = cpt::tau_q(part, q);
      herm = std::max(herm, (tq - tq.adjoint()).cwiseAbs().maxCoeff());
      for (std::size_t w = 0; w < gmat.omega.size(); w += 80) {
        const Eigen::MatrixXcd& g = gmat.g[0][w];
        const Eigen::MatrixXcd gc = cpt::cpt_green(g, part, q);
        ident = std::max(ident,
                         (gc * (g.inverse() - tq) - Eigen::MatrixXcd::Identity(L, L)).cwiseAbs().maxCoeff());
        const cplx z(gmat.omega[w], gmat.eta);
        const Eigen::MatrixXcd sigma = cpt::self_energy(g, z, part.t0);
        const Eigen::MatrixXcd via_sigma =
            (z * Eigen::MatrixXcd::Identity(L, L) - part.t0 - tq - sigma).inverse();
        local = std::max(local, (via_sigma - gc).cwiseAbs().maxCoeff());
      }
    }
    s.below("cpt-lattice", "tau_q_hermitian", herm, 1e-14);
    s.below("cpt-lattice", "lattice_green_identity", ident, 1e-8);
    s.below("cpt-lattice", "local_self_energy_consistency", local, 1e-8);

    // Free cluster: Lehmann G equals the resolvent of T0.
    RunConfig free = cfg;
    free.U = 0.0;
    free.validate();
    const auto mf = pipeline::make_model(free.hubbard(0.0), free.qubit_order);
    const auto part0 = cpt::partition_hoppings(free.tiling(0.0));
    double res = 0.0;
    for (double w : {-3.0, -0.5, 0.0, 1.7}) {
      const cplx z(w, free.eta);
      const Eigen::MatrixXcd r = (z * Eigen::MatrixXcd::Identity(L, L) - part0.t0).inverse();
      res = std::max(res, (ed::lehmann_green_matrix(mf.ed, mf.modes(Spin::Up), z) - r).cwiseAbs().maxCoeff());
    }
    s.below("cpt-lattice", "free_cluster_resolvent", res, 1e-8);

    const auto grid = cpt::excitation_spectra(gmat, tiling, path);
    double spin = 0.0, neg = 0.0;
    for (std::size_t c = 0; c < grid.intensity[0].size(); ++c) {
      spin = std::max(spin, std::abs(grid.intensity[0][c] - grid.intensity[1][c]));
      neg = std::max({neg, -grid.intensity[0][c], -grid.intensity[1][c]});
    }
    s.below("cpt-lattice", "spin_grids_identical", spin, 1e-10);
    s.below("cpt-lattice", "intensities_nonnegative", neg, 1e-6);
    s.below("cpt-lattice", "singular_cells", grid.singular_cells, 0.0);

    // Free limit through the circuit pipeline.
    free.mode = vqe::EvalMode::Exact;
    const auto cg = pipeline::circuit_cluster_green(free, mf);
    const auto fgrid = cpt::excitation_spectra(cg.frequency, free.tiling(0.0), path);
    const double step = fgrid.omega[1] - fgrid.omega[0];
    double band = 0.0;
    for (std::size_t k = 0; k < path.k.size(); ++k) {
      std::size_t best = 0;
      for (std::size_t w = 1; w < fgrid.omega.size(); ++w)
        if (fgrid.at(0, k, w) > fgrid.at(0, k, best)) best = w;
      const double eps = -2 * free.gamma * (std::cos(path.k[k][0]) + std::cos(path.k[k][1])) - free.resolved_mu(0.0);
      band = std::max(band, std::abs(fgrid.omega[best] - eps));
    }
    s.below("cpt-lattice", "free_limit_band_max_offset", band, free.eta, "grid step " + std::to_string(step));
  });
}

void ed_checks(Suite& s, const RunConfig& cfg, const ClusterModel& m) {
  s.guarded("ed-oracle", "ed_oracle", [&] {
    const Eigen::MatrixXcd h = ed::occupation_hamiltonian(build_hubbard_cluster(m.spec), m.ordering);
    const auto& v = m.ed.eigenvectors;
    const Eigen::MatrixXcd r = h * v - v * m.ed.eigenvalues.cast<cplx>().asDiagonal();
    double resid = 0.0;
    for (Eigen::Index c = 0; c < r.cols(); ++c) resid = std::max(resid, r.col(c).norm());
    s.below("ed-oracle", "eigenpair_residual", resid, 1e-10);
    s.below("ed-oracle", "eigenvectors_orthonormal",
            (v.adjoint() * v - Eigen::MatrixXcd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff(), 1e-10);
    double comp = 0.0;
    for (int i = 0; i < m.ordering.nqubits(); ++i)
      for (int j = 0; j < m.ordering.nqubits(); ++j)
        comp = std::max(comp, std::abs(ed::completeness(m.ed, i, j) - (i == j ? 1.0 : 0.0)));
    s.below("ed-oracle", "completeness", comp, 1e-10);
    if (m.ed.degenerate) return;

    const auto rule = spectral::legendre_rule(cfg.quadrature_nodes, cfg.t_max);
    const auto omega = cfg.omega_grid();
    const int q = m.ordering.qubit({0, Spin::Up});
    const auto ft = spectral::to_frequency(rule, rule.nodes, ed::exact_g_t(m.ed, q, q, rule.nodes), omega, cfg.eta);
    const auto lg = ed::lehmann_green(m.ed, q, q, omega, cfg.eta);
    std::vector<double> diff, ref;
    for (std::size_t w = 0; w < omega.size(); ++w) {
      diff.push_back(std::abs(ft.values[w] - lg[w]));
      ref.push_back(std::abs(lg[w]));
    }
    s.below("ed-oracle", "fourier_vs_lehmann_relative_rms", rms(diff) / rms(ref), 0.01);

    spectral::SpectralSeries ls{omega, {}};
    for (const auto& z : lg) ls.rho.push_back(-z.imag() / kPi);
    const auto a = spectral::find_peaks(spectral::spectral(ft), 0.05), b = spectral::find_peaks(ls, 0.05);
    double off = a.size() == b.size() ? 0.0 : 1e9;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) off = std::max(off, std::abs(a[k] - b[k]));
    s.below("ed-oracle", "fourier_peaks_match_lehmann", off, omega[1] - omega[0]);
  });
}

void pipeline_checks(Suite& s, const RunConfig& cfg, const ClusterModel& m) {
  s.guarded("pipeline-cli", "pipeline_cli", [&] {
    try {
      parse_config("[green]\neta = 0\n");
      s.holds("pipeline-cli", "eta_zero_rejected", false);
    } catch (const ConfigError&) {
      s.holds("pipeline-cli", "eta_zero_rejected", true);
    }
    s.below("pipeline-cli", "config_ini_round_trip", to_json(parse_config(to_ini(cfg))) == to_json(cfg) ? 0.0 : 1.0,
            0.0);

    const auto gmat = pipeline::ed_cluster_green(cfg, m);
    std::stringstream buf;
    io::write_cluster_green(buf, gmat);
    const auto back = io::read_cluster_green(buf);
    double rt = back.omega == gmat.omega && back.eta == gmat.eta ? 0.0 : 1.0;
    for (int sp = 0; sp < 2 && rt == 0.0; ++sp)
      for (std::size_t w = 0; w < gmat.omega.size(); ++w)
        rt = std::max(rt, (back.g[sp][w] - gmat.g[sp][w]).cwiseAbs().maxCoeff());
    s.below("pipeline-cli", "cluster_green_file_round_trip", rt, 0.0);

    if (m.ed.degenerate) return;
    const auto prep = green::GroundPreparation::exact(m.ground_state());
    green::GreenConfig gc = cfg.green_config();
    gc.mode = vqe::EvalMode::Sampled;
    gc.sampling.noise = {1e-4, mix_seed(cfg.seed, 41)};
    const std::vector<double> nodes{0.5, 2.0, 7.5};
    const int threads = omp_get_max_threads();
    std::string out[2];
    for (int r = 0; r < 2; ++r) {
      omp_set_num_threads(r == 0 ? 1 : std::max(2, threads));
      std::ostringstream os;
      green::write_csv(os, green::retarded_g(m.h, m.ordering, 0, 1 % m.spec.nsites(), Spin::Up, nodes, prep, gc),
                       cfg.eta);
      out[r] = os.str();
    }
    omp_set_num_threads(threads);
    s.holds("pipeline-cli", "sampled_output_independent_of_threads", out[0] == out[1]);
  });
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["seconds"] = seconds;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e{{"module", c.module}, {"name", c.name}, {"passed", c.passed}, {"value", c.value},
                     {"threshold", c.threshold}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(e);
  }
  return j;
}

VerifyReport verify(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
  Suite s;
  std::optional<ClusterModel> model;
  s.guarded("fermion-model", "build_model", [&] { model = pipeline::make_model(cfg.hubbard(), cfg.qubit_order); });
  if (model) {
    fermion_checks(s, cfg, *model);
    circuit_checks(s, cfg);
    vqe_checks(s, cfg, *model);
    green_checks(s, cfg, *model);
    spectral_checks(s, cfg, *model);
    cpt_checks(s, cfg, *model);
    ed_checks(s, cfg, *model);
    pipeline_checks(s, cfg, *model);
  }
  VerifyReport r;
  r.checks = std::move(s.checks);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace qcm
