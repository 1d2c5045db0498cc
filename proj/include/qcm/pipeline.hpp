#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcm/config.hpp"
#include "qcm/cpt.hpp"
#include "qcm/ed.hpp"
#include "qcm/green_time.hpp"
#include "qcm/spectral.hpp"
#include "qcm/vqe.hpp"

namespace qcm::pipeline {

/// Cluster Hamiltonian in both representations plus its exact solution.
struct ClusterModel {
  HubbardSpec spec;
  QubitOrdering ordering{1};
  PauliHamiltonian h;
  ed::Solution ed;

  StateVector ground_state() const;
  /// <g|P|g> for every non-identity term, in term order.
  std::vector<double> term_expectations() const;
  /// Qubit (= ED mode) of every site for one spin.
  std::vector<int> modes(Spin s) const;
};

ClusterModel make_model(const HubbardSpec& spec, QubitOrder order = QubitOrder::SpinMajor);

struct StageReport {
  std::string name;
  bool ok = true;
  std::string error;
  double seconds = 0.0;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  nlohmann::json summary = nlohmann::json::object();
};

struct GroundRow {
  double U = 0.0;
  double raw = 0.0;
  double mitigated = 0.0;
  double exact = 0.0;       ///< ED ground energy
  double phi0 = 0.0;        ///< exact-mode optimum
  std::string status = "ok";
  vqe::EnergyEstimate mean;  ///< per-term values averaged over seeds
  std::vector<double> exact_terms;
};

/// E(U) sweep: exact-mode fit per U, plus seed-averaged raw/DZNE energies in sampled mode.
std::vector<GroundRow> ground_sweep(const RunConfig& cfg);

/// Ground-state preparation selected by the config (ED state or VQE circuit).
green::GroundPreparation ground_preparation(const RunConfig& cfg, const ClusterModel& model);

struct ClusterGreen {
  spectral::QuadratureRule rule;
  std::vector<green::GreenTimeSeries> series;  ///< every (i, j, spin)
  cpt::ClusterGreenMatrix frequency;
};

/// Circuit path: G_ij(t) on the quadrature nodes and its transform on the omega grid.
ClusterGreen circuit_cluster_green(const RunConfig& cfg, const ClusterModel& model);

/// Oracle path: Lehmann G(omega + i eta) on the omega grid.
cpt::ClusterGreenMatrix ed_cluster_green(const RunConfig& cfg, const ClusterModel& model);

StageReport run_ground(const RunConfig& cfg);
StageReport run_green(const RunConfig& cfg);
/// Reads cluster_green.csv written by run_green.
StageReport run_spectra(const RunConfig& cfg);
/// Runs the three stages and writes manifest.json.
std::vector<StageReport> run_all(const RunConfig& cfg);

nlohmann::json manifest(const RunConfig& cfg, const std::vector<StageReport>& stages);

/// Mott-gap diagnostics of a grid: max_k rho(k, omega nearest 0) and max rho.
struct GapMetrics {
  double at_zero = 0.0;
  double maximum = 0.0;
};
GapMetrics gap_metrics(const cpt::SpectralGrid& g, int spin = 0);

}  // namespace qcm::pipeline
