#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcm/cpt.hpp"
#include "qcm/fermion_model.hpp"
#include "qcm/green_time.hpp"
#include "qcm/noise.hpp"
#include "qcm/vqe.hpp"

namespace qcm {

/// Everything a pipeline run needs. Defaults reproduce the reference setup.
struct RunConfig {
  // [model]
  double gamma = 1.0;
  double U = 3.0;
  double mu = 1.5;
  bool half_filling = true;  ///< forces mu = U / 2
  QubitOrder qubit_order = QubitOrder::SpinMajor;

  // [cluster]
  std::vector<Site> sites{{0, 0}, {1, 0}};
  Site e1{2, 0};
  Site e2{0, 1};

  // [simulation]
  std::int64_t shots = 12000;
  double noise = 1e-4;
  std::uint64_t seed = 20240601;
  vqe::EvalMode mode = vqe::EvalMode::Sampled;
  bool exact_ground_state = true;
  NoiseBackend backend = NoiseBackend::Trajectory;
  bool lower_to_native = false;
  int jobs = 0;  ///< 0 = OpenMP default

  // [vqe]
  int phi_samples = 5;
  std::vector<int> dzne_scales{1, 3, 5};
  int dzne_order = 1;
  std::vector<double> u_sweep{0, 1, 2, 3, 4, 5};
  int mitigation_seeds = 200;

  // [green]
  int n_tau = 60;
  green::TermOrdering trotter_order = green::TermOrdering::Interleaved;
  int quadrature_nodes = 100;
  double t_max = 30.0;
  double eta = 0.2;
  green::Assembly assembly = green::Assembly::FourTerm;

  // [spectra]
  double omega_min = -8.0;
  double omega_max = 8.0;
  int omega_points = 801;
  int points_per_segment = 64;

  // [output]
  std::string out_dir = "out";

  /// Throws ConfigError on any out-of-range field. Applies half filling.
  void validate();

  double resolved_mu(double u) const { return half_filling ? u / 2.0 : mu; }
  HubbardSpec hubbard(double u) const;
  HubbardSpec hubbard() const { return hubbard(U); }
  cpt::TilingSpec tiling(double u) const;
  std::vector<double> omega_grid() const;
  vqe::SamplingConfig sampling() const;
  green::GreenConfig green_config() const;
};

/// INI text with sections model, cluster, simulation, vqe, green, spectra, output.
RunConfig parse_config(const std::string& ini_text);
RunConfig load_config(const std::string& path);
std::string to_ini(const RunConfig& c);
nlohmann::json to_json(const RunConfig& c);

}  // namespace qcm
