#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "qcm/io.hpp"
#include "qcm/pipeline.hpp"

using namespace qcm;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(const std::string& dir) {
  RunConfig c;
  c.shots = 2000;
  c.noise = 1e-3;
  c.u_sweep = {0, 3};
  c.mitigation_seeds = 3;
  c.quadrature_nodes = 24;
  c.t_max = 12;
  c.n_tau = 20;
  c.omega_points = 161;
  c.points_per_segment = 8;
  c.out_dir = (fs::temp_directory_path() / dir).string();
  fs::remove_all(c.out_dir);
  c.validate();
  return c;
}

}  // namespace

TEST(Model, DimerGroundState) {
  const auto m = pipeline::make_model(RunConfig{}.hubbard());
  EXPECT_NEAR(m.ed.e0, -4.0, 1e-12);
  EXPECT_NEAR(m.ground_state().norm(), 1.0, 1e-12);
  EXPECT_EQ(m.term_expectations().size(), 6u);
  EXPECT_EQ(m.modes(Spin::Down), (std::vector<int>{2, 3}));
}

TEST(GroundSweep, ExactModeReachesGroundEnergy) {
  RunConfig c;
  c.mode = vqe::EvalMode::Exact;
  c.u_sweep = {0, 1, 2, 3, 4, 5};
  const auto rows = pipeline::ground_sweep(c);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_NEAR(rows[k].raw, rows[k].exact, 1e-9) << rows[k].U;
    const double u = rows[k].U;
    EXPECT_NEAR(rows[k].exact, (u - std::sqrt(u * u + 16)) / 2 - u, 1e-12);
  }
  EXPECT_NEAR(rows[3].exact, -4.0, 1e-12);
}

TEST(GroundSweep, SampledFreeDimerNearExact) {
  auto c = small_config("qcm_test_sweep");
  c.u_sweep = {0};
  c.shots = 12000;
  c.noise = 1e-4;
  const auto rows = pipeline::ground_sweep(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].raw, -2.0, 0.05);
  EXPECT_NEAR(rows[0].mitigated, -2.0, 0.08);
}

TEST(ClusterGreen, ExactModeMatchesLehmannTimeSeries) {
  auto c = small_config("qcm_test_cluster");
  c.mode = vqe::EvalMode::Exact;
  c.n_tau = 480;
  const auto m = pipeline::make_model(c.hubbard());
  const auto g = pipeline::circuit_cluster_green(c, m);
  ASSERT_EQ(g.series.size(), 8u);
  for (const auto& s : g.series) {
    const auto qi = m.ordering.qubit({s.i, s.spin}), qj = m.ordering.qubit({s.j, s.spin});
    const auto ref = ed::exact_g_t(m.ed, qi, qj, s.t);
    // spin-down hopping closes each slice, so its off-diagonal error stays first order
    const double tol = (s.spin == Spin::Down && s.i != s.j) ? 0.02 : 2e-3;
    for (std::size_t k = 0; k < s.t.size(); ++k) EXPECT_NEAR(std::abs(s.g[k] - ref[k]), 0.0, tol);
  }
  EXPECT_EQ(g.frequency.omega.size(), 161u);
}

TEST(Stages, WriteOutputsAndManifest) {
  const auto c = small_config("qcm_test_stages");
  const auto stages = pipeline::run_all(c);
  ASSERT_EQ(stages.size(), 3u);
  for (const auto& s : stages) EXPECT_TRUE(s.ok) << s.name << ": " << s.error;
  for (const char* f : {"energy_sweep.csv", "mitigation_U3.csv", "cluster_green.csv", "green_summary.json",
                        "green_t_i0j1_up.csv", "spectra_up_long.csv", "spectra_down_dense.txt", "plot_spectra_up.py",
                        "spectra_qc.json", "manifest.json"})
    EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / f)) << f;
  const auto manifest = nlohmann::json::parse(io::read_file(fs::path(c.out_dir) / "manifest.json"));
  for (const char* key : {"config", "seeds", "versions", "stages", "files"}) EXPECT_TRUE(manifest.contains(key)) << key;
  EXPECT_EQ(manifest["seeds"]["master"], c.seed);
}

TEST(Stages, SpectraStageNeedsClusterGreen) {
  const auto c = small_config("qcm_test_missing");
  const auto r = pipeline::run_spectra(c);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.error.empty());
}

TEST(Io, ClusterGreenRoundTrip) {
  cpt::ClusterGreenMatrix g;
  g.omega = {-1.0, 0.5};
  g.eta = 0.2;
  for (int s = 0; s < 2; ++s)
    for (int w = 0; w < 2; ++w) {
      Eigen::MatrixXcd m(2, 2);
      m << cplx(0.1 * s, -w), cplx(1.0 / 3, 2.0 / 7), cplx(-1e-17, 5), cplx(w, s);
      g.g[s].push_back(m);
    }
  std::stringstream ss;
  io::write_cluster_green(ss, g);
  const auto back = io::read_cluster_green(ss);
  EXPECT_EQ(back.omega, g.omega);
  EXPECT_EQ(back.eta, g.eta);
  for (int s = 0; s < 2; ++s)
    for (int w = 0; w < 2; ++w) EXPECT_EQ(back.g[s][w], g.g[s][w]);
}

TEST(GapMetrics, PicksFrequencyNearestZero) {
  cpt::SpectralGrid g;
  g.omega = {-0.3, 0.01, 0.4};
  g.path.k = {{0, 0}, {1, 0}};
  g.intensity[0] = {0.5, 0.2, 0.1, 0.0, 0.7, 3.0};
  const auto m = pipeline::gap_metrics(g);
  EXPECT_EQ(m.at_zero, 0.7);
  EXPECT_EQ(m.maximum, 3.0);
}
