#include <gtest/gtest.h>

#include "qcm/config.hpp"

using namespace qcm;

TEST(Config, DefaultsAreValid) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.U, 3.0);
  EXPECT_EQ(c.mu, 1.5);
  EXPECT_EQ(c.shots, 12000);
  EXPECT_EQ(c.n_tau, 60);
  EXPECT_EQ(c.quadrature_nodes, 100);
  EXPECT_EQ(c.t_max, 30.0);
  EXPECT_EQ(c.eta, 0.2);
  EXPECT_EQ(c.omega_grid().size(), 801u);
  EXPECT_NEAR(c.omega_grid()[1] - c.omega_grid()[0], 0.02, 1e-12);
}

TEST(Config, EmptyTextGivesDefaults) {
  EXPECT_EQ(to_ini(parse_config("")), to_ini(RunConfig{}));
}

TEST(Config, ParsesEverySection) {
  const auto c = parse_config(
      "[model]\nU = 4\nqubit_order = interleaved\n"
      "[cluster]\nsites = 0,0; 1,0\ne1 = 1,1\ne2 = 1,-1\n"
      "[simulation]\nshots = 500\nnoise = 0.01\nseed = 7\nmode = exact\nbackend = density\n"
      "[vqe]\nphi_samples = 7\ndzne_scales = 1,3,5,7\ndzne_order = 2\nu_sweep = 0,2.5\n"
      "[green]\nn_tau = 30\ntrotter_order = stored\nassembly = two_term\n"
      "[spectra]\nomega_min = -4\nomega_max = 4\nomega_points = 81\n"
      "[output]\ndir = elsewhere\n");
  EXPECT_EQ(c.U, 4.0);
  EXPECT_EQ(c.mu, 2.0);
  EXPECT_EQ(c.qubit_order, QubitOrder::Interleaved);
  EXPECT_EQ(c.e1, (Site{1, 1}));
  EXPECT_EQ(c.e2, (Site{1, -1}));
  EXPECT_EQ(c.shots, 500);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.mode, vqe::EvalMode::Exact);
  EXPECT_EQ(c.backend, NoiseBackend::Density);
  EXPECT_EQ(c.dzne_scales, (std::vector<int>{1, 3, 5, 7}));
  EXPECT_EQ(c.u_sweep, (std::vector<double>{0, 2.5}));
  EXPECT_EQ(c.trotter_order, green::TermOrdering::Stored);
  EXPECT_EQ(c.assembly, green::Assembly::TwoTerm);
  EXPECT_EQ(c.omega_grid().size(), 81u);
  EXPECT_EQ(c.out_dir, "elsewhere");
}

TEST(Config, ExplicitMuDisablesHalfFilling) {
  const auto c = parse_config("[model]\nU = 4\nmu = 0.5\n");
  EXPECT_FALSE(c.half_filling);
  EXPECT_EQ(c.resolved_mu(4.0), 0.5);
  const auto d = parse_config("[model]\nU = 4\nmu = 0.5\nhalf_filling = true\n");
  EXPECT_EQ(d.mu, 2.0);
  EXPECT_EQ(d.resolved_mu(1.0), 0.5);
}

TEST(Config, RejectsInvalidInput) {
  EXPECT_THROW(parse_config("[green]\neta = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[green]\neta = -0.1\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nhoping = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[modle]\nU = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nU = -1\n"), ConfigError);
  EXPECT_THROW(parse_config("[model]\nU = three\n"), ConfigError);
  EXPECT_THROW(parse_config("[simulation]\nshots = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[simulation]\nnoise = 1.5\n"), ConfigError);
  EXPECT_THROW(parse_config("[simulation]\nmode = fast\n"), ConfigError);
  EXPECT_THROW(parse_config("[vqe]\ndzne_scales = 1,2\n"), ConfigError);
  EXPECT_THROW(parse_config("[vqe]\ndzne_scales = 3,5\n"), ConfigError);
  EXPECT_THROW(parse_config("[green]\nn_tau = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[cluster]\ne2 = 0,2\n"), ConfigError);
  EXPECT_THROW(parse_config("[spectra]\nomega_min = 3\nomega_max = 1\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/run.ini"), ConfigError);
}

TEST(Config, IniRoundTrip) {
  RunConfig c;
  c.U = 2.25;
  c.half_filling = false;
  c.mu = 0.3;
  c.seed = 123456789012345ULL;
  c.u_sweep = {0.5, 1.75};
  c.eta = 0.15;
  c.validate();
  const auto text = to_ini(c);
  EXPECT_EQ(to_ini(parse_config(text)), text);
  const auto j = to_json(c);
  EXPECT_EQ(j["model"]["U"], "2.25");
  EXPECT_EQ(j["output"]["dir"], "out");
}
