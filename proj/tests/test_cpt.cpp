#include <random>

#include <gtest/gtest.h>

#include "qcm/cpt.hpp"
#include "qcm/pipeline.hpp"

using namespace qcm;

namespace {

cpt::TilingSpec dimer_tiling(double mu) {
  cpt::TilingSpec t;
  t.sites = {{0, 0}, {1, 0}};
  t.mu = mu;
  return t;
}

HubbardSpec dimer(double u) {
  HubbardSpec s;
  s.U = u;
  s.mu = u / 2;
  s.sites = {{0, 0}, {1, 0}};
  s.bonds = nearest_neighbor_bonds(s.sites);
  return s;
}

cpt::ClusterGreenMatrix lehmann_table(const pipeline::ClusterModel& m, const std::vector<double>& omega, double eta) {
  cpt::ClusterGreenMatrix g;
  g.omega = omega;
  g.eta = eta;
  for (Spin s : {Spin::Up, Spin::Down})
    for (double w : omega) g.g[static_cast<int>(s)].push_back(ed::lehmann_green_matrix(m.ed, m.modes(s), cplx(w, eta)));
  return g;
}

Eigen::MatrixXcd c2(cplx a, cplx b, cplx c, cplx d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Partition, DimerBlocks) {
  const auto p = cpt::partition_hoppings(dimer_tiling(1.5));
  EXPECT_EQ(p.L, 2);
  EXPECT_LT((p.t0 - c2(-1.5, -1, -1, -1.5)).cwiseAbs().maxCoeff(), 1e-15);
  ASSERT_EQ(p.inter.size(), 4u);
  EXPECT_LT((p.inter.at({0, 1}) + Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((p.inter.at({0, -1}) + Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((p.inter.at({2, 0}) - c2(0, -1, 0, 0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((p.inter.at({-2, 0}) - c2(0, 0, -1, 0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(cpt::partition_mismatches(dimer_tiling(1.5), p), 0);
}

TEST(Partition, OtherTilingsReconstructLattice) {
  cpt::TilingSpec diag;
  diag.sites = {{0, 0}, {1, 0}};
  diag.e1 = {1, 1};
  diag.e2 = {1, -1};
  EXPECT_EQ(cpt::partition_mismatches(diag, cpt::partition_hoppings(diag)), 0);
  cpt::TilingSpec plaquette;
  plaquette.sites = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  plaquette.e1 = {2, 0};
  plaquette.e2 = {0, 2};
  EXPECT_EQ(cpt::partition_mismatches(plaquette, cpt::partition_hoppings(plaquette)), 0);
}

TEST(Partition, InvalidTilingsRejected) {
  auto t = dimer_tiling(0.0);
  t.e2 = {0, 2};
  EXPECT_THROW(t.validate(), Error);
  t = dimer_tiling(0.0);
  t.sites = {{0, 0}, {0, 0}};
  EXPECT_THROW(t.validate(), Error);
  t = dimer_tiling(0.0);
  t.sites = {{0, 0}, {2, 0}};
  EXPECT_THROW(t.validate(), Error);
}

TEST(Tau, Examples) {
  const auto p = cpt::partition_hoppings(dimer_tiling(0.0));
  EXPECT_LT((cpt::tau_q(p, {0, 0}) - c2(-2, -1, -1, -2)).cwiseAbs().maxCoeff(), 1e-14);
  const Eigen::MatrixXcd t = cpt::tau_q(p, {0, kPi});
  EXPECT_NEAR(t(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(t(1, 1).real(), 2.0, 1e-14);
}

TEST(Tau, HermitianEverywhere) {
  const auto p = cpt::partition_hoppings(dimer_tiling(0.7));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int k = 0; k < 100; ++k) {
    const Eigen::MatrixXcd t = cpt::tau_q(p, {u(rng), u(rng)});
    EXPECT_LT((t - t.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Reciprocal, DualBasis) {
  auto t = dimer_tiling(0.0);
  t.e1 = {1, 1};
  t.e2 = {1, -1};
  const auto b = cpt::reciprocal_superlattice(t);
  EXPECT_NEAR(b[0][0] * 1 + b[0][1] * 1, 2 * kPi, 1e-14);
  EXPECT_NEAR(b[0][0] * 1 - b[0][1] * 1, 0.0, 1e-14);
  EXPECT_NEAR(b[1][0] * 1 - b[1][1] * 1, 2 * kPi, 1e-14);
  const auto f = cpt::fold_to_reduced_zone({kPi, 0.3}, dimer_tiling(0.0));
  EXPECT_NEAR(f[0], 0.0, 1e-12);
  EXPECT_NEAR(f[1], 0.3, 1e-12);
}

TEST(CptGreen, ZeroCouplingReturnsClusterG) {
  cpt::HoppingPartition p;
  p.L = 2;
  p.t0 = Eigen::MatrixXcd::Zero(2, 2);
  const Eigen::MatrixXcd g = c2(cplx(0.3, -0.2), 0.1, 0.1, cplx(-0.4, -0.5));
  EXPECT_LT((cpt::cpt_green(g, p, {0.4, 1.0}) - g).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CptGreen, SingularClusterGThrows) {
  const auto p = cpt::partition_hoppings(dimer_tiling(0.0));
  EXPECT_THROW(cpt::cpt_green(Eigen::MatrixXcd::Zero(2, 2), p, {0, 0}), Error);
}

TEST(SelfEnergy, VanishesWithoutInteraction) {
  const auto m = pipeline::make_model(dimer(0.0));
  const auto t0 = cpt::partition_hoppings(dimer_tiling(0.0)).t0;
  for (double w : {-2.0, 0.3, 1.7}) {
    const cplx z(w, 0.2);
    const auto sigma = cpt::self_energy(ed::lehmann_green_matrix(m.ed, m.modes(Spin::Up), z), z, t0);
    EXPECT_LT(sigma.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SelfEnergy, DimerClosedForm) {
  const double u = 3.0;
  const auto m = pipeline::make_model(dimer(u));
  const auto t0 = cpt::partition_hoppings(dimer_tiling(u / 2)).t0;
  for (double w : {-5.0, -1.0, 0.0, 0.8, 2.5}) {
    const cplx z(w, 0.2);
    const auto sigma = cpt::self_energy(ed::lehmann_green_matrix(m.ed, m.modes(Spin::Up), z), z, t0);
    const cplx a = u * u / 8 / (z - 3.0), b = u * u / 8 / (z + 3.0);
    EXPECT_NEAR(std::abs(sigma(0, 0) - (u / 2 + a + b)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(sigma(0, 1)), std::abs(a - b), 1e-10);
  }
  const cplx zinf(1e5, 0.2);
  const auto far = cpt::self_energy(ed::lehmann_green_matrix(m.ed, m.modes(Spin::Up), zinf), zinf, t0);
  EXPECT_NEAR(far(0, 0).real(), u / 2, 1e-3);
}

TEST(Periodize, Examples) {
  const std::vector<Site> sites{{0, 0}, {1, 0}};
  const cplx g(0.2, -0.7);
  const Eigen::MatrixXcd all = Eigen::MatrixXcd::Constant(2, 2, g);
  EXPECT_NEAR(std::abs(cpt::periodize(all, sites, {0, 0}) - 2.0 * g), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cpt::periodize(all, sites, {kPi, 0})), 0.0, 1e-15);
}

TEST(KPath, Layout) {
  const auto p = cpt::gamma_x_m_path(4);
  ASSERT_EQ(p.k.size(), 13u);
  EXPECT_EQ(p.label[0], "G");
  EXPECT_EQ(p.label[4], "X");
  EXPECT_EQ(p.label[8], "M");
  EXPECT_EQ(p.label[12], "G");
  EXPECT_NEAR(p.k[4][0], kPi, 1e-15);
  EXPECT_NEAR(p.k[8][1], kPi, 1e-15);
}

TEST(Spectra, FreeLimitIsExactLorentzian) {
  const double eta = 0.2;
  const auto m = pipeline::make_model(dimer(0.0));
  const auto omega = std::vector<double>{-3.9, -2.0, -0.5, 0.0, 1.1, 3.0};
  const auto path = cpt::gamma_x_m_path(6);
  const auto grid = cpt::excitation_spectra(lehmann_table(m, omega, eta), dimer_tiling(0.0), path);
  for (std::size_t k = 0; k < path.k.size(); ++k) {
    const double eps = -2 * (std::cos(path.k[k][0]) + std::cos(path.k[k][1]));
    for (std::size_t w = 0; w < omega.size(); ++w) {
      const double lorentz = eta / kPi / ((omega[w] - eps) * (omega[w] - eps) + eta * eta);
      EXPECT_NEAR(grid.at(0, k, w), lorentz, 1e-10);
      EXPECT_NEAR(grid.at(1, k, w), lorentz, 1e-10);
    }
  }
  EXPECT_EQ(grid.singular_cells, 0);
}

TEST(Spectra, SerialAndParallelAgreeAndSpinsMatch) {
  const auto m = pipeline::make_model(dimer(3.0));
  std::vector<double> omega;
  for (int w = 0; w < 41; ++w) omega.push_back(-4 + 0.2 * w);
  const auto table = lehmann_table(m, omega, 0.2);
  const auto path = cpt::gamma_x_m_path(5);
  const auto a = cpt::excitation_spectra(table, dimer_tiling(1.5), path, false);
  const auto b = cpt::excitation_spectra(table, dimer_tiling(1.5), path, true);
  EXPECT_EQ(a.intensity[0], b.intensity[0]);
  EXPECT_EQ(a.intensity[1], b.intensity[1]);
  for (std::size_t k = 0; k < a.intensity[0].size(); ++k) EXPECT_NEAR(a.intensity[0][k], a.intensity[1][k], 1e-12);
}

TEST(Spectra, StrongCouplingOpensGapAtFermiLevel) {
  const double u = 8.0;
  const auto m = pipeline::make_model(dimer(u));
  const auto omega = spectral::uniform_grid(-8, 8, 801);
  const auto grid = cpt::excitation_spectra(lehmann_table(m, omega, 0.2), dimer_tiling(u / 2), cpt::gamma_x_m_path(16));
  const auto gap = pipeline::gap_metrics(grid);
  EXPECT_LT(gap.at_zero, 0.05);
  EXPECT_GT(gap.maximum, 0.3);
}
