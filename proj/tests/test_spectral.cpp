#include <sstream>

#include <gtest/gtest.h>

#include "qcm/ed.hpp"
#include "qcm/pipeline.hpp"
#include "qcm/spectral.hpp"

using namespace qcm;

namespace {

/// Closed form of -i int_0^T e^{i(w - eps + i eta)t} dt.
cplx truncated_level(double w, double eps, double eta, double T) {
  const cplx z(w - eps, eta);
  return (1.0 - std::exp(kI * z * T)) / z;
}

spectral::FrequencyGreen free_level(double eps, double eta, double T, int nodes, const std::vector<double>& omega) {
  const auto rule = spectral::legendre_rule(nodes, T);
  std::vector<cplx> g;
  for (double t : rule.nodes) g.push_back(-kI * std::exp(-kI * eps * t));
  return spectral::to_frequency(rule, rule.nodes, g, omega, eta);
}

}  // namespace

TEST(Legendre, SmallRules) {
  const auto one = spectral::legendre_rule(1, 2.0);
  EXPECT_NEAR(one.nodes[0], 1.0, 1e-15);
  EXPECT_NEAR(one.weights[0], 2.0, 1e-15);
  const auto two = spectral::legendre_rule(2, 2.0);
  EXPECT_NEAR(two.nodes[0], 1 - 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(two.nodes[1], 1 + 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(two.weights[0], 1.0, 1e-15);
}

TEST(Legendre, IntegratesPolynomials) {
  const auto r = spectral::legendre_rule(100, 30.0);
  double cube = 0, sum = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    cube += r.weights[k] * std::pow(r.nodes[k], 3);
    sum += r.weights[k];
    EXPECT_GT(r.weights[k], 0.0);
    if (k) EXPECT_GT(r.nodes[k], r.nodes[k - 1]);
  }
  EXPECT_NEAR(cube, 202500.0, 202500.0 * 1e-12);
  EXPECT_NEAR(sum, 30.0, 1e-12);
  EXPECT_THROW(spectral::legendre_rule(0, 1.0), Error);
  EXPECT_THROW(spectral::legendre_rule(5, 0.0), Error);
}

TEST(Transform, FreeLevelMatchesTruncatedClosedForm) {
  const auto omega = spectral::uniform_grid(-8, 8, 801);
  const auto g = free_level(1.0, 0.2, 30.0, 100, omega);
  for (std::size_t k = 0; k < omega.size(); ++k)
    EXPECT_NEAR(std::abs(g.values[k] - truncated_level(omega[k], 1.0, 0.2, 30.0)), 0.0, 1e-9) << omega[k];
}

TEST(Transform, FreeLevelWithinTailBoundOfLorentzian) {
  const double eta = 0.2, T = 30.0;
  const auto omega = spectral::uniform_grid(-8, 8, 801);
  const auto g = free_level(1.0, eta, T, 100, omega);
  const double bound = std::exp(-eta * T) / eta;
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const cplx lorentz = 1.0 / cplx(omega[k] - 1.0, eta);
    EXPECT_LE(std::abs(g.values[k] - lorentz), bound + 1e-9);
  }
  const auto rho = spectral::spectral(free_level(1.0, eta, T, 100, {1.0}));
  EXPECT_NEAR(rho.rho[0], (1 - std::exp(-eta * T)) / (kPi * eta), 1e-9);
}

TEST(Transform, ZeroSeriesGivesZero) {
  const auto rule = spectral::legendre_rule(16, 10.0);
  const auto g = spectral::to_frequency(rule, rule.nodes, std::vector<cplx>(16), {-1.0, 0.0, 2.0}, 0.1);
  for (const auto& v : g.values) EXPECT_EQ(v, cplx(0.0));
}

TEST(Transform, RejectsBadInput) {
  const auto rule = spectral::legendre_rule(4, 10.0);
  const std::vector<cplx> v(4);
  EXPECT_THROW(spectral::to_frequency(rule, rule.nodes, v, {0.0}, 0.0), Error);
  EXPECT_THROW(spectral::to_frequency(rule, {1, 2, 3, 4}, v, {0.0}, 0.2), Error);
  EXPECT_THROW(spectral::to_frequency(rule, rule.nodes, v, {1.0, 0.0}, 0.2), Error);
  EXPECT_THROW(spectral::to_frequency(rule, rule.nodes, std::vector<cplx>(3), {0.0}, 0.2), Error);
}

TEST(SumRule, DimerLehmannNearUnity) {
  HubbardSpec s;
  s.U = 3;
  s.mu = 1.5;
  s.sites = {{0, 0}, {1, 0}};
  s.bonds = nearest_neighbor_bonds(s.sites);
  const auto m = pipeline::make_model(s);
  spectral::FrequencyGreen g;
  g.omega = spectral::uniform_grid(-10, 10, 2001);
  g.eta = 0.2;
  g.values = ed::lehmann_green(m.ed, 0, 0, g.omega, g.eta);
  const auto sr = spectral::sum_rule(spectral::spectral(g));
  EXPECT_NEAR(sr.value, 1.0, 0.02);
  EXPECT_GT(sr.edge_weight, 0.0);

  const auto peaks = spectral::find_peaks(spectral::spectral(g), 0.05);
  ASSERT_EQ(peaks.size(), 4u);
  EXPECT_NEAR(peaks[0], -3.5, 0.02);
  EXPECT_NEAR(peaks[1], -1.5, 0.02);
  EXPECT_NEAR(peaks[2], 1.5, 0.02);
  EXPECT_NEAR(peaks[3], 3.5, 0.02);
}

TEST(SumRule, EdgeWarning) {
  spectral::SpectralSeries s{{0.0, 1.0, 2.0}, {0.002, 1.0, 0.0}};
  const auto r = spectral::sum_rule(s);
  EXPECT_NEAR(r.value, 1.001, 1e-12);
  EXPECT_TRUE(r.edge_warning);
  s.rho.front() = 0.0005;
  EXPECT_FALSE(spectral::sum_rule(s).edge_warning);
}

TEST(KramersKronig, RecoversRealPartOfLorentzian) {
  spectral::FrequencyGreen g;
  g.omega = spectral::uniform_grid(-60, 60, 12001);
  g.eta = 0.2;
  for (double w : g.omega) g.values.push_back(0.7 / cplx(w - 1.0, 0.2) + 0.3 / cplx(w + 2.0, 0.2));
  const auto re = spectral::kramers_kronig_real(spectral::spectral(g));
  for (std::size_t k = 5000; k <= 7000; k += 50) EXPECT_NEAR(re[k], g.values[k].real(), 5e-3) << g.omega[k];
  EXPECT_THROW(spectral::kramers_kronig_real({{0.0, 1.0, 3.0}, {0, 0, 0}}), Error);
}

TEST(Transform, CsvHeader) {
  const auto g = free_level(0.0, 0.3, 5.0, 8, {0.0, 1.0});
  std::ostringstream os;
  spectral::write_csv(os, g);
  EXPECT_EQ(os.str().substr(0, 15), "omega,re,im,rho");
}
