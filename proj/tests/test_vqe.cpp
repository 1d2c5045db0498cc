#include <sstream>

#include <gtest/gtest.h>

#include "qcm/ed.hpp"
#include "qcm/fermion_model.hpp"
#include "qcm/vqe.hpp"

using namespace qcm;

namespace {

HubbardSpec dimer(double u) {
  HubbardSpec s;
  s.U = u;
  s.mu = u / 2;
  s.sites = {{0, 0}, {1, 0}};
  s.bonds = nearest_neighbor_bonds(s.sites);
  return s;
}

PauliHamiltonian dimer_h(double u) { return hubbard_pauli_hamiltonian(dimer(u), QubitOrdering(2)); }

double particle_number(const StateVector& s) {
  double n = 0;
  for (int q = 0; q < s.nqubits(); ++q) n += (1 - expectation(s, PauliString::single(s.nqubits(), q, 'Z'))) / 2;
  return n;
}

double exact_energy(const PauliHamiltonian& h, double phi) {
  return vqe::energy(h, vqe::default_dimer_layout(), phi, vqe::EvalMode::Exact).value;
}

}  // namespace

TEST(Ansatz, HalfFilledForEveryAngle) {
  const auto layout = vqe::default_dimer_layout();
  for (double phi : {0.0, 0.4, 1.9, -2.5})
    EXPECT_NEAR(particle_number(run(vqe::build_ansatz(layout, phi))), 2.0, 1e-12) << phi;
}

TEST(Ansatz, RySubstitutionSameEnergies) {
  const auto h = dimer_h(3.0);
  const auto layout = vqe::default_dimer_layout();
  const auto ry = vqe::ry_variant(layout);
  for (double phi : {0.0, 1.0, 2.0}) {
    const double a = vqe::energy(h, layout, phi, vqe::EvalMode::Exact).value;
    const double b = vqe::energy(h, ry, phi, vqe::EvalMode::Exact).value;
    EXPECT_NEAR(a, b, 1e-12);
  }
}

TEST(Energy, PeriodicInTwoPi) {
  const auto h = dimer_h(3.0);
  for (double phi : {0.1, 1.3, 2.9}) EXPECT_NEAR(exact_energy(h, phi), exact_energy(h, phi + 2 * kPi), 1e-12);
}

TEST(Energy, ScanReachesExactGroundEnergy) {
  const auto h = dimer_h(3.0);
  double best = 1e300;
  for (double phi : vqe::phi_grid(1000)) best = std::min(best, exact_energy(h, phi));
  EXPECT_NEAR(best, -4.0, 1e-4);
  const auto r = vqe::minimize(h, vqe::default_dimer_layout(), 5, vqe::EvalMode::Exact);
  EXPECT_NEAR(r.estimate.value, -4.0, 1e-10);
  EXPECT_NEAR(r.fit.min_value, -4.0, 1e-10);
}

TEST(Energy, VariationalBound) {
  for (double u : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    const auto h = dimer_h(u);
    const double e0 = ed::solve(h.dense()).e0;
    for (double phi : vqe::phi_grid(64)) EXPECT_GE(exact_energy(h, phi), e0 - 1e-12);
    const auto r = vqe::minimize(h, vqe::default_dimer_layout(), 5, vqe::EvalMode::Exact);
    EXPECT_NEAR(r.estimate.value, e0, 1e-9) << u;
  }
}

TEST(Energy, SampledReproducibleAndNearExact) {
  const auto h = dimer_h(3.0);
  vqe::SamplingConfig sc;
  sc.shots = 20000;
  sc.noise = NoiseModel{0.0, 7};
  const auto layout = vqe::default_dimer_layout();
  const double phi0 = vqe::minimize(h, layout, 5, vqe::EvalMode::Exact).fit.phi0;
  const auto a = vqe::energy(h, layout, phi0, vqe::EvalMode::Sampled, sc);
  const auto b = vqe::energy(h, layout, phi0, vqe::EvalMode::Sampled, sc);
  EXPECT_EQ(a.value, b.value);
  EXPECT_NEAR(a.value, -4.0, 0.05);
}

TEST(Dzne, LinearExtrapolation) {
  const auto r = vqe::dzne({{1, 0.85}, {3, 0.65}, {5, 0.45}});
  EXPECT_NEAR(r.value, 0.95, 1e-12);
  EXPECT_FALSE(r.clamped);
  EXPECT_NEAR(vqe::dzne({{1, -0.5}, {3, -0.3}}).value, -0.6, 1e-12);
}

TEST(Dzne, RichardsonIsExactForQuadratic) {
  std::map<int, double> v;
  for (int s : {1, 3, 5}) v[s] = 0.8 - 0.05 * s + 0.002 * s * s;
  EXPECT_NEAR(vqe::dzne(v, 2).value, 0.8, 1e-12);
}

TEST(Dzne, ClampsOutsideUnitInterval) {
  const auto r = vqe::dzne({{1, 0.99}, {3, 0.9}, {5, 0.81}});
  EXPECT_TRUE(r.clamped);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(vqe::dzne({{1, -0.99}, {3, -0.9}}).value, -1.0);
}

TEST(Dzne, RejectsBadInput) {
  EXPECT_THROW(vqe::dzne({{1, 0.9}}), Error);
  EXPECT_THROW(vqe::dzne({{1, 0.9}, {2, 0.8}}), Error);
  EXPECT_THROW(vqe::dzne({{1, 0.9}, {3, 0.8}}, 2), Error);
}

TEST(Fit, CosineMinimumAtZero) {
  std::vector<std::pair<double, double>> s;
  for (double phi : vqe::phi_grid(5)) s.emplace_back(phi, 2 - std::cos(phi));
  const auto f = vqe::fit_minimize(s);
  EXPECT_NEAR(f.phi0, 0.0, 1e-12);
  EXPECT_NEAR(f.min_value, 1.0, 1e-12);
  EXPECT_FALSE(f.flat);
}

TEST(Fit, SineMinimumAtMinusHalfPi) {
  std::vector<std::pair<double, double>> s;
  for (double phi : vqe::phi_grid(7)) s.emplace_back(phi, std::sin(phi));
  const auto f = vqe::fit_minimize(s);
  EXPECT_NEAR(f.phi0, -kPi / 2, 1e-12);
  EXPECT_NEAR(f.min_value, -1.0, 1e-12);
}

TEST(Fit, FlatLandscape) {
  std::vector<std::pair<double, double>> s;
  for (double phi : vqe::phi_grid(5)) s.emplace_back(phi, 0.25);
  const auto f = vqe::fit_minimize(s);
  EXPECT_TRUE(f.flat);
  EXPECT_EQ(f.message, "flat landscape");
  EXPECT_EQ(f.phi0, 0.0);
  EXPECT_NEAR(f.min_value, 0.25, 1e-12);
}

TEST(Fit, RejectsTooFewAngles) {
  EXPECT_THROW(vqe::fit_minimize({{0.0, 1.0}, {1.0, 2.0}, {0.0, 1.0}}), Error);
  EXPECT_THROW(vqe::phi_grid(2), Error);
}

TEST(Mitigation, CsvHasOneRowPerTerm) {
  const auto h = dimer_h(3.0);
  vqe::SamplingConfig sc;
  sc.shots = 2000;
  sc.noise = NoiseModel{0.001, 3};
  const auto e = vqe::energy_mitigated(h, vqe::default_dimer_layout(), 0.3, sc, vqe::DzneOptions{});
  EXPECT_EQ(e.terms.size(), 6u);
  for (const auto& t : e.terms) EXPECT_EQ(t.per_scale.size(), 3u);
  std::ostringstream os;
  vqe::write_mitigation_csv(os, e, std::vector<double>(6, 0.0));
  const auto text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
}
