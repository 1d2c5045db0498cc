#include <sstream>

#include <gtest/gtest.h>

#include "qcm/green_time.hpp"
#include "qcm/pipeline.hpp"
#include "qcm/spectral.hpp"

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

const pipeline::ClusterModel& model() {
  static const pipeline::ClusterModel m = pipeline::make_model(dimer(3.0));
  return m;
}

green::GreenConfig exact_config(int n_tau, green::TermOrdering order = green::TermOrdering::Interleaved) {
  green::GreenConfig gc;
  gc.plan.n_tau = n_tau;
  gc.plan.ordering = order;
  return gc;
}

Eigen::MatrixXcd exact_propagator(const PauliHamiltonian& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
  const Eigen::VectorXcd phase = (-kI * t * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

double trotter_error(int n_tau, green::TermOrdering order) {
  const auto& m = model();
  const auto times = spectral::uniform_grid(0.0, 10.0, 201);
  const auto s = green::retarded_g(m.h, m.ordering, 0, 0, Spin::Up, times,
                                   green::GroundPreparation::exact(m.ground_state()), exact_config(n_tau, order));
  const auto ref = ed::exact_g_t(m.ed, 0, 0, times);
  double err = 0;
  for (std::size_t k = 0; k < times.size(); ++k) err = std::max(err, std::abs(s.g[k].imag() - ref[k].imag()));
  return err;
}

}  // namespace

TEST(Trotter, ZeroTimeIsEmpty) {
  const auto c = green::trotter_circuit(model().h, 0.0, green::TrotterPlan{});
  EXPECT_TRUE(c.empty());
  EXPECT_THROW(green::trotter_circuit(model().h, -1.0, green::TrotterPlan{}), Error);
}

TEST(Trotter, SingleTermIsExact) {
  const PauliHamiltonian h(2, {{0.7, PauliString::parse("XY")}, {-0.2, PauliString::parse("II")}});
  green::TrotterPlan plan;
  plan.n_tau = 3;
  const auto u = circuit_unitary(green::trotter_circuit(h, 1.9, plan));
  EXPECT_LT((u - exact_propagator(h, 1.9)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Trotter, FirstOrderErrorScaling) {
  const auto& h = model().h;
  auto err = [&](double t, int n) {
    green::TrotterPlan plan;
    plan.n_tau = n;
    plan.ordering = green::TermOrdering::Stored;
    return (circuit_unitary(green::trotter_circuit(h, t, plan)) - exact_propagator(h, t)).norm();
  };
  EXPECT_NEAR(err(1.0, 40) / err(1.0, 80), 2.0, 0.1);
  EXPECT_NEAR(err(0.1, 80) / err(0.05, 80), 4.0, 0.2);
}

TEST(Trotter, PlanValidation) {
  green::TrotterPlan plan;
  plan.n_tau = 0;
  EXPECT_THROW(plan.validate(6), Error);
  plan.n_tau = 5;
  plan.term_order = {0, 1, 1};
  EXPECT_THROW(plan.validate(3), Error);
  const auto order = green::interleaved_order(model().h, model().ordering);
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) EXPECT_EQ(sorted[k], k);
}

TEST(Hadamard, Examples) {
  const auto& m = model();
  const auto prep = green::GroundPreparation::exact(m.ground_state());
  const Circuit none(4);
  const auto l = jw_ladder(1, 4);
  const PauliString id(4);
  EXPECT_NEAR(green::hadamard_test_F(id, id, none, prep, vqe::EvalMode::Exact).F, 2.0, 1e-12);
  EXPECT_NEAR(green::hadamard_test_F(l.xbar, l.ybar, none, prep, vqe::EvalMode::Exact).F, 0.0, 1e-12);
  EXPECT_NEAR(green::hadamard_test_F(l.xbar, l.xbar, none, prep, vqe::EvalMode::Exact).F, 2.0, 1e-12);
}

TEST(Hadamard, MatchesDirectEvaluation) {
  const auto& m = model();
  const auto prep = green::GroundPreparation::exact(m.ground_state());
  const auto u = green::trotter_circuit(m.h, 2.3, green::resolve(green::TrotterPlan{}, m.h, m.ordering));
  for (int qi = 0; qi < 4; ++qi)
    for (int qj = 0; qj < 4; ++qj) {
      const auto li = jw_ladder(qi, 4), lj = jw_ladder(qj, 4);
      const auto out = green::hadamard_test_F(li.xbar, lj.ybar, u, prep, vqe::EvalMode::Exact);
      EXPECT_NEAR(out.F, green::direct_F(li.xbar, lj.ybar, u, m.ground_state()), 1e-12);
      EXPECT_NEAR(out.p_plus + out.p_minus, 1.0, 1e-12);
    }
}

TEST(RetardedG, InitialValues) {
  const auto& m = model();
  const auto prep = green::GroundPreparation::exact(m.ground_state());
  for (Spin s : {Spin::Up, Spin::Down}) {
    const auto g00 = green::retarded_g(m.h, m.ordering, 0, 0, s, {0.0}, prep, exact_config(60));
    EXPECT_NEAR(std::abs(g00.g[0] - cplx(0, -1)), 0.0, 1e-12);
    const auto g01 = green::retarded_g(m.h, m.ordering, 0, 1, s, {0.0}, prep, exact_config(60));
    EXPECT_NEAR(std::abs(g01.g[0]), 0.0, 1e-12);
  }
  EXPECT_EQ(green::convention_sign(m.ordering, prep), 1);
}

TEST(RetardedG, TwoTermAssemblyLosesEqualTimeWeight) {
  const auto& m = model();
  auto gc = exact_config(60);
  gc.assembly = green::Assembly::TwoTerm;
  const auto s = green::retarded_g(m.h, m.ordering, 0, 0, Spin::Up, {0.0},
                                   green::GroundPreparation::exact(m.ground_state()), gc);
  EXPECT_NEAR(std::abs(s.g[0]), 0.0, 1e-12);
}

TEST(RetardedG, ParticleHoleSymmetryKillsRealPart) {
  const auto& m = model();
  const auto s = green::retarded_g(m.h, m.ordering, 1, 1, Spin::Down, {0.5, 1.7, 4.0, 9.5},
                                   green::GroundPreparation::exact(m.ground_state()), exact_config(60));
  for (const auto& g : s.g) EXPECT_NEAR(g.real(), 0.0, 1e-6);
}

TEST(RetardedG, FrozenTrotterConvergenceTable) {
  const std::vector<std::pair<int, double>> table{
      {15, 0.605382}, {30, 0.143883}, {60, 0.0353987}, {120, 0.00881417}, {240, 0.00220125}};
  for (const auto& [n, expected] : table) EXPECT_NEAR(trotter_error(n, green::TermOrdering::Interleaved), expected, 2e-6 + 1e-5 * expected) << n;
}

TEST(RetardedG, StoredOrderMissesAccuracyTarget) {
  EXPECT_GT(trotter_error(60, green::TermOrdering::Stored), 0.05);
  EXPECT_LT(trotter_error(60, green::TermOrdering::Interleaved), 0.05);
}

TEST(RetardedG, RejectsUnsortedNodes) {
  const auto& m = model();
  EXPECT_THROW(green::retarded_g(m.h, m.ordering, 0, 0, Spin::Up, {1.0, 0.5},
                                 green::GroundPreparation::exact(m.ground_state()), exact_config(10)),
               Error);
}

TEST(RetardedG, CsvColumns) {
  green::GreenTimeSeries s;
  s.t = {0.0, 1.0};
  s.g = {cplx(0, -1), cplx(0.1, -0.5)};
  std::ostringstream os;
  green::write_csv(os, s, 0.2, {cplx(0, -1), cplx(0, -0.4)});
  const auto text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,re,im,damped_re,damped_im,ref_re,ref_im");
}
