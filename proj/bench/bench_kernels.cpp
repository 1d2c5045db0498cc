// Serial reference vs OpenMP kernels on pipeline-sized inputs.
#include <benchmark/benchmark.h>

#include "qcm/cpt.hpp"
#include "qcm/ed.hpp"
#include "qcm/green_time.hpp"
#include "qcm/kernels.hpp"
#include "qcm/spectral.hpp"

namespace {

using namespace qcm;

HubbardSpec dimer(double U) {
  HubbardSpec s;
  s.U = U;
  s.mu = U / 2;
  s.sites = {{0, 0}, {1, 0}};
  s.bonds = {{0, 1}};
  return s;
}

const kernels::TrajectorySampler& sampler() {
  static const kernels::TrajectorySampler s = [] {
    const auto spec = dimer(3.0);
    const QubitOrdering ord(2);
    const auto h = hubbard_pauli_hamiltonian(spec, ord);
    const auto sol = ed::solve(ed::occupation_hamiltonian(build_hubbard_cluster(spec), ord));
    const auto l = jw_ladder(0, 4);
    const auto prep = green::GroundPreparation::exact(StateVector(4, {sol.ground.data(), sol.ground.data() + 16}));
    Circuit c = green::hadamard_circuit(l.xbar, l.xbar, green::trotter_circuit(h, 7.0, {}), prep);
    return kernels::TrajectorySampler(c, prep.initial.extended(1), std::uint64_t{1} << 4, 1e-3);
  }();
  return s;
}

void BM_CountEvenSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::count_even(sampler(), st.range(0), 7));
}
void BM_CountEvenOmp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::count_even(sampler(), st.range(0), 7));
}
BENCHMARK(BM_CountEvenSerial)->Arg(12000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountEvenOmp)->Arg(12000)->Unit(benchmark::kMillisecond);

struct FourierInput {
  spectral::QuadratureRule rule = spectral::legendre_rule(100, 30.0);
  std::vector<cplx> values;
  std::vector<double> omega = spectral::uniform_grid(-8, 8, 801);
  FourierInput() {
    for (double t : rule.nodes) values.push_back(cplx(0, -1) * std::exp(cplx(0, -t)));
  }
};

void BM_FourierSerial(benchmark::State& st) {
  static const FourierInput in;
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::serial::damped_fourier(in.rule.nodes, in.rule.weights, in.values, in.omega, 0.2));
}
void BM_FourierOmp(benchmark::State& st) {
  static const FourierInput in;
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::omp::damped_fourier(in.rule.nodes, in.rule.weights, in.values, in.omega, 0.2));
}
BENCHMARK(BM_FourierSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FourierOmp)->Unit(benchmark::kMicrosecond);

const kernels::LatticeGridInput& grid_input() {
  static const kernels::LatticeGridInput in = [] {
    cpt::TilingSpec t;
    t.sites = {{0, 0}, {1, 0}};
    t.mu = 0.0;
    const auto part = cpt::partition_hoppings(t);
    const auto path = cpt::gamma_x_m_path(64);
    kernels::LatticeGridInput g;
    for (double w : spectral::uniform_grid(-8, 8, 801))
      g.g_inverse.push_back(cplx(w, 0.2) * Eigen::MatrixXcd::Identity(2, 2) - part.t0);
    for (const auto& k : path.k) {
      g.tau.push_back(cpt::tau_q(part, cpt::fold_to_reduced_zone(k, t)));
      g.phase.push_back(cpt::periodization_phase(t.sites, k));
    }
    return g;
  }();
  return in;
}

void BM_LatticeSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::lattice_grid(grid_input()));
}
void BM_LatticeOmp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::lattice_grid(grid_input()));
}
BENCHMARK(BM_LatticeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatticeOmp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
