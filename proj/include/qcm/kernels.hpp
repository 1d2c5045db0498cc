#pragma once

// Data-parallel hot loops. Each kernel has a serial reference in
// qcm::kernels::serial and an OpenMP version in qcm::kernels::omp; both
// return bit-identical results for the same inputs and seed, independent of
// the thread count.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcm/circuit.hpp"
#include "qcm/statevector.hpp"

namespace qcm::kernels {

/// Shot sampler for a noisy circuit under stochastic Pauli trajectories.
/// After every gate, each touched qubit independently suffers a uniformly
/// random Pauli from {I, X, Y, Z} with probability p (the trajectory
/// unravelling of the depolarizing channel). Shots without an error sample
/// from the cached ideal output; erroneous shots resume from the nearest
/// cached ideal prefix state.
class TrajectorySampler {
 public:
  /// Shots are processed in fixed chunks with one RNG stream per chunk.
  static constexpr std::int64_t kChunk = 1024;

  TrajectorySampler(Circuit circuit, const StateVector& initial, std::uint64_t parity_mask, double p);

  double ideal_even_probability() const { return ideal_even_; }
  std::size_t event_count() const { return event_qubit_.size(); }

  /// Number of shots (out of `shots`) whose measured parity is even.
  std::int64_t count_even_chunk(std::int64_t shots, std::uint64_t seed) const;

  std::int64_t chunk_count(std::int64_t shots) const { return (shots + kChunk - 1) / kChunk; }

 private:
  Circuit circuit_;
  std::uint64_t mask_;
  double p_;
  std::vector<std::size_t> event_start_;  // first event index of each gate, size G+1
  std::vector<int> event_qubit_;
  std::size_t stride_ = 1;
  std::vector<StateVector> checkpoints_;  // state after k*stride gates
  double ideal_even_ = 1.0;

  double simulate_with_errors(const std::vector<std::pair<std::size_t, int>>& errors,
                              StateVector& scratch) const;
};

/// Inputs of the lattice spectral grid: inverse cluster Green's functions per
/// frequency, tau_k per k point and the periodisation vector e^{i k.r_j}.
struct LatticeGridInput {
  std::vector<Eigen::MatrixXcd> g_inverse;  // per omega
  std::vector<Eigen::MatrixXcd> tau;        // per k
  std::vector<Eigen::VectorXcd> phase;      // per k
  double condition_limit = 1e12;
};

struct LatticeGridOutput {
  std::vector<double> intensity;  // k-major: [k * n_omega + w]
  std::vector<std::uint8_t> singular;
};

namespace serial {
std::int64_t count_even(const TrajectorySampler& s, std::int64_t shots, std::uint64_t seed);
/// G(w + i eta) = sum_k w_k e^{i w t_k} e^{-eta t_k} G(t_k)
std::vector<cplx> damped_fourier(std::span<const double> nodes, std::span<const double> weights,
                                 std::span<const cplx> values, std::span<const double> omega, double eta);
LatticeGridOutput lattice_grid(const LatticeGridInput& in);
}  // namespace serial

namespace omp {
std::int64_t count_even(const TrajectorySampler& s, std::int64_t shots, std::uint64_t seed);
std::vector<cplx> damped_fourier(std::span<const double> nodes, std::span<const double> weights,
                                 std::span<const cplx> values, std::span<const double> omega, double eta);
LatticeGridOutput lattice_grid(const LatticeGridInput& in);
}  // namespace omp

/// Evaluates one lattice grid cell; shared by both variants.
double lattice_cell(const Eigen::MatrixXcd& g_inverse, const Eigen::MatrixXcd& tau,
                    const Eigen::VectorXcd& phase, double condition_limit, bool& singular);

/// Shots handled by chunk `c` of a run of `shots`.
inline std::int64_t chunk_shots(std::int64_t shots, std::int64_t c) {
  const std::int64_t begin = c * TrajectorySampler::kChunk;
  return std::min(TrajectorySampler::kChunk, shots - begin);
}

}  // namespace qcm::kernels
