#include "qcm/noise.hpp"

#include <cmath>
#include <random>

#include "qcm/density_matrix.hpp"
#include "qcm/kernels.hpp"

namespace qcm {

void NoiseModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("noise probability must lie in [0, 1]");
}

namespace {

Circuit measured_circuit(const Circuit& circuit, const PauliString& p, const SampleOptions& options) {
  if (p.nqubits() != circuit.nqubits()) throw Error("measured Pauli width does not match circuit");
  Circuit c = circuit;
  c.append(measurement_basis(p));
  return options.lower_to_native ? lower_to_native(c) : c;
}

StateVector initial_or_zero(const Circuit& c, const std::optional<StateVector>& initial) {
  return initial ? *initial : StateVector(c.nqubits());
}

}  // namespace

double sample_expectation(const Circuit& circuit, const PauliString& p, std::int64_t shots,
                          const NoiseModel& noise, const std::optional<StateVector>& initial,
                          const SampleOptions& options) {
  if (shots < 1) throw Error("sample_expectation: shots must be >= 1");
  noise.validate();
  if (p.is_identity()) return 1.0;
  const Circuit c = measured_circuit(circuit, p, options);
  const StateVector init = initial_or_zero(c, initial);
  std::int64_t even = 0;
  if (options.backend == NoiseBackend::Density) {
    const double prob = std::clamp(run_noisy(c, init, noise.p).even_parity_probability(p.support_mask()), 0.0, 1.0);
    std::mt19937_64 rng(noise.seed);
    even = std::binomial_distribution<std::int64_t>(shots, prob)(rng);
  } else {
    const kernels::TrajectorySampler sampler(c, init, p.support_mask(), noise.p);
    even = kernels::omp::count_even(sampler, shots, noise.seed);
  }
  return static_cast<double>(2 * even - shots) / static_cast<double>(shots);
}

double noisy_expectation(const Circuit& circuit, const PauliString& p, double noise_p,
                         const std::optional<StateVector>& initial, const SampleOptions& options) {
  if (p.is_identity()) return 1.0;
  const Circuit c = measured_circuit(circuit, p, options);
  const double even = run_noisy(c, initial_or_zero(c, initial), noise_p).even_parity_probability(p.support_mask());
  return 2.0 * even - 1.0;
}

}  // namespace qcm
