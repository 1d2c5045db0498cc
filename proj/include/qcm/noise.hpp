#pragma once

#include <cstdint>
#include <optional>

#include "qcm/circuit.hpp"
#include "qcm/statevector.hpp"

namespace qcm {

/// Depolarizing noise: after every gate, each touched qubit is replaced by
/// the maximally mixed state with probability p.
struct NoiseModel {
  double p = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class NoiseBackend {
  Trajectory,  ///< stochastic Pauli trajectories, one per shot
  Density,     ///< exact noisy probability from a dense density matrix, then binomial shots
};

struct SampleOptions {
  NoiseBackend backend = NoiseBackend::Trajectory;
  /// Decompose Pauli rotations/controlled Paulis to native gates before noise.
  bool lower_to_native = false;
};

/// Shot estimate of <P> after `circuit` acting on `initial` (|0..0> when
/// absent). Non-identity letters are rotated to Z, the Z-parity of the support
/// is sampled `shots` times and the mean of the +-1 outcomes is returned.
double sample_expectation(const Circuit& circuit, const PauliString& p, std::int64_t shots,
                          const NoiseModel& noise, const std::optional<StateVector>& initial = std::nullopt,
                          const SampleOptions& options = {});

/// Exact noise-averaged <P> (density-matrix mode, no shot noise).
double noisy_expectation(const Circuit& circuit, const PauliString& p, double noise_p,
                         const std::optional<StateVector>& initial = std::nullopt,
                         const SampleOptions& options = {});

}  // namespace qcm
