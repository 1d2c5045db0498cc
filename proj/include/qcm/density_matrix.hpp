#pragma once

#include <vector>

#include "qcm/circuit.hpp"
#include "qcm/statevector.hpp"

namespace qcm {

/// Dense density matrix stored as a 2n-qubit vector: ket qubits [0, n),
/// bra qubits [n, 2n). Intended for n <= 6 cross-checks of the trajectory
/// sampler.
class DensityMatrix {
 public:
  static constexpr int kMaxQubits = 8;

  explicit DensityMatrix(const StateVector& pure);

  int nqubits() const { return n_; }
  cplx element(std::size_t row, std::size_t col) const { return rho_[row + (col << n_)]; }

  void apply(const Gate& g);
  /// rho -> (1 - p) rho + p I/2 on qubit q (traced over that qubit).
  void depolarize(int q, double p);

  double trace() const;
  double expectation(const PauliString& p) const;
  double even_parity_probability(std::uint64_t mask) const;

 private:
  int n_;
  std::vector<cplx> rho_;
};

/// Runs `circuit` with a depolarizing channel of strength p after every gate
/// on each touched qubit.
DensityMatrix run_noisy(const Circuit& circuit, const StateVector& initial, double p);

}  // namespace qcm
