#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcm/circuit.hpp"
#include "qcm/common.hpp"
#include "qcm/pauli.hpp"

namespace qcm {

/// 2^n complex amplitudes; qubit 0 is the least significant index bit.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>
  explicit StateVector(int nqubits);
  StateVector(int nqubits, std::vector<cplx> amplitudes);

  static StateVector basis(int nqubits, std::uint64_t index);

  int nqubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  cplx inner(const StateVector& other) const;  ///< <this|other>

  /// |this> (x) |0>^(extra): new qubits become the most significant bits.
  StateVector extended(int extra_qubits) const;

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

/// Low-level gate kernels on a raw amplitude array. `offset` shifts every
/// operand; `conjugate` applies the complex-conjugated gate. Both are used by
/// the vectorised density matrix.
void apply_gate_raw(std::span<cplx> amps, const Gate& g, int offset = 0, bool conjugate = false);
void apply_pauli_raw(std::span<cplx> amps, const PauliString& p, int offset = 0, bool conjugate = false);

void apply(StateVector& state, const Gate& gate);
void apply(StateVector& state, const Circuit& circuit);
void apply_pauli(StateVector& state, const PauliString& p);
StateVector run(const Circuit& circuit, const StateVector& initial);
StateVector run(const Circuit& circuit);

/// <psi|P|psi>, real for Hermitian P.
double expectation(const StateVector& state, const PauliString& p);

/// Probability that the Z-parity over `mask` is even.
double even_parity_probability(const StateVector& state, std::uint64_t mask);

/// Dense unitary of a circuit (for small registers in tests and oracles).
Eigen::MatrixXcd circuit_unitary(const Circuit& c);

}  // namespace qcm
