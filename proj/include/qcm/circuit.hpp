#pragma once

#include <string>
#include <vector>

#include "qcm/common.hpp"
#include "qcm/pauli.hpp"

namespace qcm {

enum class GateKind {
  H,
  X,
  Rx,  ///< exp(-i angle X / 2)
  Ry,  ///< exp(-i angle Y / 2)
  Rz,  ///< exp(-i angle Z / 2)
  CNOT,
  ControlledPauli,  ///< apply `pauli` when the control qubit equals `polarity`
  PauliRotation,    ///< exp(-i angle pauli)
};

struct Gate {
  GateKind kind = GateKind::H;
  /// Single-qubit gates: {target}. CNOT: {control, target}.
  /// ControlledPauli: {control}. PauliRotation: unused (see `pauli`).
  std::vector<int> qubits;
  double angle = 0.0;
  PauliString pauli;
  int polarity = 1;

  static Gate make(GateKind k, std::vector<int> qs, double a = 0.0) {
    Gate g;
    g.kind = k;
    g.qubits = std::move(qs);
    g.angle = a;
    return g;
  }
  static Gate h(int q) { return make(GateKind::H, {q}); }
  static Gate x(int q) { return make(GateKind::X, {q}); }
  static Gate rx(int q, double a) { return make(GateKind::Rx, {q}, a); }
  static Gate ry(int q, double a) { return make(GateKind::Ry, {q}, a); }
  static Gate rz(int q, double a) { return make(GateKind::Rz, {q}, a); }
  static Gate cnot(int c, int t) { return make(GateKind::CNOT, {c, t}); }
  static Gate controlled_pauli(int control, const PauliString& p, int polarity = 1) {
    Gate g = make(GateKind::ControlledPauli, {control});
    g.pauli = p;
    g.polarity = polarity;
    return g;
  }
  static Gate pauli_rotation(const PauliString& p, double angle) {
    Gate g = make(GateKind::PauliRotation, {}, angle);
    g.pauli = p;
    return g;
  }

  /// Every qubit the gate acts on (control included); noise is attached to these.
  std::vector<int> touched() const;
  Gate inverse() const;
  std::string name() const;
};

/// Ordered gate list on a fixed register. The represented unitary is
/// exp(i global_phase) * G_last ... G_first.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int nqubits) : n_(nqubits) {}

  int nqubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  double global_phase() const { return phase_; }
  void add_global_phase(double phi) { phase_ += phi; }

  /// Validates operands against the register and appends.
  Circuit& add(Gate g);
  Circuit& append(const Circuit& other);

  Circuit inverse() const;
  /// Same gates on a register of `nqubits` >= current width.
  Circuit widened(int nqubits) const;

  /// One gate per line: name, operands, angle.
  std::string dump() const;

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
  double phase_ = 0.0;
};

void validate_gate(const Gate& g, int nqubits);

/// Global folding C -> C (C^dag C)^((scale-1)/2). Scale must be odd and >= 1.
Circuit fold(const Circuit& c, int scale);

/// Rewrites Pauli rotations and controlled Paulis into H/Rx/Rz/X/CNOT.
/// The unitary is unchanged (including global phase).
Circuit lower_to_native(const Circuit& c);

/// Gates that rotate the eigenbasis of `p` onto Z on its support:
/// measuring Z-parity afterwards measures p.
Circuit measurement_basis(const PauliString& p);

}  // namespace qcm
