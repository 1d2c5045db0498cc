#include "qcm/statevector.hpp"

#include <array>
#include <bit>
#include <cmath>

namespace qcm {

StateVector::StateVector(int nqubits) : n_(nqubits), amps_(std::size_t{1} << nqubits, 0.0) {
  if (nqubits < 0 || nqubits > 30) throw Error("StateVector: unsupported qubit count");
  amps_[0] = 1.0;
}

StateVector::StateVector(int nqubits, std::vector<cplx> amplitudes) : n_(nqubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << nqubits)) throw Error("StateVector: amplitude count is not 2^n");
}

StateVector StateVector::basis(int nqubits, std::uint64_t index) {
  StateVector s(nqubits);
  if (index >= s.dim()) throw Error("StateVector::basis: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw Error("StateVector::inner: dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

StateVector StateVector::extended(int extra) const {
  std::vector<cplx> a(std::size_t{1} << (n_ + extra), 0.0);
  std::copy(amps_.begin(), amps_.end(), a.begin());
  return StateVector(n_ + extra, std::move(a));
}

namespace {

using Mat2 = std::array<cplx, 4>;  // row-major

Mat2 single_qubit_matrix(const Gate& g) {
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Rx: return {c, cplx(0, -s), cplx(0, -s), c};
    case GateKind::Ry: return {c, -s, s, c};
    case GateKind::Rz: return {std::polar(1.0, -g.angle / 2), 0.0, 0.0, std::polar(1.0, g.angle / 2)};
    default: throw Error("not a single-qubit gate");
  }
}

void apply_1q(std::span<cplx> amps, int q, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amps[i], a1 = amps[i + stride];
      amps[i] = m[0] * a0 + m[1] * a1;
      amps[i + stride] = m[2] * a0 + m[3] * a1;
    }
}

struct Masks {
  std::uint64_t x, z;
  cplx base;  // i^{#Y}, conjugated when requested
};

Masks masks_of(const PauliString& p, int offset, bool conjugate) {
  static const cplx powers[4] = {1.0, kI, -1.0, -kI};
  cplx base = powers[p.y_count() % 4];
  if (conjugate) base = std::conj(base);
  return {p.x_mask() << offset, p.z_mask() << offset, base};
}

inline cplx phase_at(const Masks& m, std::uint64_t b) {
  return (std::popcount(b & m.z) & 1) ? -m.base : m.base;
}

// Applies a(b) -> f over Pauli pairs restricted to indices where `select` holds.
template <class Select>
void pauli_apply(std::span<cplx> amps, const Masks& m, Select select) {
  const std::size_t dim = amps.size();
  if (m.x == 0) {
    for (std::size_t b = 0; b < dim; ++b)
      if (select(b)) amps[b] *= phase_at(m, b);
    return;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t f = b ^ m.x;
    if (b > f || !select(b)) continue;
    const cplx a0 = amps[b], a1 = amps[f];
    amps[f] = phase_at(m, b) * a0;
    amps[b] = phase_at(m, f) * a1;
  }
}

void pauli_rotation(std::span<cplx> amps, const Masks& m, double angle, bool conjugate) {
  const double c = std::cos(angle), s = std::sin(angle);
  const cplx k = conjugate ? cplx(0, s) : cplx(0, -s);
  const std::size_t dim = amps.size();
  if (m.x == 0) {
    for (std::size_t b = 0; b < dim; ++b) amps[b] *= c + k * phase_at(m, b);
    return;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t f = b ^ m.x;
    if (b > f) continue;
    const cplx a0 = amps[b], a1 = amps[f];
    amps[f] = c * a1 + k * phase_at(m, b) * a0;
    amps[b] = c * a0 + k * phase_at(m, f) * a1;
  }
}

}  // namespace

void apply_pauli_raw(std::span<cplx> amps, const PauliString& p, int offset, bool conjugate) {
  pauli_apply(amps, masks_of(p, offset, conjugate), [](std::size_t) { return true; });
}

void apply_gate_raw(std::span<cplx> amps, const Gate& g, int offset, bool conjugate) {
  switch (g.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz: {
      Mat2 m = single_qubit_matrix(g);
      if (conjugate)
        for (auto& e : m) e = std::conj(e);
      apply_1q(amps, g.qubits[0] + offset, m);
      break;
    }
    case GateKind::CNOT: {
      const std::uint64_t cb = std::uint64_t{1} << (g.qubits[0] + offset);
      const std::uint64_t tb = std::uint64_t{1} << (g.qubits[1] + offset);
      for (std::size_t b = 0; b < amps.size(); ++b)
        if ((b & cb) && !(b & tb)) std::swap(amps[b], amps[b | tb]);
      break;
    }
    case GateKind::ControlledPauli: {
      const std::uint64_t cb = std::uint64_t{1} << (g.qubits[0] + offset);
      const bool want = g.polarity == 1;
      pauli_apply(amps, masks_of(g.pauli, offset, conjugate),
                  [cb, want](std::size_t b) { return ((b & cb) != 0) == want; });
      break;
    }
    case GateKind::PauliRotation:
      pauli_rotation(amps, masks_of(g.pauli, offset, conjugate), g.angle, conjugate);
      break;
  }
}

void apply(StateVector& state, const Gate& gate) {
  validate_gate(gate, state.nqubits());
  apply_gate_raw(state.amplitudes(), gate);
}

void apply(StateVector& state, const Circuit& circuit) {
  if (circuit.nqubits() != state.nqubits()) throw Error("apply: circuit/state width mismatch");
  for (const auto& g : circuit.gates()) apply_gate_raw(state.amplitudes(), g);
  if (circuit.global_phase() != 0.0) {
    const cplx ph = std::polar(1.0, circuit.global_phase());
    for (auto& a : state.amplitudes()) a *= ph;
  }
}

void apply_pauli(StateVector& state, const PauliString& p) {
  if (p.nqubits() != state.nqubits()) throw Error("apply_pauli: width mismatch");
  apply_pauli_raw(state.amplitudes(), p);
}

StateVector run(const Circuit& circuit, const StateVector& initial) {
  StateVector s = initial;
  apply(s, circuit);
  return s;
}

StateVector run(const Circuit& circuit) { return run(circuit, StateVector(circuit.nqubits())); }

double expectation(const StateVector& state, const PauliString& p) {
  if (p.nqubits() != state.nqubits()) throw Error("expectation: width mismatch");
  const auto amps = state.amplitudes();
  cplx acc = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const std::size_t f = b ^ p.x_mask();
    acc += std::conj(amps[f]) * pauli_phase(p, b) * amps[b];
  }
  return acc.real();
}

double even_parity_probability(const StateVector& state, std::uint64_t mask) {
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b)
    if ((std::popcount(b & mask) & 1) == 0) acc += std::norm(amps[b]);
  return acc;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.nqubits();
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector s = run(c, StateVector::basis(c.nqubits(), col));
    for (std::size_t row = 0; row < dim; ++row)
      u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s[row];
  }
  return u;
}

}  // namespace qcm
