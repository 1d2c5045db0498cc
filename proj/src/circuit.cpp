#include "qcm/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace qcm {

std::vector<int> Gate::touched() const {
  switch (kind) {
    case GateKind::PauliRotation: return pauli.support();
    case GateKind::ControlledPauli: {
      std::vector<int> q = pauli.support();
      q.insert(q.begin(), qubits.at(0));
      return q;
    }
    default: return qubits;
  }
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::PauliRotation: g.angle = -angle; break;
    default: break;  // self-inverse
  }
  return g;
}

std::string Gate::name() const {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::ControlledPauli: return "CPAULI";
    case GateKind::PauliRotation: return "PROT";
  }
  return "?";
}

void validate_gate(const Gate& g, int n) {
  auto in_range = [n](int q) { return q >= 0 && q < n; };
  auto fail = [&](const std::string& why) { throw Error("invalid " + g.name() + " gate: " + why); };
  if (!std::isfinite(g.angle)) fail("non-finite angle");
  switch (g.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
      if (g.qubits.size() != 1 || !in_range(g.qubits[0])) fail("operand out of range");
      break;
    case GateKind::CNOT:
      if (g.qubits.size() != 2 || !in_range(g.qubits[0]) || !in_range(g.qubits[1]))
        fail("operand out of range");
      if (g.qubits[0] == g.qubits[1]) fail("control equals target");
      break;
    case GateKind::ControlledPauli:
      if (g.qubits.size() != 1 || !in_range(g.qubits[0])) fail("control out of range");
      if (g.pauli.nqubits() != n) fail("Pauli width does not match register");
      if (g.pauli.letter(g.qubits[0]) != 'I') fail("Pauli string acts on the control qubit");
      if (g.polarity != 0 && g.polarity != 1) fail("polarity must be 0 or 1");
      break;
    case GateKind::PauliRotation:
      if (g.pauli.nqubits() != n) fail("Pauli width does not match register");
      break;
  }
}

Circuit& Circuit::add(Gate g) {
  validate_gate(g, n_);
  gates_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_ != n_) throw Error("Circuit::append: register width mismatch");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  phase_ += other.phase_;
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit out(n_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  out.phase_ = -phase_;
  return out;
}

Circuit Circuit::widened(int nqubits) const {
  if (nqubits < n_) throw Error("Circuit::widened: cannot narrow");
  Circuit out(nqubits);
  out.phase_ = phase_;
  for (Gate g : gates_) {
    if (g.kind == GateKind::PauliRotation || g.kind == GateKind::ControlledPauli)
      g.pauli = g.pauli.widened(nqubits);
    out.gates_.push_back(std::move(g));
  }
  return out;
}

std::string Circuit::dump() const {
  std::ostringstream os;
  os << std::setprecision(12);
  for (const auto& g : gates_) {
    os << g.name();
    switch (g.kind) {
      case GateKind::ControlledPauli:
        os << ' ' << g.qubits[0] << " polarity=" << g.polarity << ' ' << g.pauli.str();
        break;
      case GateKind::PauliRotation: os << ' ' << g.pauli.str() << ' ' << g.angle; break;
      default:
        for (int q : g.qubits) os << ' ' << q;
        if (g.kind == GateKind::Rx || g.kind == GateKind::Ry || g.kind == GateKind::Rz)
          os << ' ' << g.angle;
    }
    os << '\n';
  }
  return os.str();
}

Circuit fold(const Circuit& c, int scale) {
  if (scale < 1 || scale % 2 == 0) throw Error("fold: scale must be an odd integer >= 1");
  Circuit out = c;
  const Circuit inv = c.inverse();
  for (int k = 0; k < (scale - 1) / 2; ++k) {
    out.append(inv);
    out.append(c);
  }
  return out;
}

namespace {

void basis_in(Circuit& out, int q, char letter) {
  if (letter == 'X') out.add(Gate::h(q));
  if (letter == 'Y') out.add(Gate::rx(q, kPi / 2));
}

void basis_out(Circuit& out, int q, char letter) {
  if (letter == 'X') out.add(Gate::h(q));
  if (letter == 'Y') out.add(Gate::rx(q, -kPi / 2));
}

void lower_rotation(Circuit& out, const Gate& g) {
  const auto support = g.pauli.support();
  if (support.empty()) {
    out.add_global_phase(-g.angle);
    return;
  }
  for (int q : support) basis_in(out, q, g.pauli.letter(q));
  for (std::size_t k = 0; k + 1 < support.size(); ++k) out.add(Gate::cnot(support[k], support[k + 1]));
  out.add(Gate::rz(support.back(), 2.0 * g.angle));
  for (std::size_t k = support.size() - 1; k-- > 0;) out.add(Gate::cnot(support[k], support[k + 1]));
  for (int q : support) basis_out(out, q, g.pauli.letter(q));
}

void lower_controlled(Circuit& out, const Gate& g) {
  const int c = g.qubits[0];
  if (g.polarity == 0) out.add(Gate::x(c));
  for (int t : g.pauli.support()) {
    switch (g.pauli.letter(t)) {
      case 'X': out.add(Gate::cnot(c, t)); break;
      case 'Y':
        out.add(Gate::rz(t, -kPi / 2));
        out.add(Gate::cnot(c, t));
        out.add(Gate::rz(t, kPi / 2));
        break;
      case 'Z':
        out.add(Gate::h(t));
        out.add(Gate::cnot(c, t));
        out.add(Gate::h(t));
        break;
      default: break;
    }
  }
  if (g.polarity == 0) out.add(Gate::x(c));
}

}  // namespace

Circuit lower_to_native(const Circuit& c) {
  Circuit out(c.nqubits());
  out.add_global_phase(c.global_phase());
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::PauliRotation)
      lower_rotation(out, g);
    else if (g.kind == GateKind::ControlledPauli)
      lower_controlled(out, g);
    else
      out.add(g);
  }
  return out;
}

Circuit measurement_basis(const PauliString& p) {
  Circuit out(p.nqubits());
  for (int q : p.support()) basis_in(out, q, p.letter(q));
  return out;
}

}  // namespace qcm
