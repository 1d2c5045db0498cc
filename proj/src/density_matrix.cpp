#include "qcm/density_matrix.hpp"

#include <bit>

namespace qcm {

DensityMatrix::DensityMatrix(const StateVector& pure) : n_(pure.nqubits()) {
  if (n_ > kMaxQubits) throw Error("DensityMatrix: register too large for dense mode");
  const std::size_t dim = pure.dim();
  rho_.resize(dim * dim);
  for (std::size_t col = 0; col < dim; ++col)
    for (std::size_t row = 0; row < dim; ++row) rho_[row + (col << n_)] = pure[row] * std::conj(pure[col]);
}

void DensityMatrix::apply(const Gate& g) {
  validate_gate(g, n_);
  apply_gate_raw(rho_, g, 0, false);
  apply_gate_raw(rho_, g, n_, true);
}

void DensityMatrix::depolarize(int q, double p) {
  if (p <= 0.0) return;
  std::vector<cplx> acc(rho_.size());
  const double keep = 1.0 - 0.75 * p;
  for (std::size_t i = 0; i < rho_.size(); ++i) acc[i] = keep * rho_[i];
  for (char letter : {'X', 'Y', 'Z'}) {
    std::vector<cplx> tmp = rho_;
    const PauliString ps = PauliString::single(n_, q, letter);
    apply_pauli_raw(tmp, ps, 0, false);
    apply_pauli_raw(tmp, ps, n_, true);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += 0.25 * p * tmp[i];
  }
  rho_ = std::move(acc);
}

double DensityMatrix::trace() const {
  double t = 0.0;
  const std::size_t dim = std::size_t{1} << n_;
  for (std::size_t b = 0; b < dim; ++b) t += element(b, b).real();
  return t;
}

double DensityMatrix::expectation(const PauliString& p) const {
  if (p.nqubits() != n_) throw Error("DensityMatrix::expectation: width mismatch");
  const std::size_t dim = std::size_t{1} << n_;
  cplx acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b) acc += pauli_phase(p, b) * element(b, b ^ p.x_mask());
  return acc.real();
}

double DensityMatrix::even_parity_probability(std::uint64_t mask) const {
  const std::size_t dim = std::size_t{1} << n_;
  double acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b)
    if ((std::popcount(b & mask) & 1) == 0) acc += element(b, b).real();
  return acc;
}

DensityMatrix run_noisy(const Circuit& circuit, const StateVector& initial, double p) {
  if (circuit.nqubits() != initial.nqubits()) throw Error("run_noisy: width mismatch");
  DensityMatrix rho(initial);
  for (const auto& g : circuit.gates()) {
    rho.apply(g);
    for (int q : g.touched()) rho.depolarize(q, p);
  }
  return rho;
}

}  // namespace qcm
