#include "qcm/fermion_model.hpp"

#include <cmath>
#include <set>

namespace qcm {

void HubbardSpec::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(U) || !std::isfinite(mu))
    throw Error("HubbardSpec: gamma, U and mu must be finite");
  if (sites.empty()) throw Error("HubbardSpec: at least one site required");
  if (U < 0 && !allow_attractive)
    throw Error("HubbardSpec: negative U requires the allow_attractive override");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : bonds) {
    if (a < 0 || b < 0 || a >= nsites() || b >= nsites())
      throw Error("HubbardSpec: bond references an invalid site index");
    if (a == b) throw Error("HubbardSpec: self-loop bond");
    auto key = std::minmax(a, b);
    if (!seen.insert({key.first, key.second}).second) throw Error("HubbardSpec: duplicate bond");
  }
}

std::vector<std::pair<int, int>> nearest_neighbor_bonds(const std::vector<Site>& sites) {
  std::vector<std::pair<int, int>> bonds;
  for (std::size_t a = 0; a < sites.size(); ++a)
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      const int d = std::abs(sites[a].x - sites[b].x) + std::abs(sites[a].y - sites[b].y);
      if (d == 1) bonds.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return bonds;
}

int QubitOrdering::qubit(FermionOpIndex idx) const {
  if (idx.site < 0 || idx.site >= nsites_) throw Error("FermionOpIndex: site out of range");
  const int s = static_cast<int>(idx.spin);
  return order_ == QubitOrder::SpinMajor ? s * nsites_ + idx.site : 2 * idx.site + s;
}

FermionOpIndex QubitOrdering::mode(int q) const {
  if (q < 0 || q >= nqubits()) throw Error("qubit index out of range");
  if (order_ == QubitOrder::SpinMajor) return {q % nsites_, q < nsites_ ? Spin::Up : Spin::Down};
  return {q / 2, q % 2 == 0 ? Spin::Up : Spin::Down};
}

std::vector<FermionTerm> build_hubbard_cluster(const HubbardSpec& spec) {
  spec.validate();
  std::vector<FermionTerm> terms;
  for (Spin s : {Spin::Up, Spin::Down})
    for (auto [i, j] : spec.bonds) {
      if (spec.gamma == 0.0) continue;
      terms.push_back({TermKind::Hopping, -spec.gamma, {{{i, s}, true}, {{j, s}, false}}});
      terms.push_back({TermKind::Hopping, -spec.gamma, {{{j, s}, true}, {{i, s}, false}}});
    }
  if (spec.U != 0.0)
    for (int i = 0; i < spec.nsites(); ++i)
      terms.push_back({TermKind::Interaction,
                       spec.U,
                       {{{i, Spin::Up}, true}, {{i, Spin::Up}, false},
                        {{i, Spin::Down}, true}, {{i, Spin::Down}, false}}});
  if (spec.mu != 0.0)
    for (Spin s : {Spin::Up, Spin::Down})
      for (int i = 0; i < spec.nsites(); ++i)
        terms.push_back({TermKind::ChemicalPotential, -spec.mu, {{{i, s}, true}, {{i, s}, false}}});
  return terms;
}

JwLadder jw_ladder(int qubit, int nqubits) {
  if (qubit < 0 || qubit >= nqubits) throw Error("jw_ladder: qubit out of range");
  JwLadder out{PauliString(nqubits), PauliString(nqubits), (qubit % 2 == 0) ? 1 : -1};
  for (int a = 0; a < qubit; ++a) {
    out.xbar.set(a, 'Z');
    out.ybar.set(a, 'Z');
  }
  out.xbar.set(qubit, 'X');
  out.ybar.set(qubit, 'Y');
  return out;
}

JwLadder jw_ladder(FermionOpIndex idx, const QubitOrdering& ordering) {
  return jw_ladder(ordering.qubit(idx), ordering.nqubits());
}

PauliSum jw_operator(int qubit, int nqubits, bool dagger) {
  const JwLadder l = jw_ladder(qubit, nqubits);
  PauliSum s(nqubits);
  s.add(l.xbar, 0.5);
  s.add(l.ybar, dagger ? -0.5 * kI : 0.5 * kI);
  return s;
}

PauliHamiltonian jordan_wigner(const std::vector<FermionTerm>& terms, const QubitOrdering& ordering) {
  const int n = ordering.nqubits();
  PauliSum total(n);
  for (const auto& term : terms) {
    PauliSum prod = PauliSum::identity(n, term.coefficient);
    for (const auto& op : term.ops) prod = prod * jw_operator(ordering.qubit(op.index), n, op.dagger);
    total += prod;
  }
  std::vector<PauliTerm> real_terms;
  for (const auto& [p, c] : total.terms()) {
    if (std::abs(c.imag()) > 1e-12)
      throw Error("jordan_wigner: imaginary coefficient " + std::to_string(c.imag()) + " on " + p.str());
    real_terms.push_back({c.real(), p});
  }
  return PauliHamiltonian(n, real_terms);
}

PauliHamiltonian hubbard_pauli_hamiltonian(const HubbardSpec& spec, const QubitOrdering& ordering) {
  if (ordering.nsites() != spec.nsites()) throw Error("qubit ordering does not match cluster size");
  return jordan_wigner(build_hubbard_cluster(spec), ordering);
}

}  // namespace qcm
