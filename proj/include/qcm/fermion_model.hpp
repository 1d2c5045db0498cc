#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qcm/common.hpp"
#include "qcm/pauli.hpp"

namespace qcm {

struct Site {
  int x = 0;
  int y = 0;
  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

/// Hubbard cluster: -gamma sum_<ij>,s (c+_is c_js + h.c.) + U sum_i n_iu n_id - mu sum_is n_is.
struct HubbardSpec {
  double gamma = 1.0;
  double U = 0.0;
  double mu = 0.0;
  std::vector<Site> sites;
  std::vector<std::pair<int, int>> bonds;
  /// Negative U is rejected unless this is set.
  bool allow_attractive = false;

  int nsites() const { return static_cast<int>(sites.size()); }
  /// Throws Error when an invariant is violated.
  void validate() const;
};

/// Intra-cluster nearest-neighbour bonds (unit lattice distance).
std::vector<std::pair<int, int>> nearest_neighbor_bonds(const std::vector<Site>& sites);

struct FermionOpIndex {
  int site = 0;
  Spin spin = Spin::Up;
  friend bool operator==(const FermionOpIndex&, const FermionOpIndex&) = default;
};

enum class QubitOrder {
  SpinMajor,    ///< 0u, 1u, ..., 0d, 1d, ...
  Interleaved,  ///< 0u, 0d, 1u, 1d, ...
};

/// Bijection between fermionic modes and qubits.
class QubitOrdering {
 public:
  QubitOrdering(int nsites, QubitOrder order = QubitOrder::SpinMajor)
      : nsites_(nsites), order_(order) {}

  int nsites() const { return nsites_; }
  int nqubits() const { return 2 * nsites_; }
  QubitOrder order() const { return order_; }
  int qubit(FermionOpIndex idx) const;
  FermionOpIndex mode(int qubit) const;

 private:
  int nsites_;
  QubitOrder order_;
};

struct LadderOp {
  FermionOpIndex index;
  bool dagger = false;
};

enum class TermKind { Hopping, Interaction, ChemicalPotential };

/// coefficient * (product of ladder operators, applied right to left).
struct FermionTerm {
  TermKind kind;
  double coefficient;
  std::vector<LadderOp> ops;
};

std::vector<FermionTerm> build_hubbard_cluster(const HubbardSpec& spec);

/// Jordan-Wigner string pair for one qubit: c = (xbar + i ybar)/2 with
/// xbar = Z_0..Z_{q-1} X_q, ybar = Z_0..Z_{q-1} Y_q (qubit |1> = occupied).
struct JwLadder {
  PauliString xbar;
  PauliString ybar;
  /// (-1)^q, the factor accumulated by a (-Z)-prefixed string.
  int minus_z_sign = 1;
};

JwLadder jw_ladder(int qubit, int nqubits);
JwLadder jw_ladder(FermionOpIndex idx, const QubitOrdering& ordering);

/// Annihilator (or creator) as a complex Pauli sum.
PauliSum jw_operator(int qubit, int nqubits, bool dagger);

/// Maps the term list to a real Pauli Hamiltonian. Throws if any merged
/// coefficient carries an imaginary part above 1e-12.
PauliHamiltonian jordan_wigner(const std::vector<FermionTerm>& terms, const QubitOrdering& ordering);

/// Convenience: build + map.
PauliHamiltonian hubbard_pauli_hamiltonian(const HubbardSpec& spec, const QubitOrdering& ordering);

}  // namespace qcm
