#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcm/circuit.hpp"
#include "qcm/fermion_model.hpp"
#include "qcm/noise.hpp"
#include "qcm/statevector.hpp"
#include "qcm/vqe.hpp"

namespace qcm::green {

enum class TermOrdering {
  Stored,       ///< Hamiltonian storage order
  Interleaved,  ///< diagonal terms of the first half of the sites, up hopping, remaining diagonal terms, down hopping
};

/// First-order product formula: n_tau slices, each the ordered product of
/// exp(-i xi_k P_k tau). An explicit `term_order` wins over `ordering`.
struct TrotterPlan {
  int n_tau = 60;
  TermOrdering ordering = TermOrdering::Interleaved;
  std::vector<std::size_t> term_order;

  void validate(std::size_t nterms) const;
};

/// Permutation of h's terms for TermOrdering::Interleaved.
std::vector<std::size_t> interleaved_order(const PauliHamiltonian& h, const QubitOrdering& ordering);

/// Copy of `plan` with term_order filled in for this Hamiltonian.
TrotterPlan resolve(const TrotterPlan& plan, const PauliHamiltonian& h, const QubitOrdering& ordering);

/// e^{-iHt} as Pauli rotations (empty term_order = stored order); the identity term becomes a global phase.
/// t = 0 gives an empty circuit.
Circuit trotter_circuit(const PauliHamiltonian& h, double t, const TrotterPlan& plan);

/// System state fed to the Hadamard test: `prep` applied to `initial`.
/// Exact injection uses initial = |g> and an empty prep circuit.
struct GroundPreparation {
  StateVector initial;
  Circuit prep;

  static GroundPreparation exact(const StateVector& g);
  static GroundPreparation from_circuit(const Circuit& c);
  int nqubits() const { return initial.nqubits(); }
};

struct HadamardOutcome {
  double F = 0.0;
  double p_plus = 0.0;   ///< ancilla reads 0
  double p_minus = 0.0;  ///< ancilla reads 1
};

/// H(anc); sigma_j controlled on anc=1; U_t; sigma_i controlled on anc=0; H(anc).
/// The ancilla is qubit n (most significant).
Circuit hadamard_circuit(const PauliString& sigma_i, const PauliString& sigma_j, const Circuit& evolution,
                         const GroundPreparation& prep);

/// F = 2(2 p+ - 1) = 2 Re <g| U^+ sigma_i U sigma_j |g>.
HadamardOutcome hadamard_test_F(const PauliString& sigma_i, const PauliString& sigma_j, const Circuit& evolution,
                                const GroundPreparation& prep, vqe::EvalMode mode,
                                const vqe::SamplingConfig& sampling = {});

/// The same quantity from two statevector evolutions, without an ancilla.
double direct_F(const PauliString& sigma_i, const PauliString& sigma_j, const Circuit& evolution,
                const StateVector& ground);

enum class Assembly {
  FourTerm,  ///< (s/4)[(F(Y,X) - F(X,Y)) - i(F(X,X) + F(Y,Y))]
  TwoTerm,   ///< ((-1)^{i+j}/4)(W- - i W+), W+- = F(X_i,Y_j) +- F(Y_i,X_j)
};

struct GreenConfig {
  TrotterPlan plan;
  vqe::EvalMode mode = vqe::EvalMode::Exact;
  vqe::SamplingConfig sampling;
  Assembly assembly = Assembly::FourTerm;
};

struct GreenTimeSeries {
  int i = 0, j = 0;  ///< cluster sites
  Spin spin = Spin::Up;
  std::vector<double> t;
  std::vector<cplx> g;
  vqe::EvalMode mode = vqe::EvalMode::Exact;
  Assembly assembly = Assembly::FourTerm;
  int sign = 1;
  std::string ground;  ///< "exact" or "circuit"
  double noise_p = 0.0;
  std::int64_t shots = 0;
};

/// Sign of the four-term assembly fixed by requiring G_ii(0) = -i on the
/// given state in exact mode. Throws when neither sign reproduces it.
int convention_sign(const QubitOrdering& ordering, const GroundPreparation& prep);

/// G_ij(t) of one spin species on the given nodes (t >= 0, increasing).
GreenTimeSeries retarded_g(const PauliHamiltonian& h, const QubitOrdering& ordering, int site_i, int site_j,
                           Spin spin, const std::vector<double>& nodes, const GroundPreparation& prep,
                           const GreenConfig& config);

/// Columns t, re, im, damped_re, damped_im[, ref_re, ref_im].
void write_csv(std::ostream& os, const GreenTimeSeries& s, double eta, const std::vector<cplx>& reference = {});

}  // namespace qcm::green
