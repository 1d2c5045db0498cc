#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qcm/fermion_model.hpp"

namespace qcm::ed {

/// Hamiltonian built directly in the occupation basis from the fermionic
/// term list (bit q of a basis index = occupation of qubit/mode q).
Eigen::MatrixXcd occupation_hamiltonian(const std::vector<FermionTerm>& terms, const QubitOrdering& ordering);

/// Dense annihilator of mode q: c_q|n> = (-1)^{sum_{p<q} n_p} |n - e_q>.
Eigen::MatrixXcd annihilator(int mode, int nmodes);

struct Solution {
  Eigen::VectorXd eigenvalues;  ///< ascending
  Eigen::MatrixXcd eigenvectors;
  double e0 = 0.0;
  Eigen::VectorXcd ground;
  bool degenerate = false;
  int nmodes = 0;
};

inline constexpr double kDegeneracyTolerance = 1e-9;

/// Full dense diagonalisation (at most 12 modes). The ground-state phase is
/// fixed so its largest-magnitude component (first one on ties) is real positive.
Solution solve(const Eigen::MatrixXcd& hamiltonian);

struct Pole {
  double energy;  ///< excitation energy measured from E0 (hole poles negative)
  cplx residue;
};

/// Poles of G_ij: particle part E_n - E0 with <g|c_i|n><n|c_j^+|g>, hole part
/// E0 - E_n with <g|c_j^+|n><n|c_i|g>.
std::vector<Pole> lehmann_poles(const Solution& s, int i, int j);

/// G_ij(t) = -i sum_poles residue e^{-i eps t}, t >= 0. Throws on a degenerate ground state.
cplx exact_g_t(const Solution& s, int i, int j, double t);
std::vector<cplx> exact_g_t(const Solution& s, int i, int j, const std::vector<double>& times);

/// G_ij(w + i eta) = sum_poles residue / (w + i eta - eps).
std::vector<cplx> lehmann_green(const Solution& s, int i, int j, const std::vector<double>& omega, double eta);

/// Matrix G(z) over the given mode list for one complex frequency.
Eigen::MatrixXcd lehmann_green_matrix(const Solution& s, const std::vector<int>& modes, cplx z);

/// Sum of both Lehmann residue sets; equals delta_ij for a normalised ground state.
cplx completeness(const Solution& s, int i, int j);

}  // namespace qcm::ed
