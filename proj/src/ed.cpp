#include "qcm/ed.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qcm::ed {

namespace {

constexpr int kMaxModes = 12;

/// Applies c_q (or c_q^+) to basis state `b`; returns false when it vanishes.
bool ladder(std::uint64_t& b, int q, bool dagger, double& sign) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  if (static_cast<bool>(b & bit) == dagger) return false;
  if (std::popcount(b & (bit - 1)) & 1) sign = -sign;
  b ^= bit;
  return true;
}

void check_modes(int n) {
  if (n < 1 || n > kMaxModes) throw Error("ed: mode count outside [1, 12]");
}

}  // namespace

Eigen::MatrixXcd occupation_hamiltonian(const std::vector<FermionTerm>& terms, const QubitOrdering& ordering) {
  const int n = ordering.nqubits();
  check_modes(n);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : terms)
    for (std::size_t col = 0; col < dim; ++col) {
      std::uint64_t b = col;
      double sign = 1.0;
      bool alive = true;
      for (auto it = term.ops.rbegin(); it != term.ops.rend() && alive; ++it)
        alive = ladder(b, ordering.qubit(it->index), it->dagger, sign);
      if (alive) h(b, col) += term.coefficient * sign;
    }
  return h;
}

Eigen::MatrixXcd annihilator(int mode, int nmodes) {
  check_modes(nmodes);
  if (mode < 0 || mode >= nmodes) throw Error("ed: mode index out of range");
  const std::size_t dim = std::size_t{1} << nmodes;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::uint64_t b = col;
    double sign = 1.0;
    if (ladder(b, mode, false, sign)) c(b, col) = sign;
  }
  return c;
}

Solution solve(const Eigen::MatrixXcd& hamiltonian) {
  const auto dim = hamiltonian.rows();
  if (dim != hamiltonian.cols() || dim < 2 || (dim & (dim - 1)) != 0) throw Error("ed: matrix is not 2^n square");
  Solution s;
  s.nmodes = std::countr_zero(static_cast<std::uint64_t>(dim));
  check_modes(s.nmodes);
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw Error("ed: Hamiltonian not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
  if (es.info() != Eigen::Success) throw Error("ed: eigensolver failed");
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  s.e0 = s.eigenvalues(0);
  s.degenerate = s.eigenvalues(1) - s.eigenvalues(0) < kDegeneracyTolerance;
  Eigen::VectorXcd g = s.eigenvectors.col(0);
  Eigen::Index arg = 0;
  for (Eigen::Index k = 1; k < g.size(); ++k)
    if (std::abs(g(k)) > std::abs(g(arg)) + 1e-12) arg = k;
  g *= std::conj(g(arg)) / std::abs(g(arg));
  s.ground = g;
  s.eigenvectors.col(0) = g;
  return s;
}

std::vector<Pole> lehmann_poles(const Solution& s, int i, int j) {
  const Eigen::MatrixXcd ci = annihilator(i, s.nmodes), cj = annihilator(j, s.nmodes);
  const Eigen::MatrixXcd& v = s.eigenvectors;
  // <n|c_j^+|g> and <n|c_i|g> for all n
  const Eigen::VectorXcd cdag_j_g = v.adjoint() * (cj.adjoint() * s.ground);
  const Eigen::VectorXcd c_i_g = v.adjoint() * (ci * s.ground);
  const Eigen::VectorXcd c_i_g_left = v.adjoint() * (ci.adjoint() * s.ground);  // conj of <g|c_i|n>
  const Eigen::VectorXcd c_j_g_left = v.adjoint() * (cj * s.ground);           // conj of <g|c_j^+|n>
  std::vector<Pole> poles;
  for (Eigen::Index n = 0; n < v.cols(); ++n) {
    const cplx particle = std::conj(c_i_g_left(n)) * cdag_j_g(n);
    const cplx hole = std::conj(c_j_g_left(n)) * c_i_g(n);
    if (std::abs(particle) > 1e-14) poles.push_back({s.eigenvalues(n) - s.e0, particle});
    if (std::abs(hole) > 1e-14) poles.push_back({s.e0 - s.eigenvalues(n), hole});
  }
  return poles;
}

cplx exact_g_t(const Solution& s, int i, int j, double t) { return exact_g_t(s, i, j, std::vector<double>{t})[0]; }

std::vector<cplx> exact_g_t(const Solution& s, int i, int j, const std::vector<double>& times) {
  if (s.degenerate) throw Error("ed: degenerate ground state, zero-temperature G(t) undefined");
  const auto poles = lehmann_poles(s, i, j);
  std::vector<cplx> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < 0.0) throw Error("ed: retarded G requested at t < 0");
    cplx acc = 0.0;
    for (const auto& p : poles) acc += p.residue * std::exp(cplx(0.0, -p.energy * t));
    out.push_back(-kI * acc);
  }
  return out;
}

std::vector<cplx> lehmann_green(const Solution& s, int i, int j, const std::vector<double>& omega, double eta) {
  if (!(eta > 0.0)) throw Error("ed: eta must be positive");
  const auto poles = lehmann_poles(s, i, j);
  std::vector<cplx> out;
  out.reserve(omega.size());
  for (double w : omega) {
    cplx acc = 0.0;
    for (const auto& p : poles) acc += p.residue / cplx(w - p.energy, eta);
    out.push_back(acc);
  }
  return out;
}

Eigen::MatrixXcd lehmann_green_matrix(const Solution& s, const std::vector<int>& modes, cplx z) {
  const auto m = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      cplx acc = 0.0;
      for (const auto& p : lehmann_poles(s, modes[a], modes[b])) acc += p.residue / (z - p.energy);
      g(a, b) = acc;
    }
  return g;
}

cplx completeness(const Solution& s, int i, int j) {
  cplx acc = 0.0;
  for (const auto& p : lehmann_poles(s, i, j)) acc += p.residue;
  return acc;
}

}  // namespace qcm::ed
