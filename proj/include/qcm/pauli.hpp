#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcm/common.hpp"

namespace qcm {

/// Tensor product of single-qubit Paulis. Letter k acts on qubit k.
/// Stored as X/Z bit masks, so at most 64 qubits.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int nqubits);
  /// Parses "IXYZ..." (letter k = qubit k).
  static PauliString parse(std::string_view letters);
  /// Single letter on one qubit of an n-qubit register.
  static PauliString single(int nqubits, int qubit, char letter);

  int nqubits() const { return n_; }
  char letter(int qubit) const;
  void set(int qubit, char letter);

  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  /// Qubits carrying a non-identity letter.
  std::uint64_t support_mask() const { return x_ | z_; }
  std::vector<int> support() const;
  int y_count() const;
  bool is_identity() const { return (x_ | z_) == 0; }

  /// Same letters on a wider register (new qubits get I).
  PauliString widened(int nqubits) const;
  bool commutes_with(const PauliString& other) const;

  std::string str() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  friend bool operator<(const PauliString& a, const PauliString& b) {
    return std::tie(a.n_, a.x_, a.z_) < std::tie(b.n_, b.x_, b.z_);
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Product a*b = phase * c.
std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b);

/// Phase picked up by basis state |b> under P: P|b> = phase(b) |b ^ x_mask>.
cplx pauli_phase(const PauliString& p, std::uint64_t basis);

/// Dense 2^n x 2^n matrix of a Pauli string (qubit 0 = least significant bit).
Eigen::MatrixXcd dense_matrix(const PauliString& p);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

/// Complex-weighted Pauli sum used while expanding fermionic products.
class PauliSum {
 public:
  explicit PauliSum(int nqubits) : n_(nqubits) {}
  static PauliSum identity(int nqubits, cplx coeff = 1.0);
  static PauliSum term(const PauliString& p, cplx coeff);

  int nqubits() const { return n_; }
  void add(const PauliString& p, cplx coeff);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum operator*(const PauliSum& other) const;
  PauliSum scaled(cplx factor) const;

  /// Terms in first-insertion order.
  const std::vector<std::pair<PauliString, cplx>>& terms() const { return terms_; }
  Eigen::MatrixXcd dense() const;

 private:
  int n_;
  std::vector<std::pair<PauliString, cplx>> terms_;
  std::map<PauliString, std::size_t> index_;
};

/// Real-weighted sum of Pauli strings H = sum_k xi_k P_k.
/// Equal strings are merged and |xi| below the merge tolerance are dropped.
class PauliHamiltonian {
 public:
  static constexpr double kMergeTolerance = 1e-12;

  PauliHamiltonian() = default;
  explicit PauliHamiltonian(int nqubits) : n_(nqubits) {}
  PauliHamiltonian(int nqubits, const std::vector<PauliTerm>& terms);

  int nqubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of the identity string (0 when absent).
  double constant() const;
  /// Terms other than the identity, in stored order.
  std::vector<PauliTerm> non_identity_terms() const;

  Eigen::MatrixXcd dense() const;

  /// One `coefficient<TAB>string` line per term.
  std::string to_text() const;
  static PauliHamiltonian from_text(std::string_view text);

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

}  // namespace qcm
