#include "qcm/pauli.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace qcm {

namespace {

void check_qubit(int n, int q) {
  if (q < 0 || q >= n) throw Error("Pauli qubit index out of range: " + std::to_string(q));
}

// Single-qubit product table: a*b = phase * letter.
std::pair<cplx, char> multiply_letters(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  if (a == 'X' && b == 'Y') return {kI, 'Z'};
  if (a == 'Y' && b == 'Z') return {kI, 'X'};
  if (a == 'Z' && b == 'X') return {kI, 'Y'};
  if (a == 'Y' && b == 'X') return {-kI, 'Z'};
  if (a == 'Z' && b == 'Y') return {-kI, 'X'};
  return {-kI, 'Y'};  // X*Z
}

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return kI;
    case 2: return -1.0;
    default: return -kI;
  }
}

}  // namespace

PauliString::PauliString(int nqubits) : n_(nqubits) {
  if (nqubits < 0 || nqubits > 64) throw Error("PauliString supports 0..64 qubits");
}

PauliString PauliString::parse(std::string_view letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (std::size_t k = 0; k < letters.size(); ++k) p.set(static_cast<int>(k), letters[k]);
  return p;
}

PauliString PauliString::single(int nqubits, int qubit, char letter) {
  PauliString p(nqubits);
  p.set(qubit, letter);
  return p;
}

char PauliString::letter(int qubit) const {
  check_qubit(n_, qubit);
  const bool x = (x_ >> qubit) & 1U;
  const bool z = (z_ >> qubit) & 1U;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set(int qubit, char letter) {
  check_qubit(n_, qubit);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  switch (letter) {
    case 'I': break;
    case 'X': x_ |= bit; break;
    case 'Z': z_ |= bit; break;
    case 'Y': x_ |= bit; z_ |= bit; break;
    default: throw Error(std::string("invalid Pauli letter '") + letter + "'");
  }
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if ((support_mask() >> q) & 1U) out.push_back(q);
  return out;
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

PauliString PauliString::widened(int nqubits) const {
  if (nqubits < n_) throw Error("cannot narrow a Pauli string");
  PauliString p(nqubits);
  p.x_ = x_;
  p.z_ = z_;
  return p;
}

bool PauliString::commutes_with(const PauliString& other) const {
  // Symplectic product parity.
  const int k = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return k % 2 == 0;
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b) {
  if (a.nqubits() != b.nqubits()) throw Error("Pauli product: qubit count mismatch");
  PauliString out(a.nqubits());
  cplx phase = 1.0;
  for (int q = 0; q < a.nqubits(); ++q) {
    auto [ph, letter] = multiply_letters(a.letter(q), b.letter(q));
    phase *= ph;
    out.set(q, letter);
  }
  return {phase, out};
}

cplx pauli_phase(const PauliString& p, std::uint64_t basis) {
  const int sign = std::popcount(basis & p.z_mask()) & 1;
  cplx ph = i_power(p.y_count());
  return sign ? -ph : ph;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
  const std::size_t dim = std::size_t{1} << p.nqubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t row = b ^ p.x_mask();
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(b)) = pauli_phase(p, b);
  }
  return m;
}

// ---------------------------------------------------------------------------

PauliSum PauliSum::identity(int nqubits, cplx coeff) {
  PauliSum s(nqubits);
  s.add(PauliString(nqubits), coeff);
  return s;
}

PauliSum PauliSum::term(const PauliString& p, cplx coeff) {
  PauliSum s(p.nqubits());
  s.add(p, coeff);
  return s;
}

void PauliSum::add(const PauliString& p, cplx coeff) {
  if (p.nqubits() != n_) throw Error("PauliSum: qubit count mismatch");
  auto it = index_.find(p);
  if (it == index_.end()) {
    index_.emplace(p, terms_.size());
    terms_.emplace_back(p, coeff);
  } else {
    terms_[it->second].second += coeff;
  }
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  PauliSum out(n_);
  for (const auto& [pa, ca] : terms_)
    for (const auto& [pb, cb] : other.terms_) {
      auto [phase, pc] = multiply(pa, pb);
      out.add(pc, phase * ca * cb);
    }
  return out;
}

PauliSum PauliSum::scaled(cplx factor) const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.add(p, c * factor);
  return out;
}

Eigen::MatrixXcd PauliSum::dense() const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : terms_) m += c * dense_matrix(p);
  return m;
}

// ---------------------------------------------------------------------------

PauliHamiltonian::PauliHamiltonian(int nqubits, const std::vector<PauliTerm>& terms) : n_(nqubits) {
  std::map<PauliString, std::size_t> index;
  std::vector<PauliTerm> merged;
  for (const auto& t : terms) {
    if (t.string.nqubits() != nqubits) throw Error("PauliHamiltonian: term width mismatch");
    if (!std::isfinite(t.coefficient)) throw Error("PauliHamiltonian: non-finite coefficient");
    auto it = index.find(t.string);
    if (it == index.end()) {
      index.emplace(t.string, merged.size());
      merged.push_back(t);
    } else {
      merged[it->second].coefficient += t.coefficient;
    }
  }
  for (auto& t : merged)
    if (std::abs(t.coefficient) >= kMergeTolerance) terms_.push_back(t);
}

double PauliHamiltonian::constant() const {
  for (const auto& t : terms_)
    if (t.string.is_identity()) return t.coefficient;
  return 0.0;
}

std::vector<PauliTerm> PauliHamiltonian::non_identity_terms() const {
  std::vector<PauliTerm> out;
  for (const auto& t : terms_)
    if (!t.string.is_identity()) out.push_back(t);
  return out;
}

Eigen::MatrixXcd PauliHamiltonian::dense() const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) m += t.coefficient * dense_matrix(t.string);
  return m;
}

std::string PauliHamiltonian::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& t : terms_) os << t.coefficient << '\t' << t.string.str() << '\n';
  return os.str();
}

PauliHamiltonian PauliHamiltonian::from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<PauliTerm> terms;
  int n = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error("Pauli listing: missing TAB in line '" + line + "'");
    PauliTerm t;
    t.coefficient = std::stod(line.substr(0, tab));
    t.string = PauliString::parse(line.substr(tab + 1));
    if (n < 0) n = t.string.nqubits();
    terms.push_back(t);
  }
  return PauliHamiltonian(n < 0 ? 0 : n, terms);
}

}  // namespace qcm
