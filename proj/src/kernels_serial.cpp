#include <cmath>
#include <random>

#include "qcm/kernels.hpp"

namespace qcm::kernels {

namespace {
constexpr std::size_t kCheckpointBudget = std::size_t{1} << 22;  // amplitudes
}

TrajectorySampler::TrajectorySampler(Circuit circuit, const StateVector& initial, std::uint64_t parity_mask,
                                     double p)
    : circuit_(std::move(circuit)), mask_(parity_mask), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("depolarizing probability must lie in [0, 1]");
  if (initial.nqubits() != circuit_.nqubits()) throw Error("TrajectorySampler: width mismatch");
  const auto& gates = circuit_.gates();
  event_start_.reserve(gates.size() + 1);
  for (const auto& g : gates) {
    event_start_.push_back(event_qubit_.size());
    for (int q : g.touched()) event_qubit_.push_back(q);
  }
  event_start_.push_back(event_qubit_.size());

  const std::size_t max_states = std::max<std::size_t>(2, kCheckpointBudget / initial.dim());
  stride_ = std::max<std::size_t>(1, (gates.size() + max_states - 1) / max_states);
  StateVector s = initial;
  checkpoints_.push_back(s);
  for (std::size_t g = 0; g < gates.size(); ++g) {
    apply_gate_raw(s.amplitudes(), gates[g]);
    if ((g + 1) % stride_ == 0) checkpoints_.push_back(s);
  }
  ideal_even_ = even_parity_probability(s, mask_);
}

double TrajectorySampler::simulate_with_errors(const std::vector<std::pair<std::size_t, int>>& errors,
                                               StateVector& scratch) const {
  const auto& gates = circuit_.gates();
  auto gate_of = [this](std::size_t event) {
    return static_cast<std::size_t>(std::upper_bound(event_start_.begin(), event_start_.end(), event) -
                                    event_start_.begin()) - 1;
  };
  const std::size_t first_gate = gate_of(errors.front().first);
  const std::size_t k = first_gate / stride_;
  scratch = checkpoints_[k];
  auto amps = scratch.amplitudes();
  std::size_t e = 0;
  static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t g = k * stride_; g < gates.size(); ++g) {
    apply_gate_raw(amps, gates[g]);
    while (e < errors.size() && errors[e].first < event_start_[g + 1]) {
      const int q = event_qubit_[errors[e].first];
      apply_pauli_raw(amps, PauliString::single(scratch.nqubits(), q, letters[errors[e].second]));
      ++e;
    }
  }
  return even_parity_probability(scratch, mask_);
}

std::int64_t TrajectorySampler::count_even_chunk(std::int64_t shots, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution ideal(std::clamp(ideal_even_, 0.0, 1.0));
  const std::size_t nevents = event_qubit_.size();
  if (p_ == 0.0 || nevents == 0) {
    std::int64_t even = 0;
    for (std::int64_t s = 0; s < shots; ++s) even += ideal(rng) ? 1 : 0;
    return even;
  }
  std::geometric_distribution<std::int64_t> gap(p_);
  std::uniform_int_distribution<int> pauli(0, 3);
  std::vector<std::pair<std::size_t, int>> errors;
  StateVector scratch;
  std::int64_t even = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    errors.clear();
    for (auto pos = static_cast<std::size_t>(gap(rng)); pos < nevents;
         pos += 1 + static_cast<std::size_t>(gap(rng))) {
      const int which = pauli(rng);
      if (which != 0) errors.emplace_back(pos, which);
    }
    if (errors.empty()) {
      even += ideal(rng) ? 1 : 0;
      continue;
    }
    const double prob = std::clamp(simulate_with_errors(errors, scratch), 0.0, 1.0);
    even += std::bernoulli_distribution(prob)(rng) ? 1 : 0;
  }
  return even;
}

double lattice_cell(const Eigen::MatrixXcd& g_inverse, const Eigen::MatrixXcd& tau, const Eigen::VectorXcd& phase,
                    double condition_limit, bool& singular) {
  const Eigen::MatrixXcd m = g_inverse - tau;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  singular = !(smin > 0.0) || sv(0) / smin > condition_limit;
  if (singular) return 0.0;
  const Eigen::MatrixXcd lattice = m.partialPivLu().inverse();
  const cplx g = phase.dot(lattice * phase) / static_cast<double>(phase.size());
  return -g.imag() / kPi;
}

namespace serial {

std::int64_t count_even(const TrajectorySampler& s, std::int64_t shots, std::uint64_t seed) {
  std::int64_t even = 0;
  for (std::int64_t c = 0; c < s.chunk_count(shots); ++c)
    even += s.count_even_chunk(chunk_shots(shots, c), mix_seed(seed, static_cast<std::uint64_t>(c)));
  return even;
}

std::vector<cplx> damped_fourier(std::span<const double> nodes, std::span<const double> weights,
                                 std::span<const cplx> values, std::span<const double> omega, double eta) {
  std::vector<cplx> out(omega.size());
  for (std::size_t w = 0; w < omega.size(); ++w) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      acc += weights[k] * std::exp(cplx(-eta * nodes[k], omega[w] * nodes[k])) * values[k];
    out[w] = acc;
  }
  return out;
}

LatticeGridOutput lattice_grid(const LatticeGridInput& in) {
  const std::size_t nk = in.tau.size(), nw = in.g_inverse.size();
  LatticeGridOutput out{std::vector<double>(nk * nw), std::vector<std::uint8_t>(nk * nw)};
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t w = 0; w < nw; ++w) {
      bool singular = false;
      out.intensity[k * nw + w] = lattice_cell(in.g_inverse[w], in.tau[k], in.phase[k], in.condition_limit, singular);
      out.singular[k * nw + w] = singular;
    }
  return out;
}

}  // namespace serial
}  // namespace qcm::kernels
