#include "qcm/green_time.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

namespace qcm::green {

void TrotterPlan::validate(std::size_t nterms) const {
  if (n_tau < 1) throw Error("trotter: n_tau must be >= 1");
  if (term_order.empty()) return;
  if (term_order.size() != nterms) throw Error("trotter: term order is not a permutation");
  std::vector<bool> seen(nterms);
  for (auto k : term_order) {
    if (k >= nterms || seen[k]) throw Error("trotter: term order is not a permutation");
    seen[k] = true;
  }
}

std::vector<std::size_t> interleaved_order(const PauliHamiltonian& h, const QubitOrdering& ordering) {
  if (h.nqubits() != ordering.nqubits()) throw Error("interleaved order: register widths differ");
  const int half = (ordering.nsites() + 1) / 2;
  std::array<std::vector<std::size_t>, 4> group;  // diag first half, up hopping, diag rest, down hopping
  for (std::size_t k = 0; k < h.terms().size(); ++k) {
    const auto& p = h.terms()[k].string;
    if (p.is_identity()) {
      group[0].push_back(k);
      continue;
    }
    const auto support = p.support();
    if (p.x_mask() == 0) {
      group[ordering.mode(support.front()).site < half ? 0 : 2].push_back(k);
      continue;
    }
    const Spin spin = ordering.mode(support.front()).spin;
    for (int q : support)
      if (ordering.mode(q).spin != spin) throw Error("interleaved order: term mixes spin species");
    group[spin == Spin::Up ? 1 : 3].push_back(k);
  }
  std::vector<std::size_t> out;
  for (const auto& g : group) out.insert(out.end(), g.begin(), g.end());
  return out;
}

TrotterPlan resolve(const TrotterPlan& plan, const PauliHamiltonian& h, const QubitOrdering& ordering) {
  TrotterPlan p = plan;
  if (p.term_order.empty() && p.ordering == TermOrdering::Interleaved) p.term_order = interleaved_order(h, ordering);
  p.validate(h.terms().size());
  return p;
}

Circuit trotter_circuit(const PauliHamiltonian& h, double t, const TrotterPlan& plan) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error("trotter: t must be finite and >= 0");
  const auto& terms = h.terms();
  plan.validate(terms.size());
  Circuit c(h.nqubits());
  if (t == 0.0) return c;
  std::vector<std::size_t> order = plan.term_order;
  if (order.empty()) {
    order.resize(terms.size());
    std::iota(order.begin(), order.end(), 0);
  }
  const double tau = t / plan.n_tau;
  for (int s = 0; s < plan.n_tau; ++s)
    for (auto k : order)
      if (!terms[k].string.is_identity()) c.add(Gate::pauli_rotation(terms[k].string, terms[k].coefficient * tau));
  c.add_global_phase(-h.constant() * t);
  return c;
}

GroundPreparation GroundPreparation::exact(const StateVector& g) { return {g, Circuit(g.nqubits())}; }

GroundPreparation GroundPreparation::from_circuit(const Circuit& c) { return {StateVector(c.nqubits()), c}; }

Circuit hadamard_circuit(const PauliString& sigma_i, const PauliString& sigma_j, const Circuit& evolution,
                         const GroundPreparation& prep) {
  const int n = prep.nqubits();
  if (evolution.nqubits() != n || sigma_i.nqubits() != n || sigma_j.nqubits() != n || prep.prep.nqubits() != n)
    throw Error("hadamard test: register widths differ");
  Circuit c(n + 1);
  c.append(prep.prep.widened(n + 1));
  c.add(Gate::h(n));
  if (!sigma_j.is_identity()) c.add(Gate::controlled_pauli(n, sigma_j.widened(n + 1), 1));
  c.append(evolution.widened(n + 1));
  if (!sigma_i.is_identity()) c.add(Gate::controlled_pauli(n, sigma_i.widened(n + 1), 0));
  c.add(Gate::h(n));
  return c;
}

HadamardOutcome hadamard_test_F(const PauliString& sigma_i, const PauliString& sigma_j, const Circuit& evolution,
                                const GroundPreparation& prep, vqe::EvalMode mode,
                                const vqe::SamplingConfig& sampling) {
  const int n = prep.nqubits();
  const Circuit c = hadamard_circuit(sigma_i, sigma_j, evolution, prep);
  const StateVector init = prep.initial.extended(1);
  HadamardOutcome out;
  if (mode == vqe::EvalMode::Exact) {
    const StateVector s = run(c, init);
    const std::size_t half = std::size_t{1} << n;
    for (std::size_t b = 0; b < half; ++b) {
      out.p_plus += std::norm(s[b]);
      out.p_minus += std::norm(s[b + half]);
    }
    out.F = 2.0 * (2.0 * out.p_plus - 1.0);
    return out;
  }
  const double z = sample_expectation(c, PauliString::single(n + 1, n, 'Z'), sampling.shots, sampling.noise, init,
                                      sampling.options);
  out.p_plus = (1.0 + z) / 2.0;
  out.p_minus = (1.0 - z) / 2.0;
  out.F = 2.0 * z;
  return out;
}

double direct_F(const PauliString& sigma_i, const PauliString& sigma_j, const Circuit& evolution,
                const StateVector& ground) {
  StateVector a = ground;
  apply_pauli(a, sigma_j);
  apply(a, evolution);
  apply_pauli(a, sigma_i);
  const StateVector b = run(evolution, ground);
  return 2.0 * b.inner(a).real();
}

namespace {

cplx assemble_g0(const QubitOrdering& ordering, const GroundPreparation& prep, int sign) {
  const JwLadder l = jw_ladder(0, ordering.nqubits());
  const Circuit none(ordering.nqubits());
  auto f = [&](const PauliString& a, const PauliString& b) {
    return hadamard_test_F(a, b, none, prep, vqe::EvalMode::Exact).F;
  };
  const double re = f(l.ybar, l.xbar) - f(l.xbar, l.ybar);
  const double im = -(f(l.xbar, l.xbar) + f(l.ybar, l.ybar));
  return static_cast<double>(sign) * cplx(re, im) / 4.0;
}

}  // namespace

int convention_sign(const QubitOrdering& ordering, const GroundPreparation& prep) {
  for (int s : {1, -1})
    if (std::abs(assemble_g0(ordering, prep, s) - cplx(0.0, -1.0)) < 1e-9) return s;
  const cplx g = assemble_g0(ordering, prep, 1);
  throw Error("convention check failed: assembled G_00(0) = (" + std::to_string(g.real()) + ", " +
              std::to_string(g.imag()) + "), expected (0, -1)");
}

GreenTimeSeries retarded_g(const PauliHamiltonian& h, const QubitOrdering& ordering, int site_i, int site_j,
                           Spin spin, const std::vector<double>& nodes, const GroundPreparation& prep,
                           const GreenConfig& config) {
  if (h.nqubits() != ordering.nqubits() || prep.nqubits() != h.nqubits())
    throw Error("retarded_g: register widths differ");
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (!(nodes[k] >= 0.0) || (k > 0 && !(nodes[k] > nodes[k - 1])))
      throw Error("retarded_g: time nodes must be >= 0 and strictly increasing");
  const TrotterPlan plan = resolve(config.plan, h, ordering);
  GreenTimeSeries out;
  out.i = site_i;
  out.j = site_j;
  out.spin = spin;
  out.t = nodes;
  out.mode = config.mode;
  out.assembly = config.assembly;
  out.ground = prep.prep.empty() ? "exact" : "circuit";
  if (config.mode == vqe::EvalMode::Sampled) {
    out.noise_p = config.sampling.noise.p;
    out.shots = config.sampling.shots;
  }
  out.sign = convention_sign(ordering, prep);

  const int qi = ordering.qubit({site_i, spin}), qj = ordering.qubit({site_j, spin});
  const int n = ordering.nqubits();
  const JwLadder li = jw_ladder(qi, n), lj = jw_ladder(qj, n);
  std::vector<std::pair<PauliString, PauliString>> variants;
  if (config.assembly == Assembly::FourTerm)
    variants = {{li.ybar, lj.xbar}, {li.xbar, lj.ybar}, {li.xbar, lj.xbar}, {li.ybar, lj.ybar}};
  else
    variants = {{li.xbar, lj.ybar}, {li.ybar, lj.xbar}};

  const auto nn = static_cast<std::int64_t>(nodes.size());
  const auto nv = static_cast<std::int64_t>(variants.size());
  const std::uint64_t pair_salt = (static_cast<std::uint64_t>(qi) << 8) | static_cast<std::uint64_t>(qj);
  std::vector<double> F(static_cast<std::size_t>(nn * nv));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t task = 0; task < nn * nv; ++task) {
    const auto k = task / nv, v = task % nv;
    const Circuit u = trotter_circuit(h, nodes[k], plan);
    vqe::SamplingConfig sc = config.sampling;
    sc.noise.seed = mix_seed(mix_seed(config.sampling.noise.seed, pair_salt), static_cast<std::uint64_t>(task));
    F[task] = hadamard_test_F(variants[v].first, variants[v].second, u, prep, config.mode, sc).F;
  }
  out.g.resize(nodes.size());
  for (std::int64_t k = 0; k < nn; ++k) {
    const double* f = &F[k * nv];
    if (config.assembly == Assembly::FourTerm) {
      out.g[k] = static_cast<double>(out.sign) * cplx(f[0] - f[1], -(f[2] + f[3])) / 4.0;
    } else {
      const double wm = f[0] - f[1], wp = f[0] + f[1];
      const double s = ((qi + qj) % 2 == 0) ? 1.0 : -1.0;
      out.g[k] = s * cplx(wm, -wp) / 4.0;
    }
  }
  return out;
}

void write_csv(std::ostream& os, const GreenTimeSeries& s, double eta, const std::vector<cplx>& reference) {
  if (!reference.empty() && reference.size() != s.t.size()) throw Error("green csv: reference size mismatch");
  os << "t,re,im,damped_re,damped_im";
  if (!reference.empty()) os << ",ref_re,ref_im";
  os << '\n' << std::setprecision(17);
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    const cplx d = std::exp(-eta * s.t[k]) * s.g[k];
    os << s.t[k] << ',' << s.g[k].real() << ',' << s.g[k].imag() << ',' << d.real() << ',' << d.imag();
    if (!reference.empty()) os << ',' << reference[k].real() << ',' << reference[k].imag();
    os << '\n';
  }
}

}  // namespace qcm::green
