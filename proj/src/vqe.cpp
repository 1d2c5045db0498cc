#include "qcm/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>

#include <Eigen/Dense>

#include "qcm/statevector.hpp"

namespace qcm::vqe {

void AnsatzLayout::validate() const {
  if (nqubits < 1 || nqubits > 30) throw Error("ansatz: bad register width");
  Circuit probe(nqubits);
  auto check = [&](Gate g) { probe.add(std::move(g)); };
  for (int q : x_mask) check(Gate::x(q));
  for (auto [c, t] : cnot1) check(Gate::cnot(c, t));
  for (const auto& g : interlayer) check(g);
  check(Gate::ry(phi_qubit, 0.0));
  for (auto [c, t] : cnot2) check(Gate::cnot(c, t));
}

AnsatzLayout default_dimer_layout() {
  AnsatzLayout l;
  l.nqubits = 4;
  l.x_mask = {1};
  l.cnot1 = {{1, 0}};
  l.interlayer = {Gate::x(2), Gate::ry(1, -kPi / 2)};
  l.phi_qubit = 3;
  l.cnot2 = {{1, 0}, {1, 3}, {3, 2}};
  return l;
}

AnsatzLayout ry_variant(const AnsatzLayout& layout) {
  AnsatzLayout l = layout;
  l.ry_substitution = true;
  return l;
}

Circuit build_ansatz(const AnsatzLayout& layout, double phi) {
  Circuit c(layout.nqubits);
  const bool ry = layout.ry_substitution;
  for (int q : layout.x_mask) c.add(ry ? Gate::ry(q, kPi) : Gate::x(q));
  for (auto [a, b] : layout.cnot1) c.add(Gate::cnot(a, b));
  for (const auto& g : layout.interlayer)
    c.add(ry && g.kind == GateKind::X ? Gate::ry(g.qubits[0], -kPi) : g);
  c.add(Gate::ry(layout.phi_qubit, phi));
  for (auto [a, b] : layout.cnot2) c.add(Gate::cnot(a, b));
  return c;
}

DzneResult dzne(const std::map<int, double>& per_scale, int order) {
  if (per_scale.size() < 2) throw Error("dzne: need at least two scales");
  for (const auto& [s, v] : per_scale) {
    if (s < 1 || s % 2 == 0) throw Error("dzne: scales must be odd and >= 1");
    if (!std::isfinite(v)) throw Error("dzne: non-finite estimate");
  }
  const auto n = static_cast<Eigen::Index>(per_scale.size());
  if (order < 1 || order >= n) throw Error("dzne: order must lie in [1, number of scales - 1]");
  Eigen::MatrixXd a(n, order + 1);
  Eigen::VectorXd y(n);
  Eigen::Index r = 0;
  for (const auto& [s, v] : per_scale) {
    for (int k = 0; k <= order; ++k) a(r, k) = std::pow(static_cast<double>(s), k);
    y(r++) = v;
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
  DzneResult out{coef(0), false};
  if (std::abs(out.value) > 1.0) {
    out.value = std::copysign(1.0, out.value);
    out.clamped = true;
  }
  return out;
}

namespace {

std::uint64_t term_seed(std::uint64_t master, std::size_t term, int scale) {
  return mix_seed(mix_seed(master, term), static_cast<std::uint64_t>(scale));
}

EnergyEstimate skeleton(const PauliHamiltonian& h, EvalMode mode) {
  if (h.nqubits() < 1) throw Error("energy: empty Hamiltonian register");
  EnergyEstimate e;
  e.mode = mode;
  e.constant = h.constant();
  for (const auto& t : h.non_identity_terms()) {
    TermEstimate te;
    te.string = t.string;
    te.coefficient = t.coefficient;
    e.terms.push_back(std::move(te));
  }
  return e;
}

void total(EnergyEstimate& e) {
  e.raw = e.value = e.constant;
  for (const auto& t : e.terms) {
    e.raw += t.coefficient * t.raw;
    e.value += t.coefficient * t.mitigated;
    e.clamp_warning = e.clamp_warning || t.clamped;
  }
}

}  // namespace

EnergyEstimate energy(const PauliHamiltonian& h, const AnsatzLayout& layout, double phi, EvalMode mode,
                      const SamplingConfig& sampling) {
  if (layout.nqubits != h.nqubits()) throw Error("energy: ansatz and Hamiltonian widths differ");
  EnergyEstimate e = skeleton(h, mode);
  const Circuit c = build_ansatz(layout, phi);
  if (mode == EvalMode::Exact) {
    const StateVector s = run(c);
    for (auto& t : e.terms) t.raw = t.mitigated = expectation(s, t.string);
  } else {
    const auto nt = static_cast<std::int64_t>(e.terms.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < nt; ++k) {
      NoiseModel nm = sampling.noise;
      nm.seed = term_seed(sampling.noise.seed, static_cast<std::size_t>(k), 1);
      auto& t = e.terms[k];
      t.raw = t.mitigated = sample_expectation(c, t.string, sampling.shots, nm, std::nullopt, sampling.options);
    }
  }
  total(e);
  return e;
}

EnergyEstimate energy_mitigated(const PauliHamiltonian& h, const AnsatzLayout& layout, double phi,
                                const SamplingConfig& sampling, const DzneOptions& opts) {
  if (layout.nqubits != h.nqubits()) throw Error("energy: ansatz and Hamiltonian widths differ");
  if (std::set<int>(opts.scales.begin(), opts.scales.end()).size() != opts.scales.size())
    throw Error("dzne: repeated scale");
  if (std::find(opts.scales.begin(), opts.scales.end(), 1) == opts.scales.end())
    throw Error("dzne: scale 1 is required for the raw estimate");
  EnergyEstimate e = skeleton(h, EvalMode::Sampled);
  e.mitigated = true;
  const Circuit base = build_ansatz(layout, phi);
  std::vector<Circuit> folded;
  for (int s : opts.scales) folded.push_back(fold(base, s));
  const auto nt = static_cast<std::int64_t>(e.terms.size());
  const auto ns = static_cast<std::int64_t>(opts.scales.size());
  std::vector<double> values(static_cast<std::size_t>(nt * ns));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t task = 0; task < nt * ns; ++task) {
    const auto k = task / ns, si = task % ns;
    NoiseModel nm = sampling.noise;
    nm.seed = term_seed(sampling.noise.seed, static_cast<std::size_t>(k), opts.scales[si]);
    values[task] = sample_expectation(folded[si], e.terms[k].string, sampling.shots, nm, std::nullopt, sampling.options);
  }
  for (std::int64_t k = 0; k < nt; ++k) {
    auto& t = e.terms[k];
    for (std::int64_t si = 0; si < ns; ++si) t.per_scale[opts.scales[si]] = values[k * ns + si];
    t.raw = t.per_scale.at(1);
    const auto r = dzne(t.per_scale, opts.order);
    t.mitigated = r.value;
    t.clamped = r.clamped;
  }
  total(e);
  return e;
}

SinusoidFit fit_minimize(const std::vector<std::pair<double, double>>& samples, double flat_tolerance) {
  std::set<double> distinct;
  for (const auto& [phi, e] : samples) {
    if (!std::isfinite(phi) || !std::isfinite(e)) throw Error("fit_minimize: non-finite sample");
    distinct.insert(std::remainder(phi, 2 * kPi));
  }
  if (distinct.size() < 3) throw Error("fit_minimize: need at least three distinct angles");
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double phi = samples[r].first;
    a.row(r) << 1.0, std::cos(phi), std::sin(phi);
    y(r) = samples[r].second;
  }
  const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(y);
  SinusoidFit f;
  f.a = coef(0);
  f.b = coef(1);
  f.c = coef(2);
  f.residual = (a * coef - y).cwiseAbs().maxCoeff();
  const double amp = std::hypot(f.b, f.c);
  if (amp <= flat_tolerance * std::max(1.0, std::abs(f.a))) {
    f.flat = true;
    f.message = "flat landscape";
    f.phi0 = 0.0;
    f.min_value = f.a;
    return f;
  }
  f.phi0 = std::atan2(-f.c, -f.b);
  f.min_value = f.a - amp;
  return f;
}

std::vector<double> phi_grid(int n) {
  if (n < 3) throw Error("phi_grid: need at least three angles");
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = 2 * kPi * k / n;
  return out;
}

GroundResult minimize(const PauliHamiltonian& h, const AnsatzLayout& layout, int n_phi, EvalMode mode,
                      const SamplingConfig& sampling, const std::optional<DzneOptions>& dzne_options) {
  GroundResult r;
  const auto grid = phi_grid(n_phi);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    SamplingConfig sc = sampling;
    sc.noise.seed = mix_seed(sampling.noise.seed, 1000 + k);
    r.samples.emplace_back(grid[k], energy(h, layout, grid[k], mode, sc).raw);
  }
  r.fit = fit_minimize(r.samples);
  SamplingConfig sc = sampling;
  sc.noise.seed = mix_seed(sampling.noise.seed, 999);
  if (mode == EvalMode::Sampled && dzne_options)
    r.estimate = energy_mitigated(h, layout, r.fit.phi0, sc, *dzne_options);
  else
    r.estimate = energy(h, layout, r.fit.phi0, mode, sc);
  return r;
}

void write_mitigation_csv(std::ostream& os, const EnergyEstimate& e, const std::vector<double>& exact_terms) {
  if (!exact_terms.empty() && exact_terms.size() != e.terms.size()) throw Error("mitigation csv: reference size mismatch");
  std::vector<int> scales;
  if (!e.terms.empty())
    for (const auto& [s, v] : e.terms.front().per_scale) scales.push_back(s);
  os << "term,coefficient,raw";
  for (int s : scales) os << ",scale_" << s;
  os << ",mitigated,exact\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < e.terms.size(); ++k) {
    const auto& t = e.terms[k];
    os << t.string.str() << ',' << t.coefficient << ',' << t.raw;
    for (int s : scales) os << ',' << t.per_scale.at(s);
    os << ',' << t.mitigated << ',';
    if (!exact_terms.empty()) os << exact_terms[k];
    os << '\n';
  }
}

}  // namespace qcm::vqe
