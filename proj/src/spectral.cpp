#include "qcm/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "qcm/kernels.hpp"

namespace qcm::spectral {

QuadratureRule legendre_rule(int n, double t_max) {
  if (n < 1) throw Error("legendre_rule: n must be >= 1");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error("legendre_rule: t_max must be positive");
  QuadratureRule r;
  r.t_max = t_max;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double half = t_max / 2.0;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    if (n % 2 == 1 && i == m - 1) z = 0.0;
    // recompute the derivative at the converged root
    double p1 = 1.0, p2 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    // z > 0 here; ascending order puts -z first
    r.nodes[i] = half * (1.0 - z);
    r.nodes[n - 1 - i] = half * (1.0 + z);
    r.weights[i] = r.weights[n - 1 - i] = half * w;
  }
  return r;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw Error("uniform_grid: need n >= 2 and hi > lo");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
  return g;
}

FrequencyGreen to_frequency(const QuadratureRule& rule, const std::vector<double>& times,
                            const std::vector<cplx>& values, const std::vector<double>& omega, double eta) {
  if (!(eta > 0.0)) throw Error("to_frequency: eta must be positive");
  if (times.size() != rule.size() || values.size() != rule.size())
    throw Error("to_frequency: series length does not match the quadrature rule");
  for (std::size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - rule.nodes[k]) > 1e-12 * std::max(1.0, rule.t_max))
      throw Error("to_frequency: series nodes differ from the quadrature nodes");
  for (std::size_t k = 1; k < omega.size(); ++k)
    if (!(omega[k] > omega[k - 1])) throw Error("to_frequency: omega grid must be strictly increasing");
  FrequencyGreen out;
  out.omega = omega;
  out.eta = eta;
  out.values = kernels::omp::damped_fourier(rule.nodes, rule.weights, values, omega, eta);
  return out;
}

SpectralSeries spectral(const FrequencyGreen& g) {
  SpectralSeries s;
  s.omega = g.omega;
  s.rho.reserve(g.values.size());
  for (const auto& v : g.values) s.rho.push_back(-v.imag() / kPi);
  return s;
}

SumRule sum_rule(const SpectralSeries& s) {
  SumRule r;
  if (s.omega.size() < 2) return r;
  for (std::size_t k = 1; k < s.omega.size(); ++k)
    r.value += 0.5 * (s.rho[k] + s.rho[k - 1]) * (s.omega[k] - s.omega[k - 1]);
  r.edge_weight = std::max(std::abs(s.rho.front()), std::abs(s.rho.back()));
  r.edge_warning = r.edge_weight > 1e-3;
  return r;
}

std::vector<double> kramers_kronig_real(const SpectralSeries& s) {
  const std::size_t n = s.omega.size();
  if (n < 3) throw Error("kramers_kronig: grid too short");
  const double h = (s.omega.back() - s.omega.front()) / static_cast<double>(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    if (std::abs(s.omega[k] - s.omega[k - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw Error("kramers_kronig: grid must be uniform");
  std::vector<double> re(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = (i % 2 == 0) ? 1 : 0; j < n; j += 2) acc += s.rho[j] / (s.omega[i] - s.omega[j]);
    re[i] = 2.0 * h * acc;
  }
  return re;
}

std::vector<double> find_peaks(const SpectralSeries& s, double min_height) {
  std::vector<double> out;
  for (std::size_t k = 1; k + 1 < s.rho.size(); ++k)
    if (s.rho[k] > min_height && s.rho[k] >= s.rho[k - 1] && s.rho[k] > s.rho[k + 1]) out.push_back(s.omega[k]);
  return out;
}

void write_csv(std::ostream& os, const FrequencyGreen& g) {
  os << "omega,re,im,rho\n" << std::setprecision(17);
  for (std::size_t k = 0; k < g.omega.size(); ++k)
    os << g.omega[k] << ',' << g.values[k].real() << ',' << g.values[k].imag() << ',' << -g.values[k].imag() / kPi
       << '\n';
}

}  // namespace qcm::spectral
