#pragma once

#include <iosfwd>
#include <vector>

#include "qcm/common.hpp"

namespace qcm::spectral {

/// Gauss-Legendre rule mapped from [-1, 1] to [0, t_max].
struct QuadratureRule {
  double t_max = 0.0;
  std::vector<double> nodes;    ///< ascending
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

QuadratureRule legendre_rule(int n, double t_max);

/// n points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int n);

struct FrequencyGreen {
  std::vector<double> omega;
  double eta = 0.0;
  std::vector<cplx> values;  ///< G(omega + i eta)
};

struct SpectralSeries {
  std::vector<double> omega;
  std::vector<double> rho;
};

/// G(w + i eta) = sum_k w_k e^{i w t_k} e^{-eta t_k} G(t_k). `times` must be the rule's nodes.
FrequencyGreen to_frequency(const QuadratureRule& rule, const std::vector<double>& times,
                            const std::vector<cplx>& values, const std::vector<double>& omega, double eta);

/// rho = -Im G / pi.
SpectralSeries spectral(const FrequencyGreen& g);

struct SumRule {
  double value = 0.0;
  double edge_weight = 0.0;  ///< max(rho) at the two window ends
  bool edge_warning = false; ///< edge_weight above 1e-3
};

/// Trapezoid integral of rho over its grid.
SumRule sum_rule(const SpectralSeries& s);

/// Re G(w) = P int rho(w') / (w - w') dw' by the odd/even (Maclaurin) rule.
/// Requires a uniform grid.
std::vector<double> kramers_kronig_real(const SpectralSeries& s);

/// Local maxima of rho above `min_height`, as grid frequencies.
std::vector<double> find_peaks(const SpectralSeries& s, double min_height);

/// Columns omega, re, im, rho.
void write_csv(std::ostream& os, const FrequencyGreen& g);

}  // namespace qcm::spectral
