#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcm/circuit.hpp"
#include "qcm/noise.hpp"
#include "qcm/pauli.hpp"

namespace qcm::vqe {

/// Single-parameter ansatz: X mask, CNOT layer, fixed interlayer gates,
/// Ry(phi) on one qubit, second CNOT layer.
struct AnsatzLayout {
  int nqubits = 4;
  std::vector<int> x_mask;
  std::vector<std::pair<int, int>> cnot1;  ///< (control, target)
  std::vector<Gate> interlayer;
  int phi_qubit = 0;
  std::vector<std::pair<int, int>> cnot2;
  /// Emit Ry(pi) for mask X gates and Ry(-pi) for interlayer X gates.
  bool ry_substitution = false;

  void validate() const;
};

/// Dimer layout (spin-major qubits 0u,1u,0d,1d). Its phi-manifold is
/// cos(phi/2)|doublons> + sin(phi/2)|singlet>-type states at half filling.
AnsatzLayout default_dimer_layout();

/// Copy of `layout` with ry_substitution set.
AnsatzLayout ry_variant(const AnsatzLayout& layout);

Circuit build_ansatz(const AnsatzLayout& layout, double phi);

enum class EvalMode { Exact, Sampled };

struct SamplingConfig {
  std::int64_t shots = 12000;
  NoiseModel noise;
  SampleOptions options;
};

struct DzneOptions {
  std::vector<int> scales{1, 3, 5};
  int order = 1;
};

struct DzneResult {
  double value = 0.0;
  bool clamped = false;
};

/// Polynomial least-squares fit of <P>(scale) evaluated at scale 0.
/// order = number of scales - 1 is Richardson extrapolation.
DzneResult dzne(const std::map<int, double>& per_scale, int order = 1);

struct TermEstimate {
  PauliString string;
  double coefficient = 0.0;
  double raw = 0.0;                  ///< scale-1 (or exact) value
  std::map<int, double> per_scale;   ///< empty unless mitigated
  double mitigated = 0.0;            ///< equals raw when unmitigated
  bool clamped = false;
};

struct EnergyEstimate {
  EvalMode mode = EvalMode::Exact;
  bool mitigated = false;
  double constant = 0.0;
  double raw = 0.0;          ///< sum xi_k raw_k + constant
  double value = 0.0;        ///< sum xi_k mitigated_k + constant
  std::vector<TermEstimate> terms;
  bool clamp_warning = false;
};

/// Energy of the ansatz at phi. Exact mode ignores `sampling`.
EnergyEstimate energy(const PauliHamiltonian& h, const AnsatzLayout& layout, double phi, EvalMode mode,
                      const SamplingConfig& sampling = {});

/// Sampled energy with per-term DZNE over folded circuits.
EnergyEstimate energy_mitigated(const PauliHamiltonian& h, const AnsatzLayout& layout, double phi,
                                const SamplingConfig& sampling, const DzneOptions& dzne_options);

struct SinusoidFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double phi0 = 0.0;
  double min_value = 0.0;   ///< a - sqrt(b^2 + c^2)
  double residual = 0.0;    ///< max |fit - sample|
  bool flat = false;
  std::string message;      ///< "flat landscape" when b = c = 0
};

/// Least-squares fit E(phi) = a + b cos phi + c sin phi; phi0 = atan2(-c, -b).
SinusoidFit fit_minimize(const std::vector<std::pair<double, double>>& samples, double flat_tolerance = 1e-10);

/// n equally spaced angles 2 pi k / n.
std::vector<double> phi_grid(int n);

struct GroundResult {
  SinusoidFit fit;
  std::vector<std::pair<double, double>> samples;
  EnergyEstimate estimate;  ///< at phi0
};

/// Samples the landscape, fits, and evaluates (and optionally mitigates) at phi0.
GroundResult minimize(const PauliHamiltonian& h, const AnsatzLayout& layout, int n_phi, EvalMode mode,
                      const SamplingConfig& sampling = {}, const std::optional<DzneOptions>& dzne_options = {});

/// term, coefficient, raw, one column per scale, mitigated, exact.
void write_mitigation_csv(std::ostream& os, const EnergyEstimate& e, const std::vector<double>& exact_terms);

}  // namespace qcm::vqe
