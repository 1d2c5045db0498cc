#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcm/fermion_model.hpp"

namespace qcm::cpt {

using Vec2 = std::array<double, 2>;

/// Cluster repeated by the superlattice {e1, e2}; nearest-neighbour hopping
/// -gamma and chemical potential mu on the square lattice.
struct TilingSpec {
  std::vector<Site> sites;
  Site e1{2, 0};
  Site e2{0, 1};
  double gamma = 1.0;
  double mu = 0.0;

  int nsites() const { return static_cast<int>(sites.size()); }
  /// Throws unless every lattice site has exactly one (R, alpha) decomposition.
  void validate() const;
  /// Superlattice cell R (in units of e1, e2) and cluster index alpha of a lattice site.
  std::pair<std::array<int, 2>, int> decompose(Site s) const;
};

/// T0 (intra-cluster, -mu on the diagonal) and T^r keyed by the lattice
/// displacement r = R - R' of two superlattice cells. T^r[a][b] is the
/// amplitude of c+_{R a} c_{R' b}.
struct HoppingPartition {
  int L = 0;
  Eigen::MatrixXcd t0;
  std::map<std::array<int, 2>, Eigen::MatrixXcd> inter;
};

HoppingPartition partition_hoppings(const TilingSpec& tiling);

/// Rebuilds every bond of a (2 radius + 1)^2-cell patch from the partition and
/// compares with direct enumeration. Returns the number of mismatches.
int partition_mismatches(const TilingSpec& tiling, const HoppingPartition& p, int radius = 3);

/// tau_q = sum_r e^{-i q.r} T^r.
Eigen::MatrixXcd tau_q(const HoppingPartition& p, const Vec2& q);

/// Reciprocal superlattice vectors b_i with b_i . e_j = 2 pi delta_ij.
std::array<Vec2, 2> reciprocal_superlattice(const TilingSpec& tiling);

/// k shifted by reciprocal superlattice vectors into the reduced zone
/// (fractional coordinates in [-1/2, 1/2)).
Vec2 fold_to_reduced_zone(const Vec2& k, const TilingSpec& tiling);

inline constexpr double kConditionLimit = 1e12;

/// [G^{-1} - tau_q]^{-1}; throws on an ill-conditioned G or result.
Eigen::MatrixXcd cpt_green(const Eigen::MatrixXcd& g, const HoppingPartition& p, const Vec2& q);

/// Sigma(z) = z - T0 - G^{-1}(z).
Eigen::MatrixXcd self_energy(const Eigen::MatrixXcd& g, cplx z, const Eigen::MatrixXcd& t0);

/// e^{i k.r_j} over the cluster sites.
Eigen::VectorXcd periodization_phase(const std::vector<Site>& sites, const Vec2& k);

/// g(k) = (1/L) sum_ij e^{-i k.(r_i - r_j)} Gcal_ij.
cplx periodize(const Eigen::MatrixXcd& gcal, const std::vector<Site>& sites, const Vec2& k);

struct KPath {
  std::vector<Vec2> k;
  std::vector<std::string> label;  ///< "G", "X", "M" at vertices, empty elsewhere
};

/// Gamma -> X -> M -> Gamma with `per_segment` points per segment plus the closing Gamma.
KPath gamma_x_m_path(int per_segment);

/// Per spin, per frequency: L x L G(omega + i eta).
struct ClusterGreenMatrix {
  std::vector<double> omega;
  double eta = 0.0;
  std::array<std::vector<Eigen::MatrixXcd>, 2> g;
};

struct SpectralGrid {
  KPath path;
  std::vector<double> omega;
  std::array<std::vector<double>, 2> intensity;  ///< per spin, k-major [k * n_omega + w]
  std::array<std::vector<double>, 2> k_integral; ///< per spin, trapezoid over omega per k
  int singular_cells = 0;

  double at(int spin, std::size_t k, std::size_t w) const { return intensity[spin][k * omega.size() + w]; }
};

SpectralGrid excitation_spectra(const ClusterGreenMatrix& g, const TilingSpec& tiling, const KPath& path,
                                bool parallel = true);

/// Long form: k_index, k_label, kx, ky, omega, intensity (one spin).
void write_long_csv(std::ostream& os, const SpectralGrid& s, int spin);
/// Dense matrix: one row per k, one column per omega.
void write_dense(std::ostream& os, const SpectralGrid& s, int spin);

}  // namespace qcm::cpt
