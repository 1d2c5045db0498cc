#include "qcm/cpt.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>

#include "qcm/kernels.hpp"

namespace qcm::cpt {

namespace {

constexpr std::array<Site, 4> kNeighbours{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

long det(const Site& a, const Site& b) { return static_cast<long>(a.x) * b.y - static_cast<long>(a.y) * b.x; }

/// Integer (n1, n2) with d = n1 e1 + n2 e2, if any.
bool solve_cell(const TilingSpec& t, Site d, std::array<int, 2>& n) {
  const long D = det(t.e1, t.e2);
  const long a = det(d, t.e2), b = det(t.e1, d);
  if (a % D != 0 || b % D != 0) return false;
  n = {static_cast<int>(a / D), static_cast<int>(b / D)};
  return true;
}

std::array<int, 2> cell_vector(const TilingSpec& t, const std::array<int, 2>& n) {
  return {n[0] * t.e1.x + n[1] * t.e2.x, n[0] * t.e1.y + n[1] * t.e2.y};
}

double condition(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

std::pair<std::array<int, 2>, int> TilingSpec::decompose(Site s) const {
  int found = 0;
  std::pair<std::array<int, 2>, int> out{{0, 0}, -1};
  for (int a = 0; a < nsites(); ++a) {
    std::array<int, 2> n;
    if (solve_cell(*this, {s.x - sites[a].x, s.y - sites[a].y}, n)) {
      ++found;
      out = {n, a};
    }
  }
  if (found != 1) throw Error("tiling: lattice site has " + std::to_string(found) + " cluster decompositions");
  return out;
}

void TilingSpec::validate() const {
  if (sites.empty()) throw Error("tiling: empty cluster");
  if (!std::isfinite(gamma) || !std::isfinite(mu)) throw Error("tiling: non-finite hopping or mu");
  if (std::set<Site>(sites.begin(), sites.end()).size() != sites.size()) throw Error("tiling: repeated site");
  const long D = det(e1, e2);
  if (std::labs(D) != static_cast<long>(sites.size()))
    throw Error("tiling: superlattice cell area differs from the cluster size");
  // with |det| = L, unique decomposition of every site of one cell window is sufficient
  int span = 0;
  for (const auto& s : sites) span = std::max({span, std::abs(s.x), std::abs(s.y)});
  span += std::max({std::abs(e1.x), std::abs(e1.y), std::abs(e2.x), std::abs(e2.y)}) + 1;
  for (int x = -span; x <= span; ++x)
    for (int y = -span; y <= span; ++y) (void)decompose({x, y});
}

HoppingPartition partition_hoppings(const TilingSpec& tiling) {
  tiling.validate();
  const int L = tiling.nsites();
  HoppingPartition p;
  p.L = L;
  p.t0 = Eigen::MatrixXcd::Zero(L, L);
  for (int a = 0; a < L; ++a) {
    p.t0(a, a) = -tiling.mu;
    for (const auto& d : kNeighbours) {
      const auto [n, b] = tiling.decompose({tiling.sites[a].x + d.x, tiling.sites[a].y + d.y});
      const auto r = cell_vector(tiling, n);
      // -gamma c+_{R b} c_{0 a}
      if (r == std::array<int, 2>{0, 0}) {
        p.t0(b, a) += -tiling.gamma;
      } else {
        auto [it, fresh] = p.inter.try_emplace(r, Eigen::MatrixXcd::Zero(L, L));
        it->second(b, a) += -tiling.gamma;
      }
    }
  }
  return p;
}

int partition_mismatches(const TilingSpec& tiling, const HoppingPartition& p, int radius) {
  struct Where {
    std::array<int, 2> R;
    int a;
    Site pos;
  };
  std::vector<Where> patch;
  for (int n1 = -radius; n1 <= radius; ++n1)
    for (int n2 = -radius; n2 <= radius; ++n2) {
      const auto R = cell_vector(tiling, {n1, n2});
      for (int a = 0; a < p.L; ++a)
        patch.push_back({R, a, {R[0] + tiling.sites[a].x, R[1] + tiling.sites[a].y}});
    }
  int bad = 0;
  for (const auto& u : patch)
    for (const auto& v : patch) {
      const int dist = std::abs(u.pos.x - v.pos.x) + std::abs(u.pos.y - v.pos.y);
      const cplx expected = dist == 0 ? cplx(-tiling.mu) : dist == 1 ? cplx(-tiling.gamma) : cplx(0.0);
      const std::array<int, 2> r{u.R[0] - v.R[0], u.R[1] - v.R[1]};
      cplx got = 0.0;
      if (r == std::array<int, 2>{0, 0}) {
        got = p.t0(u.a, v.a);
      } else if (auto it = p.inter.find(r); it != p.inter.end()) {
        got = it->second(u.a, v.a);
      }
      if (std::abs(got - expected) > 1e-12) ++bad;
    }
  return bad;
}

Eigen::MatrixXcd tau_q(const HoppingPartition& p, const Vec2& q) {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(p.L, p.L);
  for (const auto& [r, m] : p.inter) t += std::exp(cplx(0.0, -(q[0] * r[0] + q[1] * r[1]))) * m;
  return t;
}

std::array<Vec2, 2> reciprocal_superlattice(const TilingSpec& t) {
  const double D = static_cast<double>(det(t.e1, t.e2));
  // b1 . e1 = 2 pi, b1 . e2 = 0 and vice versa
  return {{{2 * kPi * t.e2.y / D, -2 * kPi * t.e2.x / D}, {-2 * kPi * t.e1.y / D, 2 * kPi * t.e1.x / D}}};
}

Vec2 fold_to_reduced_zone(const Vec2& k, const TilingSpec& t) {
  const auto b = reciprocal_superlattice(t);
  double f1 = (k[0] * t.e1.x + k[1] * t.e1.y) / (2 * kPi);
  double f2 = (k[0] * t.e2.x + k[1] * t.e2.y) / (2 * kPi);
  f1 -= std::floor(f1 + 0.5);
  f2 -= std::floor(f2 + 0.5);
  return {f1 * b[0][0] + f2 * b[1][0], f1 * b[0][1] + f2 * b[1][1]};
}

Eigen::MatrixXcd cpt_green(const Eigen::MatrixXcd& g, const HoppingPartition& p, const Vec2& q) {
  if (g.rows() != p.L || g.cols() != p.L) throw Error("cpt_green: cluster G has the wrong size");
  if (condition(g) > kConditionLimit) throw Error("cpt_green: cluster G is singular at this frequency");
  const Eigen::MatrixXcd m = g.inverse() - tau_q(p, q);
  if (condition(m) > kConditionLimit) throw Error("cpt_green: G^-1 - tau_q is singular");
  return m.inverse();
}

Eigen::MatrixXcd self_energy(const Eigen::MatrixXcd& g, cplx z, const Eigen::MatrixXcd& t0) {
  if (condition(g) > kConditionLimit) throw Error("self_energy: cluster G is singular at this frequency");
  return z * Eigen::MatrixXcd::Identity(g.rows(), g.cols()) - t0 - g.inverse();
}

Eigen::VectorXcd periodization_phase(const std::vector<Site>& sites, const Vec2& k) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(sites.size()));
  for (std::size_t j = 0; j < sites.size(); ++j) v(j) = std::exp(cplx(0.0, k[0] * sites[j].x + k[1] * sites[j].y));
  return v;
}

cplx periodize(const Eigen::MatrixXcd& gcal, const std::vector<Site>& sites, const Vec2& k) {
  const Eigen::VectorXcd v = periodization_phase(sites, k);
  return v.dot(gcal * v) / static_cast<double>(sites.size());
}

KPath gamma_x_m_path(int per_segment) {
  if (per_segment < 1) throw Error("k path: need at least one point per segment");
  const std::array<Vec2, 4> v{{{0.0, 0.0}, {kPi, 0.0}, {kPi, kPi}, {0.0, 0.0}}};
  const std::array<const char*, 4> names{"G", "X", "M", "G"};
  KPath p;
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < per_segment; ++i) {
      const double f = static_cast<double>(i) / per_segment;
      p.k.push_back({v[s][0] + f * (v[s + 1][0] - v[s][0]), v[s][1] + f * (v[s + 1][1] - v[s][1])});
      p.label.push_back(i == 0 ? names[s] : "");
    }
  p.k.push_back(v[3]);
  p.label.push_back(names[3]);
  return p;
}

SpectralGrid excitation_spectra(const ClusterGreenMatrix& g, const TilingSpec& tiling, const KPath& path,
                                bool parallel) {
  const HoppingPartition part = partition_hoppings(tiling);
  SpectralGrid out;
  out.path = path;
  out.omega = g.omega;
  const std::size_t nw = g.omega.size(), nk = path.k.size();
  kernels::LatticeGridInput in;
  in.condition_limit = kConditionLimit;
  for (const auto& k : path.k) {
    in.tau.push_back(tau_q(part, fold_to_reduced_zone(k, tiling)));
    in.phase.push_back(periodization_phase(tiling.sites, k));
  }
  for (int spin = 0; spin < 2; ++spin) {
    if (g.g[spin].size() != nw) throw Error("excitation_spectra: G table does not match the omega grid");
    std::vector<bool> bad(nw, false);
    in.g_inverse.assign(nw, Eigen::MatrixXcd::Zero(part.L, part.L));
    for (std::size_t w = 0; w < nw; ++w) {
      if (g.g[spin][w].rows() != part.L) throw Error("excitation_spectra: cluster G has the wrong size");
      if (condition(g.g[spin][w]) > kConditionLimit)
        bad[w] = true;
      else
        in.g_inverse[w] = g.g[spin][w].inverse();
    }
    auto res = parallel ? kernels::omp::lattice_grid(in) : kernels::serial::lattice_grid(in);
    for (std::size_t k = 0; k < nk; ++k)
      for (std::size_t w = 0; w < nw; ++w)
        if (bad[w]) {
          res.intensity[k * nw + w] = 0.0;
          res.singular[k * nw + w] = 1;
        }
    for (auto s : res.singular) out.singular_cells += s;
    out.intensity[spin] = std::move(res.intensity);
    out.k_integral[spin].assign(nk, 0.0);
    for (std::size_t k = 0; k < nk; ++k)
      for (std::size_t w = 1; w < nw; ++w)
        out.k_integral[spin][k] += 0.5 * (out.at(spin, k, w) + out.at(spin, k, w - 1)) * (g.omega[w] - g.omega[w - 1]);
  }
  return out;
}

void write_long_csv(std::ostream& os, const SpectralGrid& s, int spin) {
  os << "k_index,k_label,kx,ky,omega,intensity\n" << std::setprecision(17);
  for (std::size_t k = 0; k < s.path.k.size(); ++k)
    for (std::size_t w = 0; w < s.omega.size(); ++w)
      os << k << ',' << s.path.label[k] << ',' << s.path.k[k][0] << ',' << s.path.k[k][1] << ',' << s.omega[w] << ','
         << s.at(spin, k, w) << '\n';
}

void write_dense(std::ostream& os, const SpectralGrid& s, int spin) {
  os << std::setprecision(17);
  for (std::size_t k = 0; k < s.path.k.size(); ++k) {
    for (std::size_t w = 0; w < s.omega.size(); ++w) os << (w ? " " : "") << s.at(spin, k, w);
    os << '\n';
  }
}

}  // namespace qcm::cpt
