#include <omp.h>

#include <cmath>

#include "qcm/kernels.hpp"

namespace qcm::kernels::omp {

std::int64_t count_even(const TrajectorySampler& s, std::int64_t shots, std::uint64_t seed) {
  const std::int64_t nchunks = s.chunk_count(shots);
  std::int64_t even = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : even) if (!omp_in_parallel() && nchunks > 1)
  for (std::int64_t c = 0; c < nchunks; ++c)
    even += s.count_even_chunk(chunk_shots(shots, c), mix_seed(seed, static_cast<std::uint64_t>(c)));
  return even;
}

std::vector<cplx> damped_fourier(std::span<const double> nodes, std::span<const double> weights,
                                 std::span<const cplx> values, std::span<const double> omega, double eta) {
  std::vector<cplx> out(omega.size());
  const auto nw = static_cast<std::int64_t>(omega.size());
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (std::int64_t w = 0; w < nw; ++w) {
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
  const auto cells = static_cast<std::int64_t>(nk * nw);
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const auto k = static_cast<std::size_t>(cell) / nw, w = static_cast<std::size_t>(cell) % nw;
    bool singular = false;
    out.intensity[cell] = lattice_cell(in.g_inverse[w], in.tau[k], in.phase[k], in.condition_limit, singular);
    out.singular[cell] = singular;
  }
  return out;
}

}  // namespace qcm::kernels::omp
