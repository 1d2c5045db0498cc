#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Raised when inputs violate a documented precondition or invariant.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration problems detected at load time (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Spin { Up = 0, Down = 1 };

inline const char* to_string(Spin s) { return s == Spin::Up ? "up" : "down"; }

/// Deterministic 64-bit mixer used to derive per-task seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qcm
