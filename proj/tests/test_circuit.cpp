#include <random>

#include <gtest/gtest.h>

#include "qcm/circuit.hpp"
#include "qcm/statevector.hpp"

using namespace qcm;

namespace {

Circuit random_circuit(int n, int ngates, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 7), q(0, n - 1), letter(0, 3);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  Circuit c(n);
  while (static_cast<int>(c.size()) < ngates) {
    const int t = q(rng);
    switch (kind(rng)) {
      case 0: c.add(Gate::h(t)); break;
      case 1: c.add(Gate::x(t)); break;
      case 2: c.add(Gate::rx(t, a(rng))); break;
      case 3: c.add(Gate::ry(t, a(rng))); break;
      case 4: c.add(Gate::rz(t, a(rng))); break;
      case 5: {
        const int u = q(rng);
        if (u != t) c.add(Gate::cnot(t, u));
        break;
      }
      case 6: {
        PauliString p(n);
        for (int k = 0; k < n; ++k) p.set(k, "IXYZ"[letter(rng)]);
        if (!p.is_identity()) c.add(Gate::pauli_rotation(p, a(rng)));
        break;
      }
      default: {
        PauliString p(n);
        for (int k = 0; k < n; ++k)
          if (k != t) p.set(k, "IXYZ"[letter(rng)]);
        c.add(Gate::controlled_pauli(t, p, static_cast<int>(rng() & 1)));
      }
    }
  }
  return c;
}

}  // namespace

TEST(Apply, HadamardOnZero) {
  StateVector s(1);
  apply(s, Gate::h(0));
  EXPECT_NEAR(std::abs(s[0] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Apply, ZRotationPhase) {
  const double theta = 0.37;
  StateVector s(1);
  apply(s, Gate::pauli_rotation(PauliString::parse("Z"), theta));
  EXPECT_NEAR(std::abs(s[0] - std::exp(-kI * theta)), 0.0, 1e-15);
}

TEST(Apply, BellState) {
  StateVector s(2);
  apply(s, Gate::h(0));
  apply(s, Gate::cnot(0, 1));
  EXPECT_NEAR(std::abs(s[0]), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s[3]), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s[1]) + std::abs(s[2]), 0.0, 1e-15);
  EXPECT_NEAR(expectation(s, PauliString::parse("ZZ")), 1.0, 1e-15);
}

TEST(Expectation, Examples) {
  const StateVector zero(1);
  EXPECT_DOUBLE_EQ(expectation(zero, PauliString::parse("Z")), 1.0);
  EXPECT_DOUBLE_EQ(expectation(zero, PauliString::parse("X")), 0.0);
}

TEST(Expectation, MatchesDenseMatrix) {
  const auto s = run(random_circuit(4, 60, 3));
  Eigen::VectorXcd v(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) v(k) = s[k];
  for (const char* p : {"XYZI", "ZZZZ", "IYIY", "XIIX"}) {
    const auto ps = PauliString::parse(p);
    EXPECT_NEAR(expectation(s, ps), (v.adjoint() * dense_matrix(ps) * v)(0).real(), 1e-12);
  }
}

TEST(Unitarity, TenThousandGates) {
  StateVector s(5);
  apply(s, random_circuit(5, 10000, 7));
  EXPECT_NEAR(s.norm(), 1.0, 1e-10);
}

TEST(Circuit, InverseUndoes) {
  const auto c = random_circuit(3, 80, 11);
  Circuit both = c;
  both.append(c.inverse());
  const auto u = circuit_unitary(both);
  EXPECT_LT((u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Circuit, RejectsInvalidOperands) {
  Circuit c(2);
  EXPECT_THROW(c.add(Gate::cnot(1, 1)), Error);
  EXPECT_THROW(c.add(Gate::h(2)), Error);
  EXPECT_THROW(c.add(Gate::rx(0, std::nan(""))), Error);
}

TEST(Circuit, DumpOneGatePerLine) {
  Circuit c(2);
  c.add(Gate::h(0)).add(Gate::ry(1, 0.5)).add(Gate::cnot(0, 1));
  const auto text = c.dump();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_NE(text.find("0.5"), std::string::npos);
}

TEST(Fold, ScaleOneUnchanged) {
  const auto c = random_circuit(3, 20, 5);
  const auto f = fold(c, 1);
  EXPECT_EQ(f.size(), c.size());
  EXPECT_EQ(f.dump(), c.dump());
}

TEST(Fold, ScaleThreeAndFive) {
  for (int seed = 0; seed < 5; ++seed) {
    const auto c = random_circuit(4, 30, 100 + seed);
    const auto ref = run(c);
    for (int scale : {3, 5}) {
      const auto f = fold(c, scale);
      EXPECT_EQ(f.size(), scale * c.size());
      EXPECT_GE(std::norm(ref.inner(run(f))), 1.0 - 1e-10);
    }
  }
  EXPECT_THROW(fold(Circuit(1), 2), Error);
  EXPECT_THROW(fold(Circuit(1), -1), Error);
}

TEST(LowerToNative, SameUnitary) {
  const auto c = random_circuit(4, 40, 21);
  const auto lowered = lower_to_native(c);
  for (const auto& g : lowered.gates()) {
    EXPECT_NE(g.kind, GateKind::PauliRotation);
    EXPECT_NE(g.kind, GateKind::ControlledPauli);
  }
  EXPECT_LT((circuit_unitary(lowered) - circuit_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MeasurementBasis, MapsPauliToZParity) {
  const auto state = run(random_circuit(3, 40, 31));
  for (const char* p : {"XII", "YZX", "IYY", "ZIZ"}) {
    const auto ps = PauliString::parse(p);
    const auto rotated = run(measurement_basis(ps), state);
    EXPECT_NEAR(2 * even_parity_probability(rotated, ps.support_mask()) - 1, expectation(state, ps), 1e-12);
  }
}

TEST(StateVector, ExtendedAddsHighQubits) {
  StateVector s(1);
  apply(s, Gate::x(0));
  const auto e = s.extended(2);
  EXPECT_EQ(e.nqubits(), 3);
  EXPECT_NEAR(std::abs(e[1] - 1.0), 0.0, 0.0);
}
