#include <gtest/gtest.h>

#include "qcm/pauli.hpp"

using namespace qcm;

TEST(PauliString, ParseRoundTripAndLetters) {
  const auto p = PauliString::parse("XIZY");
  EXPECT_EQ(p.nqubits(), 4);
  EXPECT_EQ(p.str(), "XIZY");
  EXPECT_EQ(p.letter(0), 'X');
  EXPECT_EQ(p.letter(3), 'Y');
  EXPECT_EQ(p.support(), (std::vector<int>{0, 2, 3}));
  EXPECT_EQ(p.y_count(), 1);
  EXPECT_THROW(PauliString::parse("XQ"), Error);
}

TEST(PauliString, ProductPhases) {
  const auto [ph, c] = multiply(PauliString::parse("X"), PauliString::parse("Y"));
  EXPECT_EQ(c.str(), "Z");
  EXPECT_NEAR(std::abs(ph - kI), 0.0, 1e-15);
  const auto [ph2, c2] = multiply(PauliString::parse("YZ"), PauliString::parse("YZ"));
  EXPECT_TRUE(c2.is_identity());
  EXPECT_NEAR(std::abs(ph2 - 1.0), 0.0, 1e-15);
}

TEST(PauliString, Commutation) {
  EXPECT_TRUE(PauliString::parse("XX").commutes_with(PauliString::parse("YY")));
  EXPECT_FALSE(PauliString::parse("XI").commutes_with(PauliString::parse("ZI")));
  EXPECT_TRUE(PauliString::parse("XZ").commutes_with(PauliString::parse("ZX")));
}

TEST(PauliString, DenseMatrixUsesQubitZeroAsLsb) {
  // "XI": X on qubit 0 flips bit 0.
  const auto m = dense_matrix(PauliString::parse("XI"));
  EXPECT_EQ(m(1, 0), cplx(1, 0));
  EXPECT_EQ(m(0, 1), cplx(1, 0));
  EXPECT_EQ(m(2, 0), cplx(0, 0));
  for (std::uint64_t b = 0; b < 4; ++b) {
    const auto p = PauliString::parse("ZY");
    const auto col = dense_matrix(p).col(b);
    const std::uint64_t target = b ^ p.x_mask();
    EXPECT_NEAR(std::abs(col(target) - pauli_phase(p, b)), 0.0, 1e-15);
  }
}

TEST(PauliHamiltonian, MergesAndDropsTinyTerms) {
  const PauliHamiltonian h(2, {{0.5, PauliString::parse("XX")},
                               {0.25, PauliString::parse("XX")},
                               {1e-14, PauliString::parse("ZZ")},
                               {-1.0, PauliString::parse("II")}});
  ASSERT_EQ(h.size(), 2u);
  EXPECT_DOUBLE_EQ(h.terms()[0].coefficient, 0.75);
  EXPECT_DOUBLE_EQ(h.constant(), -1.0);
  EXPECT_EQ(h.non_identity_terms().size(), 1u);
  const Eigen::MatrixXcd d = h.dense();
  EXPECT_NEAR((d - d.adjoint()).norm(), 0.0, 0.0);
}

TEST(PauliHamiltonian, TextListingRoundTrip) {
  const PauliHamiltonian h(3, {{0.1, PauliString::parse("XYZ")}, {-2.5, PauliString::parse("IIZ")}});
  const auto back = PauliHamiltonian::from_text(h.to_text());
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    EXPECT_EQ(back.terms()[k].string, h.terms()[k].string);
    EXPECT_EQ(back.terms()[k].coefficient, h.terms()[k].coefficient);
  }
  EXPECT_THROW(PauliHamiltonian::from_text("0.5 XX\n"), Error);
}

TEST(PauliSum, ProductMatchesDenseProduct) {
  PauliSum a(2), b(2);
  a.add(PauliString::parse("XI"), 0.5);
  a.add(PauliString::parse("YI"), cplx(0, 0.5));
  b.add(PauliString::parse("XZ"), 1.0);
  b.add(PauliString::parse("II"), cplx(0.3, -0.1));
  const Eigen::MatrixXcd expect = a.dense() * b.dense();
  EXPECT_NEAR(((a * b).dense() - expect).norm(), 0.0, 1e-14);
}
