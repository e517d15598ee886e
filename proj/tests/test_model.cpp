#include <gtest/gtest.h>

#include <cmath>

#include "admqpt/model.hpp"
#include "oracles.hpp"

using namespace admqpt;

namespace {

ModelParams params(double omega0, double omega, double lambda, int M) {
  ModelParams p;
  p.omega0 = omega0;
  p.omega = omega;
  p.lambda = lambda;
  p.M = M;
  return p;
}

}  // namespace

TEST(BasisDimension, HalfMPlusOne) {
  EXPECT_EQ(basis_dimension(700), 351u);
  EXPECT_EQ(basis_dimension(2), 2u);
  EXPECT_EQ(basis_dimension(50), 26u);
}

TEST(BasisDimension, RejectsOddOrNonPositive) {
  EXPECT_THROW(basis_dimension(3), InvalidParameter);
  EXPECT_THROW(basis_dimension(0), InvalidParameter);
  EXPECT_THROW(basis_dimension(-4), InvalidParameter);
  EXPECT_THROW(basis_dimension(kMaxSystemSize + 2), InvalidParameter);
}

TEST(ModelParams, Validation) {
  EXPECT_NO_THROW(validate(params(2, 1, 0, 2)));
  EXPECT_THROW(validate(params(1, 1, 0.5, 4)), InvalidParameter);
  EXPECT_THROW(validate(params(1, 2, 0.5, 4)), InvalidParameter);
  EXPECT_THROW(validate(params(2, 1, -0.1, 4)), InvalidParameter);
  EXPECT_THROW(validate(params(2, 1, NAN, 4)), InvalidParameter);
  EXPECT_THROW(build_hamiltonian(params(2, 1, 0.5, 5)), InvalidParameter);
}

TEST(BuildHamiltonian, SmallestSystemDecoupled) {
  const auto h = build_hamiltonian(params(2, 1, 0, 2));
  ASSERT_EQ(h.dim(), 2u);
  EXPECT_EQ(h.diag[0], 2.0);
  EXPECT_EQ(h.diag[1], 1.0);
  ASSERT_EQ(h.offdiag.size(), 1u);
  EXPECT_EQ(h.offdiag[0], 0.0);
}

TEST(BuildHamiltonian, SmallestSystemCoupled) {
  const auto h = build_hamiltonian(params(2, 1, 1, 2));
  // (1/sqrt(4)) * sqrt(2*1*1)
  EXPECT_NEAR(h.offdiag[0], std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(h.offdiag[0], 0.70711, 1e-5);
}

TEST(BuildHamiltonian, FourAtomsAgainstOperatorAction) {
  const auto h = build_hamiltonian(params(2, 1, 0.5, 4));
  // diag[n_b] = (omega0/2)(M - 2 n_b) + omega n_b
  EXPECT_DOUBLE_EQ(h.diag[0], 4.0);
  EXPECT_DOUBLE_EQ(h.diag[1], 3.0);
  EXPECT_DOUBLE_EQ(h.diag[2], 2.0);
  const auto dense = oracle::fock_hamiltonian(2, 1, 0.5, 4);
  EXPECT_NEAR(h.offdiag[0], dense[1][0], 1e-15);
  EXPECT_NEAR(h.offdiag[1], dense[2][1], 1e-15);
  EXPECT_NEAR(h.offdiag[0], 0.6123724356957945, 1e-15);
  EXPECT_NEAR(h.offdiag[1], 0.35355339059327373, 1e-15);
}

TEST(BuildHamiltonian, MatchesOperatorActionAndIsHermitian) {
  for (int M = 2; M <= 40; M += 2) {
    for (double lambda : {0.0, 0.37, 1.0, 2.5}) {
      const auto h = build_hamiltonian(params(2.3, 0.7, lambda, M));
      const auto dense = oracle::fock_hamiltonian(2.3, 0.7, lambda, M);
      const std::size_t n = h.dim();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double expected = 0.0;
          if (i == j) expected = h.diag[i];
          if (j == i + 1) expected = h.offdiag[i];
          if (i == j + 1) expected = h.offdiag[j];
          EXPECT_NEAR(dense[i][j], expected, 1e-12 * (1.0 + std::abs(expected)))
              << "M=" << M << " lambda=" << lambda << " (" << i << "," << j << ")";
          EXPECT_NEAR(dense[i][j], dense[j][i], 1e-12 * (1.0 + std::abs(expected)));
        }
      }
    }
  }
}

TEST(BuildHamiltonian, RaisingAndLoweringRadicandsAgreeExactly) {
  // <n_b+1| b^+ a a |n_b> under-root product against <n_b| b a^+ a^+ |n_b+1>,
  // both in integers.
  for (long long M = 2; M <= 40; M += 2) {
    for (long long nb = 0; nb < M / 2; ++nb) {
      const long long lowering = (M - 2 * nb) * (M - 2 * nb - 1) * (nb + 1);
      const long long np = nb + 1;
      const long long raising = (M - 2 * np + 1) * (M - 2 * np + 2) * np;
      EXPECT_EQ(lowering, raising) << "M=" << M << " n_b=" << nb;
      EXPECT_EQ(static_cast<long long>(coupling_radicand(M, nb)), lowering);
    }
  }
}

TEST(BuildHamiltonian, StructuralInvariants) {
  for (int M : {2, 10, 50, 700}) {
    const auto h0 = build_hamiltonian(params(2, 1, 0, M));
    for (double e : h0.offdiag) EXPECT_EQ(e, 0.0);
    for (std::size_t i = 1; i < h0.dim(); ++i) EXPECT_LT(h0.diag[i], h0.diag[i - 1]);
    const auto h = build_hamiltonian(params(2, 1, 0.01, M));
    for (double e : h.offdiag) EXPECT_GT(e, 0.0);
    EXPECT_EQ(h.dim(), basis_dimension(M));
    EXPECT_EQ(h.offdiag.size() + 1, h.dim());
  }
}

TEST(BuildHamiltonian, RadicandFitsAtLargestSize) {
  const long long M = kMaxSystemSize;
  std::uint64_t largest = 0;
  for (long long k = 0; k < M / 2; k += 997) largest = std::max(largest, coupling_radicand(M, k));
  EXPECT_GT(largest, 0u);
  EXPECT_LT(static_cast<double>(largest), 1.8e19);
}
