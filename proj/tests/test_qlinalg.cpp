#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vicsim/errors.hpp"
#include "vicsim/qlinalg.hpp"

namespace vicsim {
namespace {

using testing::random_density;
using testing::random_hermitian;
using testing::random_matrix;
using testing::random_vector;

TEST(TensorProduct, IdentityTimesIdentity) {
  EXPECT_EQ(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(TensorProduct, DiagonalProjectors) {
  const auto r = tensor_product(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0}));
  EXPECT_EQ(r, ComplexMatrix::diagonal({0.0, 1.0, 0.0, 0.0}));
}

TEST(TensorProduct, MixedProductWithVectors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_matrix(3, 3, rng);
    const auto b = random_matrix(3, 3, rng);
    const auto v = random_vector(3, rng);
    const auto w = random_vector(3, rng);
    const auto lhs = tensor_product(a, b) * std::span<const Complex>(tensor_product(v, w));
    const auto rhs = tensor_product(a * std::span<const Complex>(v), b * std::span<const Complex>(w));
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12);
  }
}

TEST(TensorProduct, AssociativeAndTraceMultiplicative) {
  std::mt19937_64 rng(12);
  const auto a = random_matrix(2, 2, rng);
  const auto b = random_matrix(3, 3, rng);
  const auto c = random_matrix(2, 2, rng);
  EXPECT_LE(max_abs_diff(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c))), 1e-14);
  EXPECT_LE(std::abs(tensor_product(a, b).trace() - a.trace() * b.trace()), 1e-12);
}

TEST(TensorProduct, RejectsEmpty) {
  EXPECT_THROW(tensor_product(ComplexMatrix{}, ComplexMatrix::identity(2)), InvalidArgument);
}

TEST(HermitianEig, DiagonalSorted) {
  const auto s = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
  ASSERT_EQ(s.eigenvalues.size(), 3u);
  EXPECT_DOUBLE_EQ(s.eigenvalues[0], 1.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues[1], 2.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues[2], 3.0);
}

TEST(HermitianEig, PauliX) {
  const auto s = hermitian_eig(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-15);
}

TEST(HermitianEig, RejectsNonHermitian) {
  EXPECT_THROW(hermitian_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitian);
}

class RandomHermitian : public ::testing::TestWithParam<int> {};

TEST_P(RandomHermitian, SpectrumContract) {
  std::mt19937_64 rng(100 + GetParam());
  for (std::size_t n : {2u, 3u, 4u, 9u}) {
    const auto h = random_hermitian(n, rng);
    const auto s = hermitian_eig(h);
    const double norm = frobenius_norm(h);

    double sum = 0.0;
    for (double l : s.eigenvalues) sum += l;
    EXPECT_NEAR(sum, h.trace().real(), 1e-12 * std::max(1.0, norm));
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));

    const auto& v = s.eigenvectors;
    EXPECT_LE(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(n)), 1e-10);
    for (std::size_t k = 0; k < n; ++k) {
      ComplexVector col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
      const auto hv = h * std::span<const Complex>(col);
      double resid = 0.0;
      for (std::size_t i = 0; i < n; ++i) resid += std::norm(hv[i] - s.eigenvalues[k] * col[i]);
      EXPECT_LE(std::sqrt(resid), 1e-10 * norm);
    }
    std::vector<Complex> lam(s.eigenvalues.begin(), s.eigenvalues.end());
    EXPECT_LE(max_abs_diff(v * ComplexMatrix::diagonal(lam) * v.adjoint(), h), 1e-10 * norm);

    // Independent LAPACK-style solver.
    Eigen::MatrixXcd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(i, j) = h(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(e);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(s.eigenvalues[k], ref.eigenvalues()(k), 1e-11 * norm);

    // Deterministic on repeated calls.
    const auto again = hermitian_eig(h);
    EXPECT_EQ(again.eigenvalues, s.eigenvalues);
    EXPECT_EQ(again.eigenvectors, s.eigenvectors);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomHermitian, ::testing::Range(0, 20));

TEST(HermitianEig, DegenerateSpectrum) {
  std::mt19937_64 rng(5);
  const auto g = random_matrix(4, 4, rng);
  const auto u = hermitian_eig(g + g.adjoint()).eigenvectors;
  const auto h = u * ComplexMatrix::diagonal({1.0, 1.0, 2.0, 2.0}) * u.adjoint();
  const auto s = hermitian_eig(h);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[2], 2.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[3], 2.0, 1e-12);
}

TEST(PsdSqrt, Diagonal) {
  const auto r = psd_sqrt(ComplexMatrix::diagonal({4.0, 9.0}));
  EXPECT_LE(max_abs_diff(r, ComplexMatrix::diagonal({2.0, 3.0})), 1e-15);
}

TEST(PsdSqrt, Zero) {
  EXPECT_EQ(psd_sqrt(ComplexMatrix::zeros(3, 3)), ComplexMatrix::zeros(3, 3));
}

TEST(PsdSqrt, RandomPsdSquaresBackAndCommutes) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = random_matrix(4, 4, rng);
    const auto m = b.adjoint() * b;
    const auto r = psd_sqrt(m);
    EXPECT_LE(max_abs_diff(r * r, m), 1e-9);
    EXPECT_LE(hermiticity_defect(r), 1e-12);
    EXPECT_LE(frobenius_norm(r * m - m * r), 1e-9 * frobenius_norm(m));
  }
}

TEST(PsdSqrt, ClipsRoundoffButRejectsNegativity) {
  EXPECT_NO_THROW(psd_sqrt(ComplexMatrix::diagonal({1.0, -1e-12})));
  EXPECT_EQ(psd_sqrt(ComplexMatrix::diagonal({1.0, -1e-12}))(1, 1), Complex(0.0));
  EXPECT_THROW(psd_sqrt(ComplexMatrix::diagonal({1.0, -1e-6})), NotPSD);
}

TEST(Expm, ZeroIsIdentity) { EXPECT_EQ(expm(ComplexMatrix::zeros(5, 5)), ComplexMatrix::identity(5)); }

TEST(Expm, Diagonal) {
  const auto r = expm(ComplexMatrix::diagonal({0.3, -2.0}));
  EXPECT_NEAR(r(0, 0).real(), std::exp(0.3), 1e-15 * std::exp(0.3));
  EXPECT_NEAR(r(1, 1).real(), std::exp(-2.0), 1e-15);
  EXPECT_EQ(r(0, 1), Complex(0.0));
}

TEST(Expm, LargeNormUsesSquaring) {
  const auto r = expm(ComplexMatrix::diagonal({Complex(-40.0, 3.0), Complex(5.0, 0.0)}));
  EXPECT_NEAR(std::abs(r(0, 0) - std::exp(Complex(-40.0, 3.0))), 0.0, 1e-12 * std::exp(-40.0));
  EXPECT_NEAR(r(1, 1).real(), std::exp(5.0), 1e-12 * std::exp(5.0));
}

TEST(Expm, MatchesRk4OnRandomGenerator) {
  std::mt19937_64 rng(31);
  const auto l = random_matrix(9, 9, rng);
  const auto prop = expm(l);
  for (std::size_t c = 0; c < 9; ++c) {
    ComplexVector e(9);
    e[c] = 1.0;
    const auto ref = testing::rk4_integrate(l, e, 1.0, 20000);
    for (std::size_t r = 0; r < 9; ++r) EXPECT_LE(std::abs(prop(r, c) - ref[r]), 1e-8);
  }
}

TEST(Expm, InverseProperty) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_matrix(6, 6, rng);
    m *= Complex(10.0 / frobenius_norm(m));
    EXPECT_LE(max_abs_diff(expm(m) * expm(m * Complex(-1.0)), ComplexMatrix::identity(6)), 1e-10);
  }
}

TEST(Expm, RejectsOversizeAndNonFinite) {
  EXPECT_THROW(expm(ComplexMatrix::zeros(82, 82)), InvalidArgument);
  EXPECT_THROW(expm(ComplexMatrix::diagonal({std::nan("")})), InvalidArgument);
}

TEST(ComplexMatrix, VecRoundTripIsRowMajor) {
  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  const auto v = m.vec();
  EXPECT_EQ(v[1], Complex(2.0));
  EXPECT_EQ(ComplexMatrix::unvec(v, 2, 2), m);
}

TEST(ComplexMatrix, ShapeErrors) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), InvalidArgument);
  EXPECT_THROW(ComplexMatrix::identity(2) * ComplexMatrix::identity(3), InvalidArgument);
}

TEST(RandomDensity, IsState) {
  std::mt19937_64 rng(3);
  const auto rho = random_density(4, rng);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
  EXPECT_GE(hermitian_eig(rho).eigenvalues.front(), 0.0);
}

}  // namespace
}  // namespace vicsim
