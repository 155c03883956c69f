#include "admd/errors.hpp"
#include "admd/linalg.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace admd;

TEST(SnapshotMatrix, ValidatesShapeStepAndEntries) {
  EXPECT_THROW(SnapshotMatrix(Matrix::Ones(3, 1), 0.1), TooFewSnapshotsError);
  EXPECT_THROW(SnapshotMatrix(Matrix(0, 4), 0.1), DimensionError);
  EXPECT_THROW(SnapshotMatrix(Matrix::Ones(3, 4), 0.0), InputDomainError);
  EXPECT_THROW(SnapshotMatrix(Matrix::Ones(3, 4), -1.0), InputDomainError);
  EXPECT_THROW(SnapshotMatrix(Matrix::Ones(3, 4), std::numeric_limits<double>::infinity()),
               InputDomainError);
  Matrix bad = Matrix::Ones(3, 4);
  bad(1, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SnapshotMatrix(bad, 0.1), InputDomainError);
}

TEST(SnapshotMatrix, TimeOfColumnIsIndexTimesStep) {
  const SnapshotMatrix x(Matrix::Ones(2, 5), 0.25);
  EXPECT_EQ(x.rows(), 2);
  EXPECT_EQ(x.cols(), 5);
  EXPECT_DOUBLE_EQ(x.time(0), 0.0);
  EXPECT_DOUBLE_EQ(x.time(4), 1.0);
}

TEST(ThinSvd, ReconstructsAndIsOrthonormal) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 3 + static_cast<Index>(gen() % 10), n = 2 + static_cast<Index>(gen() % 10);
    const Matrix x = Matrix::Random(m, n);
    const SvdFactors f = thin_svd(x);
    EXPECT_EQ(f.rank, std::min(m, n));
    const Matrix back = f.U * f.sigma.asDiagonal() * f.V.transpose();
    EXPECT_LT((back - x).norm(), 1e-12 * x.norm());
    EXPECT_LT((f.U.transpose() * f.U - Matrix::Identity(f.rank, f.rank)).norm(), 1e-12);
    EXPECT_LT((f.V.transpose() * f.V - Matrix::Identity(f.rank, f.rank)).norm(), 1e-12);
    for (Index i = 1; i < f.sigma.size(); ++i) EXPECT_GE(f.sigma(i - 1), f.sigma(i));
  }
}

TEST(ThinSvd, TruncationKeepsLeadingTriplets) {
  const SvdFactors f = thin_svd(Matrix::Random(6, 4));
  const SvdFactors t = f.truncated(2);
  EXPECT_EQ(t.rank, 2);
  EXPECT_EQ(t.U.cols(), 2);
  EXPECT_EQ(t.V.cols(), 2);
  EXPECT_DOUBLE_EQ(t.sigma(1), f.sigma(1));
  EXPECT_THROW(f.truncated(5), DimensionError);
}

TEST(NumericRank, MatchesConstruction) {
  std::mt19937_64 gen(11);
  for (Index r = 0; r <= 5; ++r) {
    const Matrix x = Matrix::Random(12, r) * Matrix::Random(r, 9);
    EXPECT_EQ(numeric_rank(x), r) << "constructed rank " << r;
  }
  EXPECT_EQ(numeric_rank(Matrix::Zero(4, 4)), 0);
  EXPECT_THROW(numeric_rank(Matrix::Ones(2, 2), -1.0), InputDomainError);
}

TEST(NumericRank, CountAboveIsStrictRelativeCut) {
  Vector s(4);
  s << 10.0, 1.0, 1e-3, 1e-12;
  EXPECT_EQ(count_above(s, 1e-5), 3);
  EXPECT_EQ(count_above(s, 1e-4), 2);  // cut 1e-3 is not exceeded by 1e-3
  EXPECT_EQ(count_above(s, 1e-3), 2);  // 1e-3 * 10 = 1e-2 > 1e-3
  EXPECT_EQ(count_above(s, 0.1), 1);   // cut 1.0 is not exceeded by 1.0
  EXPECT_EQ(count_above(Vector(), 0.1), 0);
}
