#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ulln/bounds.hpp"
#include "ulln/datagen.hpp"
#include "ulln/errors.hpp"

namespace ulln {
namespace {

namespace fs = std::filesystem;

GenerativeConfig config(std::size_t p, std::size_t n, CovarianceKind kind, double beta, std::uint64_t seed) {
  GenerativeConfig gen;
  gen.p = p;
  gen.n = n;
  gen.cov = make_covariance(kind, p);
  gen.beta = beta;
  gen.seed = seed;
  return gen;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("ulln_test_" + name); }

TEST(MakeCovariance, ReciprocalSpectrum) {
  const CovarianceSpec cov = make_covariance(CovarianceKind::reciprocal, 3000);
  // Harmonic number H_3000 summed in long double.
  long double h = 0.0L;
  for (int i = 3000; i >= 1; --i) h += 1.0L / i;
  EXPECT_NEAR(cov.trace(), static_cast<double>(h), 1e-12);
  EXPECT_NEAR(cov.trace(), 8.5838, 5e-4);
  EXPECT_EQ(cov.spectral_norm(), 1.0);
  EXPECT_EQ(cov.eigenvalues()[1], 0.5);
}

TEST(MakeCovariance, Identity) {
  const CovarianceSpec cov = make_covariance(CovarianceKind::identity, 3000);
  EXPECT_EQ(cov.trace(), 3000.0);
  EXPECT_EQ(effective_rank(cov.trace(), cov.spectral_norm()), 3000.0);
}

TEST(MakeCovariance, RejectsBadCustomSpectrum) {
  EXPECT_THROW(make_covariance(CovarianceKind::custom, 2, Vector(Vector::Constant(1, 1.0))), std::invalid_argument);
  Vector bad(2);
  bad << 1.0, -0.5;
  EXPECT_THROW(make_covariance(CovarianceKind::custom, 2, bad), std::invalid_argument);
  EXPECT_THROW(make_covariance(CovarianceKind::custom, 2), std::invalid_argument);
}

TEST(CovarianceSpec, RotationValidation) {
  Matrix not_orthogonal(2, 2);
  not_orthogonal << 1.0, 0.1, 0.0, 1.0;
  EXPECT_THROW(CovarianceSpec(Vector::Ones(2), not_orthogonal), std::invalid_argument);
  EXPECT_THROW(CovarianceSpec(Vector::Ones(2), Matrix(Matrix::Identity(3, 3))), std::invalid_argument);
}

TEST(CovarianceSpec, TransformAndAdjointAgree) {
  const double c = std::cos(0.4), s = std::sin(0.4);
  Matrix u(2, 2);
  u << c, -s, s, c;
  Vector lambda(2);
  lambda << 2.0, 0.5;
  const CovarianceSpec cov(lambda, u);
  Vector z(2), w(2);
  z << 0.3, -1.7;
  w << 1.1, 0.9;
  EXPECT_NEAR(cov.transform(z).dot(w), z.dot(cov.whiten_adjoint(w)), 1e-15);
  const Matrix sigma = u * lambda.asDiagonal() * u.transpose();
  EXPECT_LE((cov.matrix() - sigma).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(cov.diagonal()[0], sigma(0, 0), 1e-15);
}

TEST(SampleThetaStar, UnitNormAndDeterministic) {
  for (std::size_t p : {1u, 2u, 7u, 3000u}) {
    const Vector a = sample_theta_star(p, 99);
    EXPECT_NEAR(a.norm(), 1.0, 1e-12);
    EXPECT_EQ(a, sample_theta_star(p, 99));
  }
  const double one = sample_theta_star(1, 5)[0];
  EXPECT_TRUE(one == 1.0 || one == -1.0);
}

TEST(GenerateDataset, SeedDeterminism) {
  const GenerativeConfig gen = config(5, 50, CovarianceKind::reciprocal, 3.0, 77);
  const GeneratedData a = generate_dataset(gen);
  const GeneratedData b = generate_dataset(gen);
  EXPECT_EQ(a.data.inputs(), b.data.inputs());
  EXPECT_EQ(a.data.labels(), b.data.labels());
  EXPECT_EQ(a.theta_star, b.theta_star);
}

TEST(GenerateDataset, RowsDependOnlyOnSeedAndIndex) {
  GenerativeConfig gen = config(4, 20, CovarianceKind::identity, 1.0, 5);
  const GeneratedData small = generate_dataset(gen);
  gen.n = 60;
  const GeneratedData large = generate_dataset(gen);
  EXPECT_EQ(small.data.inputs(), large.data.inputs().topRows(20));
}

TEST(GenerateDataset, BetaZeroGivesFairCoins) {
  const GeneratedData g = generate_dataset(config(3, 100000, CovarianceKind::identity, 0.0, 1));
  double mean = 0.0;
  for (auto y : g.data.labels()) mean += y;
  mean /= 100000.0;
  EXPECT_NEAR(mean, 0.5, 0.005);
}

TEST(GenerateDataset, IdentitySecondMoment) {
  const GeneratedData g = generate_dataset(config(2, 100000, CovarianceKind::identity, 1.0, 2));
  const Matrix m = g.data.inputs().transpose() * g.data.inputs() / 100000.0;
  EXPECT_LE((m - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(GenerateDataset, ReciprocalSecondCoordinateVariance) {
  const GeneratedData g = generate_dataset(config(3, 100000, CovarianceKind::reciprocal, 1.0, 3));
  EXPECT_NEAR(g.data.inputs().col(1).squaredNorm() / 100000.0, 0.5, 0.02);
}

TEST(GenerateDataset, SecondMomentWithRotation) {
  const double c = std::cos(1.1), s = std::sin(1.1);
  Matrix u = Matrix::Identity(3, 3);
  u.block(0, 0, 2, 2) << c, -s, s, c;
  Vector lambda(3);
  lambda << 3.0, 1.0, 0.25;
  GenerativeConfig gen = config(3, 200000, CovarianceKind::identity, 1.0, 4);
  gen.cov = CovarianceSpec(lambda, u);
  const GeneratedData g = generate_dataset(gen);
  const Matrix m = g.data.inputs().transpose() * g.data.inputs() / 200000.0;
  // Entry (i, j) has standard error sqrt((S_ii S_jj + S_ij^2)/n) <= 3 sqrt(2)/sqrt(n).
  EXPECT_LE((m - gen.cov.matrix()).cwiseAbs().maxCoeff(), 5.0 * 3.0 * std::sqrt(2.0 / 200000.0));
}

TEST(GenerateDataset, LabelLawTracksSigmoid) {
  GenerativeConfig gen = config(1, 200000, CovarianceKind::identity, 2.0, 6);
  gen.theta_star = Vector(Vector::Ones(1));
  const GeneratedData g = generate_dataset(gen);
  // Bins of width 0.2 centered at c; compare the empirical rate with the bin-averaged sigmoid.
  for (double c : {-1.0, -0.4, 0.0, 0.6, 1.2}) {
    double hits = 0.0, count = 0.0, expected = 0.0;
    for (std::size_t i = 0; i < g.data.size(); ++i) {
      const double x = g.data.inputs()(static_cast<Eigen::Index>(i), 0);
      if (std::abs(x - c) <= 0.1) {
        count += 1.0;
        hits += g.data.labels()[i];
        expected += sigmoid(2.0 * x);
      }
    }
    const double rate = expected / count;
    EXPECT_NEAR(hits / count, rate, 4.0 * std::sqrt(rate * (1.0 - rate) / count)) << c;
  }
}

TEST(GenerativeConfig, ValidationErrors) {
  GenerativeConfig gen = config(3, 10, CovarianceKind::identity, 1.0, 0);
  gen.theta_star = Vector(Vector::Ones(2));
  EXPECT_THROW(gen.validate(), std::invalid_argument);
  gen = config(3, 10, CovarianceKind::identity, std::nan(""), 0);
  EXPECT_THROW(gen.validate(), std::invalid_argument);
  gen = config(3, 10, CovarianceKind::identity, 1.0, 0);
  gen.cov = make_covariance(CovarianceKind::identity, 4);
  EXPECT_THROW(generate_dataset(gen), std::invalid_argument);
}

TEST(DatasetFile, RoundTripIsBitExact) {
  const GeneratedData g = generate_dataset(config(6, 33, CovarianceKind::reciprocal, 4.0, 12));
  const fs::path path = temp_file("roundtrip.bin");
  write_dataset(path, g);
  const GeneratedData back = read_dataset(path);
  EXPECT_EQ(back.data.inputs(), g.data.inputs());
  EXPECT_EQ(back.data.labels(), g.data.labels());
  EXPECT_EQ(back.theta_star, g.theta_star);
  EXPECT_EQ(fs::file_size(path), 4u + 4u + 8u + 8u + 33u * 6u * 8u + 33u + 6u * 8u);
  fs::remove(path);
}

TEST(DatasetFile, HeaderLayout) {
  const GeneratedData g = generate_dataset(config(2, 3, CovarianceKind::identity, 1.0, 1));
  const fs::path path = temp_file("header.bin");
  write_dataset(path, g);
  std::ifstream in(path, std::ios::binary);
  unsigned char head[24];
  in.read(reinterpret_cast<char*>(head), 24);
  EXPECT_EQ(std::string(reinterpret_cast<char*>(head), 4), "ULLN");
  EXPECT_EQ(head[4], 1);  // version, little-endian
  EXPECT_EQ(head[5] | head[6] | head[7], 0);
  EXPECT_EQ(head[8], 3);  // n
  EXPECT_EQ(head[16], 2);  // p
  fs::remove(path);
}

TEST(DatasetFile, ErrorsAreIoErrors) {
  EXPECT_THROW(read_dataset(temp_file("does_not_exist.bin")), IoError);
  const fs::path bad = temp_file("bad_magic.bin");
  {
    std::ofstream out(bad, std::ios::binary);
    out << "NOPE0000000000000000000000000000";
  }
  EXPECT_THROW(read_dataset(bad), IoError);

  const GeneratedData g = generate_dataset(config(2, 10, CovarianceKind::identity, 1.0, 1));
  const fs::path truncated = temp_file("truncated.bin");
  write_dataset(truncated, g);
  fs::resize_file(truncated, fs::file_size(truncated) - 5);
  EXPECT_THROW(read_dataset(truncated), IoError);
  EXPECT_THROW(write_dataset("/nonexistent_dir/x.bin", g), IoError);
  fs::remove(bad);
  fs::remove(truncated);
}

}  // namespace
}  // namespace ulln
