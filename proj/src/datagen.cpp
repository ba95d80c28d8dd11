#include "ulln/datagen.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ulln/errors.hpp"
#include "ulln/rng.hpp"

namespace ulln {

CovarianceKind parse_covariance_kind(std::string_view name) {
  if (name == "reciprocal") return CovarianceKind::reciprocal;
  if (name == "identity") return CovarianceKind::identity;
  if (name == "custom") return CovarianceKind::custom;
  throw std::invalid_argument("unknown covariance kind '" + std::string(name) + "'");
}

std::string_view to_string(CovarianceKind kind) {
  switch (kind) {
    case CovarianceKind::reciprocal: return "reciprocal";
    case CovarianceKind::identity: return "identity";
    case CovarianceKind::custom: return "custom";
  }
  return "unknown";
}

CovarianceSpec::CovarianceSpec(Vector eigenvalues, std::optional<Matrix> rotation)
    : eigenvalues_(std::move(eigenvalues)), rotation_(std::move(rotation)) {
  if (eigenvalues_.size() == 0) throw std::invalid_argument("covariance needs at least one eigenvalue");
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    if (!(eigenvalues_[i] >= 0.0) || !std::isfinite(eigenvalues_[i])) {
      throw std::invalid_argument("eigenvalue " + std::to_string(i) + " is negative or not finite");
    }
  }
  if (rotation_) {
    const Matrix& u = *rotation_;
    if (u.rows() != eigenvalues_.size() || u.cols() != eigenvalues_.size()) {
      throw std::invalid_argument("rotation must be p x p");
    }
    const Matrix defect = u.transpose() * u - Matrix::Identity(u.rows(), u.cols());
    if (defect.cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("rotation is not orthogonal");
  }
}

Vector CovarianceSpec::diagonal() const {
  if (!rotation_) return eigenvalues_;
  return rotation_->cwiseAbs2() * eigenvalues_;
}

Matrix CovarianceSpec::matrix() const {
  if (!rotation_) return eigenvalues_.asDiagonal();
  return (*rotation_) * eigenvalues_.asDiagonal() * rotation_->transpose();
}

Vector CovarianceSpec::transform(const Vector& z) const {
  Vector scaled = eigenvalues_.cwiseSqrt().cwiseProduct(z);
  if (!rotation_) return scaled;
  return (*rotation_) * scaled;
}

Vector CovarianceSpec::whiten_adjoint(const Vector& w) const {
  if (!rotation_) return eigenvalues_.cwiseSqrt().cwiseProduct(w);
  return eigenvalues_.cwiseSqrt().cwiseProduct(rotation_->transpose() * w);
}

CovarianceSpec make_covariance(CovarianceKind kind, std::size_t p, const std::optional<Vector>& eigenvalues) {
  if (p == 0) throw std::invalid_argument("dimension p must be positive");
  const auto size = static_cast<Eigen::Index>(p);
  switch (kind) {
    case CovarianceKind::reciprocal: {
      Vector values(size);
      for (Eigen::Index i = 0; i < size; ++i) values[i] = 1.0 / static_cast<double>(i + 1);
      return CovarianceSpec(std::move(values));
    }
    case CovarianceKind::identity:
      return CovarianceSpec(Vector::Ones(size));
    case CovarianceKind::custom:
      if (!eigenvalues) throw std::invalid_argument("custom covariance requires eigenvalues");
      if (eigenvalues->size() != size) {
        throw std::invalid_argument("custom covariance has " + std::to_string(eigenvalues->size()) +
                                    " eigenvalues, expected " + std::to_string(p));
      }
      return CovarianceSpec(*eigenvalues);
  }
  throw std::invalid_argument("unknown covariance kind");
}

void GenerativeConfig::validate() const {
  if (p == 0 || n == 0) throw std::invalid_argument("p and n must be positive");
  if (cov.dimension() != p) throw std::invalid_argument("covariance dimension does not match p");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  if (const auto* explicit_theta = std::get_if<Vector>(&theta_star)) {
    if (static_cast<std::size_t>(explicit_theta->size()) != p) {
      throw std::invalid_argument("theta_star dimension does not match p");
    }
  }
}

Vector sample_theta_star(std::size_t p, std::uint64_t seed) {
  if (p == 0) throw std::invalid_argument("dimension p must be positive");
  CounterRng rng(derive_seed(seed, "theta_star"));
  Vector v = rng.normal_vector(static_cast<Eigen::Index>(p));
  double norm = v.norm();
  // A zero draw has probability zero but would make normalization undefined.
  while (norm == 0.0) {
    v = rng.normal_vector(static_cast<Eigen::Index>(p));
    norm = v.norm();
  }
  return v / norm;
}

Vector resolve_theta_star(const GenerativeConfig& gen) {
  if (const auto* explicit_theta = std::get_if<Vector>(&gen.theta_star)) return *explicit_theta;
  return sample_theta_star(gen.p, gen.seed);
}

GeneratedData generate_dataset(const GenerativeConfig& gen) {
  gen.validate();
  Vector theta_star = resolve_theta_star(gen);
  const std::span<const double> truth(theta_star.data(), gen.p);

  const std::uint64_t design_key = derive_seed(gen.seed, "design");
  const std::uint64_t label_key = derive_seed(gen.seed, "labels");
  DesignMatrix inputs(static_cast<Eigen::Index>(gen.n), static_cast<Eigen::Index>(gen.p));
  std::vector<std::uint8_t> labels(gen.n);
  const Vector root = gen.cov.eigenvalues().cwiseSqrt();

  for (std::size_t i = 0; i < gen.n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    CounterRng rng(derive_seed(design_key, i));
    if (gen.cov.rotation()) {
      inputs.row(row) = gen.cov.transform(rng.normal_vector(static_cast<Eigen::Index>(gen.p))).transpose();
    } else {
      for (Eigen::Index j = 0; j < inputs.cols(); ++j) inputs(row, j) = root[j] * rng.normal();
    }
    const double score = pairwise_dot({inputs.data() + i * gen.p, gen.p}, truth);
    CounterRng coin(derive_seed(label_key, i));
    labels[i] = coin.uniform() < sigmoid(gen.beta * score) ? 1 : 0;
  }
  return {Dataset(std::move(inputs), std::move(labels)), std::move(theta_star)};
}

namespace {

constexpr std::array<char, 4> kMagic = {'U', 'L', 'L', 'N'};

template <typename T>
void put_le(std::ostream& out, T value) {
  using Bits = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  auto bits = std::bit_cast<Bits>(value);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t k = 0; k < sizeof(T); ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xFFu);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  using Bits = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw IoError("unexpected end of dataset file");
  Bits bits = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) bits |= static_cast<Bits>(bytes[k]) << (8 * k);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_dataset(const std::filesystem::path& path, const GeneratedData& generated) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const Dataset& data = generated.data;
  if (static_cast<std::size_t>(generated.theta_star.size()) != data.dimension()) {
    throw std::invalid_argument("theta_star dimension does not match dataset");
  }
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kDatasetFormatVersion);
  put_le<std::uint64_t>(out, data.size());
  put_le<std::uint64_t>(out, data.dimension());
  const DesignMatrix& x = data.inputs();
  for (Eigen::Index k = 0; k < x.size(); ++k) put_le<double>(out, x.data()[k]);
  out.write(reinterpret_cast<const char*>(data.labels().data()), static_cast<std::streamsize>(data.size()));
  for (Eigen::Index k = 0; k < generated.theta_star.size(); ++k) put_le<double>(out, generated.theta_star[k]);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

GeneratedData read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError("'" + path.string() + "' is not a ULLN dataset file");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kDatasetFormatVersion) {
    throw IoError("unsupported dataset format version " + std::to_string(version));
  }
  const auto n = get_le<std::uint64_t>(in);
  const auto p = get_le<std::uint64_t>(in);
  if (n == 0 || p == 0 || n > (1ULL << 40) / p) throw IoError("implausible dataset header");

  DesignMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = get_le<double>(in);
  std::vector<std::uint8_t> labels(n);
  in.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(n));
  if (!in) throw IoError("unexpected end of dataset file");
  Vector theta(static_cast<Eigen::Index>(p));
  for (Eigen::Index k = 0; k < theta.size(); ++k) theta[k] = get_le<double>(in);
  try {
    return {Dataset(std::move(x), std::move(labels)), std::move(theta)};
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("corrupt dataset file: ") + e.what());
  }
}

}  // namespace ulln
