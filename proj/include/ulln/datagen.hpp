#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <variant>

#include "ulln/model.hpp"

namespace ulln {

enum class CovarianceKind { reciprocal, identity, custom };

CovarianceKind parse_covariance_kind(std::string_view name);
std::string_view to_string(CovarianceKind kind);

/// Sigma = U diag(eigenvalues) U^T. The rotation defaults to the identity.
class CovarianceSpec {
 public:
  /// Throws std::invalid_argument on negative eigenvalues, a rotation of the
  /// wrong shape, or a rotation with |U^T U - I|_max > 1e-10.
  explicit CovarianceSpec(Vector eigenvalues, std::optional<Matrix> rotation = std::nullopt);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const std::optional<Matrix>& rotation() const noexcept { return rotation_; }

  double trace() const noexcept { return eigenvalues_.sum(); }
  double spectral_norm() const noexcept { return eigenvalues_.size() ? eigenvalues_.maxCoeff() : 0.0; }

  /// Diagonal entries Sigma_ii.
  Vector diagonal() const;
  /// Sigma as a dense matrix.
  Matrix matrix() const;
  /// U Lambda^{1/2} z.
  Vector transform(const Vector& z) const;
  /// Lambda^{1/2} U^T w.
  Vector whiten_adjoint(const Vector& w) const;

 private:
  Vector eigenvalues_;
  std::optional<Matrix> rotation_;
};

/// reciprocal: lambda_i = 1/i; identity: lambda_i = 1; custom: the given eigenvalues.
CovarianceSpec make_covariance(CovarianceKind kind, std::size_t p,
                               const std::optional<Vector>& eigenvalues = std::nullopt);

/// Directive: draw theta* uniformly from the unit sphere using the config seed.
struct UniformSphere {};

/// Anisotropic Gaussian logistic model:
/// X = U Lambda^{1/2} Z, Y | X ~ Bernoulli(sigmoid(beta <X, theta*>)).
struct GenerativeConfig {
  std::size_t p = 1;
  std::size_t n = 1;
  CovarianceSpec cov{Vector::Ones(1)};
  double beta = 1.0;
  std::variant<Vector, UniformSphere> theta_star = UniformSphere{};
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on inconsistent dimensions or a non-finite beta.
  void validate() const;
};

/// Standard Gaussian vector normalized to unit length; deterministic in seed.
Vector sample_theta_star(std::size_t p, std::uint64_t seed);

/// The explicit theta* of the config, or the one its seed draws.
Vector resolve_theta_star(const GenerativeConfig& gen);

struct GeneratedData {
  Dataset data;
  Vector theta_star;
};

/// Draws n examples. Row i depends only on (seed, i).
GeneratedData generate_dataset(const GenerativeConfig& gen);

/// Flat little-endian file: "ULLN", u32 version, u64 n, u64 p, f64 X (row-major),
/// u8 Y, f64 theta*. Throws IoError on failure.
void write_dataset(const std::filesystem::path& path, const GeneratedData& generated);
GeneratedData read_dataset(const std::filesystem::path& path);

inline constexpr std::uint32_t kDatasetFormatVersion = 1;

}  // namespace ulln
