#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bcp {

using Vec2 = std::array<double, 2>;
using Count = std::int64_t;

/// Row-major 2x2 matrix.
struct Mat2 {
  std::array<double, 4> v{};

  double& operator()(int i, int j) { return v[static_cast<std::size_t>(2 * i + j)]; }
  double operator()(int i, int j) const { return v[static_cast<std::size_t>(2 * i + j)]; }

  static Mat2 diag(double d0, double d1) { return Mat2{{d0, 0.0, 0.0, d1}}; }
  bool is_diagonal() const { return v[1] == 0.0 && v[2] == 0.0; }
  /// Induced 1-norm: maximum absolute column sum.
  double norm1() const;
};

/// BCP-INGARCH(1,1) parameters: lambda_t = omega + A lambda_{t-1} + B y_{t-1}.
/// A may be full for simulation; estimation requires it diagonal.
struct ModelParams {
  Vec2 omega{1.0, 1.0};
  Mat2 a;
  Mat2 b;
  bool b_diagonal = false;
  double phi = 0.0;

  /// Throws DomainError on non-positive omega, negative entries, non-finite values,
  /// or nonzero off-diagonal B when b_diagonal is set.
  void validate() const;
};

/// Observed bivariate counts, t = 1..n.
struct SeriesPair {
  std::vector<Count> y1;
  std::vector<Count> y2;
  std::vector<std::string> labels;  // optional time labels, empty or size n

  std::size_t size() const { return y1.size(); }
  /// Throws DataError on unequal lengths, n < 2, negative counts, or mismatched labels.
  void validate() const;
  /// Prefix of length len (labels included when present).
  SeriesPair prefix(std::size_t len) const;
};

struct LambdaPath {
  std::vector<double> lam1;
  std::vector<double> lam2;

  std::size_t size() const { return lam1.size(); }
};

Vec2 lambda_update(const Vec2& prev_lambda, Count prev_y1, Count prev_y2, const ModelParams& p);

struct StationarityCheck {
  bool satisfied = false;
  double margin = 0.0;  // 1 - (||A||_1 + ||B||_1)
};

StationarityCheck stationarity_check(const ModelParams& p);

/// (I - A - B)^{-1} omega. Throws NumericalError("nonstationary mean ...") when
/// the spectral radius of A + B is not below one.
Vec2 unconditional_mean(const ModelParams& p);

struct Simulation {
  SeriesPair series;
  LambdaPath lambda;
  std::vector<std::string> warnings;
};

constexpr int kDefaultBurnIn = 300;

/// Simulate n observations after discarding burn_in. lambda_init defaults to the
/// stationary mean. Deterministic given seed.
Simulation simulate(const ModelParams& p, std::size_t n, std::size_t burn_in,
                    std::optional<Vec2> lambda_init, std::uint64_t seed);

}  // namespace bcp
