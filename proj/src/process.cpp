#include "bcp/process.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcp/bcp_dist.hpp"
#include "bcp/error.hpp"
#include "bcp/rng.hpp"

namespace bcp {

double Mat2::norm1() const {
  return std::max(std::fabs(v[0]) + std::fabs(v[2]), std::fabs(v[1]) + std::fabs(v[3]));
}

void ModelParams::validate() const {
  std::ostringstream msg;
  for (int j = 0; j < 2; ++j) {
    if (!(omega[j] > 0.0) || !std::isfinite(omega[j])) msg << "omega" << j + 1 << "=" << omega[j] << " must be positive; ";
  }
  for (int i = 0; i < 4; ++i) {
    if (!(a.v[i] >= 0.0) || !std::isfinite(a.v[i])) msg << "A entry " << i << "=" << a.v[i] << " must be >= 0; ";
    if (!(b.v[i] >= 0.0) || !std::isfinite(b.v[i])) msg << "B entry " << i << "=" << b.v[i] << " must be >= 0; ";
  }
  if (b_diagonal && !b.is_diagonal()) msg << "b_diagonal set but B has off-diagonal entries; ";
  if (!std::isfinite(phi)) msg << "phi must be finite; ";
  const std::string problems = msg.str();
  if (!problems.empty()) throw DomainError("invalid model parameters: " + problems);
}

void SeriesPair::validate() const {
  if (y1.size() != y2.size()) {
    std::ostringstream msg;
    msg << "series lengths differ: " << y1.size() << " vs " << y2.size();
    throw DataError(msg.str());
  }
  if (y1.size() < 2) throw DataError("series needs at least 2 observations");
  if (!labels.empty() && labels.size() != y1.size()) throw DataError("label count differs from series length");
  for (std::size_t t = 0; t < y1.size(); ++t) {
    if (y1[t] < 0 || y2[t] < 0) {
      std::ostringstream msg;
      msg << "negative count at index " << t;
      throw DataError(msg.str());
    }
  }
}

SeriesPair SeriesPair::prefix(std::size_t len) const {
  SeriesPair out;
  out.y1.assign(y1.begin(), y1.begin() + static_cast<std::ptrdiff_t>(len));
  out.y2.assign(y2.begin(), y2.begin() + static_cast<std::ptrdiff_t>(len));
  if (!labels.empty()) out.labels.assign(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(len));
  return out;
}

Vec2 lambda_update(const Vec2& prev_lambda, Count prev_y1, Count prev_y2, const ModelParams& p) {
  const double y1 = static_cast<double>(prev_y1);
  const double y2 = static_cast<double>(prev_y2);
  return {p.omega[0] + p.a(0, 0) * prev_lambda[0] + p.a(0, 1) * prev_lambda[1] + p.b(0, 0) * y1 + p.b(0, 1) * y2,
          p.omega[1] + p.a(1, 0) * prev_lambda[0] + p.a(1, 1) * prev_lambda[1] + p.b(1, 0) * y1 + p.b(1, 1) * y2};
}

StationarityCheck stationarity_check(const ModelParams& p) {
  const double total = p.a.norm1() + p.b.norm1();
  const double margin = 1.0 - total;
  return {margin > 0.0, margin};
}

Vec2 unconditional_mean(const ModelParams& p) {
  Mat2 c;
  for (int i = 0; i < 4; ++i) c.v[i] = p.a.v[i] + p.b.v[i];
  bool stable = c.norm1() < 1.0;
  if (!stable) {
    // eigenvalues of a 2x2 matrix from trace and determinant
    const double tr = c(0, 0) + c(1, 1);
    const double det = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
    const double disc = tr * tr / 4.0 - det;
    double rho;
    if (disc >= 0.0) {
      rho = std::max(std::fabs(tr / 2.0 + std::sqrt(disc)), std::fabs(tr / 2.0 - std::sqrt(disc)));
    } else {
      rho = std::sqrt(det);  // complex pair: |eig|^2 = det
    }
    stable = rho < 1.0;
  }
  const double m00 = 1.0 - c(0, 0);
  const double m01 = -c(0, 1);
  const double m10 = -c(1, 0);
  const double m11 = 1.0 - c(1, 1);
  const double det = m00 * m11 - m01 * m10;
  if (!stable || std::fabs(det) < 1e-14) {
    std::ostringstream msg;
    msg << "nonstationary mean: spectral radius of A+B is not below 1 (det(I-A-B)=" << det << ")";
    throw NumericalError(msg.str());
  }
  return {(m11 * p.omega[0] - m01 * p.omega[1]) / det, (-m10 * p.omega[0] + m00 * p.omega[1]) / det};
}

Simulation simulate(const ModelParams& p, std::size_t n, std::size_t burn_in, std::optional<Vec2> lambda_init,
                    std::uint64_t seed) {
  p.validate();
  if (n == 0) throw DomainError("simulate: n must be positive");
  Simulation out;
  const auto check = stationarity_check(p);
  if (!check.satisfied) {
    std::ostringstream msg;
    msg << "stationarity condition ||A||_1 + ||B||_1 < 1 violated (margin " << check.margin << ")";
    out.warnings.push_back(msg.str());
  }
  Vec2 lambda = lambda_init ? *lambda_init : unconditional_mean(p);
  if (!(lambda[0] > 0.0) || !(lambda[1] > 0.0)) throw DomainError("simulate: lambda_init must be positive");

  Rng rng(seed);
  out.series.y1.reserve(n);
  out.series.y2.reserve(n);
  out.lambda.lam1.reserve(n);
  out.lambda.lam2.reserve(n);
  const std::size_t total = n + burn_in;
  for (std::size_t t = 0; t < total; ++t) {
    const auto [z1, z2] = sample({lambda[0], lambda[1], p.phi}, rng);
    if (t >= burn_in) {
      out.series.y1.push_back(z1);
      out.series.y2.push_back(z2);
      out.lambda.lam1.push_back(lambda[0]);
      out.lambda.lam2.push_back(lambda[1]);
    }
    lambda = lambda_update(lambda, z1, z2, p);
  }
  return out;
}

}  // namespace bcp
