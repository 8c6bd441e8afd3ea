#include "bcp/likelihood.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "bcp/error.hpp"

namespace bcp {

namespace {

constexpr double kMaxExponent = 700.0;

// Slots of the lambda-derivative state for each component j:
// 0 -> alpha_j, 1 -> beta_j1, 2 -> beta_j2, 3 -> omega_j.
struct ParamSlot {
  int component;  // 0, 1, or 2 for phi
  int slot;
};

ParamSlot slot_of(Param p) {
  switch (p) {
    case Param::alpha1: return {0, 0};
    case Param::beta11: return {0, 1};
    case Param::beta12: return {0, 2};
    case Param::omega1: return {0, 3};
    case Param::alpha2: return {1, 0};
    case Param::beta21: return {1, 1};
    case Param::beta22: return {1, 2};
    case Param::omega2: return {1, 3};
    case Param::phi: return {2, 0};
  }
  return {2, 0};
}

// Runs the filter, likelihood terms, and (optionally) score contributions.
// on_term(t, S1, S2, S3, d1, d2) is called for each t >= 1 when scores are wanted.
template <bool WithScore, class OnTerm>
LikelihoodEval run_filter(const ModelParams& p, const SeriesPair& s, const Vec2& init, OnTerm&& on_term) {
  if (!p.a.is_diagonal()) throw DomainError("likelihood requires a diagonal A matrix");
  const std::size_t n = s.size();
  if (n < 2 || s.y2.size() != n) throw DataError("likelihood needs two equal-length series with n >= 2");

  const double alpha[2] = {p.a(0, 0), p.a(1, 1)};
  const double ep = std::expm1(p.phi);
  const double e_phi = ep + 1.0;

  LikelihoodEval out;
  double lam1 = init[0];
  double lam2 = init[1];
  std::array<double, 4> d1{};
  std::array<double, 4> d2{};
  double total = 0.0;

  for (std::size_t t = 1; t < n; ++t) {
    const double py1 = static_cast<double>(s.y1[t - 1]);
    const double py2 = static_cast<double>(s.y2[t - 1]);
    if constexpr (WithScore) {
      d1 = {lam1 + alpha[0] * d1[0], py1 + alpha[0] * d1[1], py2 + alpha[0] * d1[2], 1.0 + alpha[0] * d1[3]};
      d2 = {lam2 + alpha[1] * d2[0], py1 + alpha[1] * d2[1], py2 + alpha[1] * d2[2], 1.0 + alpha[1] * d2[3]};
    }
    const double next1 = p.omega[0] + alpha[0] * lam1 + p.b(0, 0) * py1 + p.b(0, 1) * py2;
    const double next2 = p.omega[1] + alpha[1] * lam2 + p.b(1, 0) * py1 + p.b(1, 1) * py2;
    lam1 = next1;
    lam2 = next2;

    const double y1 = static_cast<double>(s.y1[t]);
    const double y2 = static_cast<double>(s.y2[t]);
    const double expo = -lam1 * ep + p.phi * y1;
    if (expo > kMaxExponent || !(lam1 > 0.0) || !(lam2 > 0.0)) {
      out.loglik = -std::numeric_limits<double>::infinity();
      out.bad_index = t;
      return out;
    }
    const double g = std::exp(expo);
    const double cm = lam2 * g;  // conditional mean of y2 given y1
    total += y1 * std::log(lam1) + y2 * std::log(lam2) - lam1 * (1.0 + y2 * ep) - cm + p.phi * y1 * y2;

    if constexpr (WithScore) {
      const double s1 = y1 / lam1 - 1.0 + ep * (cm - y2);
      const double s2 = y2 / lam2 - g;
      const double s3 = -y2 * lam1 * e_phi - cm * (y1 - lam1 * e_phi) + y1 * y2;
      on_term(t, s1, s2, s3, d1, d2);
    }
  }
  if (!std::isfinite(total)) {
    out.loglik = -std::numeric_limits<double>::infinity();
    out.bad_index = n - 1;
    return out;
  }
  out.loglik = total;
  return out;
}

}  // namespace

Vec2 sample_mean_init(const SeriesPair& s) {
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    m1 += static_cast<double>(s.y1[t]);
    m2 += static_cast<double>(s.y2[t]);
  }
  const double n = static_cast<double>(s.size());
  // all-zero series still need a positive starting mean
  return {std::max(m1 / n, 1e-3), std::max(m2 / n, 1e-3)};
}

LambdaPath filter_lambda(const ModelParams& p, const SeriesPair& s, const Vec2& init) {
  if (!(init[0] > 0.0) || !(init[1] > 0.0)) throw DomainError("filter_lambda: init must be positive");
  LambdaPath path;
  path.lam1.resize(s.size());
  path.lam2.resize(s.size());
  Vec2 lam = init;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (t > 0) lam = lambda_update(lam, s.y1[t - 1], s.y2[t - 1], p);
    path.lam1[t] = lam[0];
    path.lam2[t] = lam[1];
  }
  return path;
}

LikelihoodEval evaluate_likelihood(const ModelParams& p, const SeriesPair& s, const Vec2& init,
                                   const ParamLayout& layout, bool with_score) {
  if (!with_score) {
    return run_filter<false>(p, s, init, [](auto&&...) {});
  }
  const std::size_t k = layout.size();
  std::vector<ParamSlot> slots;
  for (Param q : layout.params()) slots.push_back(slot_of(q));
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  auto eval = run_filter<true>(p, s, init,
                               [&](std::size_t, double s1, double s2, double s3, const std::array<double, 4>& d1,
                                   const std::array<double, 4>& d2) {
                                 for (std::size_t i = 0; i < k; ++i) {
                                   const auto [c, slot] = slots[i];
                                   const auto si = static_cast<std::size_t>(slot);
                                   grad[static_cast<Eigen::Index>(i)] +=
                                       c == 0 ? s1 * d1[si] : (c == 1 ? s2 * d2[si] : s3);
                                 }
                               });
  if (!eval.bad_index) eval.score = std::move(grad);
  return eval;
}

double log_likelihood(const ModelParams& p, const SeriesPair& s, const Vec2& init) {
  return run_filter<false>(p, s, init, [](auto&&...) {}).loglik;
}

Eigen::VectorXd score(const ModelParams& p, const SeriesPair& s, const Vec2& init, const ParamLayout& layout) {
  auto eval = evaluate_likelihood(p, s, init, layout, true);
  if (eval.bad_index) {
    throw NumericalError("score: non-finite likelihood term at index " + std::to_string(*eval.bad_index));
  }
  return eval.score;
}

Eigen::MatrixXd observation_scores(const ModelParams& p, const SeriesPair& s, const Vec2& init,
                                   const ParamLayout& layout) {
  const std::size_t k = layout.size();
  std::vector<ParamSlot> slots;
  for (Param q : layout.params()) slots.push_back(slot_of(q));
  Eigen::MatrixXd u(static_cast<Eigen::Index>(s.size() - 1), static_cast<Eigen::Index>(k));
  auto eval = run_filter<true>(p, s, init,
                               [&](std::size_t t, double s1, double s2, double s3, const std::array<double, 4>& d1,
                                   const std::array<double, 4>& d2) {
                                 for (std::size_t i = 0; i < k; ++i) {
                                   const auto [c, slot] = slots[i];
                                   const auto si = static_cast<std::size_t>(slot);
                                   u(static_cast<Eigen::Index>(t - 1), static_cast<Eigen::Index>(i)) =
                                       c == 0 ? s1 * d1[si] : (c == 1 ? s2 * d2[si] : s3);
                                 }
                               });
  if (eval.bad_index) {
    throw NumericalError("observation_scores: non-finite likelihood term at index " +
                         std::to_string(*eval.bad_index));
  }
  return u;
}

}  // namespace bcp
