#pragma once

// Audacity strategies. Each maps the (sigma, alpha) feedback history of a
// user to the audacity used for the next query:
//
//   PNF   last-feedback linear step, clamped to [0,1]
//   LSE2  least-squares parabola sigma = f(alpha) over the whole history,
//         maximized on [0,1]
//   WS    gamma * PNF + (1 - gamma) * LSE2

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jobrec/core_model.hpp"

namespace jobrec {

struct SingularFitError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// PNF
// ---------------------------------------------------------------------------

inline constexpr double kDefaultPnfAlpha0 = 0.55;

inline double pnf_alpha(std::span<const PastQuery> history, double alpha0 = kDefaultPnfAlpha0) {
  if (history.empty()) return alpha0;
  const auto [sigma, alpha] = history.back();
  if (sigma > 0.5) return std::min(1.0, alpha + (sigma - 0.5));
  if (sigma < 0.5) return std::max(0.0, alpha - (0.5 - sigma));
  return alpha;
}

// ---------------------------------------------------------------------------
// Parabola least squares
// ---------------------------------------------------------------------------

// f(x) = a0 x^2 + a1 x + a2
struct ParabolaFit {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double residual = 0.0;

  double operator()(double x) const { return (a0 * x + a1) * x + a2; }
};

inline double residual_of(const ParabolaFit& f, std::span<const double> xs, std::span<const double> ys) {
  double r = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = ys[i] - f(xs[i]);
    r += d * d;
  }
  return r;
}

namespace detail {

// Solves the 3x3 system m * x = b in place by Gaussian elimination with
// partial pivoting. Returns false when a pivot vanishes.
inline bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> b,
                   std::array<double, 3>& x) {
  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  const double tiny = scale * 1e-14;

  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) <= tiny) return false;
    std::swap(m[col], m[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return true;
}

}  // namespace detail

// Least-squares parabola through (xs, ys) via the normal equations of the
// Vandermonde design matrix [x^2 x 1]. Needs three distinct abscissae.
inline ParabolaFit fit_parabola(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ValidationError("fit_parabola: xs and ys differ in length");
  std::vector<double> distinct(xs.begin(), xs.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw SingularFitError("fit_parabola: fewer than 3 distinct x values");

  // Power sums S_j = sum x^j and T_j = sum x^j y.
  std::array<double, 5> s{};
  std::array<double, 3> t{};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double p = 1.0;
    for (int j = 0; j < 5; ++j) {
      s[j] += p;
      if (j < 3) t[j] += p * ys[i];
      p *= xs[i];
    }
  }
  // Unknowns ordered (a0, a1, a2) = (x^2, x, 1) coefficients.
  const std::array<std::array<double, 3>, 3> normal{{
      {s[4], s[3], s[2]},
      {s[3], s[2], s[1]},
      {s[2], s[1], s[0]},
  }};
  const std::array<double, 3> rhs{t[2], t[1], t[0]};
  std::array<double, 3> coef{};
  if (!detail::solve3(normal, rhs, coef))
    throw SingularFitError("fit_parabola: normal equations are singular");

  ParabolaFit fit{coef[0], coef[1], coef[2], 0.0};
  fit.residual = residual_of(fit, xs, ys);
  return fit;
}

// argmax of the fitted parabola over [0,1]. Candidates are both endpoints and
// the vertex of a downward parabola when it falls inside the interval; equal
// values resolve to the smaller argument.
inline double maximize_on_unit_interval(const ParabolaFit& f) {
  std::array<double, 3> candidates{0.0, 1.0, 0.0};
  std::size_t n = 2;
  if (f.a0 < 0.0) {
    const double v = -f.a1 / (2.0 * f.a0);
    if (v > 0.0 && v < 1.0) {
      candidates = {0.0, v, 1.0};
      n = 3;
    }
  }
  double best_x = candidates[0];
  double best_y = f(best_x);
  for (std::size_t i = 1; i < n; ++i) {
    const double y = f(candidates[i]);
    const double tol = 1e-12 * std::max({1.0, std::abs(y), std::abs(best_y)});
    if (y > best_y + tol) {
      best_x = candidates[i];
      best_y = y;
    }
  }
  return best_x;
}

// ---------------------------------------------------------------------------
// 2-LSE
// ---------------------------------------------------------------------------

using LseInitialAlphas = std::array<double, 3>;
inline constexpr LseInitialAlphas kDefaultLseAlphas{0.5, 0.6, 0.4};

// The first three queries use the constants in `init`; after that the
// history is fitted. A singular history falls back to PNF seeded with init[0].
inline double lse2_alpha(std::span<const PastQuery> history,
                         const LseInitialAlphas& init = kDefaultLseAlphas) {
  if (history.size() < 3) return init[history.size()];
  std::vector<double> xs, ys;
  xs.reserve(history.size());
  ys.reserve(history.size());
  for (const auto& q : history) {
    xs.push_back(q.alpha);
    ys.push_back(q.sigma);
  }
  try {
    return std::clamp(maximize_on_unit_interval(fit_parabola(xs, ys)), 0.0, 1.0);
  } catch (const SingularFitError&) {
    return pnf_alpha(history, init[0]);
  }
}

// ---------------------------------------------------------------------------
// WS and strategy dispatch
// ---------------------------------------------------------------------------

enum class StrategyKind { PNF, LSE2, WS };

inline std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::PNF: return "pnf";
    case StrategyKind::LSE2: return "lse2";
    case StrategyKind::WS: return "ws";
  }
  return "?";
}

inline StrategyKind parse_strategy_kind(std::string_view s) {
  std::string t = normalize_topic(s);
  if (t == "pnf") return StrategyKind::PNF;
  if (t == "lse2" || t == "2-lse" || t == "2lse" || t == "lse") return StrategyKind::LSE2;
  if (t == "ws") return StrategyKind::WS;
  throw ValidationError("unknown strategy '" + std::string(s) + "' (expected pnf, lse2 or ws)");
}

// gamma(k) = max{0, 1 - (k-1)/25}
inline double gamma_decaying(std::int64_t k) {
  if (k < 1) throw ValidationError("query index must be >= 1");
  return std::max(0.0, 1.0 - static_cast<double>(k - 1) / 25.0);
}

struct GammaSchedule {
  enum class Mode { Constant, Decaying };
  Mode mode = Mode::Decaying;
  double constant = 0.5;

  double operator()(std::int64_t k) const {
    return mode == Mode::Constant ? constant : gamma_decaying(k);
  }
};

struct AudacityStrategy {
  StrategyKind kind = StrategyKind::PNF;
  double pnf_alpha0 = kDefaultPnfAlpha0;
  LseInitialAlphas lse_alphas = kDefaultLseAlphas;
  GammaSchedule gamma;
  std::optional<double> manual_override;

  void validate() const {
    auto check = [](double v, const char* what) {
      if (!in_unit_interval(v)) throw ValidationError(std::string(what) + " must lie in [0,1]");
    };
    check(pnf_alpha0, "strategy.pnf_alpha0");
    for (double a : lse_alphas) check(a, "strategy.lse_alphas");
    check(gamma.constant, "strategy.gamma.constant");
    if (manual_override) check(*manual_override, "strategy.manual_override");
  }
};

inline double ws_alpha(std::span<const PastQuery> history, const AudacityStrategy& s, std::int64_t k) {
  const double g = s.gamma(k);
  const double blended = g * pnf_alpha(history, s.pnf_alpha0) + (1.0 - g) * lse2_alpha(history, s.lse_alphas);
  return std::clamp(blended, 0.0, 1.0);
}

inline double compute_alpha(std::span<const PastQuery> history, const AudacityStrategy& s, std::int64_t k) {
  if (k < 1) throw ValidationError("query index must be >= 1");
  if (s.manual_override) return *s.manual_override;
  switch (s.kind) {
    case StrategyKind::PNF: return pnf_alpha(history, s.pnf_alpha0);
    case StrategyKind::LSE2: return lse2_alpha(history, s.lse_alphas);
    case StrategyKind::WS: return ws_alpha(history, s, k);
  }
  return s.pnf_alpha0;
}

}  // namespace jobrec
