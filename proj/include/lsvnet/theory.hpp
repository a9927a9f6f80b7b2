#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lsvnet/rng.hpp"

namespace lsvnet {

// Parameter bundle for rate evaluations. beta = alpha/(alpha-1) is the Holder
// conjugate, defined only for alpha > 1.
struct RateQuery {
  double alpha = 1.0;
  double delta = 0.5;
  std::size_t n = 16;
  std::optional<double> epsilon;
  std::optional<double> kappa;
};

inline double holder_conjugate(double alpha) {
  if (!(alpha > 1)) throw std::domain_error("Holder conjugate requires alpha > 1");
  return alpha / (alpha - 1.0);
}

enum class TailSide { upper, lower };
enum class Regime { light, heavy };

struct RateValue {
  double value = 0.0;
  Regime regime = Regime::heavy;
  TailSide tail = TailSide::upper;
};

inline Regime regime_of(double alpha) {
  if (!(alpha > 0)) throw std::domain_error("alpha must be positive");
  return alpha > 2 ? Regime::light : Regime::heavy;
}

// Typical value of the norm in the light regime:
// 2^{1/a} a^{-1/2} (a-2)^{1/2-1/a} (log n)^{1/2} / (log log n)^{1/2-1/a}.
inline double lambda_light(std::size_t n, double alpha) {
  if (!(alpha > 2)) throw std::domain_error("light regime requires alpha > 2");
  if (n < 3) throw std::domain_error("n must be at least 3");
  double ln = std::log(static_cast<double>(n));
  double lln = std::log(ln);
  double b = std::pow(2.0, 1.0 / alpha) * std::pow(alpha, -0.5) *
             std::pow(alpha - 2.0, 0.5 - 1.0 / alpha);
  return b * std::sqrt(ln) / std::pow(lln, 0.5 - 1.0 / alpha);
}

// The constant in front, in its two algebraic forms.
inline double lln_constant_light(double alpha) {
  if (!(alpha > 2)) throw std::domain_error("light regime requires alpha > 2");
  return std::pow(2.0, 1.0 / alpha) * std::pow(alpha, -0.5) *
         std::pow(alpha - 2.0, 0.5 - 1.0 / alpha);
}

inline double lln_constant_light_alt(double alpha) {
  if (!(alpha > 2)) throw std::domain_error("light regime requires alpha > 2");
  return std::pow(2.0 / alpha, 1.0 / alpha) * std::pow(1.0 - 2.0 / alpha, 0.5 - 1.0 / alpha);
}

// Typical value in the heavy regime: (log n)^{1/alpha}.
inline double lambda_heavy(std::size_t n, double alpha) {
  if (!(alpha > 0 && alpha <= 2)) throw std::domain_error("heavy regime requires 0 < alpha <= 2");
  if (n < 3) throw std::domain_error("n must be at least 3");
  return std::pow(std::log(static_cast<double>(n)), 1.0 / alpha);
}

inline double lambda_typical(std::size_t n, double alpha) {
  return regime_of(alpha) == Regime::light ? lambda_light(n, alpha) : lambda_heavy(n, alpha);
}

// Large-deviation rate: light upper (1+d)^2-1, light lower 1-(1-d)^2,
// heavy upper (1+d)^a-1, heavy lower 1-(1-d)^a.
inline RateValue rate(const RateQuery& q, TailSide tail) {
  RateValue out;
  out.regime = regime_of(q.alpha);
  out.tail = tail;
  if (tail == TailSide::upper) {
    if (!(q.delta > 0)) throw std::domain_error("upper tail requires delta > 0");
    out.value = out.regime == Regime::light ? (1 + q.delta) * (1 + q.delta) - 1
                                            : std::pow(1 + q.delta, q.alpha) - 1;
  } else {
    if (!(q.delta > 0 && q.delta < 1)) throw std::domain_error("lower tail requires 0 < delta < 1");
    out.value = out.regime == Regime::light ? 1 - (1 - q.delta) * (1 - q.delta)
                                            : 1 - std::pow(1 - q.delta, q.alpha);
  }
  return out;
}

struct PhiResult {
  double value = 0.0;
  double candidate_family = 0.0;  // best over uniform mass on m coordinates
  double local_search = 0.0;      // best over projected-gradient runs
  bool disagreement = false;      // local search beat the family by > 1e-6
};

namespace detail {

// Euclidean projection onto the probability simplex.
inline void project_simplex(std::vector<double>& v) {
  std::vector<double> s = v;
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    cum += s[i];
    double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (s[i] - t > 0) {
      rho = i + 1;
      theta = t;
    }
  }
  (void)rho;
  for (auto& x : v) x = std::max(0.0, x - theta);
}

inline double phi_objective(const std::vector<double>& v, double theta) {
  double s = 0.0, s2 = 0.0;
  for (double x : v) {
    double p = std::pow(x, theta);
    s += p;
    s2 += p * p;
  }
  return s * s - s2;  // sum_{i != j} v_i^theta v_j^theta
}

}  // namespace detail

// phi_theta(k): sup over the l1 unit sphere of sum_{i != j} |v_i|^theta
// |v_j|^theta. The closed candidate family is uniform mass on m coordinates
// (2 <= m <= k), cross-checked by projected gradient ascent from random
// simplex starts; any disagreement above 1e-6 is surfaced, never hidden.
inline PhiResult phi(double theta, std::size_t k, std::size_t starts = 50) {
  if (!(theta >= 1)) throw std::domain_error("phi requires theta >= 1");
  if (k < 2) throw std::domain_error("phi requires k >= 2");
  PhiResult res;
  for (std::size_t m = 2; m <= k; ++m) {
    double dm = static_cast<double>(m);
    res.candidate_family =
        std::max(res.candidate_family, dm * (dm - 1.0) * std::pow(dm, -2.0 * theta));
  }
  Rng r(RngHandle{0x9a7eu, 17});
  std::vector<double> v(k), grad(k);
  for (std::size_t s = 0; s < starts; ++s) {
    double tot = 0.0;
    for (auto& x : v) {
      x = -std::log(r.next_open01());
      tot += x;
    }
    for (auto& x : v) x /= tot;
    double step = 0.1;
    double best = detail::phi_objective(v, theta);
    for (std::size_t it = 0; it < 400; ++it) {
      double sum_pow = 0.0;
      for (double x : v) sum_pow += std::pow(x, theta);
      for (std::size_t i = 0; i < k; ++i) {
        double xi = std::max(v[i], 1e-300);
        grad[i] = 2.0 * theta * std::pow(xi, theta - 1.0) * (sum_pow - std::pow(xi, theta));
      }
      std::vector<double> trial = v;
      for (std::size_t i = 0; i < k; ++i) trial[i] += step * grad[i];
      detail::project_simplex(trial);
      double val = detail::phi_objective(trial, theta);
      if (val > best) {
        best = val;
        v = trial;
        step *= 1.2;
      } else {
        step *= 0.5;
        if (step < 1e-14) break;
      }
    }
    res.local_search = std::max(res.local_search, best);
  }
  res.value = std::max(res.candidate_family, res.local_search);
  res.disagreement = res.local_search > res.candidate_family + 1e-6;
  return res;
}

// psi_{alpha,delta}(k) = k(k-3)/2 + (1/2)(1+delta)^alpha phi_{beta/2}(k)^{1-alpha}
inline double psi(double alpha, double delta, std::size_t k) {
  if (!(alpha > 1 && alpha <= 2)) throw std::domain_error("psi requires 1 < alpha <= 2");
  if (!(delta > 0)) throw std::domain_error("psi requires delta > 0");
  if (k < 2) throw std::domain_error("psi requires k >= 2");
  double beta = holder_conjugate(alpha);
  double dk = static_cast<double>(k);
  return dk * (dk - 3.0) / 2.0 +
         0.5 * std::pow(1 + delta, alpha) * std::pow(phi(beta / 2.0, k).value, 1.0 - alpha);
}

inline std::pair<std::size_t, double> psi_min(double alpha, double delta, std::size_t k_max) {
  std::size_t best_k = 2;
  double best = psi(alpha, delta, 2);
  for (std::size_t k = 3; k <= k_max; ++k) {
    double val = psi(alpha, delta, k);
    if (val < best) {
      best = val;
      best_k = k;
    }
  }
  return {best_k, best};
}

// f_{alpha,rho}(x) = 1 - x - (1+rho)^alpha (2/(alpha-2)) (1-2/alpha)^{alpha/2} x^{1-alpha/2}
inline double f_rate(double alpha, double rho, double x) {
  if (!(alpha > 2)) throw std::domain_error("f_rate requires alpha > 2");
  if (!(x > 0)) throw std::domain_error("f_rate requires x > 0");
  double coef = std::pow(1 + rho, alpha) * (2.0 / (alpha - 2.0)) *
                std::pow(1.0 - 2.0 / alpha, alpha / 2.0);
  return 1.0 - x - coef * std::pow(x, 1.0 - alpha / 2.0);
}

struct FMaxResult {
  double maximizer = 0.0;       // closed form (1+rho)^2 (1-2/alpha)
  double max_value = 0.0;       // closed form 1-(1+rho)^2
  double numeric_maximizer = 0.0;  // golden-section cross-check
  double numeric_value = 0.0;
};

inline FMaxResult f_max(double alpha, double rho) {
  if (!(alpha > 2)) throw std::domain_error("f_max requires alpha > 2");
  FMaxResult res;
  res.maximizer = (1 + rho) * (1 + rho) * (1.0 - 2.0 / alpha);
  res.max_value = 1.0 - (1 + rho) * (1 + rho);
  double lo = 1e-8, hi = std::max(10.0, 10.0 * res.maximizer);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f_rate(alpha, rho, c), fd = f_rate(alpha, rho, d);
  for (int it = 0; it < 200; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f_rate(alpha, rho, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f_rate(alpha, rho, d);
    }
  }
  res.numeric_maximizer = (a + b) / 2.0;
  // Newton polish on f': golden section alone is limited to ~sqrt(eps) in the
  // argument because f is flat at the maximum.
  double coef = std::pow(1 + rho, alpha) * (2.0 / (alpha - 2.0)) *
                std::pow(1.0 - 2.0 / alpha, alpha / 2.0);
  for (int it = 0; it < 8; ++it) {
    double x = res.numeric_maximizer;
    double fp = -1.0 - coef * (1.0 - alpha / 2.0) * std::pow(x, -alpha / 2.0);
    double fpp = coef * (1.0 - alpha / 2.0) * (alpha / 2.0) * std::pow(x, -alpha / 2.0 - 1.0);
    if (fpp == 0.0) break;
    res.numeric_maximizer = x - fp / fpp;
  }
  res.numeric_value = f_rate(alpha, rho, res.numeric_maximizer);
  return res;
}

// Tail exponent of sums of squared Weibull draws:
// d^alpha (2/(alpha-2)) (1-2/alpha)^{alpha/2} b^{1-alpha/2}, minus b*epsilon
// when the draws are conditioned above the truncation level.
inline double weibull_sum_exponent(double alpha, double d, double b, double epsilon,
                                   bool conditioned) {
  if (!(alpha > 2)) throw std::domain_error("weibull_sum_exponent requires alpha > 2");
  if (!(d > 0 && b > 0)) throw std::domain_error("weibull_sum_exponent requires d, b > 0");
  double val = std::pow(d, alpha) * (2.0 / (alpha - 2.0)) *
               std::pow(1.0 - 2.0 / alpha, alpha / 2.0) * std::pow(b, 1.0 - alpha / 2.0);
  return conditioned ? val - b * epsilon : val;
}

// Bernoulli relative entropy I_p(q) = q log(q/p) + (1-q) log((1-q)/(1-p)),
// with the continuity limits at q = 0 and q = 1.
inline double relative_entropy(double p, double q) {
  if (!(p > 0 && p < 1)) throw std::domain_error("relative_entropy requires p in (0, 1)");
  if (!(q >= 0 && q <= 1)) throw std::domain_error("relative_entropy requires q in [0, 1]");
  double a = q == 0.0 ? 0.0 : q * std::log(q / p);
  double b = q == 1.0 ? 0.0 : (1 - q) * std::log((1 - q) / (1 - p));
  return a + b;
}

// Binomial tail sandwich: e^{-m I_q(theta)} / sqrt(8 m theta (1-theta)) <= P <= e^{-m I_q(theta)}
// where P = P(X >= theta m) for theta > q, or P(X <= theta m) for theta < q.
inline std::pair<double, double> binomial_tail_bounds(std::size_t m, double q, double theta) {
  if (!(q > 0 && q < 1)) throw std::domain_error("q must be in (0, 1)");
  bool upper_side = theta > q;
  if (!((upper_side && theta < 1) || (!upper_side && theta > 0)))
    throw std::domain_error("theta on wrong side of q");
  double dm = static_cast<double>(m);
  double e = std::exp(-dm * relative_entropy(q, theta));
  return {e / std::sqrt(8.0 * dm * theta * (1.0 - theta)), e};
}

// Exact binomial tail by direct summation of log-space masses with
// compensated accumulation; the independent oracle for the sandwich.
inline double binomial_exact_tail(std::size_t m, double q, double theta, TailSide side) {
  if (!(q > 0 && q < 1)) throw std::domain_error("q must be in (0, 1)");
  if (m > 10000) throw std::domain_error("exact binomial oracle capped at m = 10^4");
  double t = theta * static_cast<double>(m);
  double sum = 0.0, comp = 0.0;
  auto add = [&](double x) {
    double y = x - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  };
  double lq = std::log(q), l1q = std::log1p(-q);
  double lgm = std::lgamma(static_cast<double>(m) + 1.0);
  for (std::size_t k = 0; k <= m; ++k) {
    double dk = static_cast<double>(k);
    bool in_tail = side == TailSide::upper ? dk >= t - 1e-12 : dk <= t + 1e-12;
    if (!in_tail) continue;
    double lp = lgm - std::lgamma(dk + 1.0) - std::lgamma(static_cast<double>(m - k) + 1.0) +
                dk * lq + static_cast<double>(m - k) * l1q;
    add(std::exp(lp));
  }
  return std::min(sum, 1.0);
}

// gamma_delta = (1+delta)^2 (1-2/alpha) and gamma'_delta = (1-delta)^2 (1-2/alpha)
inline std::pair<double, double> gamma_params(double alpha, double delta) {
  if (!(alpha > 2)) throw std::domain_error("gamma_params requires alpha > 2");
  double base = 1.0 - 2.0 / alpha;
  return {(1 + delta) * (1 + delta) * base, (1 - delta) * (1 - delta) * base};
}

}  // namespace lsvnet
