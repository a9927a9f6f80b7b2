#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lsvnet/network.hpp"
#include "lsvnet/rng.hpp"

namespace lsvnet {

// Edge-weight law: sign-symmetric with exact survival P(|W| > t) = e^{-t^alpha},
// optionally conditioned on |W| > threshold.
struct WeibullSpec {
  double alpha = 1.0;
  std::optional<double> threshold;

  void validate() const {
    if (!(alpha > 0)) throw std::domain_error("alpha must be positive");
    if (threshold && !(*threshold >= 0)) throw std::domain_error("threshold must be nonnegative");
  }
};

// Erdos-Renyi digraph: every ordered pair (i, j), including i = j, present
// independently with probability p, weight 1. Sparse cells are visited by
// geometric skipping over the n^2 cell sequence, so the cost is O(p n^2).
inline DirectedNetwork sample_digraph(std::size_t n, double p, RngHandle rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability outside [0, 1]");
  DirectedNetwork net;
  net.n = n;
  const std::size_t cells = n * n;
  if (p == 0.0 || cells == 0) return net;
  Rng r(rng);
  if (p == 1.0) {
    net.entries.reserve(cells);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) net.entries.push_back({i, j, 1.0});
    return net;
  }
  const double log1mp = std::log1p(-p);
  double cursor = -1.0;  // last occupied cell, in flat index space
  for (;;) {
    double skip = std::floor(std::log(r.next_open01()) / log1mp);
    cursor += 1.0 + skip;
    if (cursor >= static_cast<double>(cells)) break;
    auto flat = static_cast<std::size_t>(cursor);
    net.entries.push_back({flat / n, flat % n, 1.0});
  }
  return net;
}

// Inverse-transform draw. Unconditioned: |W| = (-log U)^{1/alpha}. Conditioned
// on |W| > tau: |W| = (tau^alpha - log U)^{1/alpha}, exact on the truncated
// survival, so every call consumes exactly two uniforms.
inline double sample_weibull(const WeibullSpec& spec, Rng& r) {
  double shift = spec.threshold ? std::pow(*spec.threshold, spec.alpha) : 0.0;
  double mag = std::pow(shift - std::log(r.next_open01()), 1.0 / spec.alpha);
  return r.next_sign() ? mag : -mag;
}

inline double sample_weibull(const WeibullSpec& spec, RngHandle rng) {
  spec.validate();
  Rng r(rng);
  return sample_weibull(spec, r);
}

// Z = X (.) Y: replaces each indicator entry of x by an independent Weibull
// draw, in canonical entry order.
inline DirectedNetwork attach_weights(const DirectedNetwork& x, const WeibullSpec& spec,
                                      RngHandle rng) {
  spec.validate();
  DirectedNetwork z;
  z.n = x.n;
  z.entries.reserve(x.entries.size());
  Rng r(rng);
  for (const auto& e : x.entries) {
    if (e.weight != 1.0) throw std::domain_error("attach_weights expects an indicator network");
    z.entries.push_back({e.row, e.col, sample_weibull(spec, r)});
  }
  return z;
}

// Truncation split Z = Z^(1) + Z^(2): first part keeps entries with |w| > tau,
// second keeps |w| <= tau. Exact partition of the support.
inline std::pair<DirectedNetwork, DirectedNetwork> truncate_split(const DirectedNetwork& z,
                                                                  double tau) {
  if (!(tau >= 0)) throw std::domain_error("truncation level must be nonnegative");
  DirectedNetwork big, small;
  big.n = small.n = z.n;
  for (const auto& e : z.entries) (std::abs(e.weight) > tau ? big : small).entries.push_back(e);
  return {std::move(big), std::move(small)};
}

// Truncation level (epsilon log log n)^{1/alpha} used throughout the tail
// decomposition.
inline double truncation_level(double epsilon, double alpha, std::size_t n) {
  if (n < 16) throw std::domain_error("n must be at least 16");
  return std::pow(epsilon * std::log(std::log(static_cast<double>(n))), 1.0 / alpha);
}

}  // namespace lsvnet
