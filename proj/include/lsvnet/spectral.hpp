#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lsvnet/network.hpp"
#include "lsvnet/rng.hpp"

namespace lsvnet {

enum class NormEngine { dense, power, star };

struct NormResult {
  double value = 0.0;
  NormEngine engine = NormEngine::dense;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

namespace detail {

// Kahan-compensated dot product; heavy-tailed weights give the Gram matrix a
// large dynamic range.
inline double compensated_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0, c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double y = a[i] * b[i] - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Largest eigenvalue of a symmetric matrix by cyclic-sweep Jacobi rotations.
// Sweeps until every off-diagonal magnitude drops below tol_scale, at most
// max_sweeps sweeps.
inline double jacobi_largest_eigenvalue(std::vector<std::vector<double>>& b, double tol_scale,
                                        std::size_t max_sweeps, std::size_t* sweeps_out,
                                        double* residual_out) {
  const std::size_t n = b.size();
  std::size_t sweep = 0;
  double off = 0.0;
  for (; sweep < max_sweeps; ++sweep) {
    off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(b[p][q]));
    if (off < tol_scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = b[p][q];
        if (std::abs(apq) < tol_scale) continue;
        double theta = (b[q][q] - b[p][p]) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double bkp = b[k][p], bkq = b[k][q];
          b[k][p] = c * bkp - s * bkq;
          b[k][q] = s * bkp + c * bkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double bpk = b[p][k], bqk = b[q][k];
          b[p][k] = c * bpk - s * bqk;
          b[q][k] = s * bpk + c * bqk;
        }
      }
    }
  }
  if (sweeps_out) *sweeps_out = sweep;
  if (residual_out) *residual_out = off;
  double lam = 0.0;
  for (std::size_t i = 0; i < n; ++i) lam = std::max(lam, b[i][i]);
  return lam;
}

// Compressed sparse rows for y = A x and y = A^T x products.
struct Csr {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr, col;
  std::vector<double> val;

  static Csr build(const DirectedNetwork& net, bool transpose) {
    Csr m;
    m.n = net.n;
    m.row_ptr.assign(net.n + 1, 0);
    for (const auto& e : net.entries) ++m.row_ptr[(transpose ? e.col : e.row) + 1];
    for (std::size_t i = 0; i < net.n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    m.col.resize(net.entries.size());
    m.val.resize(net.entries.size());
    std::vector<std::size_t> cursor(m.row_ptr.begin(), m.row_ptr.end() - 1);
    for (const auto& e : net.entries) {
      std::size_t r = transpose ? e.col : e.row;
      std::size_t k = cursor[r]++;
      m.col[k] = transpose ? e.row : e.col;
      m.val[k] = e.weight;
    }
    return m;
  }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
      y[i] = s;
    }
  }
};

inline double norm2(const std::vector<double>& v) {
  return std::sqrt(compensated_dot(v, v));
}

}  // namespace detail

// Largest singular value via the Gram matrix and a cyclic-sweep Jacobi
// eigensolver; the O(n^3) oracle path, bounded by the dense cap.
inline NormResult spectral_norm_dense(const DirectedNetwork& net, std::size_t cap = kDenseCap) {
  if (net.n > cap) throw std::length_error("network exceeds dense cap");
  NormResult res;
  res.engine = NormEngine::dense;
  if (net.entries.empty()) return res;
  auto a = dense_matrix(net, cap);
  const std::size_t n = net.n;
  std::vector<std::vector<double>> at(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) at[i][j] = a[j][i];
  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double g = detail::compensated_dot(at[i], at[j]);
      gram[i][j] = gram[j][i] = g;
      max_abs = std::max(max_abs, std::abs(g));
    }
  if (max_abs == 0.0) return res;
  std::size_t sweeps = 0;
  double off = 0.0;
  double lam =
      detail::jacobi_largest_eigenvalue(gram, 1e-12 * max_abs, 64, &sweeps, &off);
  if (sweeps >= 64 && off >= 1e-12 * max_abs)
    throw numeric_error("jacobi eigensolver failed to converge in 64 sweeps");
  res.value = std::sqrt(std::max(lam, 0.0));
  res.iterations = sweeps;
  res.residual = off;
  return res;
}

inline NormResult spectral_norm_dense(const UndirectedNetwork& net, std::size_t cap = kDenseCap) {
  return spectral_norm_dense(as_directed(net), cap);
}

// Largest singular value by power iteration on v -> Z^T (Z v), using only
// sparse products. Convergence is on successive Rayleigh-quotient square
// roots; the value is correct to tolerance even when the top Gram eigenvalues
// nearly coincide. The start vector is drawn from the handle so runs replay.
inline NormResult spectral_norm_power(const DirectedNetwork& net, double tol, std::size_t max_iter,
                                      RngHandle rng) {
  if (!(tol > 0)) throw std::domain_error("tolerance must be positive");
  NormResult res;
  res.engine = NormEngine::power;
  if (net.entries.empty()) return res;
  detail::Csr a = detail::Csr::build(net, false);
  detail::Csr at = detail::Csr::build(net, true);
  const std::size_t n = net.n;
  Rng r(rng);
  std::vector<double> v(n), u(n), w(n);
  for (auto& x : v) x = r.next_open01() - 0.5;
  double nv = detail::norm2(v);
  for (auto& x : v) x /= nv;
  double prev = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    a.apply(v, u);
    double s = detail::norm2(u);
    if (s == 0.0) {
      // start vector landed in the null space; redraw
      for (auto& x : v) x = r.next_open01() - 0.5;
      nv = detail::norm2(v);
      for (auto& x : v) x /= nv;
      continue;
    }
    at.apply(u, w);
    double nw = detail::norm2(w);
    res.value = s;
    res.iterations = it;
    res.residual = std::abs(s - prev) / s;
    if (it > 1 && res.residual < tol) return res;
    prev = s;
    if (nw == 0.0) return res;  // v is exactly the top singular vector
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  res.converged = false;
  return res;
}

inline NormResult spectral_norm_power(const UndirectedNetwork& net, double tol,
                                      std::size_t max_iter, RngHandle rng) {
  return spectral_norm_power(as_directed(net), tol, max_iter, rng);
}

// Closed-form norm of a weighted directed star: sqrt of the larger of the two
// sums of squared weights (out-edges vs in-edges at the hub).
inline double directed_star_norm(std::span<const double> out_weights,
                                 std::span<const double> in_weights) {
  double sa = 0.0, sb = 0.0;
  for (double a : out_weights) sa += a * a;
  for (double b : in_weights) sb += b * b;
  return std::sqrt(std::max(sa, sb));
}

struct SpectralRadiusResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;  // flagged approximate; callers exclude unconverged runs
};

// Approximate spectral radius by power iteration on the matrix itself with a
// random complex start. Dominant complex pairs make the per-step growth
// oscillate, so the estimate is a geometric mean over a trailing window.
inline SpectralRadiusResult spectral_radius_dense(const DirectedNetwork& net,
                                                  std::size_t cap = 256, double tol = 1e-6,
                                                  std::size_t max_iter = 20000,
                                                  RngHandle rng = {12345, 0}) {
  if (net.n > cap) throw std::length_error("network exceeds spectral-radius cap");
  SpectralRadiusResult res;
  if (net.entries.empty()) {
    res.converged = true;
    return res;
  }
  auto a = dense_matrix(net, cap);
  const std::size_t n = net.n;
  Rng r(rng);
  std::vector<std::complex<double>> v(n), u(n);
  for (auto& x : v) x = {r.next_open01() - 0.5, r.next_open01() - 0.5};
  auto cnorm = [](const std::vector<std::complex<double>>& z) {
    double s = 0.0;
    for (auto& c : z) s += std::norm(c);
    return std::sqrt(s);
  };
  double nv = cnorm(v);
  for (auto& x : v) x /= nv;
  const std::size_t window = 32;
  std::vector<double> log_growth;
  double prev_mean = -1.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
      u[i] = s;
    }
    double g = cnorm(u);
    res.iterations = it;
    if (g == 0.0) {
      // nilpotent directions reached: every eigenvalue seen so far is zero
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / g;
    log_growth.push_back(std::log(g));
    if (log_growth.size() >= window) {
      double m = 0.0;
      for (std::size_t k = log_growth.size() - window; k < log_growth.size(); ++k)
        m += log_growth[k];
      m /= window;
      double est = std::exp(m);
      res.value = est;
      if (prev_mean >= 0.0 && std::abs(est - prev_mean) <= tol * std::max(est, 1e-300)) {
        res.converged = true;
        return res;
      }
      prev_mean = est;
    }
  }
  return res;
}

}  // namespace lsvnet
