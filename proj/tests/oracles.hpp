#pragma once

// Independent reference computations for the tests. Nothing here calls the
// measure, affinity or classification code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cuntz/measure.hpp"
#include "cuntz/rational.hpp"

namespace oracle {

using cuntz::Rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

// Positive row-stochastic matrix from integer weights in [1, 6].
inline RationalMatrix random_stochastic(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> weight(1, 6);
  RationalMatrix t(static_cast<std::size_t>(n));
  for (auto& row : t) {
    std::vector<int> w(static_cast<std::size_t>(n));
    int total = 0;
    for (int& x : w) total += (x = weight(rng));
    for (int x : w) row.emplace_back(x, total);
  }
  return t;
}

inline std::vector<Rational> random_probability(int n, std::mt19937_64& rng) {
  return random_stochastic(n, rng).front();
}

// Word of length `len` with base-n index `idx`, most significant first.
inline std::vector<int> digits(std::int64_t idx, int len, int n) {
  std::vector<int> out(static_cast<std::size_t>(len));
  for (int k = len - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = static_cast<int>(idx % n);
    idx /= n;
  }
  return out;
}

inline std::int64_t ipow(int n, int k) {
  std::int64_t r = 1;
  while (k-- > 0) r *= n;
  return r;
}

// lambda solving lambda T = lambda by power iteration in long double.
inline std::vector<double> stationary(const RationalMatrix& t) {
  const std::size_t n = t.size();
  std::vector<long double> v(n, 1.0L / static_cast<long double>(n));
  for (int iter = 0; iter < 20000; ++iter) {
    std::vector<long double> next(n, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        next[j] += v[i] * static_cast<long double>(t[i][j].num()) / static_cast<long double>(t[i][j].den());
      }
    }
    v = next;
  }
  return std::vector<double>(v.begin(), v.end());
}

// Perron root of the entrywise geometric mean sqrt(T_ij T'_ij); the affinity
// of the two Markov measures decays like its d-th power.
inline double hellinger_rate(const RationalMatrix& t, const RationalMatrix& u) {
  const std::size_t n = t.size();
  std::vector<double> v(n, 1.0);
  double rho = 0.0;
  for (int iter = 0; iter < 5000; ++iter) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        next[i] += std::sqrt(t[i][j].to_double() * u[i][j].to_double()) * v[j];
      }
    }
    rho = 0.0;
    for (double x : next) rho = std::max(rho, x);
    for (std::size_t i = 0; i < n; ++i) v[i] = next[i] / rho;
  }
  return rho;
}

// lambda_{w_1} T_{w_1 w_2} ... in exact arithmetic, straight from the product formula.
inline Rational markov_mass(const RationalMatrix& t, const std::vector<Rational>& lambda,
                            const std::vector<int>& w) {
  if (w.empty()) return Rational(1);
  Rational m = lambda[static_cast<std::size_t>(w[0])];
  for (std::size_t k = 1; k < w.size(); ++k) {
    m *= t[static_cast<std::size_t>(w[k - 1])][static_cast<std::size_t>(w[k])];
  }
  return m;
}

// d(mu o sigma_j^-1)/d mu (x) = delta_{j,x_1} lambda_{x_2} / (lambda_j T_{j,x_2}).
inline Rational markov_rn(const RationalMatrix& t, const std::vector<Rational>& lambda, int j,
                          int x1, int x2) {
  if (x1 != j) return Rational(0);
  const auto jj = static_cast<std::size_t>(j);
  const auto kk = static_cast<std::size_t>(x2);
  return lambda[kk] / (lambda[jj] * t[jj][kk]);
}

// Sum over all words of length d of sqrt(mu nu), masses supplied as doubles.
inline double brute_affinity(const std::function<double(const std::vector<int>&)>& mu,
                             const std::function<double(const std::vector<int>&)>& nu, int n,
                             int d) {
  long double sum = 0.0L;
  for (std::int64_t idx = 0; idx < ipow(n, d); ++idx) {
    std::vector<int> w = digits(idx, d, n);
    sum += std::sqrt(static_cast<long double>(mu(w)) * static_cast<long double>(nu(w)));
  }
  return static_cast<double>(sum);
}

// (sum_i sqrt(p_i p'_i))^d.
inline double product_affinity(const std::vector<double>& p, const std::vector<double>& q, int d) {
  double base = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) base += std::sqrt(p[i] * q[i]);
  return std::pow(base, d);
}

// Unnormalized weight sum over canonical prefixes (not ending in c) of
// length <= max_len, by enumeration, plus a bound on what is left.
struct AtomicSum {
  double partial = 0.0;
  double tail_bound = 0.0;
};

inline AtomicSum atomic_weight_sum(const std::vector<double>& q, int c, int max_len) {
  const int n = static_cast<int>(q.size());
  AtomicSum out;
  double s = 0.0;
  for (double x : q) s += x;
  for (int len = 0; len <= max_len; ++len) {
    for (std::int64_t idx = 0; idx < ipow(n, len); ++idx) {
      std::vector<int> w = digits(idx, len, n);
      if (!w.empty() && w.back() == c) continue;
      double m = 1.0;
      for (int a : w) m *= q[static_cast<std::size_t>(a)];
      out.partial += m;
    }
  }
  // Every prefix of length len carries at most s^len in total.
  out.tail_bound = std::pow(s, max_len + 1) / (1.0 - s);
  return out;
}

// Mass of C(I) under the atomic-tail measure by summing the atoms inside it
// with prefix length <= max_len; atoms are alpha c^inf with weight kappa prod q.
inline double atomic_cylinder_mass(const std::vector<double>& q, int c, double kappa,
                                   const std::vector<int>& I, int max_len) {
  const int n = static_cast<int>(q.size());
  double sum = 0.0;
  for (int len = 0; len <= max_len; ++len) {
    for (std::int64_t idx = 0; idx < ipow(n, len); ++idx) {
      std::vector<int> w = digits(idx, len, n);
      if (!w.empty() && w.back() == c) continue;
      bool inside = true;
      for (std::size_t k = 0; k < I.size() && inside; ++k) {
        int letter = k < w.size() ? w[k] : c;
        inside = letter == I[k];
      }
      if (!inside) continue;
      double m = kappa;
      for (int a : w) m *= q[static_cast<std::size_t>(a)];
      sum += m;
    }
  }
  return sum;
}

}  // namespace oracle
