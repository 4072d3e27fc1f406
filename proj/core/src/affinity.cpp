#include <algorithm>
#include <cmath>
#include <thread>

#include "cuntz/error.hpp"
#include "cuntz/measure.hpp"

namespace cuntz {

namespace {

constexpr int kBruteForceMaxDepth = 12;

double brute_force(const Measure& mu, const Measure& nu, int depth, int jobs) {
  const Alphabet& alphabet = mu.alphabet();
  const std::int64_t count = alphabet.power(depth);
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<std::int64_t>(count, 64))));
  std::vector<double> partial(static_cast<std::size_t>(jobs), 0.0);
  auto work = [&](int job) {
    double sum = 0.0;
    for (std::int64_t idx = job; idx < count; idx += jobs) {
      Word w = Word::from_index(idx, depth, alphabet);
      double m = mu.mass(w).to_double();
      if (m == 0.0) continue;
      sum += std::sqrt(m * nu.mass(w).to_double());
    }
    partial[static_cast<std::size_t>(job)] = sum;
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int job = 0; job < jobs; ++job) threads.emplace_back(work, job);
    for (auto& t : threads) t.join();
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

struct MarkovFloat {
  std::vector<double> stationary;
  std::vector<std::vector<double>> transition;
};

MarkovFloat to_float(const MarkovSpec& spec) {
  MarkovFloat f;
  for (const Rational& l : spec.stationary) f.stationary.push_back(l.to_double());
  for (const auto& row : spec.transition) {
    std::vector<double> r;
    for (const Rational& t : row) r.push_back(t.to_double());
    f.transition.push_back(std::move(r));
  }
  return f;
}

// Sum over length-d words of sqrt(mu nu) for two Markov measures, carried as
// a vector indexed by the last letter.
double markov_pair(const MarkovSpec& a, const MarkovSpec& b, int depth) {
  if (depth == 0) return 1.0;
  MarkovFloat fa = to_float(a);
  MarkovFloat fb = to_float(b);
  const std::size_t n = fa.stationary.size();
  std::vector<double> state(n);
  for (std::size_t j = 0; j < n; ++j) state[j] = std::sqrt(fa.stationary[j] * fb.stationary[j]);
  std::vector<std::vector<double>> kernel(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      kernel[j][k] = std::sqrt(fa.transition[j][k] * fb.transition[j][k]);
    }
  }
  for (int step = 1; step < depth; ++step) {
    std::vector<double> next(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) next[k] += state[j] * kernel[j][k];
    }
    state = std::move(next);
  }
  double total = 0.0;
  for (double v : state) total += v;
  return total;
}

// Atomic-tail measure against a Markov measure. Every length-d word is
// alpha c^m with alpha canonical; the atomic mass factors as
// kappa prod q(alpha) (q_c^m r + 1) for m >= 1 and prod q(alpha) for m = 0,
// so the sum reduces to a last-letter recursion over canonical alpha.
double atomic_markov(const AtomicTailSpec& atomic, const MarkovSpec& markov, int depth) {
  if (depth == 0) return 1.0;
  MarkovFloat mf = to_float(markov);
  const std::size_t n = mf.stationary.size();
  const auto c = static_cast<std::size_t>(atomic.tail_letter);
  std::vector<double> q;
  for (const Rational& x : atomic.weights) q.push_back(x.to_double());
  const double s = atomic.weight_sum().to_double();
  const double kappa = atomic.normalizer.to_double();
  const double r = (s - q[c]) / (1.0 - s);

  // g[len][j] = sum over words of length len ending in j of sqrt(prod q * M).
  std::vector<std::vector<double>> g(static_cast<std::size_t>(depth) + 1, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) g[1][j] = std::sqrt(q[j] * mf.stationary[j]);
  for (int len = 1; len < depth; ++len) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        g[static_cast<std::size_t>(len) + 1][k] +=
            g[static_cast<std::size_t>(len)][j] * std::sqrt(q[k] * mf.transition[j][k]);
      }
    }
  }

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != c) total += g[static_cast<std::size_t>(depth)][j];
  }
  double qc_pow = 1.0;
  double tcc_pow = 1.0;  // T_cc^(m-1)
  for (int m = 1; m <= depth; ++m) {
    qc_pow *= q[c];
    double atom_factor = kappa * (qc_pow * r + 1.0);
    if (m < depth) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        total += g[static_cast<std::size_t>(depth - m)][j] *
                 std::sqrt(atom_factor * mf.transition[j][c] * tcc_pow);
      }
    } else {
      total += std::sqrt(atom_factor * mf.stationary[c] * tcc_pow);
    }
    tcc_pow *= mf.transition[c][c];
  }
  return total;
}

bool has_recursion(const Measure& mu, const Measure& nu) {
  bool mu_markov = mu.markov_spec() != nullptr;
  bool nu_markov = nu.markov_spec() != nullptr;
  if (mu_markov && nu_markov) return true;
  if (mu_markov && nu.atomic_spec()) return true;
  if (nu_markov && mu.atomic_spec()) return true;
  return false;
}

double recursion(const Measure& mu, const Measure& nu, int depth) {
  if (mu.markov_spec() && nu.markov_spec()) {
    return markov_pair(*mu.markov_spec(), *nu.markov_spec(), depth);
  }
  if (mu.atomic_spec() && nu.markov_spec()) {
    return atomic_markov(*mu.atomic_spec(), *nu.markov_spec(), depth);
  }
  if (nu.atomic_spec() && mu.markov_spec()) {
    return atomic_markov(*nu.atomic_spec(), *mu.markov_spec(), depth);
  }
  throw DomainError("no affinity recursion for " + mu.describe() + " vs " + nu.describe());
}

}  // namespace

double affinity(const Measure& mu, const Measure& nu, int depth, AffinityMethod method,
                int jobs) {
  if (!(mu.alphabet() == nu.alphabet())) throw ValidationError("alphabet mismatch");
  if (depth < 0) throw DomainError("negative depth");
  switch (method) {
    case AffinityMethod::kBruteForce:
      return brute_force(mu, nu, depth, jobs);
    case AffinityMethod::kRecursion:
      return recursion(mu, nu, depth);
    case AffinityMethod::kAuto:
      if (depth <= kBruteForceMaxDepth || !has_recursion(mu, nu)) {
        if (depth > kBruteForceMaxDepth && mu.alphabet().power(depth) > (std::int64_t{1} << 24)) {
          throw DomainError("affinity at depth " + std::to_string(depth) +
                            " needs a recursion, none available for " + mu.describe());
        }
        return brute_force(mu, nu, depth, jobs);
      }
      return recursion(mu, nu, depth);
  }
  throw DomainError("unknown affinity method");
}

std::vector<double> affinity_sequence(const Measure& mu, const Measure& nu, int max_depth,
                                      int jobs) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(0, max_depth)));
  for (int d = 1; d <= max_depth; ++d) out.push_back(affinity(mu, nu, d, AffinityMethod::kAuto, jobs));
  return out;
}

}  // namespace cuntz
