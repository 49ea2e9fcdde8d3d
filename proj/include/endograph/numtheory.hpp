#pragma once

// Arithmetic helpers and closed forms for endomorphism graphs of cyclic
// groups.  Everything here is trial-division scale (n <= 10^6).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "endograph/errors.hpp"

namespace endograph::numtheory {

inline constexpr std::uint64_t kMaxArgument = 1'000'000;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned multiplicity = 0;

  std::uint64_t value() const {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < multiplicity; ++i) v *= prime;
    return v;
  }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct DivisorProfile {
  std::uint64_t n = 1;
  std::vector<std::uint64_t> divisors;       // sorted ascending, includes 1 and n
  std::vector<PrimePower> factorization;     // primes ascending
};

inline void require_in_range(std::uint64_t n, const char* what) {
  if (n < 1 || n > kMaxArgument) {
    throw ParameterError(std::string(what) + ": argument must lie in [1, 10^6], got " +
                         std::to_string(n));
  }
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<PrimePower> factorize(std::uint64_t n) {
  require_in_range(n, "factorize");
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0};
    while (n % p == 0) {
      n /= p;
      ++pp.multiplicity;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  require_in_range(n, "divisors");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline DivisorProfile divisor_profile(std::uint64_t n) {
  return DivisorProfile{n, divisors(n), factorize(n)};
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  require_in_range(n, "euler_phi");
  std::uint64_t result = n;
  for (const auto& pp : factorize(n)) result = result / pp.prime * (pp.prime - 1);
  return result;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1U;
  }
  return result;
}

/// Smallest k >= 1 with a^k = 1 (mod m); requires gcd(a, m) = 1.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  if (std::gcd(a % m, m) != 1) throw ParameterError("multiplicative_order: a is not a unit mod m");
  std::uint64_t x = a % m;
  std::uint64_t k = 1;
  while (x != 1) {
    x = x * (a % m) % m;
    ++k;
  }
  return k;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw ParameterError("inverse_mod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

/// Number of edges of EG(Z_n): C(n,2) minus phi(d_i)phi(d_j) over proper
/// divisor pairs d_i < d_j with d_i not dividing d_j.
inline std::uint64_t cyclic_edge_count(std::uint64_t n) {
  require_in_range(n, "cyclic_edge_count");
  std::vector<std::uint64_t> proper;
  for (auto d : divisors(n)) {
    if (d != 1 && d != n) proper.push_back(d);
  }
  std::uint64_t missing = 0;
  for (std::size_t i = 0; i < proper.size(); ++i) {
    for (std::size_t j = i + 1; j < proper.size(); ++j) {
      if (proper[j] % proper[i] != 0) missing += euler_phi(proper[i]) * euler_phi(proper[j]);
    }
  }
  return n * (n - 1) / 2 - missing;
}

/// Multinomial (n_1 + ... + n_k)! / (n_1! ... n_k!) over the exponents of n.
inline std::uint64_t cyclic_maximal_clique_count(std::uint64_t n) {
  require_in_range(n, "cyclic_maximal_clique_count");
  if (n < 2) throw ParameterError("cyclic_maximal_clique_count: requires n >= 2");
  // Built as a product of binomials so intermediate values stay small.
  std::uint64_t result = 1;
  unsigned placed = 0;
  for (const auto& pp : factorize(n)) {
    for (unsigned i = 1; i <= pp.multiplicity; ++i) {
      ++placed;
      result = result * placed / i;
    }
  }
  return result;
}

/// Sum of phi(r_i) where r_i is the product of the first i entries of
/// `primes` (r_0 = 1).
inline std::uint64_t chain_weight(std::span<const std::uint64_t> primes) {
  std::uint64_t r = 1;
  std::uint64_t total = 1;
  for (auto p : primes) {
    r *= p;
    total += euler_phi(r);
  }
  return total;
}

/// Primes of n with multiplicity, nonincreasing.
inline std::vector<std::uint64_t> prime_sequence_nonincreasing(std::uint64_t n) {
  std::vector<std::uint64_t> seq;
  for (const auto& pp : factorize(n)) {
    for (unsigned i = 0; i < pp.multiplicity; ++i) seq.push_back(pp.prime);
  }
  std::sort(seq.begin(), seq.end(), std::greater<>());
  return seq;
}

inline std::uint64_t cyclic_clique_number(std::uint64_t n) {
  require_in_range(n, "cyclic_clique_number");
  const auto seq = prime_sequence_nonincreasing(n);
  return chain_weight(seq);
}

}  // namespace endograph::numtheory
