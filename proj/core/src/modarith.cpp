#include "fmpartners/modarith.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fmpartners::modarith {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kTrialDivisionBound = 1 << 16;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<bool> composite(kTrialDivisionBound + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= kTrialDivisionBound; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (std::uint64_t q = p * p; q <= kTrialDivisionBound; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  // Brent's variant with batched gcds; the constant c is bumped on failure.
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

std::uint64_t Factorization::value() const {
  std::uint64_t v = 1;
  for (const auto& [p, e] : factors)
    for (unsigned i = 0; i < e; ++i) v *= p;
  return v;
}

unsigned Factorization::odd_prime_count() const {
  return static_cast<unsigned>(std::count_if(
      factors.begin(), factors.end(), [](const PrimePower& pp) { return pp.prime != 2; }));
}

unsigned Factorization::exponent_of(std::uint64_t p) const {
  for (const auto& pp : factors)
    if (pp.prime == p) return pp.exponent;
  return 0;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0 || n >= kFactorizeLimit)
    throw std::out_of_range("factorize: n must satisfy 1 <= n < 2^63, got " + std::to_string(n));

  Factorization result;
  auto push = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) result.factors.push_back({p, e});
  };

  for (auto p : small_primes()) {
    if (p * p > n) break;
    push(p);
  }

  if (n > 1) {
    if (n <= kTrialDivisionBound * kTrialDivisionBound) {
      result.factors.push_back({n, 1});
    } else {
      std::vector<std::uint64_t> primes;
      split_large(n, primes);
      std::sort(primes.begin(), primes.end());
      for (auto p : primes) {
        if (!result.factors.empty() && result.factors.back().prime == p)
          ++result.factors.back().exponent;
        else
          result.factors.push_back({p, 1});
      }
    }
  }
  return result;
}

std::uint64_t unit_square_root_count(const Factorization& f) {
  std::uint64_t count = 1;
  for (const auto& [p, e] : f.factors) {
    if (p != 2)
      count *= 2;
    else if (e == 2)
      count *= 2;
    else if (e >= 3)
      count *= 4;
  }
  return count;
}

std::uint64_t unit_square_root_count(std::uint64_t n) {
  return unit_square_root_count(factorize(n));
}

std::vector<std::uint64_t> unit_square_roots_bruteforce(std::uint64_t n) {
  if (n == 0 || n > kBruteforceRootsLimit)
    throw std::out_of_range("unit_square_roots_bruteforce: n must satisfy 1 <= n <= 10^7, got " +
                            std::to_string(n));
  std::vector<std::uint64_t> roots;
  const std::uint64_t one = 1 % n;
  for (std::uint64_t x = 0; x < n; ++x)
    if (x * x % n == one) roots.push_back(x);
  return roots;
}

std::uint64_t count_sqrt1_halfrange(std::uint64_t n) {
  if (n == 0 || n >= kFactorizeLimit / 4)
    throw std::out_of_range("count_sqrt1_halfrange: n out of range, got " + std::to_string(n));
  const std::uint64_t modulus = 4 * n;
  std::uint64_t count = 0;
  for (std::uint64_t b = 0; b < 2 * n; ++b)
    if (static_cast<u128>(b) * b % modulus == 1) ++count;
  return count;
}

}  // namespace fmpartners::modarith
