#pragma once

#include <cstdint>
#include <vector>

namespace fmpartners::modarith {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer, primes strictly increasing.
/// The factorization of 1 is empty.
struct Factorization {
  std::vector<PrimePower> factors;

  /// Reconstructs the factored integer.
  std::uint64_t value() const;
  /// Number of distinct odd primes.
  unsigned odd_prime_count() const;
  /// Exponent of `p`, zero when it does not divide.
  unsigned exponent_of(std::uint64_t p) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline constexpr std::uint64_t kFactorizeLimit = std::uint64_t{1} << 63;
inline constexpr std::uint64_t kBruteforceRootsLimit = 10'000'000;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Throws std::out_of_range unless 1 <= n < 2^63.
Factorization factorize(std::uint64_t n);

/// |{x mod n : x^2 = 1 mod n}| via the CRT product over prime powers.
/// Throws std::out_of_range for n = 0 or n >= 2^63.
std::uint64_t unit_square_root_count(std::uint64_t n);
std::uint64_t unit_square_root_count(const Factorization& f);

/// Sorted residues 0 <= x < n with x^2 = 1 mod n, by direct scan.
/// Throws std::out_of_range unless 1 <= n <= 10^7.
std::vector<std::uint64_t> unit_square_roots_bruteforce(std::uint64_t n);

/// #{0 <= b < 2n : b^2 = 1 mod 4n}, by direct scan.
std::uint64_t count_sqrt1_halfrange(std::uint64_t n);

}  // namespace fmpartners::modarith
