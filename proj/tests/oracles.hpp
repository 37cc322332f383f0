#pragma once

// Test-only reference computations. None of these call into the code paths
// they are used to check.

#include <cstdint>
#include <utility>
#include <vector>

#include "fmpartners/lattice.hpp"
#include "fmpartners/mukai.hpp"

namespace oracles {

inline std::vector<std::pair<std::uint64_t, unsigned>> trial_division(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// |{x mod n : x^2 = 1}| straight from the definition.
inline std::uint64_t scan_unit_roots(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < n; ++x)
    if (x * x % n == 1 % n) ++count;
  return count;
}

/// The three shapes of even d: 2^{a+1}; 2 p1^e1...pk^ek; 2^{a+1} p1^e1...pk^ek.
inline std::uint64_t shape_closed_form(std::uint64_t d) {
  unsigned twos = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  unsigned k = 0;
  for (std::uint64_t p = 3; p * p <= d; p += 2)
    if (d % p == 0) {
      ++k;
      while (d % p == 0) d /= p;
    }
  if (d > 1) ++k;
  if (k == 0) return 4;                 // d = 2^{a+1}, a >= 1
  if (twos == 1) return 1ull << (k + 1);  // d = 2 * odd
  return 1ull << (k + 2);               // d = 2^{a+1} * odd
}

/// Evenness of the cyclic glue vector (b3 l + 2d'k t1 + t2)/(6d'), decided by
/// evaluating its norm in S + T directly.
inline bool cyclic_glue_even(std::uint64_t d_prime, std::int64_t k, std::int64_t b3) {
  using fmpartners::Rational;
  const auto st = fmpartners::lattice::direct_sum(fmpartners::mukai::build_S(d_prime),
                                                   fmpartners::mukai::build_T(d_prime));
  const auto v = fmpartners::mukai::st_vectors();
  fmpartners::RationalVector x(v.ell.size());
  const long dp = static_cast<long>(d_prime);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = (Rational(b3) * v.ell[i] + Rational(2 * dp * k) * v.t1[i] + v.t2[i]) / Rational(6 * dp);
  const Rational norm = st.norm(x);
  return norm.get_den() == 1 && mpz_even_p(norm.get_num_mpz_t());
}

}  // namespace oracles
