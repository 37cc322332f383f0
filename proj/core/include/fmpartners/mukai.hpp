#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "fmpartners/lattice.hpp"

namespace fmpartners::mukai {

class InadmissibleDiscriminant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Discriminant d of a nonempty Hassett divisor: d >= 8, d = 0 or 2 mod 6.
class SpecialDiscriminant {
 public:
  /// Throws InadmissibleDiscriminant.
  explicit SpecialDiscriminant(std::uint64_t d);

  static bool admissible(std::uint64_t d) { return d >= 8 && (d % 6 == 0 || d % 6 == 2); }

  std::uint64_t d() const { return d_; }
  /// d / 18, defined exactly when 9 | d.
  std::optional<std::uint64_t> d_prime() const {
    if (d_ % 9 != 0) return std::nullopt;
    return d_ / 18;
  }

 private:
  std::uint64_t d_;
};

// Standard blocks.
lattice::GramMatrix hyperbolic_plane();
lattice::GramMatrix a2();
lattice::GramMatrix a2_negative();
lattice::GramMatrix e8_negative();

/// H^{2,2} model [[3, 0], [0, 6d']].
lattice::GramMatrix build_H22(std::uint64_t d_prime);
/// [[-6d']], generated by l.
lattice::GramMatrix build_S(std::uint64_t d_prime);
/// A_2 + <-6d'>.
lattice::GramMatrix build_N(std::uint64_t d_prime);
/// E8(-1)^2 + U + A_2(-1) + <6d'>, rank 21.
lattice::GramMatrix build_T(std::uint64_t d_prime);

/// Coordinates in the basis of S + T (rank 22, l first) of the distinguished
/// vectors l, t1 (t1^2 = -6) and t2 (t2^2 = 6d').
struct StVectors {
  RationalVector ell;
  RationalVector t1;
  RationalVector t2;
};

inline constexpr std::size_t kSRank = 1;
inline constexpr std::size_t kTRank = 21;
inline constexpr std::size_t kSTRank = kSRank + kTRank;

StVectors st_vectors();
/// The same vectors restricted to T coordinates.
RationalVector t1_in_T();
RationalVector t2_in_T();

/// Closed-form A_T = Z_3 + Z_{6d'} generated by t1/3, t2/6d', on T.
lattice::DiscriminantGroup disc_form_T(std::uint64_t d_prime);

/// Closed-form A_S + A_T = Z_{6d'} + Z_3 + Z_{6d'} generated by l/6d', t1/3,
/// t2/6d', on the lattice S + T.
lattice::DiscriminantGroup disc_form_ST(std::uint64_t d_prime);

}  // namespace fmpartners::mukai
