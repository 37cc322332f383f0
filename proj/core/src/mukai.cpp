#include "fmpartners/mukai.hpp"

#include <array>
#include <string>
#include <utility>

namespace fmpartners::mukai {

using lattice::GramMatrix;

namespace {

// Offsets of the A_2(-1) block and the <6d'> block inside T.
constexpr std::size_t kA2Offset = 18;
constexpr std::size_t kT2Offset = 20;

Integer six_d_prime(std::uint64_t d_prime) {
  if (d_prime == 0) throw std::invalid_argument("d' must be positive");
  return Integer(6) * Integer(static_cast<unsigned long>(d_prime));
}

}  // namespace

SpecialDiscriminant::SpecialDiscriminant(std::uint64_t d) : d_(d) {
  if (!admissible(d))
    throw InadmissibleDiscriminant("d = " + std::to_string(d) +
                                   " is not admissible: need d >= 8 and d = 0 or 2 (mod 6)");
}

GramMatrix hyperbolic_plane() { return GramMatrix(IntMatrix{{0, 1}, {1, 0}}); }

GramMatrix a2() { return GramMatrix(IntMatrix{{2, -1}, {-1, 2}}); }

GramMatrix a2_negative() { return GramMatrix(IntMatrix{{-2, 1}, {1, -2}}); }

GramMatrix e8_negative() {
  // Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to 4.
  constexpr std::array<std::pair<int, int>, 7> kEdges{{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}}};
  IntMatrix m(8, 8);
  for (std::size_t i = 0; i < 8; ++i) m(i, i) = -2;
  for (auto [a, b] : kEdges) {
    m(a - 1, b - 1) = 1;
    m(b - 1, a - 1) = 1;
  }
  return GramMatrix(std::move(m));
}

GramMatrix build_H22(std::uint64_t d_prime) {
  return GramMatrix(IntMatrix{{3, 0}, {0, six_d_prime(d_prime)}});
}

GramMatrix build_S(std::uint64_t d_prime) { return GramMatrix(IntMatrix{{-six_d_prime(d_prime)}}); }

GramMatrix build_N(std::uint64_t d_prime) { return lattice::direct_sum(a2(), build_S(d_prime)); }

GramMatrix build_T(std::uint64_t d_prime) {
  IntMatrix m = block_diagonal(e8_negative().entries(), e8_negative().entries());
  m = block_diagonal(m, hyperbolic_plane().entries());
  m = block_diagonal(m, a2_negative().entries());
  m = block_diagonal(m, IntMatrix{{six_d_prime(d_prime)}});
  return GramMatrix(std::move(m));
}

RationalVector t1_in_T() {
  RationalVector v(kTRank);
  v[kA2Offset] = 1;
  v[kA2Offset + 1] = -1;
  return v;
}

RationalVector t2_in_T() {
  RationalVector v(kTRank);
  v[kT2Offset] = 1;
  return v;
}

StVectors st_vectors() {
  StVectors out{RationalVector(kSTRank), RationalVector(kSTRank), RationalVector(kSTRank)};
  out.ell[0] = 1;
  const auto t1 = t1_in_T();
  const auto t2 = t2_in_T();
  for (std::size_t i = 0; i < kTRank; ++i) {
    out.t1[kSRank + i] = t1[i];
    out.t2[kSRank + i] = t2[i];
  }
  return out;
}

lattice::DiscriminantGroup disc_form_T(std::uint64_t d_prime) {
  const Integer n = six_d_prime(d_prime);
  const auto t1 = t1_in_T();
  const auto t2 = t2_in_T();
  RationalMatrix lifts(2, kTRank);
  IntMatrix functionals(2, kTRank);
  for (std::size_t c = 0; c < kTRank; ++c) {
    lifts(0, c) = t1[c] / 3;
    lifts(1, c) = t2[c] / n;
  }
  functionals(0, kA2Offset) = 1;
  functionals(1, kT2Offset) = 1;
  return lattice::DiscriminantGroup({3, static_cast<std::int64_t>(6 * d_prime)}, std::move(lifts),
                                    std::move(functionals), build_T(d_prime));
}

lattice::DiscriminantGroup disc_form_ST(std::uint64_t d_prime) {
  const Integer n = six_d_prime(d_prime);
  const auto [ell, t1, t2] = st_vectors();

  RationalMatrix lifts(3, kSTRank);
  IntMatrix functionals(3, kSTRank);
  for (std::size_t c = 0; c < kSTRank; ++c) {
    lifts(0, c) = ell[c] / n;
    lifts(1, c) = t1[c] / 3;
    lifts(2, c) = t2[c] / n;
  }
  functionals(0, 0) = 1;
  functionals(1, kSRank + kA2Offset) = 1;
  functionals(2, kSRank + kT2Offset) = 1;

  const auto order = static_cast<std::int64_t>(6 * d_prime);
  return lattice::DiscriminantGroup({order, 3, order}, std::move(lifts), std::move(functionals),
                                    lattice::direct_sum(build_S(d_prime), build_T(d_prime)));
}

}  // namespace fmpartners::mukai
