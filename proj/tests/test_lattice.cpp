#include <doctest.h>

#include <random>

#include "fmpartners/lattice.hpp"
#include "fmpartners/mukai.hpp"

using namespace fmpartners;
using namespace fmpartners::lattice;

namespace {

bool unimodular(const IntMatrix& m) {
  const Integer det = determinant(m);
  return det == 1 || det == -1;
}

GramMatrix random_even_gram(std::mt19937& rng, std::size_t rank) {
  std::uniform_int_distribution<int> off(-3, 3);
  std::uniform_int_distribution<int> diag(-4, 4);
  while (true) {
    IntMatrix m(rank, rank);
    for (std::size_t i = 0; i < rank; ++i) {
      m(i, i) = 2 * diag(rng);
      for (std::size_t j = i + 1; j < rank; ++j) m(i, j) = m(j, i) = off(rng);
    }
    if (determinant(m) != 0) return GramMatrix(std::move(m));
  }
}

RationalVector unit(std::size_t n, std::size_t i) {
  RationalVector v(n);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{2, -1}, {-1, 2}}) == 3);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(determinant(mukai::e8_negative().entries()) == 1);
}

TEST_CASE("smith normal form examples") {
  const auto id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.diagonal() == std::vector<Integer>{1, 1});

  const IntMatrix a2{{2, -1}, {-1, 2}};
  const auto s = smith_normal_form(a2);
  CHECK(s.diagonal() == std::vector<Integer>{1, 3});
  CHECK(s.U * a2 * s.V == s.D);
  CHECK(unimodular(s.U));
  CHECK(unimodular(s.V));

  CHECK(smith_normal_form(IntMatrix{{0, 1}, {1, 0}}).diagonal() == std::vector<Integer>{1, 1});
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry(rng);
    const auto s = smith_normal_form(m);
    REQUIRE(s.U * m * s.V == s.D);
    REQUIRE(unimodular(s.U));
    REQUIRE(unimodular(s.V));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (r != c) REQUIRE(s.D(r, c) == 0);
    const auto d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      REQUIRE(d[i] >= 0);
      if (d[i] == 0) REQUIRE(d[i + 1] == 0);
      else REQUIRE(d[i + 1] % d[i] == 0);
    }
  }
}

TEST_CASE("hermite normal form") {
  const IntMatrix m{{2, 0}, {0, 2}, {1, 1}};
  const auto h = hermite_normal_form(m);
  CHECK(h == IntMatrix{{1, 1}, {0, 2}});
  CHECK(hermite_normal_form(IntMatrix{{0, 0}, {0, 0}}).rows() == 0);
}

TEST_CASE("GramMatrix validation") {
  CHECK_THROWS_AS(GramMatrix(IntMatrix{{1, 2}, {2, 4}}), DegenerateLattice);
  CHECK_THROWS_AS(GramMatrix(IntMatrix{{1, 2}, {3, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(GramMatrix(IntMatrix{{1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("is_even") {
  CHECK(is_even(mukai::a2()));
  CHECK_FALSE(is_even(GramMatrix(IntMatrix{{3}})));
  CHECK(is_even(mukai::hyperbolic_plane()));
}

TEST_CASE("reduce_mod") {
  CHECK(reduce_mod(Rational(-1, 18), 2) == Rational(35, 18));
  CHECK(reduce_mod(Rational(5, 2), 2) == Rational(1, 2));
  CHECK(reduce_mod(Rational(4), 2) == 0);
  CHECK(reduce_mod(Rational(-2, 3), 1) == Rational(1, 3));
}

TEST_CASE("discriminant group of rank one lattices") {
  const auto g = discriminant_group(GramMatrix(IntMatrix{{-18}}));
  CHECK(g.orders() == std::vector<std::int64_t>{18});
  CHECK(g.q({1}) == reduce_mod(Rational(-1, 18), 2));
  CHECK(g.q({3}) == reduce_mod(Rational(-9, 18), 2));

  const auto u = discriminant_group(direct_sum(mukai::hyperbolic_plane(), mukai::hyperbolic_plane()));
  CHECK(u.order() == 1);
  CHECK(u.orders().empty());
}

TEST_CASE("discriminant group order equals |det| on random even lattices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_even_gram(rng, 2 + trial % 3);
    const auto disc = discriminant_group(g);
    Integer abs_det = g.determinant() < 0 ? Integer(-g.determinant()) : g.determinant();
    REQUIRE(Integer(static_cast<unsigned long>(disc.order())) == abs_det);
    REQUIRE(disc.is_invariant_factor_form());
    // d_i * g_i lies in L; q(n g) = n^2 q(g).
    for (std::size_t i = 0; i < disc.orders().size(); ++i) {
      for (std::size_t c = 0; c < g.rank(); ++c) REQUIRE(Rational(disc.lifts()(i, c) * disc.orders()[i]).get_den() == 1);
      auto x = disc.group().zero();
      x[i] = 1;
      for (std::int64_t n = 0; n < 5; ++n)
        REQUIRE(disc.q(disc.group().scale(x, n)) == reduce_mod(Rational(disc.q(x) * n * n), 2));
    }
  }
}

TEST_CASE("q is independent of the lift") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> shift(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_even_gram(rng, 3);
    const auto disc = discriminant_group(g);
    for (std::uint64_t code = 0; code < std::min<std::uint64_t>(disc.order(), 20); ++code) {
      const auto x = disc.group().decode(code);
      auto lift = disc.lift(x);
      const Rational base = g.norm(lift);
      for (auto& c : lift) c += shift(rng);
      const Rational diff = g.norm(lift) - base;
      REQUIRE(diff.get_den() == 1);
      REQUIRE(mpz_even_p(diff.get_num_mpz_t()));
      REQUIRE(disc.coordinates(lift) == x);
      REQUIRE(disc.q_of_lift(lift) == disc.q(x));
    }
  }
}

TEST_CASE("discriminant group of an orthogonal sum is the sum of the groups") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const auto a = random_even_gram(rng, 2);
    const auto b = random_even_gram(rng, 2);
    const auto da = discriminant_group(a);
    const auto db = discriminant_group(b);
    if (da.order() * db.order() > 5000) continue;

    std::vector<std::int64_t> orders = da.orders();
    orders.insert(orders.end(), db.orders().begin(), db.orders().end());
    const std::size_t ka = da.orders().size(), kb = db.orders().size();
    RationalMatrix lifts(ka + kb, 4);
    IntMatrix functionals(ka + kb, 4);
    for (std::size_t i = 0; i < ka; ++i)
      for (std::size_t c = 0; c < 2; ++c) lifts(i, c) = da.lifts()(i, c);
    for (std::size_t i = 0; i < kb; ++i)
      for (std::size_t c = 0; c < 2; ++c) lifts(ka + i, 2 + c) = db.lifts()(i, c);
    const DiscriminantGroup factorwise(orders, lifts, functionals, direct_sum(a, b));
    const auto whole = discriminant_group(direct_sum(a, b));
    REQUIRE(whole.order() == da.order() * db.order());
    REQUIRE(is_isometric(factorwise, whole));
  }
}

TEST_CASE("overlattice with empty glue is the base lattice") {
  const auto s = mukai::build_S(1);
  const auto t = mukai::build_T(1);
  const auto l = overlattice_from_glue(s, t, GlueDatum{});
  CHECK(l.index == 1);
  CHECK(l.determinant == s.determinant() * t.determinant());
  CHECK(smith_normal_form(l.gram.entries()).diagonal() ==
        smith_normal_form(direct_sum(s, t).entries()).diagonal());
}

TEST_CASE("overlattice from admissible cyclic glue") {
  const auto [ell, t1, t2] = mukai::st_vectors();
  RationalVector glue(ell.size());
  for (std::size_t i = 0; i < glue.size(); ++i) glue[i] = (ell[i] + t2[i]) / 6;
  const auto l = overlattice_from_glue(mukai::build_S(1), mukai::build_T(1), GlueDatum{{glue}});
  CHECK(is_even(l.gram));
  CHECK(l.index == 6);
  CHECK(abs(l.determinant) == 3);
  CHECK(l.gram.rank() == 22);

  // S and T stay saturated.
  IntMatrix s_rows(1, 22);
  const auto s_coords = l.coordinates_of(unit(22, 0));
  REQUIRE(s_coords);
  for (std::size_t c = 0; c < 22; ++c) s_rows(0, c) = (*s_coords)[c];
  CHECK(is_saturated(s_rows, l.gram));
}

TEST_CASE("overlattice rejects glue that fails the evenness congruence") {
  const auto [ell, t1, t2] = mukai::st_vectors();
  RationalVector bad(ell.size()), bad_k1(ell.size());
  for (std::size_t i = 0; i < bad.size(); ++i) {
    bad[i] = (ell[i] + t1[i] + t2[i]) / 6;
    bad_k1[i] = (ell[i] + 2 * t1[i] + t2[i]) / 6;  // b3 = 1, k = 1, d' = 1: 1 + 4 - 1 is not in 12Z
  }
  CHECK_THROWS_AS(overlattice_from_glue(mukai::build_S(1), mukai::build_T(1), GlueDatum{{bad}}),
                  GlueNotAdmissible);
  CHECK_THROWS_AS(overlattice_from_glue(mukai::build_S(1), mukai::build_T(1), GlueDatum{{bad_k1}}),
                  GlueNotAdmissible);
}

TEST_CASE("overlattice of an odd index-2 extension") {
  // Z(4) + Z(4) glued by (e1 + e2)/2 has Gram [[2, 2], [2, 4]] up to basis.
  const GramMatrix base(IntMatrix{{4, 0}, {0, 4}});
  const auto l = overlattice_from_glue(base, GlueDatum{{{Rational(1, 2), Rational(1, 2)}}});
  CHECK(l.index == 2);
  CHECK(l.determinant == 4);
  CHECK(is_even(l.gram));
}

TEST_CASE("is_saturated") {
  const GramMatrix z2(IntMatrix{{1, 0}, {0, 1}});
  CHECK(is_saturated(IntMatrix::identity(2), z2));
  CHECK(is_saturated(IntMatrix{{1, 0}}, z2));
  CHECK_FALSE(is_saturated(IntMatrix{{2, 0}}, z2));
  CHECK_FALSE(is_saturated(IntMatrix{{1, 1}, {1, -1}}, z2));
  CHECK_THROWS_AS(is_saturated(IntMatrix{{1, 2}, {2, 4}}, z2), std::invalid_argument);
  CHECK_THROWS_AS(is_saturated(IntMatrix{{1, 0, 0}}, z2), std::invalid_argument);
}

TEST_CASE("isometry search distinguishes forms") {
  // <2> and <-2> both have group Z_2 but q = 1/2 vs 3/2.
  const auto plus = discriminant_group(GramMatrix(IntMatrix{{2}}));
  const auto minus = discriminant_group(GramMatrix(IntMatrix{{-2}}));
  CHECK(is_isometric(plus, plus));
  CHECK_FALSE(is_isometric(plus, minus));
  // [[6, 3], [3, 2]] is another basis of A_2; A_2(-1) has the opposite form.
  CHECK(is_isometric(discriminant_group(mukai::a2()), discriminant_group(GramMatrix(IntMatrix{{6, 3}, {3, 2}}))));
  CHECK_FALSE(is_isometric(discriminant_group(mukai::a2()), discriminant_group(mukai::a2_negative())));
}
