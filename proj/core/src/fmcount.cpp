#include "fmpartners/fmcount.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fmpartners/modarith.hpp"
#include "fmpartners/mukai.hpp"

namespace fmpartners::fmcount {

namespace {

using u128 = unsigned __int128;
using Element = FiniteAbelianGroup::Element;

void require_positive(std::uint64_t d_prime) {
  if (d_prime == 0) throw std::invalid_argument("d' must be positive");
}

std::uint64_t exact_scale(std::uint64_t u, std::uint64_t num, std::uint64_t den, const char* what) {
  if ((u * num) % den != 0)
    throw std::logic_error(std::string(what) + ": " + std::to_string(u) + " * " + std::to_string(num) +
                           " not divisible by " + std::to_string(den));
  return u * num / den;
}

std::int64_t as_signed(std::uint64_t x) { return static_cast<std::int64_t>(x); }

}  // namespace

// ---------------------------------------------------------------- enumerators

std::vector<OverlatticeDescriptor> enumerate_type_I(std::uint64_t d_prime) {
  require_positive(d_prime);
  std::vector<OverlatticeDescriptor> out;
  const std::uint64_t two_d = 2 * d_prime;
  const std::uint64_t four_d = 4 * d_prime;
  for (std::int64_t b1 = 1; b1 <= 2; ++b1) {
    // ((b1 l + t1)/3)^2 = -2(b1^2 d' + 1)/3 must be even.
    if ((static_cast<std::uint64_t>(b1 * b1) * d_prime + 1) % 3 != 0) continue;
    for (std::uint64_t b2 = 0; b2 < two_d; ++b2) {
      // ((b2 l + t2)/(2d'))^2 = -3(b2^2 - 1)/(2d') must be even.
      if (static_cast<u128>(b2) * b2 % four_d != 1 % four_d) continue;
      if (std::gcd(b2, two_d) != 1) throw std::logic_error("enumerate_type_I: b2 not coprime to 2d'");
      out.emplace_back(TypeIGlue{b1, as_signed(b2)});
    }
  }
  return out;
}

std::vector<OverlatticeDescriptor> enumerate_type_II(std::uint64_t d_prime, int k) {
  require_positive(d_prime);
  if (k < 0 || k > 2) throw std::invalid_argument("enumerate_type_II: k must be 0, 1 or 2");
  std::vector<OverlatticeDescriptor> out;
  const std::uint64_t six_d = 6 * d_prime;
  const std::uint64_t twelve_d = 12 * d_prime;
  const u128 shift = static_cast<u128>(4) * d_prime * static_cast<std::uint64_t>(k * k);
  for (std::uint64_t b3 = 0; b3 < six_d; ++b3) {
    if (std::gcd(b3, six_d) != 1) continue;
    // b3^2 + 4d'k^2 - 1 must lie in 12d' Z.
    if ((static_cast<u128>(b3) * b3 + shift - 1) % twelve_d != 0) continue;
    out.emplace_back(TypeIIGlue{k, as_signed(b3)});
  }
  return out;
}

std::vector<OverlatticeDescriptor> enumerate_all(std::uint64_t d_prime) {
  auto out = enumerate_type_I(d_prime);
  for (int k = 0; k < 3; ++k) {
    auto part = enumerate_type_II(d_prime, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

MstCounts count_M_ST_by_type(std::uint64_t d_prime) {
  return {enumerate_type_I(d_prime).size(), enumerate_type_II(d_prime, 0).size(),
          enumerate_type_II(d_prime, 1).size(), enumerate_type_II(d_prime, 2).size()};
}

std::uint64_t count_M_ST(std::uint64_t d_prime) { return count_M_ST_by_type(d_prime).total(); }

MstCounts closed_form_counts(std::uint64_t d_prime) {
  require_positive(d_prime);
  const std::uint64_t u4 = modarith::unit_square_root_count(4 * d_prime);
  const std::uint64_t u12 = modarith::unit_square_root_count(12 * d_prime);
  MstCounts c;
  c.type_I = d_prime % 3 == 2 ? u4 : 0;
  c.type_II_k0 = exact_scale(u12, 1, 2, "closed_form_counts");
  if (d_prime % 3 == 0) {
    c.type_II_k1 = exact_scale(u4, 1, 2, "closed_form_counts");
    c.type_II_k2 = c.type_II_k1;
  }
  return c;
}

std::uint64_t count_M_ST_closed_form(std::uint64_t d_prime) {
  require_positive(d_prime);
  const std::uint64_t u4 = modarith::unit_square_root_count(4 * d_prime);
  switch (d_prime % 3) {
    case 0: return exact_scale(u4, 3, 2, "count_M_ST_closed_form");
    case 1: return u4;
    default: return 2 * u4;
  }
}

// ---------------------------------------------------------------- glue subgroups

FiniteAbelianGroup glue_group(std::uint64_t d_prime) {
  require_positive(d_prime);
  const auto n = as_signed(6 * d_prime);
  return FiniteAbelianGroup({n, 3, n});
}

std::vector<Element> glue_generators(const OverlatticeDescriptor& desc, std::uint64_t d_prime) {
  const auto group = glue_group(d_prime);
  const auto dp = as_signed(d_prime);
  if (const auto* g = std::get_if<TypeIGlue>(&desc)) {
    // (b1 l + t1)/3 = 2d' b1 (l/6d') + (t1/3);  (b2 l + t2)/2d' = 3 b2 (l/6d') + 3 (t2/6d').
    return {group.normalize({2 * dp * g->b1, 1, 0}), group.normalize({3 * g->b2, 0, 3})};
  }
  const auto& g = std::get<TypeIIGlue>(desc);
  return {group.normalize({g.b3, g.k, 1})};
}

std::vector<std::uint64_t> glue_subgroup(const OverlatticeDescriptor& desc, std::uint64_t d_prime) {
  return glue_group(d_prime).subgroup(glue_generators(desc, d_prime));
}

std::vector<std::uint64_t> glue_subgroup_ell_negated(const OverlatticeDescriptor& desc,
                                                     std::uint64_t d_prime) {
  auto generators = glue_generators(desc, d_prime);
  const auto group = glue_group(d_prime);
  for (auto& g : generators) {
    g[0] = -g[0];
    g = group.normalize(g);
  }
  return group.subgroup(generators);
}

lattice::GlueDatum to_glue_datum(const OverlatticeDescriptor& desc, std::uint64_t d_prime) {
  require_positive(d_prime);
  const auto [ell, t1, t2] = mukai::st_vectors();
  const Integer dp(static_cast<unsigned long>(d_prime));
  lattice::GlueDatum glue;
  auto combine = [&](const Integer& a, const Integer& b, const Integer& c, const Integer& den) {
    RationalVector v(mukai::kSTRank);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = Rational(a * ell[i] + b * t1[i] + c * t2[i]) / den;
    }
    return v;
  };
  if (const auto* g = std::get_if<TypeIGlue>(&desc)) {
    glue.generators.push_back(combine(Integer(static_cast<long>(g->b1)), 1, 0, 3));
    glue.generators.push_back(combine(Integer(static_cast<long>(g->b2)), 0, 1, 2 * dp));
  } else {
    const auto& g2 = std::get<TypeIIGlue>(desc);
    glue.generators.push_back(
        combine(Integer(static_cast<long>(g2.b3)), 2 * dp * static_cast<long>(g2.k), 1, 6 * dp));
  }
  return glue;
}

bool AssemblyReport::valid(std::uint64_t d_prime) const {
  return even && rank == mukai::kSTRank && abs(determinant) == 3 &&
         index == Integer(6) * static_cast<unsigned long>(d_prime) && s_saturated && t_saturated;
}

AssemblyReport assemble(const OverlatticeDescriptor& desc, std::uint64_t d_prime) {
  const auto l = lattice::overlattice_from_glue(mukai::build_S(d_prime), mukai::build_T(d_prime),
                                                to_glue_datum(desc, d_prime));
  AssemblyReport report;
  report.even = lattice::is_even(l.gram);
  report.rank = l.gram.rank();
  report.determinant = l.determinant;
  report.index = l.index;

  auto image = [&](std::size_t first, std::size_t count) {
    IntMatrix rows(count, mukai::kSTRank);
    for (std::size_t r = 0; r < count; ++r) {
      RationalVector e(mukai::kSTRank);
      e[first + r] = 1;
      const auto coords = l.coordinates_of(e);
      if (!coords) throw std::logic_error("assemble: base vector not in the overlattice");
      for (std::size_t c = 0; c < mukai::kSTRank; ++c) rows(r, c) = (*coords)[c];
    }
    return rows;
  };
  report.s_saturated = lattice::is_saturated(image(0, mukai::kSRank), l.gram);
  report.t_saturated = lattice::is_saturated(image(mukai::kSRank, mukai::kTRank), l.gram);
  return report;
}

// ---------------------------------------------------------------- oracles

namespace {

// Graph subgroups <(1, y, z)>: the projection to A_S is onto, so H is the
// graph of 1 -> (y, z). H meets A_T trivially automatically and meets A_S
// trivially iff (y, z) has order 6d'. Isotropy of the generator makes the
// whole cyclic subgroup isotropic.
template <typename Visit>
void for_each_oracle_subgroup(std::uint64_t d_prime, Visit&& visit) {
  require_positive(d_prime);
  if (d_prime > kOracleMaxDPrime)
    throw std::out_of_range("glue oracle: d' must be <= 10^4, got " + std::to_string(d_prime));
  const auto form = mukai::disc_form_ST(d_prime);
  const auto& group = form.group();
  const auto n = as_signed(6 * d_prime);
  const FiniteAbelianGroup target({3, n});
  for (std::int64_t y = 0; y < 3; ++y)
    for (std::int64_t z = 0; z < n; ++z) {
      if (target.element_order({y, z}) != n) continue;
      const Element generator{1, y, z};
      if (group.element_order(generator) != n) continue;
      if (form.q(generator) != 0) continue;
      visit(generator);
    }
}

}  // namespace

std::uint64_t glue_oracle_count(std::uint64_t d_prime) {
  std::uint64_t count = 0;
  for_each_oracle_subgroup(d_prime, [&](const Element&) { ++count; });
  return count;
}

std::vector<std::vector<std::uint64_t>> glue_oracle_subgroups(std::uint64_t d_prime) {
  const auto group = glue_group(d_prime);
  std::vector<std::vector<std::uint64_t>> out;
  for_each_oracle_subgroup(d_prime, [&](const Element& g) {
    const std::vector<Element> gens{g};
    out.push_back(group.subgroup(gens));
  });
  return out;
}

std::uint64_t glue_oracle_exhaustive(std::uint64_t d_prime) {
  require_positive(d_prime);
  if (d_prime > kExhaustiveMaxDPrime)
    throw std::out_of_range("glue_oracle_exhaustive: d' must be <= 10, got " + std::to_string(d_prime));

  const auto form = mukai::disc_form_ST(d_prime);
  const auto& group = form.group();
  const auto& mod = group.moduli();
  const std::int64_t target_index = as_signed(18 * d_prime);

  // Lattices N Z^3 <= Lambda <= Z^3 with rows (a,b,c), (0,e,f), (0,0,g) in
  // Hermite normal form, 0 <= b < e, 0 <= c, f < g. Each subgroup of
  // A_S + A_T is Lambda / N Z^3 for exactly one such Lambda.
  auto contains = [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e, std::int64_t f,
                     std::int64_t g, std::array<std::int64_t, 3> v) {
    if (v[0] % a != 0) return false;
    const std::int64_t m1 = v[0] / a;
    v[1] -= m1 * b;
    v[2] -= m1 * c;
    if (v[1] % e != 0) return false;
    v[2] -= (v[1] / e) * f;
    return v[2] % g == 0;
  };

  std::uint64_t count = 0;
  for (std::int64_t a = 1; a <= mod[0]; ++a) {
    if (mod[0] % a != 0 || target_index % a != 0) continue;
    for (std::int64_t e = 1; e <= target_index / a; ++e) {
      if ((target_index / a) % e != 0) continue;
      const std::int64_t g = target_index / (a * e);
      for (std::int64_t b = 0; b < e; ++b)
        for (std::int64_t c = 0; c < g; ++c)
          for (std::int64_t f = 0; f < g; ++f) {
            if (!contains(a, b, c, e, f, g, {mod[0], 0, 0}) || !contains(a, b, c, e, f, g, {0, mod[1], 0}) ||
                !contains(a, b, c, e, f, g, {0, 0, mod[2]}))
              continue;
            const std::vector<Element> gens{group.normalize({a, b, c}), group.normalize({0, e, f}),
                                            group.normalize({0, 0, g})};
            const auto members = group.subgroup(gens);
            if (members.size() != 6 * d_prime) throw std::logic_error("glue_oracle_exhaustive: bad index");
            bool ok = true;
            for (auto code : members) {
              if (code == 0) continue;
              const Element x = group.decode(code);
              const bool in_s = x[1] == 0 && x[2] == 0;
              const bool in_t = x[0] == 0;
              if (in_s || in_t || form.q(x) != 0) {
                ok = false;
                break;
              }
            }
            if (ok) ++count;
          }
    }
  }
  return count;
}

// ---------------------------------------------------------------- FM counts

std::uint64_t fm_count(std::uint64_t d) {
  const mukai::SpecialDiscriminant sd(d);
  const std::uint64_t u = modarith::unit_square_root_count(2 * d);
  if (d % 3 != 0) return exact_scale(u, 1, 4, "fm_count");
  if (d % 9 != 0) return exact_scale(u, 1, 8, "fm_count");
  if (d % 27 == 0) return exact_scale(u, 3, 4, "fm_count");
  return *sd.d_prime() % 3 == 1 ? exact_scale(u, 1, 4, "fm_count") : exact_scale(u, 1, 2, "fm_count");
}

std::uint64_t fm_count_via_overlattices(std::uint64_t d) {
  if (d == 0 || d % 18 != 0)
    throw std::invalid_argument("fm_count_via_overlattices: d must be divisible by 18, got " + std::to_string(d));
  const std::uint64_t m = count_M_ST(d / 18);
  // Each partner Y has four triples (Y, +-phi, +-psi); they map 2-to-1 onto M_{S,T}.
  const std::uint64_t triples = 2 * m;
  const std::uint64_t partners = exact_scale(triples, 1, 4, "fm_count_via_overlattices");
  if (2 * partners != m) throw std::logic_error("fm_count_via_overlattices: |M_ST| is odd");
  return partners;
}

FMRecord make_record(std::uint64_t d, const RecordOptions& options) {
  FMRecord r;
  r.d = d;
  r.count_formula = fm_count(d);
  r.u_2d = modarith::unit_square_root_count(2 * d);
  if (d % 18 != 0) return r;

  const std::uint64_t dp = d / 18;
  r.d_prime = dp;
  if (dp <= options.enumeration_max_d_prime) {
    r.counts_by_type = count_M_ST_by_type(dp);
    r.count_enumeration = fm_count_via_overlattices(d);
    if (r.counts_by_type->total() != 2 * *r.count_enumeration) r.agree = false;
  }
  if (dp <= options.oracle_max_d_prime) {
    const std::uint64_t oracle = glue_oracle_count(dp);
    r.count_oracle = oracle / 2;
    if (oracle % 2 != 0) r.agree = false;
  }
  if (r.count_enumeration && *r.count_enumeration != r.count_formula) r.agree = false;
  if (r.count_oracle && *r.count_oracle != r.count_formula) r.agree = false;
  return r;
}

}  // namespace fmpartners::fmcount
