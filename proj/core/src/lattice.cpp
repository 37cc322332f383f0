#include "fmpartners/lattice.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace fmpartners::lattice {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

std::int64_t to_int64(const Integer& x, const char* what) {
  if (!x.fits_slong_p()) throw std::overflow_error(std::string(what) + ": value exceeds 64 bits");
  return x.get_si();
}

bool is_integral(const Rational& x) { return x.get_den() == 1; }

RationalMatrix product_transpose(const RationalMatrix& a, const IntMatrix& g) {
  // a * g * a^T
  RationalMatrix ag(a.rows(), g.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < g.cols(); ++j)
        if (g(k, j) != 0) ag(i, j) += a(i, k) * g(k, j);
    }
  RationalMatrix out(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (a(j, k) != 0) out(i, j) += ag(i, k) * a(j, k);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- GramMatrix

GramMatrix::GramMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw std::invalid_argument("GramMatrix: must be square with rank >= 1");
  for (std::size_t r = 0; r < entries_.rows(); ++r)
    for (std::size_t c = r + 1; c < entries_.cols(); ++c)
      if (entries_(r, c) != entries_(c, r)) throw std::invalid_argument("GramMatrix: not symmetric");
  determinant_ = fmpartners::determinant(entries_);
  if (determinant_ == 0) throw DegenerateLattice("GramMatrix: degenerate (det = 0)");
}

bool GramMatrix::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (mpz_odd_p(entries_(i, i).get_mpz_t())) return false;
  return true;
}

Rational GramMatrix::pair(const RationalVector& x, const RationalVector& y) const {
  if (x.size() != rank() || y.size() != rank())
    throw std::invalid_argument("GramMatrix: vector dimension mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0 && entries_(i, j) != 0) row += entries_(i, j) * y[j];
    total += x[i] * row;
  }
  return total;
}

Rational GramMatrix::norm(const RationalVector& x) const { return pair(x, x); }

GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b) {
  return GramMatrix(block_diagonal(a.entries(), b.entries()));
}

bool is_even(const GramMatrix& g) { return g.is_even(); }

// ---------------------------------------------------------------- normal forms

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& d = s.D;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (d(r, c) != 0 && (pr == rows || abs_value(d(r, c)) < abs_value(d(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr == rows) return s;
      d.swap_rows(t, pr);
      s.U.swap_rows(t, pr);
      d.swap_cols(t, pc);
      s.V.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (d(r, t) == 0) continue;
        const Integer q = d(r, t) / d(t, t);
        d.add_row_multiple(r, t, -q);
        s.U.add_row_multiple(r, t, -q);
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (d(t, c) == 0) continue;
        const Integer q = d(t, c) / d(t, t);
        d.add_col_multiple(c, t, -q);
        s.V.add_col_multiple(c, t, -q);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      std::size_t bad_row = rows;
      for (std::size_t r = t + 1; r < rows && bad_row == rows; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (d(r, c) % d(t, t) != 0) {
            bad_row = r;
            break;
          }
      if (bad_row == rows) break;
      d.add_row_multiple(t, bad_row, 1);
      s.U.add_row_multiple(t, bad_row, 1);
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < rows; ++c) s.U(t, c) = -s.U(t, c);
    }
  }
  return s;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  const std::size_t rows = h.rows();
  const std::size_t cols = h.cols();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r)
        if (h(r, c) != 0 && (best == rows || abs_value(h(r, c)) < abs_value(h(best, c)))) best = r;
      if (best == rows) break;
      h.swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        if (h(r, c) == 0) continue;
        const Integer q = h(r, c) / h(pivot_row, c);
        h.add_row_multiple(r, pivot_row, -q);
        if (h(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0)
      for (std::size_t j = 0; j < cols; ++j) h(pivot_row, j) = -h(pivot_row, j);
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, c).get_mpz_t(), h(pivot_row, c).get_mpz_t());
      if (q != 0) h.add_row_multiple(r, pivot_row, -q);
    }
    ++pivot_row;
  }
  IntMatrix out(pivot_row, cols);
  for (std::size_t r = 0; r < pivot_row; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = h(r, c);
  return out;
}

Rational reduce_mod(const Rational& x, const Integer& modulus) {
  // x - modulus * floor(x / modulus)
  const Rational ratio = x / modulus;
  Integer floor_q;
  mpz_fdiv_q(floor_q.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  Rational out = x - Rational(floor_q * modulus);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------- discriminant groups

DiscriminantGroup::DiscriminantGroup(std::vector<std::int64_t> orders, RationalMatrix lifts,
                                     IntMatrix functionals, GramMatrix gram)
    : group_(std::move(orders)),
      lifts_(std::move(lifts)),
      functionals_(std::move(functionals)),
      gram_(std::move(gram)),
      even_(gram_.is_even()) {
  const std::size_t k = group_.rank();
  if (lifts_.rows() != k || functionals_.rows() != k)
    throw std::invalid_argument("DiscriminantGroup: one lift and functional per generator");
  if (k > 0 && (lifts_.cols() != gram_.rank() || functionals_.cols() != gram_.rank()))
    throw std::invalid_argument("DiscriminantGroup: lift dimension mismatch");
  pairings_ = RationalMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) pairings_(i, j) = gram_.pair(lifts_.row(i), lifts_.row(j));
}

bool DiscriminantGroup::is_invariant_factor_form() const {
  const auto& o = orders();
  for (std::size_t i = 0; i + 1 < o.size(); ++i)
    if (o[i + 1] % o[i] != 0) return false;
  return true;
}

RationalVector DiscriminantGroup::lift(const Element& x) const {
  RationalVector out(gram_.rank());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += lifts_(i, c) * x[i];
  }
  return out;
}

Rational DiscriminantGroup::q(const Element& x) const {
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    total += pairings_(i, i) * x[i] * x[i];
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j] != 0) total += 2 * pairings_(i, j) * x[i] * x[j];
  }
  return reduce_mod(total, q_modulus());
}

Rational DiscriminantGroup::b(const Element& x, const Element& y) const {
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) total += pairings_(i, j) * x[i] * y[j];
  }
  return reduce_mod(total, 1);
}

Rational DiscriminantGroup::q_of_lift(const RationalVector& x) const {
  return reduce_mod(gram_.norm(x), q_modulus());
}

DiscriminantGroup::Element DiscriminantGroup::coordinates(const RationalVector& x) const {
  if (x.size() != gram_.rank()) throw std::invalid_argument("coordinates: dimension mismatch");
  for (std::size_t r = 0; r < gram_.rank(); ++r) {
    Rational pairing = 0;
    for (std::size_t c = 0; c < x.size(); ++c) pairing += gram_(r, c) * x[c];
    if (!is_integral(pairing)) throw std::invalid_argument("coordinates: vector not in the dual lattice");
  }
  Element out(group_.rank());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Rational value = 0;
    for (std::size_t c = 0; c < x.size(); ++c) value += functionals_(i, c) * x[c];
    value *= orders()[i];
    if (!is_integral(value)) throw std::logic_error("coordinates: functional not integral on dual");
    Integer reduced;
    mpz_fdiv_r(reduced.get_mpz_t(), value.get_num_mpz_t(), Integer(orders()[i]).get_mpz_t());
    out[i] = reduced.get_si();
  }
  return out;
}

DiscriminantGroup discriminant_group(const GramMatrix& g) {
  const SmithForm snf = smith_normal_form(g.entries());
  const std::size_t n = g.rank();
  const RationalMatrix v_inverse = inverse(to_rational(snf.V));

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.D(i, i) != 1) kept.push_back(i);

  std::vector<std::int64_t> orders;
  RationalMatrix lifts(kept.size(), n);
  IntMatrix functionals(kept.size(), n);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const std::size_t i = kept[k];
    orders.push_back(to_int64(snf.D(i, i), "discriminant_group"));
    for (std::size_t c = 0; c < n; ++c) {
      lifts(k, c) = Rational(snf.V(c, i), snf.D(i, i));
      lifts(k, c).canonicalize();
      if (!is_integral(v_inverse(i, c))) throw std::logic_error("discriminant_group: V not unimodular");
      functionals(k, c) = v_inverse(i, c).get_num();
    }
  }
  return DiscriminantGroup(std::move(orders), std::move(lifts), std::move(functionals), g);
}

std::optional<std::vector<DiscriminantGroup::Element>> find_isometric_embedding(
    const DiscriminantGroup& source, const DiscriminantGroup& target) {
  using Element = DiscriminantGroup::Element;
  constexpr std::uint64_t kSearchLimit = 5'000'000;
  if (target.order() > kSearchLimit)
    throw std::out_of_range("find_isometric_embedding: target group too large to search");
  if (source.even() != target.even()) return std::nullopt;

  const std::size_t k = source.orders().size();
  std::vector<Element> generators(k);
  for (std::size_t i = 0; i < k; ++i) {
    generators[i] = source.group().zero();
    generators[i][i] = 1;
  }

  std::vector<std::vector<Element>> candidates(k);
  for (std::uint64_t code = 0; code < target.order(); ++code) {
    Element x = target.group().decode(code);
    const auto order = target.group().element_order(x);
    for (std::size_t i = 0; i < k; ++i)
      if (order == source.orders()[i] && target.q(x) == source.q(generators[i])) candidates[i].push_back(x);
  }

  std::vector<Element> images(k);
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == k) return target.group().subgroup(images).size() == source.order();
    for (const auto& x : candidates[i]) {
      bool consistent = true;
      for (std::size_t j = 0; j < i && consistent; ++j)
        consistent = target.b(x, images[j]) == source.b(generators[i], generators[j]);
      if (!consistent) continue;
      images[i] = x;
      if (search(i + 1)) return true;
    }
    return false;
  };
  if (search(0)) return images;
  return std::nullopt;
}

bool is_isometric(const DiscriminantGroup& a, const DiscriminantGroup& b) {
  return a.order() == b.order() && find_isometric_embedding(a, b).has_value();
}

// ---------------------------------------------------------------- overlattices

std::optional<IntVector> Overlattice::coordinates_of(const RationalVector& v) const {
  if (v.size() != basis.rows()) throw std::invalid_argument("coordinates_of: dimension mismatch");
  IntVector out(basis.rows());
  for (std::size_t c = 0; c < basis.rows(); ++c) {
    Rational value = 0;
    for (std::size_t r = 0; r < v.size(); ++r)
      if (v[r] != 0) value += v[r] * basis_inverse(r, c);
    if (!is_integral(value)) return std::nullopt;
    out[c] = value.get_num();
  }
  return out;
}

Overlattice overlattice_from_glue(const GramMatrix& base, const GlueDatum& glue) {
  const std::size_t n = base.rank();
  Integer denominator = 1;
  for (const auto& g : glue.generators) {
    if (g.size() != n) throw std::invalid_argument("overlattice_from_glue: glue vector dimension mismatch");
    for (std::size_t r = 0; r < n; ++r) {
      Rational pairing = 0;
      for (std::size_t c = 0; c < n; ++c) pairing += base(r, c) * g[c];
      if (!is_integral(pairing))
        throw GlueNotAdmissible("overlattice_from_glue: glue vector does not pair integrally with the base");
      mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), g[r].get_den_mpz_t());
    }
  }

  IntMatrix generators(n + glue.generators.size(), n);
  for (std::size_t i = 0; i < n; ++i) generators(i, i) = denominator;
  for (std::size_t k = 0; k < glue.generators.size(); ++k)
    for (std::size_t c = 0; c < n; ++c) {
      const Rational scaled = glue.generators[k][c] * denominator;
      generators(n + k, c) = scaled.get_num();
    }
  const IntMatrix hnf = hermite_normal_form(generators);
  if (hnf.rows() != n) throw std::logic_error("overlattice_from_glue: rank changed");

  RationalMatrix basis(n, n);
  Integer scaled_det = 1;
  for (std::size_t r = 0; r < n; ++r) {
    scaled_det *= hnf(r, r);
    for (std::size_t c = 0; c < n; ++c) {
      basis(r, c) = Rational(hnf(r, c), denominator);
      basis(r, c).canonicalize();
    }
  }

  const RationalMatrix gram_q = product_transpose(basis, base.entries());
  IntMatrix gram(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_integral(gram_q(r, c)))
        throw GlueNotAdmissible("overlattice_from_glue: glue vectors do not pair integrally");
      gram(r, c) = gram_q(r, c).get_num();
    }

  Integer denominator_power;
  mpz_pow_ui(denominator_power.get_mpz_t(), denominator.get_mpz_t(), n);
  Integer index = denominator_power / scaled_det;
  if (index * scaled_det != denominator_power)
    throw std::logic_error("overlattice_from_glue: non-integral index");

  GramMatrix l(std::move(gram));
  Integer det = l.determinant();
  if (det * index * index != base.determinant())
    throw std::logic_error("overlattice_from_glue: determinant does not match index");
  RationalMatrix basis_inverse = inverse(basis);
  return Overlattice{std::move(l), std::move(basis), std::move(basis_inverse), std::move(index), std::move(det)};
}

Overlattice overlattice_from_glue(const GramMatrix& s, const GramMatrix& t, const GlueDatum& glue) {
  return overlattice_from_glue(direct_sum(s, t), glue);
}

bool is_saturated(const IntMatrix& sub_basis, const GramMatrix& l) {
  if (sub_basis.cols() != l.rank()) throw std::invalid_argument("is_saturated: dimension mismatch");
  const SmithForm snf = smith_normal_form(sub_basis);
  bool saturated = true;
  for (std::size_t i = 0; i < sub_basis.rows(); ++i) {
    if (i >= sub_basis.cols() || snf.D(i, i) == 0)
      throw std::invalid_argument("is_saturated: sub-basis vectors are linearly dependent");
    if (snf.D(i, i) != 1) saturated = false;
  }
  return saturated;
}

}  // namespace fmpartners::lattice
