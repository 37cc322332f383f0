#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fmpartners/finite_group.hpp"
#include "fmpartners/matrix.hpp"

namespace fmpartners::lattice {

class DegenerateLattice : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when glue vectors do not pair integrally with the base lattice or
/// with each other.
class GlueNotAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symmetric nondegenerate integer Gram matrix. Validated on construction.
class GramMatrix {
 public:
  explicit GramMatrix(IntMatrix entries);

  std::size_t rank() const { return entries_.rows(); }
  const IntMatrix& entries() const { return entries_; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }
  const Integer& determinant() const { return determinant_; }
  bool is_even() const;

  /// Self-pairing of a rational coordinate vector.
  Rational norm(const RationalVector& x) const;
  Rational pair(const RationalVector& x, const RationalVector& y) const;

  friend bool operator==(const GramMatrix& a, const GramMatrix& b) { return a.entries_ == b.entries_; }

 private:
  IntMatrix entries_;
  Integer determinant_;
};

GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b);

/// True iff every diagonal entry is even.
bool is_even(const GramMatrix& g);

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Diagonal entries of D, including trailing zeros.
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form: the nonzero rows of the result form an
/// echelon basis of the row lattice of `m`, pivots positive, entries above
/// each pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Reduces a rational into [0, modulus).
Rational reduce_mod(const Rational& x, const Integer& modulus);

/// The finite group L*/L as a sum of cyclic summands, each generator carrying
/// a lift in L (x) Q. Lifts and functionals are expressed in the coordinates
/// of the lattice basis. Quadratic values live in Q/2Z for even lattices and
/// in Q/Z otherwise, stored reduced into [0, 2) or [0, 1).
class DiscriminantGroup {
 public:
  using Element = FiniteAbelianGroup::Element;

  /// `functionals` row i maps a lift x to its i-th coordinate
  /// orders[i] * <row_i, x> mod orders[i].
  DiscriminantGroup(std::vector<std::int64_t> orders, RationalMatrix lifts, IntMatrix functionals,
                    GramMatrix gram);

  const std::vector<std::int64_t>& orders() const { return group_.moduli(); }
  const FiniteAbelianGroup& group() const { return group_; }
  const RationalMatrix& lifts() const { return lifts_; }
  const GramMatrix& gram() const { return gram_; }
  std::uint64_t order() const { return group_.order(); }
  bool even() const { return even_; }
  /// 2 for even lattices, 1 otherwise.
  Integer q_modulus() const { return even_ ? 2 : 1; }

  /// True when orders form a divisibility chain (invariant-factor form).
  bool is_invariant_factor_form() const;

  /// Lift of an element: sum of coefficient * generator lift.
  RationalVector lift(const Element& x) const;
  Rational q(const Element& x) const;
  Rational b(const Element& x, const Element& y) const;

  /// Quadratic value of an arbitrary dual vector, reduced.
  Rational q_of_lift(const RationalVector& x) const;

  /// Coordinates of the class of a dual vector. Throws std::invalid_argument
  /// when `x` is not in the dual lattice.
  Element coordinates(const RationalVector& x) const;

 private:
  FiniteAbelianGroup group_;
  RationalMatrix lifts_;
  IntMatrix functionals_;
  GramMatrix gram_;
  RationalMatrix pairings_;
  bool even_;
};

/// L*/L via the Smith normal form of the Gram matrix. Only invariant factors
/// >= 2 appear; the group is trivial for unimodular lattices.
DiscriminantGroup discriminant_group(const GramMatrix& g);

/// Searches for an isometric embedding of `source` into `target`: images of
/// the source generators with matching orders, matching q-values and
/// pairings, generating a subgroup of order |source|. Returns the images.
std::optional<std::vector<DiscriminantGroup::Element>> find_isometric_embedding(
    const DiscriminantGroup& source, const DiscriminantGroup& target);

bool is_isometric(const DiscriminantGroup& a, const DiscriminantGroup& b);

/// Glue vectors for an overlattice, as rational coordinates in the basis of
/// the base lattice (for S + T, the S coordinates come first).
struct GlueDatum {
  std::vector<RationalVector> generators;
};

struct Overlattice {
  GramMatrix gram;
  /// Rows: basis of L in coordinates of the base lattice.
  RationalMatrix basis;
  RationalMatrix basis_inverse;
  Integer index;
  Integer determinant;

  /// Coordinates of a base-lattice-coordinate vector in the basis of L, when
  /// it lies in L.
  std::optional<IntVector> coordinates_of(const RationalVector& v) const;
};

/// Lattice generated by the base lattice and the glue vectors.
/// Throws GlueNotAdmissible when a glue vector is outside the dual or the
/// resulting Gram matrix is not integral.
Overlattice overlattice_from_glue(const GramMatrix& base, const GlueDatum& glue);
Overlattice overlattice_from_glue(const GramMatrix& s, const GramMatrix& t, const GlueDatum& glue);

/// Primitivity of the span of `sub_basis` rows (integer coordinates in the
/// basis of `l`). Throws std::invalid_argument on dependent rows or a
/// dimension mismatch.
bool is_saturated(const IntMatrix& sub_basis, const GramMatrix& l);

}  // namespace fmpartners::lattice
