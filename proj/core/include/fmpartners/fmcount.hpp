#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fmpartners/finite_group.hpp"
#include "fmpartners/lattice.hpp"

namespace fmpartners::fmcount {

/// Split glue <(b1 l + t1)/3> + <(b2 l + t2)/(2d')>.
struct TypeIGlue {
  std::int64_t b1;
  std::int64_t b2;
  friend bool operator==(const TypeIGlue&, const TypeIGlue&) = default;
};

/// Cyclic glue <(b3 l + 2d'k t1 + t2)/(6d')>.
struct TypeIIGlue {
  std::int64_t k;
  std::int64_t b3;
  friend bool operator==(const TypeIIGlue&, const TypeIIGlue&) = default;
};

using OverlatticeDescriptor = std::variant<TypeIGlue, TypeIIGlue>;

struct MstCounts {
  std::uint64_t type_I = 0;
  std::uint64_t type_II_k0 = 0;
  std::uint64_t type_II_k1 = 0;
  std::uint64_t type_II_k2 = 0;

  std::uint64_t total() const { return type_I + type_II_k0 + type_II_k1 + type_II_k2; }
  friend bool operator==(const MstCounts&, const MstCounts&) = default;
};

inline constexpr std::uint64_t kOracleMaxDPrime = 10'000;
inline constexpr std::uint64_t kExhaustiveMaxDPrime = 10;

/// Even Type I descriptors; empty unless d' = 2 (mod 3).
std::vector<OverlatticeDescriptor> enumerate_type_I(std::uint64_t d_prime);
/// Even Type II descriptors for a fixed k in {0, 1, 2}.
std::vector<OverlatticeDescriptor> enumerate_type_II(std::uint64_t d_prime, int k);
/// All even descriptors, Type I first, then Type II by k and b3.
std::vector<OverlatticeDescriptor> enumerate_all(std::uint64_t d_prime);

MstCounts count_M_ST_by_type(std::uint64_t d_prime);
std::uint64_t count_M_ST(std::uint64_t d_prime);

/// Per-type counts from the square-root-of-unity closed forms.
MstCounts closed_form_counts(std::uint64_t d_prime);
/// |(Z_{4d'})^x_2| times 3/2, 1 or 2 according to d' mod 3.
std::uint64_t count_M_ST_closed_form(std::uint64_t d_prime);

/// Counts glue subgroups directly in A_S + A_T: graphs of injective maps
/// A_S -> A_T whose generator is isotropic. Throws std::out_of_range for
/// d' > 10^4.
std::uint64_t glue_oracle_count(std::uint64_t d_prime);

/// The subgroups found by glue_oracle_count, in canonical form.
std::vector<std::vector<std::uint64_t>> glue_oracle_subgroups(std::uint64_t d_prime);

/// Counts order-6d' isotropic subgroups meeting A_S and A_T trivially by
/// enumerating every subgroup of A_S + A_T through Hermite normal forms of
/// the corresponding lattices in Z^3. Throws std::out_of_range for d' > 10.
std::uint64_t glue_oracle_exhaustive(std::uint64_t d_prime);

/// Z_{6d'} + Z_3 + Z_{6d'}, coordinates of l/6d', t1/3, t2/6d'.
FiniteAbelianGroup glue_group(std::uint64_t d_prime);
/// Generators of L/(S + T) in glue_group coordinates.
std::vector<FiniteAbelianGroup::Element> glue_generators(const OverlatticeDescriptor& desc,
                                                         std::uint64_t d_prime);
/// Canonical form (sorted member codes) of the glue subgroup.
std::vector<std::uint64_t> glue_subgroup(const OverlatticeDescriptor& desc, std::uint64_t d_prime);
/// Canonical form of the glue subgroup after l -> -l.
std::vector<std::uint64_t> glue_subgroup_ell_negated(const OverlatticeDescriptor& desc,
                                                     std::uint64_t d_prime);

/// Glue vectors in the basis of S + T.
lattice::GlueDatum to_glue_datum(const OverlatticeDescriptor& desc, std::uint64_t d_prime);

struct AssemblyReport {
  bool even = false;
  std::size_t rank = 0;
  Integer determinant;
  Integer index;
  bool s_saturated = false;
  bool t_saturated = false;

  /// Even, rank 22, |det| = 3, index 6d', S and T saturated.
  bool valid(std::uint64_t d_prime) const;
};

/// Builds the overlattice of a descriptor and checks its invariants.
AssemblyReport assemble(const OverlatticeDescriptor& desc, std::uint64_t d_prime);

/// Five-case closed form in u = |(Z_{2d})^x_2|. Throws
/// mukai::InadmissibleDiscriminant.
std::uint64_t fm_count(std::uint64_t d);

/// |M_{S,T}| / 2 for 18 | d. Throws std::invalid_argument otherwise.
std::uint64_t fm_count_via_overlattices(std::uint64_t d);

struct FMRecord {
  std::uint64_t d = 0;
  std::optional<std::uint64_t> d_prime;
  std::uint64_t u_2d = 0;
  std::uint64_t count_formula = 0;
  std::optional<std::uint64_t> count_enumeration;
  std::optional<std::uint64_t> count_oracle;
  std::optional<MstCounts> counts_by_type;
  bool agree = true;
};

struct RecordOptions {
  std::uint64_t enumeration_max_d_prime = 10'000;
  std::uint64_t oracle_max_d_prime = kOracleMaxDPrime;
};

/// Formula count always; enumeration and oracle counts when 18 | d and d'
/// is within the respective bound.
FMRecord make_record(std::uint64_t d, const RecordOptions& options = {});

}  // namespace fmpartners::fmcount
