#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fmpartners {

/// Z_{n_1} + ... + Z_{n_k} with elements as reduced coordinate vectors.
/// Elements also have a mixed-radix integer code, which orders them and
/// gives subgroups a canonical form (the sorted list of member codes).
class FiniteAbelianGroup {
 public:
  using Element = std::vector<std::int64_t>;

  explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::uint64_t order() const { return order_; }

  Element zero() const { return Element(moduli_.size(), 0); }
  Element normalize(Element x) const;
  Element add(const Element& a, const Element& b) const;
  Element scale(const Element& a, std::int64_t n) const;
  Element negate(const Element& a) const { return scale(a, -1); }

  std::uint64_t encode(const Element& x) const;
  Element decode(std::uint64_t code) const;

  std::int64_t element_order(const Element& x) const;

  /// Sorted codes of the subgroup generated by `generators`.
  std::vector<std::uint64_t> subgroup(std::span<const Element> generators) const;

 private:
  std::vector<std::int64_t> moduli_;
  std::uint64_t order_ = 1;
};

}  // namespace fmpartners
