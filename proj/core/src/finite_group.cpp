#include "fmpartners/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace fmpartners {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> moduli)
    : moduli_(std::move(moduli)) {
  for (auto m : moduli_) {
    if (m < 1) throw std::invalid_argument("FiniteAbelianGroup: moduli must be positive");
    if (order_ > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(m))
      throw std::overflow_error("FiniteAbelianGroup: group too large");
    order_ *= static_cast<std::uint64_t>(m);
  }
}

FiniteAbelianGroup::Element FiniteAbelianGroup::normalize(Element x) const {
  if (x.size() != moduli_.size()) throw std::invalid_argument("FiniteAbelianGroup: rank mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] %= moduli_[i];
    if (x[i] < 0) x[i] += moduli_[i];
  }
  return x;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::add(const Element& a, const Element& b) const {
  Element out(moduli_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] + b[i]) % moduli_[i];
  return normalize(std::move(out));
}

FiniteAbelianGroup::Element FiniteAbelianGroup::scale(const Element& a, std::int64_t n) const {
  Element out(moduli_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const __int128 v = static_cast<__int128>(a[i]) * n % moduli_[i];
    out[i] = static_cast<std::int64_t>(v);
  }
  return normalize(std::move(out));
}

std::uint64_t FiniteAbelianGroup::encode(const Element& x) const {
  const Element y = normalize(x);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    code = code * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(y[i]);
  return code;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::decode(std::uint64_t code) const {
  if (code >= order_) throw std::out_of_range("FiniteAbelianGroup: code out of range");
  Element x(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const auto m = static_cast<std::uint64_t>(moduli_[i]);
    x[i] = static_cast<std::int64_t>(code % m);
    code /= m;
  }
  return x;
}

std::int64_t FiniteAbelianGroup::element_order(const Element& x) const {
  const Element y = normalize(x);
  std::int64_t order = 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::int64_t component = moduli_[i] / std::gcd(moduli_[i], y[i]);
    order = std::lcm(order, component);
  }
  return order;
}

std::vector<std::uint64_t> FiniteAbelianGroup::subgroup(std::span<const Element> generators) const {
  std::vector<std::uint64_t> members{encode(zero())};
  std::vector<Element> frontier{zero()};
  std::unordered_set<std::uint64_t> seen{members.front()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        Element y = add(x, g);
        const auto code = encode(y);
        if (seen.insert(code).second) {
          members.push_back(code);
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace fmpartners
