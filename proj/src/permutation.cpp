#include "rlg/permutation.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace rlg {

Permutation::Permutation(std::vector<Index> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t i = 0; i < map_.size(); ++i) {
    const Index v = map_[i];
    if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[v]) {
      throw std::invalid_argument("not a permutation: entry " + std::to_string(i) + " = " +
                                  std::to_string(v));
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Index> m(n);
  std::iota(m.begin(), m.end(), Index{0});
  Permutation p;
  p.map_ = std::move(m);
  return p;
}

Permutation Permutation::from_one_based(std::span<const Index> labels) {
  std::vector<Index> m(labels.begin(), labels.end());
  for (auto& v : m) --v;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[map_[i]] = static_cast<Index>(i);
  return p;
}

Permutation Permutation::reversed() const {
  Permutation p;
  p.map_.assign(map_.rbegin(), map_.rend());
  return p;
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) throw std::invalid_argument("compose: size mismatch");
  Permutation p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[i] = map_[inner.map_[i]];
  return p;
}

std::vector<Index> Permutation::one_based() const {
  std::vector<Index> out(map_);
  for (auto& v : out) ++v;
  return out;
}

} // namespace rlg
