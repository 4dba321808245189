#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rlg {

using Index = std::int32_t;

/// A bijection on {0..n-1}. Stored zero-based; file formats and the CLI use
/// 1-based labels and convert at the boundary.
///
/// Two readings are used throughout the library:
///   - an *ordering*: perm[pos] is the vertex placed at position pos;
///   - a *relabeling*: vertex i is renamed perm[i].
class Permutation {
public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `mapping` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<Index> mapping);

  static Permutation identity(std::size_t n);
  /// Builds from 1-based labels, as read from an ordering file.
  static Permutation from_one_based(std::span<const Index> labels);

  std::size_t size() const noexcept { return map_.size(); }
  Index operator[](std::size_t i) const noexcept { return map_[i]; }
  std::span<const Index> values() const noexcept { return map_; }

  Permutation inverse() const;
  /// Position-reversed: result[i] = this[n-1-i].
  Permutation reversed() const;
  /// (this ∘ inner)[i] = this[inner[i]].
  Permutation compose(const Permutation& inner) const;

  std::vector<Index> one_based() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<Index> map_;
};

} // namespace rlg
