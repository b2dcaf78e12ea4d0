#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace extconv {

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Sign = int;

/// C(n, k); zero outside 0 <= k <= n. Throws on 64-bit overflow.
std::uint64_t binomial(int n, int k);

/// Strictly increasing tuple of indices in 1..n (a member of T^k).
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::vector<int> indices, int n);
  MultiIndex(std::initializer_list<int> indices, int n)
      : MultiIndex(std::vector<int>(indices), n) {}

  /// Empty multiindex (the basis of Lambda^0).
  static MultiIndex empty(int n) { return MultiIndex({}, n); }

  /// Parses "1,3,4" (the empty string is the empty multiindex).
  static MultiIndex parse(std::string_view text, int n);

  /// Inverse of rank(): the r-th k-subset of {1..n} in lexicographic order.
  static MultiIndex unrank(std::uint64_t r, int n, int k);

  int n() const { return n_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool is_empty() const { return indices_.empty(); }
  int operator[](std::size_t pos) const { return indices_[pos]; }
  std::span<const int> indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(int i) const;
  bool disjoint(const MultiIndex& other) const;
  /// 1-based position of i, 0 when absent.
  int position(int i) const;

  /// 0-based lexicographic rank within T^size() over 1..n.
  std::uint64_t rank() const;

  MultiIndex without(int i) const;
  MultiIndex with(int i) const;
  MultiIndex complement() const;
  /// Sorted union; throws if the two overlap.
  MultiIndex merged(const MultiIndex& other) const;

  /// "1,3,4"
  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.indices_ == b.indices_;
  }
  /// Alphabetical order.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.indices_ <=> b.indices_;
  }

 private:
  std::vector<int> indices_;
  int n_ = 0;
};

/// All C(n,k) members of T^k in lexicographic order.
std::vector<MultiIndex> enumerate(int n, int k);

/// Parity of the permutation sorting a string of distinct indices.
Sign sign_of_string(std::span<const int> entries);

/// Coefficient of e^{[I u i]} in e^I ^ e^i.
Sign sign_append(int i, const MultiIndex& I);

/// A subscript multiindex J of length s together with s alphabetically
/// sorted blocks of length k-1, pairwise disjoint.
struct Partition {
  MultiIndex J;
  std::vector<MultiIndex> blocks;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// The string (j_1, I^1, ..., j_s, I^s).
std::vector<int> interlace(const MultiIndex& J, std::span<const MultiIndex> blocks);

/// sgn(J; I): sign of the interlaced string.
Sign sign_interlace(const MultiIndex& J, std::span<const MultiIndex> blocks);

/// Exchanges j_p with the q-th index of block m (all positions 1-based),
/// re-sorting J, the touched block and the block order.
Partition kflip(const Partition& pair, int p, int m, int q);

/// Every way of writing I (of length ks) as J u I^1 u ... u I^s with
/// J in T^s and I^1 < ... < I^s in T^{k-1}; lexicographic in (J, blocks).
void for_each_partition(const MultiIndex& I, int s, int k,
                        const std::function<void(const Partition&)>& visit);
std::vector<Partition> partitions(const MultiIndex& I, int s, int k);

/// Advances a strictly increasing selection from {0..universe-1} to its
/// lexicographic successor. Returns false after the last one.
bool next_combination(std::vector<int>& selection, int universe);

}  // namespace extconv

namespace extconv::detail {

/// Bitmask view of multiindices (bit v-1 set for index v); n <= 31.
std::uint32_t mask_of(const MultiIndex& I);
/// Lexicographic rank of the subset encoded by mask among |mask|-subsets of 1..n.
std::uint64_t rank_of_mask(std::uint32_t mask, int n);
/// Sign of the string (I, J) for disjoint masks.
Sign concat_sign(std::uint32_t a, std::uint32_t b);
/// Masks of T^k in lexicographic order (cached).
const std::vector<std::uint32_t>& basis_masks(int n, int k);

}  // namespace extconv::detail
