#include "extconv/multiindex.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace extconv {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw DomainError("binomial coefficient overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

MultiIndex::MultiIndex(std::vector<int> indices, int n) : indices_(std::move(indices)), n_(n) {
  if (n < 0) throw DomainError("negative dimension");
  for (std::size_t pos = 0; pos < indices_.size(); ++pos) {
    if (indices_[pos] < 1 || indices_[pos] > n) {
      throw DomainError("multiindex entry " + std::to_string(indices_[pos]) + " outside 1.." +
                        std::to_string(n));
    }
    if (pos > 0 && indices_[pos - 1] >= indices_[pos]) {
      throw DomainError("multiindex entries must be strictly increasing");
    }
  }
}

MultiIndex MultiIndex::parse(std::string_view text, int n) {
  std::vector<int> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw DomainError("malformed multiindex '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw DomainError("trailing comma in multiindex");
  }
  return MultiIndex(std::move(out), n);
}

MultiIndex MultiIndex::unrank(std::uint64_t r, int n, int k) {
  if (k < 0 || k > n) throw DomainError("unrank: k outside 0..n");
  if (r >= binomial(n, k)) throw DomainError("unrank: rank out of range");
  std::vector<int> out;
  out.reserve(k);
  int v = 1;
  for (int i = 1; i <= k; ++i) {
    // Skip candidates whose block of completions lies entirely below r.
    while (true) {
      auto block = binomial(n - v, k - i);
      if (r < block) break;
      r -= block;
      ++v;
    }
    out.push_back(v);
    ++v;
  }
  return MultiIndex(std::move(out), n);
}

bool MultiIndex::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool MultiIndex::disjoint(const MultiIndex& other) const {
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a == *b) return false;
    if (*a < *b) ++a; else ++b;
  }
  return true;
}

int MultiIndex::position(int i) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) return 0;
  return static_cast<int>(it - indices_.begin()) + 1;
}

std::uint64_t MultiIndex::rank() const {
  const int k = size();
  std::uint64_t r = 0;
  int prev = 0;
  for (int i = 1; i <= k; ++i) {
    for (int v = prev + 1; v < indices_[i - 1]; ++v) r += binomial(n_ - v, k - i);
    prev = indices_[i - 1];
  }
  return r;
}

MultiIndex MultiIndex::without(int i) const {
  if (!contains(i)) throw DomainError("without: index not present");
  std::vector<int> out;
  out.reserve(indices_.size() - 1);
  for (int v : indices_) {
    if (v != i) out.push_back(v);
  }
  return MultiIndex(std::move(out), n_);
}

MultiIndex MultiIndex::with(int i) const {
  if (contains(i)) throw DomainError("with: index already present");
  std::vector<int> out = indices_;
  out.insert(std::upper_bound(out.begin(), out.end(), i), i);
  return MultiIndex(std::move(out), n_);
}

MultiIndex MultiIndex::complement() const {
  std::vector<int> out;
  for (int v = 1; v <= n_; ++v) {
    if (!contains(v)) out.push_back(v);
  }
  return MultiIndex(std::move(out), n_);
}

MultiIndex MultiIndex::merged(const MultiIndex& other) const {
  if (!disjoint(other)) throw DomainError("merged: multiindices overlap");
  std::vector<int> out;
  out.reserve(indices_.size() + other.indices_.size());
  std::merge(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
             std::back_inserter(out));
  return MultiIndex(std::move(out), std::max(n_, other.n_));
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (std::size_t pos = 0; pos < indices_.size(); ++pos) {
    if (pos) out += ',';
    out += std::to_string(indices_[pos]);
  }
  return out;
}

std::vector<MultiIndex> enumerate(int n, int k) {
  if (k < 0 || k > n) {
    throw DomainError("enumerate: need 0 <= k <= n, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  std::vector<MultiIndex> out;
  out.reserve(binomial(n, k));
  std::vector<int> sel(k);
  std::iota(sel.begin(), sel.end(), 0);
  do {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = sel[i] + 1;
    out.emplace_back(std::move(idx), n);
  } while (next_combination(sel, n));
  return out;
}

bool next_combination(std::vector<int>& selection, int universe) {
  const int k = static_cast<int>(selection.size());
  int i = k - 1;
  while (i >= 0 && selection[i] == universe - k + i) --i;
  if (i < 0) return false;
  ++selection[i];
  for (int j = i + 1; j < k; ++j) selection[j] = selection[j - 1] + 1;
  return true;
}

Sign sign_of_string(std::span<const int> entries) {
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      if (entries[a] == entries[b]) throw DomainError("sign_of_string: repeated index");
      if (entries[a] > entries[b]) ++inversions;
    }
  }
  return inversions % 2 ? -1 : 1;
}

Sign sign_append(int i, const MultiIndex& I) {
  if (I.contains(i)) throw DomainError("sign_append: index already in multiindex");
  // i moves left past every entry of I that exceeds it.
  int larger = 0;
  for (int v : I) larger += v > i;
  return larger % 2 ? -1 : 1;
}

std::vector<int> interlace(const MultiIndex& J, std::span<const MultiIndex> blocks) {
  if (static_cast<std::size_t>(J.size()) != blocks.size()) {
    throw DomainError("interlace: need one block per subscript index");
  }
  std::vector<int> out;
  for (std::size_t p = 0; p < blocks.size(); ++p) {
    out.push_back(J[p]);
    out.insert(out.end(), blocks[p].begin(), blocks[p].end());
  }
  return out;
}

Sign sign_interlace(const MultiIndex& J, std::span<const MultiIndex> blocks) {
  auto s = interlace(J, blocks);
  return sign_of_string(s);
}

Partition kflip(const Partition& pair, int p, int m, int q) {
  const int s = pair.J.size();
  if (static_cast<int>(pair.blocks.size()) != s) throw DomainError("kflip: malformed pair");
  if (p < 1 || p > s || m < 1 || m > s) throw DomainError("kflip: position out of range");
  const auto& block = pair.blocks[m - 1];
  if (q < 1 || q > block.size()) throw DomainError("kflip: block position out of range");
  static_cast<void>(sign_interlace(pair.J, pair.blocks));  // rejects overlapping pairs

  const int from_j = pair.J[p - 1];
  const int from_block = block[q - 1];

  std::vector<int> j_new(pair.J.begin(), pair.J.end());
  j_new[p - 1] = from_block;
  std::sort(j_new.begin(), j_new.end());

  std::vector<int> b_new(block.begin(), block.end());
  b_new[q - 1] = from_j;
  std::sort(b_new.begin(), b_new.end());

  Partition out{MultiIndex(std::move(j_new), pair.J.n()), pair.blocks};
  out.blocks[m - 1] = MultiIndex(std::move(b_new), block.n());
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

namespace {

void split_blocks(const std::vector<int>& rest, int block_len, std::vector<MultiIndex>& acc,
                  int n, const MultiIndex& J,
                  const std::function<void(const Partition&)>& visit) {
  if (rest.empty()) {
    visit(Partition{J, acc});
    return;
  }
  if (block_len == 0) return;
  // The block holding the smallest remaining index comes first alphabetically.
  const int first = rest.front();
  std::vector<int> tail(rest.begin() + 1, rest.end());
  const int pick = block_len - 1;
  std::vector<int> sel(pick);
  std::iota(sel.begin(), sel.end(), 0);
  if (pick > static_cast<int>(tail.size())) return;
  do {
    std::vector<int> block{first};
    std::vector<int> remaining;
    std::size_t cursor = 0;
    for (std::size_t t = 0; t < tail.size(); ++t) {
      if (cursor < sel.size() && sel[cursor] == static_cast<int>(t)) {
        block.push_back(tail[t]);
        ++cursor;
      } else {
        remaining.push_back(tail[t]);
      }
    }
    acc.emplace_back(std::move(block), n);
    split_blocks(remaining, block_len, acc, n, J, visit);
    acc.pop_back();
  } while (next_combination(sel, static_cast<int>(tail.size())));
}

}  // namespace

void for_each_partition(const MultiIndex& I, int s, int k,
                        const std::function<void(const Partition&)>& visit) {
  if (s < 0 || k < 1) throw DomainError("partitions: need s >= 0 and k >= 1");
  if (I.size() != k * s) throw DomainError("partitions: length of I must equal k*s");
  const int total = I.size();
  std::vector<int> sel(s);
  std::iota(sel.begin(), sel.end(), 0);
  do {
    std::vector<int> j_idx;
    std::vector<int> rest;
    std::size_t cursor = 0;
    for (int t = 0; t < total; ++t) {
      if (cursor < sel.size() && sel[cursor] == t) {
        j_idx.push_back(I[t]);
        ++cursor;
      } else {
        rest.push_back(I[t]);
      }
    }
    MultiIndex J(std::move(j_idx), I.n());
    std::vector<MultiIndex> acc;
    if (k == 1) {
      visit(Partition{J, std::vector<MultiIndex>(s, MultiIndex::empty(I.n()))});
    } else {
      split_blocks(rest, k - 1, acc, I.n(), J, visit);
    }
  } while (next_combination(sel, total));
}

std::vector<Partition> partitions(const MultiIndex& I, int s, int k) {
  std::vector<Partition> out;
  for_each_partition(I, s, k, [&](const Partition& p) { out.push_back(p); });
  return out;
}

}  // namespace extconv

namespace extconv::detail {

namespace {
constexpr int kMaxMaskDim = 31;

struct Pascal {
  std::uint64_t table[kMaxMaskDim + 1][kMaxMaskDim + 1]{};
  Pascal() {
    for (int n = 0; n <= kMaxMaskDim; ++n) {
      table[n][0] = 1;
      for (int k = 1; k <= n; ++k) table[n][k] = table[n - 1][k - 1] + (k <= n - 1 ? table[n - 1][k] : 0);
    }
  }
};
const Pascal kPascal;
}  // namespace

std::uint32_t mask_of(const MultiIndex& I) {
  if (I.n() > kMaxMaskDim) throw DomainError("dimension too large for bitmask basis");
  std::uint32_t mask = 0;
  for (int v : I) mask |= 1u << (v - 1);
  return mask;
}

std::uint64_t rank_of_mask(std::uint32_t mask, int n) {
  const int k = std::popcount(mask);
  std::uint64_t r = 0;
  int prev = 0;
  int i = 0;
  for (int v = 1; v <= n; ++v) {
    if (!(mask & (1u << (v - 1)))) continue;
    ++i;
    for (int w = prev + 1; w < v; ++w) {
      if (k - i <= n - w) r += kPascal.table[n - w][k - i];
    }
    prev = v;
  }
  return r;
}

Sign concat_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  while (b) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

const std::vector<std::uint32_t>& basis_masks(int n, int k) {
  if (n > kMaxMaskDim || k < 0 || k > n) throw DomainError("basis_masks: bad (n, k)");
  static std::mutex guard;
  static std::map<std::pair<int, int>, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(guard);
  auto [it, inserted] = cache.try_emplace({n, k});
  if (inserted) {
    for (const auto& I : enumerate(n, k)) it->second.push_back(mask_of(I));
  }
  return it->second;
}

}  // namespace extconv::detail
