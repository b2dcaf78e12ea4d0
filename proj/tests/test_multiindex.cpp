#include <doctest.h>

#include <algorithm>
#include <set>

#include "extconv/multiindex.hpp"
#include "support.hpp"

using namespace extconv;

namespace {

std::vector<int> ints(const MultiIndex& I) { return {I.begin(), I.end()}; }

// Brute force: every assignment of the ks entries of I to J or to one of s
// labelled blocks, keeping only canonical (sorted-block) configurations.
std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> brute_partitions(const std::vector<int>& I,
                                                                                       int s, int k) {
  std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> out;
  const int total = static_cast<int>(I.size());
  std::vector<int> label(total, 0);  // 0 = J, 1..s = block
  while (true) {
    std::vector<int> J;
    std::vector<std::vector<int>> blocks(s);
    for (int t = 0; t < total; ++t) {
      if (label[t] == 0) J.push_back(I[t]); else blocks[label[t] - 1].push_back(I[t]);
    }
    bool ok = static_cast<int>(J.size()) == s;
    for (const auto& b : blocks) ok = ok && static_cast<int>(b.size()) == k - 1;
    if (ok) {
      std::sort(blocks.begin(), blocks.end());
      out.emplace(J, blocks);
    }
    int pos = 0;
    while (pos < total && label[pos] == s) label[pos++] = 0;
    if (pos == total) break;
    ++label[pos];
  }
  return out;
}

}  // namespace

TEST_CASE("enumerate lists T^k alphabetically") {
  auto t32 = enumerate(3, 2);
  REQUIRE(t32.size() == 3);
  CHECK(ints(t32[0]) == std::vector<int>{1, 2});
  CHECK(ints(t32[1]) == std::vector<int>{1, 3});
  CHECK(ints(t32[2]) == std::vector<int>{2, 3});

  auto t40 = enumerate(4, 0);
  REQUIRE(t40.size() == 1);
  CHECK(t40[0].is_empty());

  auto t42 = enumerate(4, 2);
  REQUIRE(t42.size() == 6);
  const auto pos = std::find(t42.begin(), t42.end(), MultiIndex({2, 3}, 4)) - t42.begin();
  CHECK(pos + 1 == 4);

  CHECK_THROWS_AS(enumerate(3, 4), DomainError);
  CHECK_THROWS_AS(enumerate(3, -1), DomainError);
}

TEST_CASE("enumeration matches brute-force subset sort; rank and unrank are inverse") {
  for (int n = 0; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto list = enumerate(n, k);
      const auto oracle = testing::oracle_basis(n, k);
      REQUIRE(list.size() == oracle.size());
      REQUIRE(list.size() == binomial(n, k));
      for (std::size_t r = 0; r < list.size(); ++r) {
        CHECK(ints(list[r]) == oracle[r]);
        CHECK(list[r].rank() == r);
        CHECK(MultiIndex::unrank(r, n, k) == list[r]);
        CHECK(detail::rank_of_mask(detail::mask_of(list[r]), n) == r);
      }
    }
  }
}

TEST_CASE("multiindex validation and text form") {
  CHECK_THROWS_AS(MultiIndex({2, 1}, 3), DomainError);
  CHECK_THROWS_AS(MultiIndex({1, 1}, 3), DomainError);
  CHECK_THROWS_AS(MultiIndex({0, 1}, 3), DomainError);
  CHECK_THROWS_AS(MultiIndex({1, 4}, 3), DomainError);
  CHECK(MultiIndex::parse("1,3,4", 5).to_string() == "1,3,4");
  CHECK(MultiIndex::parse("", 5).is_empty());
  CHECK_THROWS_AS(MultiIndex::parse("1,,3", 5), DomainError);
  CHECK_THROWS_AS(MultiIndex::parse("1,a", 5), DomainError);
  CHECK_THROWS_AS(MultiIndex::parse("3,1", 5), DomainError);
  CHECK(MultiIndex({1, 3}, 4) < MultiIndex({2, 3}, 4));
  CHECK(MultiIndex({1, 3}, 4).complement() == MultiIndex({2, 4}, 4));
}

TEST_CASE("sign_of_string") {
  CHECK(sign_of_string(std::vector<int>{1, 2, 3}) == 1);
  CHECK(sign_of_string(std::vector<int>{2, 1}) == -1);
  CHECK(sign_of_string(std::vector<int>{1, 3, 2, 4}) == -1);
  CHECK_THROWS_AS(sign_of_string(std::vector<int>{1, 2, 1}), DomainError);

  std::vector<int> p{1, 2, 3, 4, 5, 6};
  do {
    CHECK(sign_of_string(p) == testing::oracle_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("sign_interlace") {
  std::vector<MultiIndex> b1{MultiIndex({2}, 4)};
  CHECK(sign_interlace(MultiIndex({1}, 4), b1) == 1);
  std::vector<MultiIndex> b2{MultiIndex({3}, 4), MultiIndex({4}, 4)};
  CHECK(sign_interlace(MultiIndex({1, 2}, 4), b2) == -1);
  std::vector<MultiIndex> b3{MultiIndex({1, 3}, 4)};
  CHECK(sign_interlace(MultiIndex({2}, 4), b3) == -1);
  std::vector<MultiIndex> overlap{MultiIndex({1, 3}, 4)};
  CHECK_THROWS_AS(sign_interlace(MultiIndex({3}, 4), overlap), DomainError);
}

TEST_CASE("sign_append agrees with e^I ^ e^i") {
  CHECK(sign_append(2, MultiIndex({1}, 3)) == 1);
  CHECK(sign_append(1, MultiIndex({2}, 3)) == -1);
  // e^1 ^ e^3 ^ e^2 = -e^{123}
  CHECK(sign_append(2, MultiIndex({1, 3}, 3)) == -1);
  CHECK_THROWS_AS(sign_append(1, MultiIndex({1, 3}, 3)), DomainError);

  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (const auto& I : enumerate(n, k - 1)) {
        for (int i = 1; i <= n; ++i) {
          if (I.contains(i)) continue;
          std::vector<int> s(I.begin(), I.end());
          s.push_back(i);
          const int p = I.with(i).position(i);
          CHECK(sign_append(i, I) == testing::oracle_sign(s));
          CHECK(sign_append(i, I) == (((k - p) % 2) ? -1 : 1));
        }
      }
    }
  }
}

TEST_CASE("kflip") {
  Partition a{MultiIndex({1}, 3), {MultiIndex({2, 3}, 3)}};
  auto f = kflip(a, 1, 1, 1);
  CHECK(f.J == MultiIndex({2}, 3));
  CHECK(f.blocks == std::vector<MultiIndex>{MultiIndex({1, 3}, 3)});
  CHECK(kflip(f, 1, 1, 1) == a);

  Partition b{MultiIndex({1, 4}, 6), {MultiIndex({2, 3}, 6), MultiIndex({5, 6}, 6)}};
  auto g = kflip(b, 2, 1, 2);
  CHECK(g.J == MultiIndex({1, 3}, 6));
  CHECK(g.blocks == std::vector<MultiIndex>{MultiIndex({2, 4}, 6), MultiIndex({5, 6}, 6)});
  // Block containing the swapped-in index keeps its alphabetical place, so
  // flipping the same slots again restores the pair.
  CHECK(kflip(g, 2, 1, 2) == b);

  CHECK_THROWS_AS(kflip(b, 3, 1, 1), DomainError);
  CHECK_THROWS_AS(kflip(b, 1, 0, 1), DomainError);
  CHECK_THROWS_AS(kflip(b, 1, 1, 3), DomainError);
}

TEST_CASE("partitions: worked examples") {
  CHECK(partitions(MultiIndex({1, 2, 3, 4}, 4), 2, 2).size() == 6);
  auto two = partitions(MultiIndex({1, 2}, 2), 1, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].J == MultiIndex({1}, 2));
  CHECK(two[0].blocks[0] == MultiIndex({2}, 2));
  CHECK(two[1].J == MultiIndex({2}, 2));
  CHECK(two[1].blocks[0] == MultiIndex({1}, 2));
  for (int k = 1; k <= 5; ++k) {
    const auto I = enumerate(7, k).back();
    CHECK(partitions(I, 1, k).size() == static_cast<std::size_t>(k));
  }
  CHECK_THROWS_AS(partitions(MultiIndex({1, 2, 3}, 4), 2, 2), DomainError);
}

TEST_CASE("partitions are complete and duplicate-free against brute force") {
  for (int k : {2, 3, 4}) {
    for (int s : {1, 2, 3}) {
      if (k * s > 9) continue;
      const auto I = enumerate(9, k * s)[3 % binomial(9, k * s)];
      const auto got = partitions(I, s, k);
      std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> seen;
      for (const auto& p : got) {
        std::vector<std::vector<int>> blocks;
        for (const auto& b : p.blocks) blocks.push_back(ints(b));
        CHECK(std::is_sorted(blocks.begin(), blocks.end()));
        seen.emplace(ints(p.J), blocks);
      }
      CHECK(seen.size() == got.size());
      CHECK(seen == brute_partitions(ints(I), s, k));
      // multinomial count C(ks,s) (s(k-1))! / ((k-1)!^s s!)
      const auto f = [](int m) {
        std::uint64_t r = 1;
        for (int i = 2; i <= m; ++i) r *= i;
        return r;
      };
      std::uint64_t expected = binomial(k * s, s) * f(s * (k - 1));
      for (int b = 0; b < s; ++b) expected /= f(k - 1);
      expected /= f(s);
      CHECK(got.size() == expected);
    }
  }
}

TEST_CASE("interlace sign factorisation used in the Laplace induction (even k)") {
  // sgn(j_1,I^1,...,j_{s+1},I^{s+1}) = (-1)^{(l-1)+(m-1)(k-1)} sgn(j_l, I^m, rest interlaced)
  std::size_t checked = 0;
  for (int k : {2, 4}) {
    for (int s = 1; s <= 2; ++s) {
      const int n = 8;
      if (k * (s + 1) > n) continue;
      for (const auto& I : enumerate(n, k * (s + 1))) {
        for_each_partition(I, s + 1, k, [&](const Partition& p) {
          const int lhs = sign_interlace(p.J, p.blocks);
          for (int l = 1; l <= s + 1; ++l) {
            for (int m = 1; m <= s + 1; ++m) {
              std::vector<int> str{p.J[l - 1]};
              str.insert(str.end(), p.blocks[m - 1].begin(), p.blocks[m - 1].end());
              std::vector<int> rest_j;
              std::vector<MultiIndex> rest_b;
              for (int r = 0; r <= s; ++r) {
                if (r != l - 1) rest_j.push_back(p.J[r]);
                if (r != m - 1) rest_b.push_back(p.blocks[r]);
              }
              const auto tail = interlace(MultiIndex(rest_j, I.n()), rest_b);
              str.insert(str.end(), tail.begin(), tail.end());
              const int factor = ((l - 1) + (m - 1) * (k - 1)) % 2 ? -1 : 1;
              CHECK(lhs == factor * sign_of_string(str));
              ++checked;
            }
          }
        });
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("interlace sign, odd k: moving one (j, block) pair to the front") {
  // For odd k: sgn([j_l Jbar]; [I^m, Ibar]) = (-1)^{a1-1} sgn(j_l, I^m) sgn(Jbar; Ibar)
  //            * sgn([j_l I^m] followed by [(Jbar; Ibar)])
  // where a1 is the position of j_l in [j_l Jbar]. Blocks have even length so
  // the block position does not contribute.
  const int k = 3;
  std::size_t checked = 0;
  for (int n = 6; n <= 7; ++n) {
    for (int s = 1; s <= 2; ++s) {
      for (const auto& I : enumerate(n, k * s)) {
        for_each_partition(I, s, k, [&](const Partition& p) {
          const int lhs = sign_interlace(p.J, p.blocks);
          for (int a1 = 1; a1 <= s; ++a1) {
            for (int b1 = 1; b1 <= s; ++b1) {
              const int jl = p.J[a1 - 1];
              const auto& Im = p.blocks[b1 - 1];
              std::vector<int> jbar;
              std::vector<MultiIndex> ibar;
              for (int r = 0; r < s; ++r) {
                if (r != a1 - 1) jbar.push_back(p.J[r]);
                if (r != b1 - 1) ibar.push_back(p.blocks[r]);
              }
              const auto rest = interlace(MultiIndex(jbar, n), ibar);
              std::vector<int> head{jl};
              head.insert(head.end(), Im.begin(), Im.end());
              std::vector<int> head_sorted = head;
              std::sort(head_sorted.begin(), head_sorted.end());
              std::vector<int> rest_sorted = rest;
              std::sort(rest_sorted.begin(), rest_sorted.end());
              std::vector<int> joined = head_sorted;
              joined.insert(joined.end(), rest_sorted.begin(), rest_sorted.end());
              const int factor = (a1 - 1) % 2 ? -1 : 1;
              const int rest_sign = rest.empty() ? 1 : sign_of_string(rest);
              CHECK(lhs == factor * sign_of_string(head) * rest_sign * sign_of_string(joined));
              ++checked;
            }
          }
        });
      }
    }
  }
  CHECK(checked > 100);
}
