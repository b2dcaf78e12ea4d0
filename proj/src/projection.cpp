#include "extconv/projection.hpp"

namespace extconv {

PiSMap build_pi_s(int n, int k, int s) {
  if (k < 2 || k > n) throw DomainError("build_pi_s: need 2 <= k <= n");
  const int parent_rows = static_cast<int>(binomial(n, k - 1));
  if (s < 0 || s > std::min(n, parent_rows)) {
    throw DomainError("build_pi_s: s=" + std::to_string(s) + " outside 0..min(n, C(n,k-1))");
  }
  PiSMap map;
  map.n = n;
  map.k = k;
  map.s = s;
  map.rows = binomial(n, k * s);
  map.cols = binomial(parent_rows, s) * binomial(n, s);
  if (map.rows * map.cols > kMaxPiSEntries) throw DomainError("build_pi_s: map too large to materialise");
  map.entries.assign(map.rows * map.cols, 0);
  if (map.rows == 0 || (k % 2 == 1 && s >= 2)) return map;

  const auto scale = factorial(s);
  const auto basis = enumerate(n, k * s);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for_each_partition(basis[r], s, k, [&](const Partition& p) {
      map.entries[r * map.cols + minor_slot(p, n, parent_rows)] = scale * adjugate_term_sign(p, k);
    });
  }
  return map;
}

}  // namespace extconv
