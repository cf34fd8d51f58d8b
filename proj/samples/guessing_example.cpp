// Clusters a truncated geometric source with the Huffman map and compares
// exact guessing moments with the bounds, for short blocks.

#include <cmath>
#include <cstdio>

#include "renyimaj/renyimaj.hpp"

int main() {
  using namespace renyimaj;
  const Pmf p = geometric(0.7, 8);
  const std::size_t m = 3;
  const auto h = huffman_aggregate(p, m);
  const Pmf y = h.map.induced(p);

  std::printf("f* =");
  for (std::size_t j : h.map.table()) std::printf(" %zu", j + 1);
  std::printf("\n");

  for (int k : {1, 2, 4}) {
    for (double rho : {0.5, 1.0, 2.0}) {
      const double gain =
          std::log2(exact_guessing_moment(p, rho, k) / exact_guessing_moment(y, rho, k)) / k;
      const auto b = clustering_gain_bounds(p, m, rho, k);
      std::printf("k=%d rho=%.1f  %.5f <= %.5f <= %.5f\n", k, rho, b.lower, gain, b.upper);
    }
  }
}
