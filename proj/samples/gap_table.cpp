// Prints c_alpha^(n)(rho) next to its n -> infinity limit for a few orders.

#include <cstdio>

#include "renyimaj/renyimaj.hpp"

int main() {
  using namespace renyimaj;
  const double rho = 8.0;
  std::printf("%8s %8s %12s %12s\n", "alpha", "n", "gap_bits", "limit_bits");
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    const double limit = gap_asymptotic(rho, Order(a));
    for (std::size_t n : {2, 8, 64, 512}) {
      std::printf("%8g %8zu %12.8f %12.8f\n", a, n, gap_finite(n, rho, Order(a)).gap, limit);
    }
  }
  std::printf("v(1) = %.8f bits\n", v_of_alpha(Order::one()));
}
