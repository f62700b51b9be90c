// Beatty-filtered sets: d(jA) = j*alpha/k for alpha = 1/theta, shown
// empirically for theta = sqrt(2).

#include <addcomp/constructions.hpp>
#include <addcomp/density.hpp>

#include <cstdio>

using namespace addcomp;

int main() {
  const Theta theta = QuadraticIrrational::sqrt_of(2);
  const std::uint64_t k = 2;
  const std::uint64_t horizon = 200000;
  const double alpha = 1.0 / theta_approx(theta);

  const auto a = beatty_construction(theta, k, horizon);
  std::printf("theta = sqrt(2), k = %llu, N = %llu\n", static_cast<unsigned long long>(k),
              static_cast<unsigned long long>(horizon));
  std::printf("A starts:");
  for (std::size_t i = 0; i < 10; ++i) {
    std::printf(" %llu", static_cast<unsigned long long>(a.elements()[i]));
  }
  std::printf(" ...\n");

  GroundSet ja = a;
  for (std::uint64_t j = 1; j <= k; ++j) {
    if (j > 1) ja = sumset(ja, a);
    const auto rep = density_report(ja);
    std::printf("j=%llu: density in [%.6f, %.6f], target %.6f\n",
                static_cast<unsigned long long>(j), rep.tail_lower.approx(),
                rep.tail_upper.approx(), alpha * static_cast<double>(j) / static_cast<double>(k));
  }
  return 0;
}
