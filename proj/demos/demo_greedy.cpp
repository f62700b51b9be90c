// Builds the greedy complement for a small B and shows how the sumset
// ratio tracks the target density.

#include <addcomp/density.hpp>
#include <addcomp/greedy.hpp>

#include <cstdio>

using namespace addcomp;

int main() {
  const FiniteSet b({0, 1, 5});
  const DensityTarget alpha(11, 20);
  const std::uint64_t horizon = 20000;

  const auto result = build_greedy(b, alpha, horizon);
  std::printf("B = %s, alpha = %s, N = %llu\n", b.str().c_str(), alpha.str().c_str(),
              static_cast<unsigned long long>(horizon));
  std::printf("|A| = %zu, first elements:", result.set.elements().size());
  for (std::size_t i = 0; i < 12 && i < result.set.elements().size(); ++i) {
    std::printf(" %llu", static_cast<unsigned long long>(result.set.elements()[i]));
  }
  std::printf(" ...\n");

  const auto s = sumset(result.set, b);
  for (std::uint64_t n = horizon / 10; n <= horizon; n += horizon / 10) {
    const auto count = s.counting(static_cast<std::int64_t>(n));
    std::printf("  (A+B)(%6llu)/%6llu = %.6f\n", static_cast<unsigned long long>(count),
                static_cast<unsigned long long>(n),
                static_cast<double>(count) / static_cast<double>(n));
  }
  std::printf("target %.6f, ratios approach it from below\n", alpha.approx());
  return 0;
}
