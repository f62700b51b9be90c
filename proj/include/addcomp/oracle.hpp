#pragma once

// Slow, obviously-correct reference implementations used to validate the
// packed-bit kernels and the greedy builder. These deliberately share no
// counting or membership code with the optimized paths: everything here
// works on plain sorted element vectors.

#include <addcomp/numeric.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace addcomp::oracle {

// Double loop over all pairs, dedup, truncate at N.
inline std::vector<std::uint64_t> naive_sumset(const std::vector<std::uint64_t>& a,
                                               const std::vector<std::uint64_t>& b,
                                               std::uint64_t horizon) {
  std::vector<std::uint64_t> out;
  for (auto x : a) {
    for (auto y : b) {
      if (x <= horizon && y <= horizon - x) out.push_back(x + y);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Repeated naive sumset; truncate at N at every stage.
inline std::vector<std::uint64_t> naive_jfold(const std::vector<std::uint64_t>& a, std::uint64_t j,
                                              std::uint64_t horizon) {
  std::vector<std::uint64_t> result = a;
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  result.erase(std::remove_if(result.begin(), result.end(),
                              [&](std::uint64_t x) { return x > horizon; }),
               result.end());
  for (std::uint64_t step = 1; step < j; ++step) {
    result = naive_sumset(result, a, horizon);
  }
  return result;
}

namespace detail {

inline std::uint64_t count_leq(const std::vector<std::uint64_t>& sorted, std::uint64_t n) {
  // |{x in sorted : 1 <= x <= n}|, scanning (no prefix machinery on purpose)
  std::uint64_t c = 0;
  for (auto x : sorted) {
    if (x >= 1 && x <= n) ++c;
  }
  return c;
}

// max over the scan window of ((candidate set)+B)(n)/n <= p/q, recomputing
// the sumset from scratch.
inline bool candidate_ok(const std::vector<std::uint64_t>& a_m, std::uint64_t candidate,
                         const std::vector<std::uint64_t>& b, std::uint64_t p, std::uint64_t q) {
  std::vector<std::uint64_t> with = a_m;
  with.push_back(candidate);
  std::vector<std::uint64_t> sum;
  for (auto x : with) {
    for (auto y : b) sum.push_back(x + y);
  }
  std::sort(sum.begin(), sum.end());
  sum.erase(std::unique(sum.begin(), sum.end()), sum.end());
  const std::uint64_t bmax = b.back();
  const std::uint64_t lo = candidate >= 1 ? candidate : 1;
  const std::uint64_t guard = bmax + 1;  // defensive extra scan; ratios only fall beyond a+b
  const std::uint64_t hi = candidate + bmax + guard;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if ((unsigned __int128)count_leq(sum, n) * q > (unsigned __int128)p * n) return false;
  }
  return true;
}

}  // namespace detail

// Formulas-as-written greedy reference. Returns the set translated back to
// the original B (nonnegative part), truncated at the horizon.
inline std::vector<std::uint64_t> naive_greedy(const std::vector<std::uint64_t>& b_input,
                                               const DensityTarget& alpha, std::uint64_t horizon) {
  std::vector<std::uint64_t> b = b_input;
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (b.empty()) throw std::invalid_argument("naive_greedy: empty B");

  if (alpha.is_zero()) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 1; p <= horizon; p *= 2) {
      out.push_back(p);
      if (p > horizon / 2) break;
    }
    return out;
  }
  if (alpha.is_one()) {
    std::vector<std::uint64_t> out(horizon + 1);
    for (std::uint64_t i = 0; i <= horizon; ++i) out[i] = i;
    return out;
  }

  const std::uint64_t b1 = b.front();
  std::vector<std::uint64_t> b_norm;
  for (auto x : b) b_norm.push_back(x - b1);

  const std::uint64_t build_horizon = horizon + b1;
  std::vector<std::uint64_t> a_prime;
  std::uint64_t candidate = 0;
  while (candidate <= build_horizon) {
    if (detail::candidate_ok(a_prime, candidate, b_norm, alpha.num(), alpha.den())) {
      a_prime.push_back(candidate);
    }
    ++candidate;
  }

  std::vector<std::uint64_t> out;
  for (auto x : a_prime) {
    if (x >= b1) out.push_back(x - b1);
  }
  return out;
}

}  // namespace addcomp::oracle
