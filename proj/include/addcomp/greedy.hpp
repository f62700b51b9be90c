#pragma once

// Greedy construction of A with d(A+B) = alpha for finite B and rational
// alpha in (0,1). Elements are chosen by the least-candidate rule with the
// max-ratio test evaluated only on the window [max(a,1), a+b]: beyond a+b
// the sumset count is constant, so the ratio only decreases.
//
// All comparisons are exact: count * q <= p * n on 128-bit integers.

#include <addcomp/sets.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace addcomp {

struct GreedyStep {
  std::uint64_t a = 0;             // accepted element, min-B'=0 build domain
  std::uint64_t search_width = 0;  // candidates examined for this step
  std::uint64_t argmax_n = 0;      // window position attaining the max ratio
};

// Lemma-style translation: B' = B - min B.
inline std::pair<FiniteSet, std::uint64_t> normalize(const FiniteSet& b) {
  if (b.empty()) throw std::invalid_argument("normalize: empty B");
  const std::uint64_t b1 = b.min();
  std::vector<std::uint64_t> shifted;
  shifted.reserve(b.k());
  for (auto x : b.elements()) shifted.push_back(x - b1);
  return {FiniteSet(std::move(shifted)), b1};
}

// Sequential builder state: the elements chosen so far plus membership and
// count bookkeeping for A_m + B'. Adding element a contributes at most k
// new sumset members, all inside [a, a+b].
class GreedyState {
 public:
  GreedyState(FiniteSet b_normalized, DensityTarget alpha, std::uint64_t build_horizon)
      : b_(std::move(b_normalized)), alpha_(alpha), horizon_(build_horizon) {
    if (b_.empty()) throw std::invalid_argument("greedy: empty B");
    if (b_.min() != 0) throw std::invalid_argument("greedy: B must be normalized to min 0");
    if (alpha_.is_zero() || alpha_.is_one()) {
      throw std::invalid_argument("greedy: alpha must lie strictly in (0,1)");
    }
    member_.assign(horizon_ + b_.b() + 2, 0);
  }

  // Test/diagnostic helper: installs the given prefix as if chosen.
  void seed(const std::vector<std::uint64_t>& elements) {
    for (auto a : elements) {
      if (!elements_.empty() && a <= elements_.back()) {
        throw std::invalid_argument("greedy seed: elements must increase");
      }
      accept(a);
    }
  }

  const std::vector<std::uint64_t>& elements() const { return elements_; }
  const FiniteSet& b_normalized() const { return b_; }

  // Least admissible candidate per the recursion; nullopt once the search
  // passes the build horizon.
  std::optional<std::uint64_t> next(GreedyStep* diag = nullptr) {
    std::uint64_t candidate = elements_.empty() ? 0 : elements_.back() + 1;
    std::uint64_t width = 0;
    for (; candidate <= horizon_; ++candidate) {
      ++width;
      std::uint64_t argmax = 0;
      if (admissible(candidate, &argmax)) {
        accept(candidate);
        if (diag) *diag = {candidate, width, argmax};
        return candidate;
      }
    }
    return std::nullopt;
  }

 private:
  bool admissible(std::uint64_t a, std::uint64_t* argmax_n) const {
    const std::uint64_t bmax = b_.b();
    const std::uint64_t lo = a >= 1 ? a : 1;
    const std::uint64_t hi = std::max(a + bmax, lo);

    // members of A_m+B' strictly above n, for n in the window; zero at hi
    // because every member is <= last accepted + bmax < a + bmax
    tail_.assign(hi - lo + 2, 0);
    for (std::uint64_t n = hi; n > lo; --n) {
      tail_[n - 1 - lo] = tail_[n - lo] + member_[n];
    }

    // countable sumset members newly contributed by a, ascending; position
    // 0 (a = 0 with 0 in B') never counts and is skipped here
    new_pos_.clear();
    for (auto off : b_.elements()) {
      const std::uint64_t pos = a + off;
      if (pos >= 1 && !member_[pos]) new_pos_.push_back(pos);
    }

    const std::uint64_t p = alpha_.num();
    const std::uint64_t q = alpha_.den();
    std::size_t added = 0;
    unsigned __int128 best_num = 0;
    std::uint64_t best_den = 1;
    std::uint64_t best_n = lo;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      while (added < new_pos_.size() && new_pos_[added] <= n) ++added;
      const std::uint64_t count = total_ - tail_[n - lo] + added;
      if ((unsigned __int128)count * q > (unsigned __int128)p * n) return false;
      if ((unsigned __int128)count * best_den > best_num * n) {
        best_num = count;
        best_den = n;
        best_n = n;
      }
    }
    if (argmax_n) *argmax_n = best_n;
    return true;
  }

  void accept(std::uint64_t a) {
    for (auto off : b_.elements()) {
      const std::uint64_t pos = a + off;
      if (!member_[pos]) {
        member_[pos] = 1;
        if (pos >= 1) ++total_;
      }
    }
    elements_.push_back(a);
  }

  FiniteSet b_;
  DensityTarget alpha_;
  std::uint64_t horizon_;
  std::vector<std::uint8_t> member_;
  std::uint64_t total_ = 0;  // |(A_m + B') ∩ [1, ...]|
  std::vector<std::uint64_t> elements_;
  mutable std::vector<std::uint64_t> tail_;
  mutable std::vector<std::uint64_t> new_pos_;
};

// Formula-(1) first element for a normalized B'.
inline std::uint64_t first_element(const FiniteSet& b_normalized, const DensityTarget& alpha) {
  // guaranteed to exist below ceil(k/alpha)
  const std::uint64_t bound =
      (b_normalized.k() * alpha.den() + alpha.num() - 1) / alpha.num() + b_normalized.b() + 1;
  GreedyState state(b_normalized, alpha, bound);
  const auto a1 = state.next();
  if (!a1) throw std::logic_error("first_element: bound violated (bug)");
  return *a1;
}

// Formula-(2) step on an existing state.
inline std::optional<std::uint64_t> next_element(GreedyState& state, GreedyStep* diag = nullptr) {
  return state.next(diag);
}

struct GreedyResult {
  GroundSet set;                  // translated back to the original B, within [0, N]
  std::vector<GreedyStep> steps;  // per-step diagnostics in the build domain
  FiniteSet b_normalized;
  std::uint64_t b1 = 0;
  bool degenerate = false;  // alpha in {0, 1} shortcut taken
};

// Theorem-1.2 driver. alpha = 0 yields the powers of two, alpha = 1 all of
// [0, N]; otherwise the recursion runs against B' = B - min B and the
// result is translated back.
inline GreedyResult build_greedy(const FiniteSet& b, const DensityTarget& alpha,
                                 std::uint64_t horizon) {
  if (b.empty()) throw std::invalid_argument("build_greedy: empty B");
  auto [b_norm, b1] = normalize(b);

  if (alpha.is_zero()) {
    std::vector<std::uint64_t> powers;
    for (std::uint64_t p = 1; p <= horizon; p *= 2) {
      powers.push_back(p);
      if (p > horizon / 2) break;
    }
    return {GroundSet::from_elements(horizon, powers), {}, std::move(b_norm), b1, true};
  }
  if (alpha.is_one()) {
    std::vector<std::uint64_t> all(horizon + 1);
    for (std::uint64_t i = 0; i <= horizon; ++i) all[i] = i;
    return {GroundSet::from_elements(horizon, all), {}, std::move(b_norm), b1, true};
  }
  GreedyState state(b_norm, alpha, horizon + b1);
  std::vector<GreedyStep> steps;
  GreedyStep diag;
  while (state.next(&diag)) steps.push_back(diag);

  std::vector<std::uint64_t> translated;
  for (auto a : state.elements()) {
    if (a >= b1) translated.push_back(a - b1);
  }
  return {GroundSet::from_elements(horizon, translated), std::move(steps), std::move(b_norm), b1,
          false};
}

// Property-(iii) audit: with 0 in B, the ratio (A+B)(a)/a at any a in A,
// a > 1, never falls below its predecessor. Returns the violating a's
// (expected empty for every A).
inline std::vector<std::uint64_t> check_ratio_monotone(const GroundSet& a, const FiniteSet& b) {
  if (b.empty() || b.min() != 0) {
    throw std::invalid_argument("check_ratio_monotone: requires min B = 0");
  }
  const GroundSet s = sumset(a, b);
  std::vector<std::uint64_t> violations;
  a.for_each_element([&](std::uint64_t x) {
    if (x <= 1) return;
    const std::uint64_t c1 = s.counting(static_cast<std::int64_t>(x));
    const std::uint64_t c0 = s.counting(static_cast<std::int64_t>(x) - 1);
    if ((unsigned __int128)c1 * (x - 1) < (unsigned __int128)c0 * x) violations.push_back(x);
  });
  return violations;
}

}  // namespace addcomp
