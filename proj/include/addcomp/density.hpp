#pragma once

// Empirical and exact density estimation. Tail-window min/max stand in for
// liminf/limsup at a finite horizon; a report only ever brackets, it never
// claims a limit exists.

#include <addcomp/sets.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace addcomp {

// An exact ratio count/x; numerators and denominators are kept as sampled,
// not reduced.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double approx() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return (unsigned __int128)a.num * b.den == (unsigned __int128)b.num * a.den;
  }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return (unsigned __int128)a.num * b.den < (unsigned __int128)b.num * a.den;
  }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
};

struct RatioPoint {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
};

struct DensityReport {
  std::uint64_t horizon = 0;
  DensityTarget window_fraction;
  std::uint64_t grid = 0;
  std::vector<RatioPoint> ratio_curve;
  Ratio tail_lower;
  Ratio tail_upper;
  std::optional<Ratio> index_lower;
  std::optional<Ratio> index_upper;
  std::optional<DensityTarget> exact_density;
  // set when an exact density is known but falls outside the tail bracket
  // (tail window too short to be informative)
  bool inconclusive = false;
};

struct DensityOptions {
  DensityTarget window_fraction{1, 2};
  std::uint64_t grid = 1024;
};

namespace detail {

inline std::uint64_t tail_window_start(std::uint64_t horizon, const DensityTarget& w) {
  if (w.is_zero() || w.is_one()) {
    throw std::invalid_argument("density: window fraction must lie in (0,1)");
  }
  // ceil(horizon * num / den), clamped to [1, horizon]
  const unsigned __int128 prod = (unsigned __int128)horizon * w.num();
  auto start = static_cast<std::uint64_t>((prod + w.den() - 1) / w.den());
  return std::max<std::uint64_t>(1, std::min(start, horizon));
}

}  // namespace detail

// Fills every report field from a single scan of the tail window plus a
// grid pass. Ratios use exact integer numerators with the sampled x as
// denominator.
inline DensityReport density_report(const GroundSet& x, const DensityOptions& opts = {}) {
  const std::uint64_t horizon = x.horizon();
  if (horizon < 1) throw std::invalid_argument("density_report: horizon must be >= 1");
  if (opts.grid == 0) throw std::invalid_argument("density_report: grid must be positive");

  DensityReport rep;
  rep.horizon = horizon;
  rep.window_fraction = opts.window_fraction;
  rep.grid = opts.grid;

  rep.ratio_curve.reserve(std::min(opts.grid, horizon));
  std::uint64_t prev = 0;
  for (std::uint64_t i = 1; i <= opts.grid; ++i) {
    const auto sample =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>((unsigned __int128)i * horizon / opts.grid));
    if (sample == prev) continue;
    prev = sample;
    rep.ratio_curve.push_back({sample, x.counting(static_cast<std::int64_t>(sample))});
  }

  const std::uint64_t start = detail::tail_window_start(horizon, opts.window_fraction);
  bool first = true;
  std::uint64_t count = x.counting(static_cast<std::int64_t>(start) - 1);
  for (std::uint64_t n = start; n <= horizon; ++n) {
    const bool member = x.contains(n);
    if (member) ++count;  // n >= 1 inside the window
    const Ratio here{count, n};
    if (first || here < rep.tail_lower) rep.tail_lower = here;
    if (first || rep.tail_upper < here) rep.tail_upper = here;
    first = false;
    if (member) {
      // at element positions k/a_k equals counting(a_k)/a_k exactly
      if (!rep.index_lower || here < *rep.index_lower) rep.index_lower = here;
      if (!rep.index_upper || *rep.index_upper < here) rep.index_upper = here;
    }
  }
  return rep;
}

// Periodic overload: attaches the exact density and flags an inconclusive
// bracket instead of asserting.
inline DensityReport density_report(const PeriodicSet& p, std::uint64_t horizon,
                                    const DensityOptions& opts = {}) {
  DensityReport rep = density_report(materialize(p, horizon), opts);
  const DensityTarget exact = p.exact_density();
  rep.exact_density = exact;
  const Ratio e{exact.num(), exact.den()};
  rep.inconclusive = !(rep.tail_lower <= e && e <= rep.tail_upper);
  return rep;
}

// Lemma-style index estimates: min and max of k/a_k over elements a_k of X
// in the tail window, k being the 1-based rank among elements >= 1.
inline std::pair<Ratio, Ratio> index_density(const GroundSet& x,
                                             const DensityTarget& window_fraction = {1, 2}) {
  const std::uint64_t start = detail::tail_window_start(x.horizon(), window_fraction);
  std::optional<Ratio> lo, hi;
  std::uint64_t elements_seen = 0;
  std::uint64_t rank = x.counting(static_cast<std::int64_t>(start) - 1);
  for (std::uint64_t n = start; n <= x.horizon(); ++n) {
    if (!x.contains(n)) continue;
    ++rank;
    ++elements_seen;
    const Ratio here{rank, n};
    if (!lo || here < *lo) lo = here;
    if (!hi || *hi < here) hi = here;
  }
  if (elements_seen < 2) throw std::invalid_argument("index_density: too few elements in window");
  return {*lo, *hi};
}

// Exact density of a periodic set as a rational in lowest terms.
inline DensityTarget exact_density(const PeriodicSet& p) { return p.exact_density(); }

}  // namespace addcomp
