#pragma once

// The two explicit constructions giving d(jA) = j*alpha/k for 1 <= j <= k:
// Case A (rational alpha) builds a periodic set from H = {0..m-2, m};
// Case B (irrational alpha = 1/theta) filters the Beatty values floor(n
// theta) by {n theta} < 1/k. The Case-B verifier replays the band
// decomposition argument with exact arithmetic.

#include <addcomp/density.hpp>
#include <addcomp/greedy.hpp>
#include <addcomp/sets.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace addcomp {

// ---------------------------------------------------------------------------
// Case A: alpha = m/n with 3 <= m <= n-1 after scaling; A is periodic with
// modulus n*k and residues H = {0,...,m-2} ∪ {m}.

struct RationalCaseParams {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> h;  // residue set H
  std::uint64_t modulus = 0;     // n*k
};

// Fixed scaling rule for small numerators: m=1 scales by 3, m=2 by 2. The
// scaled pair is deliberately not reduced.
inline RationalCaseParams rational_params(const DensityTarget& alpha, std::uint64_t k) {
  if (alpha.is_zero() || alpha.is_one()) {
    throw std::invalid_argument("rational construction: alpha must lie strictly in (0,1)");
  }
  if (k < 2) throw std::invalid_argument("rational construction: k must be >= 2");
  std::uint64_t m = alpha.num();
  std::uint64_t n = alpha.den();
  if (m == 1) {
    m *= 3;
    n *= 3;
  } else if (m == 2) {
    m *= 2;
    n *= 2;
  }
  RationalCaseParams params;
  params.m = m;
  params.n = n;
  params.k = k;
  params.modulus = n * k;
  for (std::uint64_t h = 0; h + 2 <= m; ++h) params.h.push_back(h);
  params.h.push_back(m);
  // stated inequalities: 3 <= m <= n-1 and k*max H < nk
  if (m < 3 || m > n - 1 || k * m >= params.modulus) {
    throw std::logic_error("rational construction: parameter bounds violated (bug)");
  }
  return params;
}

inline PeriodicSet rational_construction(const DensityTarget& alpha, std::uint64_t k) {
  const auto params = rational_params(alpha, k);
  return PeriodicSet(params.modulus, params.h);
}

// Exact density of jA: jm/(nk), reduced.
inline DensityTarget rational_jfold_density(const RationalCaseParams& params, std::uint64_t j) {
  return DensityTarget(j * params.m, params.modulus);
}

// Brute-force jH by residue sums and assert the proven identity
// jH = {0,...,jm-2} ∪ {jm}.
inline std::vector<std::uint64_t> jfold_residues(const RationalCaseParams& params,
                                                 std::uint64_t j) {
  if (j < 1 || j > params.k) {
    throw std::invalid_argument("jfold_residues: j must lie in [1, k]");
  }
  std::vector<bool> reachable(params.modulus, false);
  reachable[0] = true;
  for (std::uint64_t fold = 0; fold < j; ++fold) {
    std::vector<bool> next(params.modulus, false);
    for (std::uint64_t r = 0; r < params.modulus; ++r) {
      if (!reachable[r]) continue;
      for (auto h : params.h) next[(r + h) % params.modulus] = true;
    }
    reachable.swap(next);
  }
  std::vector<std::uint64_t> result;
  for (std::uint64_t r = 0; r < params.modulus; ++r) {
    if (reachable[r]) result.push_back(r);
  }

  std::vector<std::uint64_t> expected;
  for (std::uint64_t r = 0; r + 2 <= j * params.m; ++r) expected.push_back(r);
  expected.push_back(j * params.m);
  if (result != expected) {
    throw std::logic_error("jfold_residues: jH identity violated (bug)");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Case B: Beatty-filtered sets.

// {floor(n theta) : n >= 1, lo <= {n theta} < hi} ∩ [0, N].
inline GroundSet beatty_interval(const Theta& theta, const DensityTarget& lo,
                                 const DensityTarget& hi, std::uint64_t horizon) {
  if (!theta_greater_than_one(theta)) {
    throw std::invalid_argument("beatty: theta must exceed 1");
  }
  std::vector<std::uint64_t> words(GroundSet::word_count(horizon), 0);
  for (std::uint64_t n = 1;; ++n) {
    const std::uint64_t value = floor_mul(theta, n);
    if (value > horizon) break;
    const bool above_lo =
        lo.is_zero() || frac_linear_sign(theta, 1, n, 0, 0, static_cast<std::int64_t>(lo.num()),
                                         static_cast<std::int64_t>(lo.den())) > 0;
    if (!above_lo) continue;
    const bool below_hi =
        hi.is_one() || frac_linear_sign(theta, 1, n, 0, 0, static_cast<std::int64_t>(hi.num()),
                                        static_cast<std::int64_t>(hi.den())) < 0;
    if (below_hi) words[value >> 6] |= std::uint64_t(1) << (value & 63);
  }
  return GroundSet::from_words(horizon, std::move(words));
}

// A = {floor(n theta) : {n theta} < 1/k} ∩ [0, N], theta = 1/alpha > 1.
inline GroundSet beatty_construction(const Theta& theta, std::uint64_t k, std::uint64_t horizon) {
  if (k < 2) throw std::invalid_argument("beatty construction: k must be >= 2");
  return beatty_interval(theta, DensityTarget(0, 1), DensityTarget(1, k), horizon);
}

// T_j = {floor(m theta) : {m theta} < j/k} ∩ [0, N]; jA ⊆ T_j.
inline GroundSet t_j_set(const Theta& theta, std::uint64_t j, std::uint64_t k,
                         std::uint64_t horizon) {
  if (j < 1 || j > k) throw std::invalid_argument("t_j_set: j must lie in [1, k]");
  return beatty_interval(theta, DensityTarget(0, 1), DensityTarget(j, k), horizon);
}

// ---------------------------------------------------------------------------
// Case-B decomposition verifier.

struct ShiftWitness {
  std::uint64_t band = 0;          // i in [0, j-1]
  std::uint64_t m_i = 0;           // witness from the equidistribution step
  std::uint64_t floor_m_theta = 0; // its Beatty value, proven to lie in A
  bool in_a = false;
  std::uint64_t checked = 0;       // band members beyond the witness bound
  std::uint64_t skipped_small = 0; // band members at or below it
  std::uint64_t violations = 0;
};

struct CaseBReport {
  std::uint64_t j = 0;
  std::uint64_t k = 0;
  DensityTarget eps;
  std::uint64_t horizon = 0;
  std::uint64_t witness_cap = 0;
  std::vector<ShiftWitness> witnesses;
  std::uint64_t total_checked = 0;
  std::uint64_t total_violations = 0;
  bool inconclusive = false;  // some witness search hit the cap
};

// Replays the band argument: split [eps/2, j/k - eps/2) into j bands of
// width l/j with l = j/k - eps, find the smallest m_i whose scaled
// fractional part lands in the band-i window, then check the floor
// decomposition identity for every band member beyond (j-1)*m_i.
inline CaseBReport verify_case_b(const Theta& theta, std::uint64_t j, std::uint64_t k,
                                 const DensityTarget& eps, std::uint64_t horizon,
                                 std::uint64_t witness_cap = 10000000) {
  if (j < 2 || j > k) throw std::invalid_argument("verify_case_b: j must lie in [2, k]");
  if (!theta_greater_than_one(theta)) {
    throw std::invalid_argument("verify_case_b: theta must exceed 1");
  }
  // 0 < eps < 1/(4k), strict on both sides
  if (eps.is_zero() || eps.num() * 4 * k >= eps.den()) {
    throw std::invalid_argument("verify_case_b: eps must lie in (0, 1/(4k))");
  }

  CaseBReport rep;
  rep.j = j;
  rep.k = k;
  rep.eps = eps;
  rep.horizon = horizon;
  rep.witness_cap = witness_cap;

  const std::int64_t p = static_cast<std::int64_t>(eps.num());
  const std::int64_t q = static_cast<std::int64_t>(eps.den());
  const std::int64_t sj = static_cast<std::int64_t>(j);
  const std::int64_t sk = static_cast<std::int64_t>(k);
  // common denominator D = 2jkq; band boundary i sits at
  // (pjk + 2i(jq - kp)) / D, the last upper end at j(2jq - kp) / D
  const std::int64_t den = 2 * sj * sk * q;
  const std::int64_t width_num = 2 * (sj * q - sk * p);  // l/j over D
  auto boundary = [&](std::uint64_t i) -> std::int64_t {
    return p * sj * sk + static_cast<std::int64_t>(i) * width_num;
  };

  // witness search per band: the (11) window is
  // boundary(i+1) - 1/k < (j-1){m theta} < boundary(i)
  std::vector<std::optional<std::uint64_t>> witness(j);
  for (std::uint64_t i = 0; i < j; ++i) {
    const std::int64_t lower = boundary(i + 1) - 2 * sj * q;  // minus 1/k over D
    const std::int64_t upper = boundary(i);
    ShiftWitness w;
    w.band = i;
    for (std::uint64_t m = 1; m <= witness_cap; ++m) {
      if (frac_linear_sign(theta, static_cast<std::int64_t>(j - 1), m, 0, 0, lower, den) > 0 &&
          frac_linear_sign(theta, static_cast<std::int64_t>(j - 1), m, 0, 0, upper, den) < 0) {
        w.m_i = m;
        w.floor_m_theta = floor_mul(theta, m);
        w.in_a = frac_linear_sign(theta, 1, m, 0, 0, 1, sk) < 0;
        witness[i] = m;
        break;
      }
    }
    if (!witness[i]) rep.inconclusive = true;
    rep.witnesses.push_back(w);
  }

  // scan every element floor(nn theta) <= horizon, classify into bands
  for (std::uint64_t nn = 1;; ++nn) {
    const std::uint64_t value = floor_mul(theta, nn);
    if (value > horizon) break;
    // inside B: eps/2 <= {nn theta} < j/k - eps/2
    if (frac_linear_sign(theta, 1, nn, 0, 0, boundary(0), den) < 0) continue;
    if (frac_linear_sign(theta, 1, nn, 0, 0, boundary(j), den) > 0) continue;
    std::uint64_t band = 0;
    while (band + 1 < j && frac_linear_sign(theta, 1, nn, 0, 0, boundary(band + 1), den) > 0) {
      ++band;
    }
    ShiftWitness& w = rep.witnesses[band];
    if (!witness[band]) continue;  // inconclusive band, nothing to check against
    const std::uint64_t m_i = *witness[band];
    if (nn <= (j - 1) * m_i) {
      ++w.skipped_small;
      continue;
    }
    ++w.checked;
    ++rep.total_checked;

    bool ok = true;
    // (13): 0 < {nn theta} - (j-1){m_i theta} < 1/k
    if (frac_linear_sign(theta, 1, nn, -static_cast<std::int64_t>(j - 1), m_i, 0, 1) <= 0) {
      ok = false;
    }
    if (frac_linear_sign(theta, 1, nn, -static_cast<std::int64_t>(j - 1), m_i, 1, sk) >= 0) {
      ok = false;
    }
    // (16): floor(nn theta) = floor((nn-(j-1)m_i) theta) + (j-1) floor(m_i theta)
    const std::uint64_t rest = nn - (j - 1) * m_i;
    const std::uint64_t rest_floor = floor_mul(theta, rest);
    if (value != rest_floor + (j - 1) * w.floor_m_theta) ok = false;
    // both parts lie in A
    if (!w.in_a) ok = false;
    if (frac_linear_sign(theta, 1, rest, 0, 0, 1, sk) >= 0) ok = false;

    if (!ok) {
      ++w.violations;
      ++rep.total_violations;
    }
  }
  return rep;
}

}  // namespace addcomp
