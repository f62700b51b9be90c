#include <addcomp/constructions.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "support/dec50.hpp"

using namespace addcomp;

namespace {
const Theta kSqrt2 = QuadraticIrrational::sqrt_of(2);
const Theta kPhi = QuadraticIrrational(1, 1, 2, 5);

std::vector<std::uint64_t> residues_mod(const GroundSet& g, std::uint64_t modulus) {
  std::vector<bool> seen(modulus, false);
  g.for_each_element([&](std::uint64_t x) { seen[x % modulus] = true; });
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < modulus; ++r) {
    if (seen[r]) out.push_back(r);
  }
  return out;
}

bool subset_of(const GroundSet& a, const GroundSet& b) {
  REQUIRE(a.horizon() == b.horizon());
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    if (a.words()[i] & ~b.words()[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("rational construction scales small numerators deterministically") {
  const auto p1 = rational_params(DensityTarget(1, 2), 2);
  CHECK(p1.m == 3);
  CHECK(p1.n == 6);
  CHECK(p1.modulus == 12);
  CHECK(p1.h == std::vector<std::uint64_t>{0, 1, 3});

  const auto p2 = rational_params(DensityTarget(2, 5), 2);
  CHECK(p2.m == 4);
  CHECK(p2.n == 10);
  CHECK(p2.modulus == 20);
  CHECK(p2.h == std::vector<std::uint64_t>{0, 1, 2, 4});

  const auto p3 = rational_params(DensityTarget(3, 7), 3);
  CHECK(p3.m == 3);
  CHECK(p3.n == 7);
  CHECK(p3.modulus == 21);
  CHECK(p3.h == std::vector<std::uint64_t>{0, 1, 3});

  CHECK_THROWS_AS(rational_params(DensityTarget(0, 1), 2), std::invalid_argument);
  CHECK_THROWS_AS(rational_params(DensityTarget(1, 1), 2), std::invalid_argument);
  CHECK_THROWS_AS(rational_params(DensityTarget(1, 2), 1), std::invalid_argument);
}

TEST_CASE("jfold residues follow the proven identity") {
  const auto params = rational_params(DensityTarget(1, 2), 2);
  CHECK(jfold_residues(params, 1) == std::vector<std::uint64_t>{0, 1, 3});
  CHECK(jfold_residues(params, 2) == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 6});

  const auto p37 = rational_params(DensityTarget(3, 7), 3);
  CHECK(jfold_residues(p37, 3) == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 9});
  CHECK(jfold_residues(p37, 3).size() == 9);  // |jH| = jm

  CHECK_THROWS_AS(jfold_residues(params, 0), std::invalid_argument);
  CHECK_THROWS_AS(jfold_residues(params, 3), std::invalid_argument);
}

TEST_CASE("rational jfold densities are exactly j*alpha/k") {
  for (const auto& [alpha, k] : std::vector<std::pair<DensityTarget, std::uint64_t>>{
           {{1, 2}, 2}, {{1, 2}, 3}, {{2, 5}, 2}, {{3, 7}, 3}, {{5, 6}, 4}}) {
    const auto params = rational_params(alpha, k);
    for (std::uint64_t j = 1; j <= k; ++j) {
      const auto d = rational_jfold_density(params, j);
      // jm/(nk) reduces to j*alpha/k
      CHECK((unsigned __int128)d.num() * (alpha.den() * k) ==
            (unsigned __int128)d.den() * (j * alpha.num()));
    }
  }
}

TEST_CASE("materialized jA has exactly the jH residues and periodic counts") {
  const auto params = rational_params(DensityTarget(1, 2), 2);
  const auto a = materialize(rational_construction(DensityTarget(1, 2), 2), 12 * 12);
  for (std::uint64_t j = 1; j <= 2; ++j) {
    const auto ja = iterated_sumset(a, j);
    CHECK(residues_mod(ja, params.modulus) == jfold_residues(params, j));
  }
  // counting over whole periods: [1, periods*modulus] drops x=0 but picks
  // up the endpoint (residue 0), so the count is exactly periods * |jH|
  const auto twofold = iterated_sumset(a, 2);
  const std::uint64_t periods = 12;
  CHECK(twofold.counting(static_cast<std::int64_t>(periods * params.modulus)) ==
        periods * 2 * params.m);
}

TEST_CASE("scaling rule stability: pre-scaled fractions construct identically") {
  const auto from_half = rational_construction(DensityTarget(1, 2), 2);
  const auto from_scaled = rational_construction(DensityTarget(3, 6), 2);
  CHECK(from_half.modulus() == from_scaled.modulus());
  CHECK(from_half.residues() == from_scaled.residues());
}

TEST_CASE("beatty construction matches the oracle-confirmed prefixes") {
  CHECK(beatty_construction(kSqrt2, 2, 10).elements() == std::vector<std::uint64_t>{1, 4, 7, 8});
  // the 1/3 threshold also removes n=1 ({sqrt2} ~ .414 >= 1/3): confirmed
  // against the bracketing oracle below
  CHECK(beatty_construction(kSqrt2, 3, 10).elements() == std::vector<std::uint64_t>{4, 7});
  const auto& q = std::get<QuadraticIrrational>(kSqrt2);
  for (std::uint64_t n = 1; n <= 7; ++n) {
    const bool in_a = dec50::frac_sign(q, n, 1, 3) < 0;
    const std::uint64_t value = dec50::floor_mul(q, n);
    if (value <= 10) {
      CHECK(beatty_construction(kSqrt2, 3, 10).contains(value) == in_a);
    }
  }
  CHECK(beatty_construction(kSqrt2, 2, 0).elements().empty());
  CHECK_THROWS_AS(beatty_construction(QuadraticIrrational(0, 1, 2, 2), 2, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(beatty_construction(kSqrt2, 1, 10), std::invalid_argument);
}

TEST_CASE("t_j sets: j=1 equals the construction, j=k is the full Beatty sequence") {
  for (std::uint64_t k = 2; k <= 3; ++k) {
    CHECK(t_j_set(kSqrt2, 1, k, 200) == beatty_construction(kSqrt2, k, 200));
  }
  const auto full = t_j_set(kSqrt2, 3, 3, 50);
  std::vector<std::uint64_t> beatty;
  for (std::uint64_t n = 1;; ++n) {
    const auto v = floor_mul(kSqrt2, n);
    if (v > 50) break;
    beatty.push_back(v);
  }
  CHECK(full.elements() == beatty);
  CHECK_THROWS_AS(t_j_set(kSqrt2, 0, 2, 10), std::invalid_argument);
  CHECK_THROWS_AS(t_j_set(kSqrt2, 3, 2, 10), std::invalid_argument);
}

TEST_CASE("jA is contained in T_j at matching horizons") {
  for (const Theta& theta : {kSqrt2, kPhi}) {
    for (std::uint64_t k = 2; k <= 3; ++k) {
      const auto a = beatty_construction(theta, k, 2000);
      for (std::uint64_t j = 1; j <= k; ++j) {
        const auto ja = iterated_sumset(a, j);
        const auto tj = t_j_set(theta, j, k, 2000);
        REQUIRE(subset_of(ja, tj));
      }
    }
  }
}

TEST_CASE("fixed-point theta reproduces the exact Beatty prefix") {
  const Theta fixed = FixedPointReal::from_decimal("1.41421356237309504880168872420969807857", 64);
  CHECK(beatty_construction(fixed, 2, 500) == beatty_construction(kSqrt2, 2, 500));
}

TEST_CASE("case-b verifier finds the hand-computed witnesses and no violations") {
  const auto rep = verify_case_b(kSqrt2, 2, 2, DensityTarget(1, 10), 10000);
  REQUIRE(rep.witnesses.size() == 2);
  CHECK_FALSE(rep.inconclusive);
  // band 0 needs {m sqrt2} in (0, 1/20); band 1 needs it in (9/20, 1/2)
  CHECK(rep.witnesses[0].m_i == 17);
  CHECK(rep.witnesses[1].m_i == 6);
  CHECK(rep.witnesses[0].floor_m_theta == 24);
  CHECK(rep.witnesses[1].floor_m_theta == 8);
  CHECK(rep.witnesses[0].in_a);
  CHECK(rep.witnesses[1].in_a);
  CHECK(rep.total_checked > 0);
  CHECK(rep.total_violations == 0);

  // band widths: l = 2/2 - 1/10 = 9/10, so each band spans l/j = 9/20
  const std::int64_t den = 2 * 2 * 2 * 10;  // D = 2jkq
  const std::int64_t width = 2 * (2 * 10 - 2 * 1);
  CHECK(width * 20 == 9 * den);  // width/D == 9/20
}

TEST_CASE("case-b verifier preconditions and the witness cap") {
  CHECK_THROWS_AS(verify_case_b(kSqrt2, 1, 2, DensityTarget(1, 10), 100), std::invalid_argument);
  CHECK_THROWS_AS(verify_case_b(kSqrt2, 2, 2, DensityTarget(1, 8), 100), std::invalid_argument);
  CHECK_THROWS_AS(verify_case_b(kSqrt2, 2, 2, DensityTarget(0, 1), 100), std::invalid_argument);
  CHECK_THROWS_AS(verify_case_b(QuadraticIrrational(0, 1, 2, 2), 2, 2, DensityTarget(1, 10), 100),
                  std::invalid_argument);

  const auto capped = verify_case_b(kSqrt2, 2, 2, DensityTarget(1, 10), 1000, 10);
  CHECK(capped.inconclusive);           // band 0 needs m = 17 > cap
  CHECK(capped.witnesses[1].m_i == 6);  // band 1 still resolves
}

TEST_CASE("case-b verifier across a small parameter sweep stays clean") {
  for (const Theta& theta : {kSqrt2, kPhi}) {
    for (std::uint64_t k = 2; k <= 3; ++k) {
      for (std::uint64_t j = 2; j <= k; ++j) {
        const auto rep = verify_case_b(theta, j, k, DensityTarget(1, 8 * k), 3000);
        REQUIRE_FALSE(rep.inconclusive);
        REQUIRE(rep.total_violations == 0);
        REQUIRE(rep.total_checked > 0);
        for (const auto& w : rep.witnesses) REQUIRE(w.in_a);
      }
    }
  }
}
