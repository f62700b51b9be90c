#pragma once

// Test-only oracle for n*theta decisions: scaled-decimal bracketing with
// certified lower/upper bounds. Shares no algorithm with the library's
// sign-analysis path; every answer is provably correct or the oracle
// refuses (asserts) instead of guessing.

#include <addcomp/numeric.hpp>

#include <cassert>
#include <cstdint>

namespace dec50 {

using addcomp::BigInt;

inline BigInt pow10(int digits) {
  BigInt r = 1;
  for (int i = 0; i < digits; ++i) r *= 10;
  return r;
}

inline BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a < 0 && q * b != a) --q;
  return q;
}

// lo/den <= n*theta <= hi/den with den = w * 10^digits.
struct Brackets {
  BigInt lo;
  BigInt hi;
  BigInt den;
};

inline Brackets bracket_mul(const addcomp::QuadraticIrrational& t, std::uint64_t n,
                            int digits = 50) {
  const BigInt S = pow10(digits);
  const BigInt r = boost::multiprecision::sqrt(BigInt(t.d()) * S * S);  // r <= sqrt(d)*S < r+1
  BigInt vlo, vhi;
  if (t.v() > 0) {
    vlo = BigInt(t.v()) * r;
    vhi = BigInt(t.v()) * (r + 1);
  } else {
    vlo = BigInt(t.v()) * (r + 1);
    vhi = BigInt(t.v()) * r;
  }
  Brackets b;
  b.lo = BigInt(n) * (BigInt(t.u()) * S + vlo);
  b.hi = BigInt(n) * (BigInt(t.u()) * S + vhi);
  b.den = BigInt(t.w()) * S;
  return b;
}

// Certified floor(n*theta): both bracket ends must floor identically.
inline std::uint64_t floor_mul(const addcomp::QuadraticIrrational& t, std::uint64_t n,
                               int digits = 50) {
  const Brackets b = bracket_mul(t, n, digits);
  const BigInt flo = fdiv(b.lo, b.den);
  const BigInt fhi = fdiv(b.hi, b.den);
  assert(flo == fhi && "oracle bracket too coarse; raise digits");
  assert(flo >= 0);
  return static_cast<std::uint64_t>(flo);
}

// Certified sign of {n*theta} - p/q: -1 or +1, never ambiguous.
inline int frac_sign(const addcomp::QuadraticIrrational& t, std::uint64_t n, std::uint64_t p,
                     std::uint64_t q, int digits = 50) {
  const Brackets b = bracket_mul(t, n, digits);
  const BigInt f = fdiv(b.lo, b.den);
  assert(f == fdiv(b.hi, b.den));
  const BigInt lo_num = b.lo - f * b.den;  // {n theta} in [lo_num/den, hi_num/den]
  const BigInt hi_num = b.hi - f * b.den;
  if (hi_num * q < BigInt(p) * b.den) return -1;
  if (lo_num * q > BigInt(p) * b.den) return 1;
  assert(false && "oracle bracket straddles the threshold; raise digits");
  return 0;
}

// Sweep-friendly form: the sqrt bracket is hoisted out so a full range of
// n costs one multiplication per bound per call.
class BracketedTheta {
 public:
  explicit BracketedTheta(const addcomp::QuadraticIrrational& t, int digits = 50) {
    const BigInt S = pow10(digits);
    const BigInt r = boost::multiprecision::sqrt(BigInt(t.d()) * S * S);
    if (t.v() > 0) {
      lo_unit_ = BigInt(t.u()) * S + BigInt(t.v()) * r;
      hi_unit_ = BigInt(t.u()) * S + BigInt(t.v()) * (r + 1);
    } else {
      lo_unit_ = BigInt(t.u()) * S + BigInt(t.v()) * (r + 1);
      hi_unit_ = BigInt(t.u()) * S + BigInt(t.v()) * r;
    }
    den_ = BigInt(t.w()) * S;
  }

  std::uint64_t floor_mul(std::uint64_t n) const {
    const BigInt flo = fdiv(BigInt(n) * lo_unit_, den_);
    const BigInt fhi = fdiv(BigInt(n) * hi_unit_, den_);
    assert(flo == fhi && "oracle bracket too coarse; raise digits");
    return static_cast<std::uint64_t>(flo);
  }

 private:
  BigInt lo_unit_;
  BigInt hi_unit_;
  BigInt den_;
};

// Certified sign of c1*{n1 theta} + c2*{n2 theta} - num/den.
inline int lin_sign(const addcomp::QuadraticIrrational& t, std::int64_t c1, std::uint64_t n1,
                    std::int64_t c2, std::uint64_t n2, std::int64_t num, std::int64_t den,
                    int digits = 50) {
  BigInt lo = 0, hi = 0, scale = 0;
  auto accumulate = [&](std::int64_t c, std::uint64_t n) {
    if (c == 0 || n == 0) return;
    const Brackets b = bracket_mul(t, n, digits);
    const BigInt f = fdiv(b.lo, b.den);
    assert(f == fdiv(b.hi, b.den));
    const BigInt l = b.lo - f * b.den;
    const BigInt h = b.hi - f * b.den;
    if (scale == 0) scale = b.den;
    assert(scale == b.den);
    if (c > 0) {
      lo += c * l;
      hi += c * h;
    } else {
      lo += c * h;
      hi += c * l;
    }
  };
  accumulate(c1, n1);
  accumulate(c2, n2);
  if (scale == 0) scale = pow10(digits) * t.w();
  const BigInt rhs = BigInt(num) * scale;
  if (hi * den < rhs) return -1;
  if (lo * den > rhs) return 1;
  assert(false && "oracle bracket straddles the threshold; raise digits");
  return 0;
}

}  // namespace dec50
