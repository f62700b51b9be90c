#pragma once

// Exact arithmetic for density targets (rationals in [0,1]) and for
// quadratic irrationals theta = (u + v*sqrt(d))/w. Every floor and
// fractional-part decision is settled by integer comparisons; floating
// point appears only as an initial guess for integer square roots and is
// always corrected exactly. A guarded fixed-point fallback covers theta
// values outside the quadratic field.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace addcomp {

using BigInt = boost::multiprecision::cpp_int;

// Thrown by the fixed-point fallback when a decision falls inside the
// accumulated-error guard band and cannot be made honestly.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Rational density target p/q, kept in lowest terms, 0 <= p/q <= 1.

class DensityTarget {
 public:
  DensityTarget() = default;

  DensityTarget(std::uint64_t p, std::uint64_t q) : p_(p), q_(q) {
    if (q == 0) throw std::invalid_argument("density target: zero denominator");
    if (p > q) throw std::invalid_argument("density target outside [0,1]");
    const std::uint64_t g = std::gcd(p_, q_);
    p_ /= g;
    q_ /= g;
  }

  std::uint64_t num() const { return p_; }
  std::uint64_t den() const { return q_; }

  bool is_zero() const { return p_ == 0; }
  bool is_one() const { return p_ == q_; }

  double approx() const { return static_cast<double>(p_) / static_cast<double>(q_); }

  std::string str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

  friend bool operator==(const DensityTarget& a, const DensityTarget& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend bool operator<(const DensityTarget& a, const DensityTarget& b) {
    return (unsigned __int128)a.p_ * b.q_ < (unsigned __int128)b.p_ * a.q_;
  }
  friend bool operator<=(const DensityTarget& a, const DensityTarget& b) { return !(b < a); }

 private:
  std::uint64_t p_ = 0;
  std::uint64_t q_ = 1;
};

// Parses "p/q" or a finite decimal ("0.55", "1", ".25") into an exact
// rational in [0,1]. Decimals convert exactly: 0.55 -> 11/20.
inline DensityTarget parse_density(std::string_view text) {
  auto fail = [&]() -> void {
    throw std::invalid_argument("malformed density '" + std::string(text) + "'");
  };
  if (text.empty()) fail();

  auto parse_u64 = [&](std::string_view s) -> std::uint64_t {
    if (s.empty() || s.size() > 19) fail();
    std::uint64_t value = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail();
      value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return value;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::uint64_t p = parse_u64(text.substr(0, slash));
    const std::uint64_t q = parse_u64(text.substr(slash + 1));
    if (q == 0) fail();
    if (p > q) throw std::invalid_argument("density outside [0,1]: " + std::string(text));
    return DensityTarget(p, q);
  }

  std::string_view ipart = text;
  std::string_view fpart;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    ipart = text.substr(0, dot);
    fpart = text.substr(dot + 1);
    if (ipart.empty() && fpart.empty()) fail();
  }
  const std::uint64_t whole = ipart.empty() ? 0 : parse_u64(ipart);
  if (fpart.size() > 18) {
    throw std::invalid_argument("decimal density has too many digits (max 18): " +
                                std::string(text));
  }
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
  const std::uint64_t frac = fpart.empty() ? 0 : parse_u64(fpart);
  if (whole > 1 || (whole == 1 && frac != 0)) {
    throw std::invalid_argument("density outside [0,1]: " + std::string(text));
  }
  return DensityTarget(whole * den + frac, den);
}

// ---------------------------------------------------------------------------
// Integer square roots.

inline std::uint64_t isqrt_u64(std::uint64_t s) {
  if (s == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(s)));
  while (r > 0 && (unsigned __int128)r * r > s) --r;
  while ((unsigned __int128)(r + 1) * (r + 1) <= s) ++r;
  return r;
}

inline bool is_perfect_square(std::uint64_t d) {
  const std::uint64_t r = isqrt_u64(d);
  return r * r == d;
}

namespace detail {

// Floor square root for inputs below 2^104; the float seed is within a few
// ulps there, so the fixup loops terminate immediately.
inline std::optional<unsigned __int128> isqrt_u128_small(unsigned __int128 s) {
  if (s >= ((unsigned __int128)1 << 104)) return std::nullopt;
  if (s == 0) return (unsigned __int128)0;
  auto r = (unsigned __int128)sqrtl(static_cast<long double>(s));
  if (r > 0) --r;
  int steps = 0;
  while (r * r > s) {
    --r;
    if (++steps > 64) return std::nullopt;
  }
  while ((r + 1) * (r + 1) <= s) {
    ++r;
    if (++steps > 64) return std::nullopt;
  }
  return r;
}

// Sign of a + b*sqrt(d), d positive non-square. 0 only when a == b == 0.
inline int sign_qsurd(const BigInt& a, const BigInt& b, std::uint64_t d) {
  if (b == 0) return a == 0 ? 0 : (a < 0 ? -1 : 1);
  if (b > 0) {
    if (a >= 0) return 1;
    const BigInt lhs = b * b * d;
    const BigInt rhs = a * a;
    if (lhs > rhs) return 1;
    if (lhs < rhs) return -1;
    return 0;
  }
  return -sign_qsurd(-a, -b, d);
}

// Fixed-width variant; nullopt when a product could leave the squarable
// range |a| < 2^62, |b| < 2^52, d < 2^20.
inline std::optional<int> sign_qsurd_fast(__int128 a, __int128 b, std::uint64_t d) {
  if (b == 0) return a == 0 ? 0 : (a < 0 ? -1 : 1);
  if (b < 0) {
    auto s = sign_qsurd_fast(-a, -b, d);
    if (!s) return std::nullopt;
    return -*s;
  }
  if (a >= 0) return 1;
  if (-a >= ((__int128)1 << 62) || b >= ((__int128)1 << 52) || d >= (1u << 20)) {
    return std::nullopt;
  }
  const unsigned __int128 lhs = (unsigned __int128)b * (unsigned __int128)b * d;
  const unsigned __int128 rhs = (unsigned __int128)(-a) * (unsigned __int128)(-a);
  if (lhs > rhs) return 1;
  if (lhs < rhs) return -1;
  return 0;
}

inline BigInt floor_div(const BigInt& a, const BigInt& w) {
  BigInt q = a / w;
  if (a < 0 && q * w != a) --q;
  return q;
}

inline std::uint64_t to_u64_checked(const BigInt& x, const char* what) {
  if (x < 0 || x > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error(std::string(what) + ": result exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(x);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// theta = (u + v*sqrt(d)) / w with d a positive non-square, so the value is
// irrational whenever v != 0 (checked at construction).

class QuadraticIrrational {
 public:
  QuadraticIrrational(std::int64_t u, std::int64_t v, std::uint64_t w, std::uint64_t d)
      : u_(u), v_(v), w_(w), d_(d) {
    if (w == 0) throw std::invalid_argument("quadratic irrational: zero denominator");
    if (v == 0) throw std::invalid_argument("quadratic irrational: v = 0 is rational");
    if (d == 0 || is_perfect_square(d)) {
      throw std::invalid_argument("quadratic irrational: d must be a positive non-square");
    }
  }

  static QuadraticIrrational sqrt_of(std::uint64_t d) { return {0, 1, 1, d}; }

  std::int64_t u() const { return u_; }
  std::int64_t v() const { return v_; }
  std::uint64_t w() const { return w_; }
  std::uint64_t d() const { return d_; }

  // Sign of theta - num/den, decided exactly.
  int compare_rational(std::int64_t num, std::int64_t den) const {
    if (den <= 0) throw std::invalid_argument("compare_rational: den must be positive");
    const BigInt a = BigInt(u_) * den - BigInt(num) * w_;
    const BigInt b = BigInt(v_) * den;
    return detail::sign_qsurd(a, b, d_);
  }

  bool is_positive() const { return compare_rational(0, 1) > 0; }
  bool greater_than_one() const { return compare_rational(1, 1) > 0; }

  double approx() const {
    return (static_cast<double>(u_) +
            static_cast<double>(v_) * std::sqrt(static_cast<double>(d_))) /
           static_cast<double>(w_);
  }

  std::string str() const {
    if (u_ == 0 && v_ == 1 && w_ == 1) return "sqrt:" + std::to_string(d_);
    return "quad:" + std::to_string(u_) + "," + std::to_string(v_) + "," + std::to_string(w_) +
           "," + std::to_string(d_);
  }

 private:
  std::int64_t u_;
  std::int64_t v_;
  std::uint64_t w_;
  std::uint64_t d_;
};

namespace detail {

inline std::optional<std::uint64_t> fast_floor_mul(const QuadraticIrrational& t, std::uint64_t n) {
  if (n > (std::uint64_t(1) << 62)) return std::nullopt;
  const __int128 nv = (__int128)n * t.v();
  const unsigned __int128 mag = nv < 0 ? (unsigned __int128)(-nv) : (unsigned __int128)nv;
  if (mag >= ((unsigned __int128)1 << 52) || t.d() >= (1u << 20)) return std::nullopt;
  const auto r = isqrt_u128_small(mag * mag * t.d());
  if (!r) return std::nullopt;
  const __int128 nu = (__int128)n * t.u();
  const __int128 a = t.v() > 0 ? nu + (__int128)*r : nu - (__int128)*r - 1;
  __int128 q = a / (__int128)t.w();
  if (a < 0 && q * (__int128)t.w() != a) --q;
  if (q < 0 || q > (__int128)std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(q);
}

}  // namespace detail

// floor(n * theta) by exact integer comparisons. n = 0 yields 0. Overflow
// of the 64-bit result range is reported, never wrapped.
inline std::uint64_t floor_mul(const QuadraticIrrational& t, std::uint64_t n) {
  if (!t.is_positive()) throw std::invalid_argument("floor_mul: theta must be positive");
  if (n == 0) return 0;
  if (auto fast = detail::fast_floor_mul(t, n)) return *fast;
  const BigInt nv = BigInt(n) * t.v();
  const BigInt s = nv * nv * t.d();
  const BigInt r = boost::multiprecision::sqrt(s);
  const BigInt nu = BigInt(n) * t.u();
  const BigInt a = t.v() > 0 ? BigInt(nu + r) : BigInt(nu - r - 1);
  return detail::to_u64_checked(detail::floor_div(a, BigInt(t.w())), "floor_mul");
}

namespace detail {

// Single-term fast path: sign of c*{n theta} - num/den on __int128. The
// static magnitude guards keep every product well inside 128 bits; the
// final range check lives in sign_qsurd_fast.
inline std::optional<int> fast_frac_sign(const QuadraticIrrational& t, std::int64_t c,
                                         std::uint64_t n, std::int64_t num, std::int64_t den) {
  constexpr std::int64_t kLim = std::int64_t(1) << 20;
  if (n >= (std::uint64_t(1) << 40)) return std::nullopt;
  auto small = [](std::int64_t x) { return x > -kLim && x < kLim; };
  if (!small(c) || !small(t.u()) || !small(t.v()) || t.w() >= std::uint64_t(kLim) ||
      t.d() >= std::uint64_t(kLim) || !small(num) || !small(den)) {
    return std::nullopt;
  }
  auto f = fast_floor_mul(t, n);
  if (!f) return std::nullopt;
  // value = (c*(n u - F w) + c n v sqrt(d))/w - num/den
  const __int128 a0 = (__int128)n * t.u() - (__int128)*f * t.w();
  const __int128 a = (__int128)c * a0 * den - (__int128)num * (__int128)t.w();
  const __int128 b = (__int128)c * den * (__int128)n * t.v();
  return sign_qsurd_fast(a, b, t.d());
}

}  // namespace detail

// Sign of c1*{n1 theta} + c2*{n2 theta} - num/den, decided exactly.
inline int frac_linear_sign(const QuadraticIrrational& t, std::int64_t c1, std::uint64_t n1,
                            std::int64_t c2, std::uint64_t n2, std::int64_t num,
                            std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("frac_linear_sign: den must be positive");
  if ((c2 == 0 || n2 == 0) && c1 != 0 && n1 != 0) {
    if (auto s = detail::fast_frac_sign(t, c1, n1, num, den)) return *s;
  }
  const BigInt w = t.w();
  BigInt a = 0;  // w * (rational part of the fractional combination)
  BigInt b = 0;  // sqrt(d) coefficient, times w
  if (c1 != 0 && n1 != 0) {
    const std::uint64_t f1 = floor_mul(t, n1);
    a += BigInt(c1) * (BigInt(n1) * t.u() - BigInt(f1) * w);
    b += BigInt(c1) * BigInt(n1) * t.v();
  }
  if (c2 != 0 && n2 != 0) {
    const std::uint64_t f2 = floor_mul(t, n2);
    a += BigInt(c2) * (BigInt(n2) * t.u() - BigInt(f2) * w);
    b += BigInt(c2) * BigInt(n2) * t.v();
  }
  // sign of (a + b sqrt(d))/w - num/den = sign of (a den - num w) + b den sqrt(d)
  return detail::sign_qsurd(a * den - BigInt(num) * w, b * den, t.d());
}

enum class FracOrder { less, greater };

// Decides {n*theta} < t versus > t; equality is impossible for irrational
// theta and n >= 1.
inline FracOrder frac_compare(const QuadraticIrrational& t, std::uint64_t n,
                              const DensityTarget& r) {
  if (n == 0) throw std::invalid_argument("frac_compare: n must be positive");
  if (r.num() > (std::uint64_t(1) << 62) || r.den() > (std::uint64_t(1) << 62)) {
    throw std::overflow_error("frac_compare: rational threshold too large");
  }
  const int s = frac_linear_sign(t, 1, n, 0, 0, static_cast<std::int64_t>(r.num()),
                                 static_cast<std::int64_t>(r.den()));
  if (s == 0) throw std::logic_error("frac_compare: impossible equality");
  return s < 0 ? FracOrder::less : FracOrder::greater;
}

// ---------------------------------------------------------------------------
// Fixed-point fallback: value = mantissa * 2^-frac_bits >= 0. Decisions
// closer to a threshold than the accumulated representation error abort
// with PrecisionError instead of guessing.

class FixedPointReal {
 public:
  FixedPointReal(BigInt mantissa, unsigned frac_bits)
      : mantissa_(std::move(mantissa)), frac_bits_(frac_bits) {
    if (frac_bits_ == 0) throw std::invalid_argument("fixed-point: frac_bits must be positive");
    if (mantissa_ < 0) throw std::invalid_argument("fixed-point: negative values unsupported");
  }

  // Exact conversion of a decimal literal, truncated to F fractional bits.
  static FixedPointReal from_decimal(std::string_view dec, unsigned frac_bits) {
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    for (char c : dec) {
      if (c == '.') {
        if (seen_dot) throw std::invalid_argument("fixed-point: malformed decimal");
        seen_dot = true;
        continue;
      }
      if (c < '0' || c > '9') throw std::invalid_argument("fixed-point: malformed decimal");
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    }
    if (digits.empty()) throw std::invalid_argument("fixed-point: malformed decimal");
    BigInt scaled(digits);
    BigInt pow10 = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) pow10 *= 10;
    return FixedPointReal((scaled << frac_bits) / pow10, frac_bits);
  }

  const BigInt& mantissa() const { return mantissa_; }
  unsigned frac_bits() const { return frac_bits_; }

  double approx() const {
    return static_cast<double>(mantissa_) / std::ldexp(1.0, static_cast<int>(frac_bits_));
  }

  bool greater_than_one() const { return mantissa_ > (BigInt(1) << frac_bits_); }
  bool is_positive() const { return mantissa_ > 0; }

  std::uint64_t floor_mul(std::uint64_t n) const {
    if (n == 0) return 0;
    const BigInt t = BigInt(n) * mantissa_;
    const BigInt rem = t & ((BigInt(1) << frac_bits_) - 1);
    // floor is ambiguous if n*theta lies within n*2^-F of an integer
    if (rem < n || ((BigInt(1) << frac_bits_) - rem) <= n) {
      throw PrecisionError("fixed-point floor for n=" + std::to_string(n) +
                           " falls inside the error guard band; increase frac_bits");
    }
    return detail::to_u64_checked(t >> frac_bits_, "fixed-point floor_mul");
  }

  // Sign of c1*{n1 v} + c2*{n2 v} - num/den with a den*(|c1| n1 + |c2| n2)
  // guard band in 2^-F units.
  int frac_linear_sign(std::int64_t c1, std::uint64_t n1, std::int64_t c2, std::uint64_t n2,
                       std::int64_t num, std::int64_t den) const {
    if (den <= 0) throw std::invalid_argument("frac_linear_sign: den must be positive");
    const BigInt one = BigInt(1) << frac_bits_;
    BigInt acc = 0;
    BigInt guard = 0;
    if (c1 != 0 && n1 != 0) {
      acc += BigInt(c1) * ((BigInt(n1) * mantissa_) & (one - 1));
      guard += BigInt(c1 < 0 ? -c1 : c1) * n1;
    }
    if (c2 != 0 && n2 != 0) {
      acc += BigInt(c2) * ((BigInt(n2) * mantissa_) & (one - 1));
      guard += BigInt(c2 < 0 ? -c2 : c2) * n2;
    }
    const BigInt lhs = acc * den - BigInt(num) * one;
    const BigInt band = guard * den;
    if (lhs > -band && lhs < band) {
      throw PrecisionError("fixed-point comparison falls inside the error guard band");
    }
    return lhs < 0 ? -1 : 1;
  }

 private:
  BigInt mantissa_;
  unsigned frac_bits_;
};

// ---------------------------------------------------------------------------
// Theta: an exact quadratic irrational or the guarded fixed-point fallback.
// CLI syntax: "sqrt:d", "quad:u,v,w,d", "fixed:decimal,F".

using Theta = std::variant<QuadraticIrrational, FixedPointReal>;

inline std::uint64_t floor_mul(const Theta& t, std::uint64_t n) {
  if (const auto* q = std::get_if<QuadraticIrrational>(&t)) return floor_mul(*q, n);
  return std::get<FixedPointReal>(t).floor_mul(n);
}

inline int frac_linear_sign(const Theta& t, std::int64_t c1, std::uint64_t n1, std::int64_t c2,
                            std::uint64_t n2, std::int64_t num, std::int64_t den) {
  if (const auto* q = std::get_if<QuadraticIrrational>(&t)) {
    return frac_linear_sign(*q, c1, n1, c2, n2, num, den);
  }
  return std::get<FixedPointReal>(t).frac_linear_sign(c1, n1, c2, n2, num, den);
}

inline bool theta_greater_than_one(const Theta& t) {
  return std::visit([](const auto& v) { return v.greater_than_one(); }, t);
}

inline bool theta_at_least_one(const Theta& t) {
  if (const auto* q = std::get_if<QuadraticIrrational>(&t)) return q->compare_rational(1, 1) > 0;
  const auto& f = std::get<FixedPointReal>(t);
  return f.mantissa() >= (BigInt(1) << f.frac_bits());
}

inline double theta_approx(const Theta& t) {
  return std::visit([](const auto& v) { return v.approx(); }, t);
}

inline std::string theta_str(const Theta& t) {
  if (const auto* q = std::get_if<QuadraticIrrational>(&t)) return q->str();
  const auto& f = std::get<FixedPointReal>(t);
  return "fixed:F=" + std::to_string(f.frac_bits());
}

inline Theta parse_theta(std::string_view text) {
  auto fail = [&]() -> void {
    throw std::invalid_argument("malformed theta '" + std::string(text) + "'");
  };
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      auto pos = s.find(sep, start);
      parts.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return parts;
  };
  try {
    if (text.starts_with("sqrt:")) {
      const std::string body(text.substr(5));
      std::size_t used = 0;
      const std::uint64_t d = std::stoull(body, &used);
      if (used != body.size()) fail();
      if (d == 0 || is_perfect_square(d)) {
        throw std::invalid_argument("theta sqrt:" + body + " is a perfect square, not irrational");
      }
      return QuadraticIrrational::sqrt_of(d);
    }
    if (text.starts_with("quad:")) {
      const auto parts = split(text.substr(5), ',');
      if (parts.size() != 4) fail();
      std::size_t used = 0;
      const std::int64_t u = std::stoll(parts[0], &used);
      if (used != parts[0].size()) fail();
      const std::int64_t v = std::stoll(parts[1], &used);
      if (used != parts[1].size()) fail();
      const std::uint64_t w = std::stoull(parts[2], &used);
      if (used != parts[2].size()) fail();
      const std::uint64_t d = std::stoull(parts[3], &used);
      if (used != parts[3].size()) fail();
      return QuadraticIrrational(u, v, w, d);
    }
    if (text.starts_with("fixed:")) {
      const auto parts = split(text.substr(6), ',');
      if (parts.size() != 2) fail();
      std::size_t used = 0;
      const unsigned long bits = std::stoul(parts[1], &used);
      if (used != parts[1].size() || bits == 0 || bits > 4096) fail();
      return FixedPointReal::from_decimal(parts[0], static_cast<unsigned>(bits));
    }
  } catch (const std::out_of_range&) {
    fail();
  }
  fail();
  return QuadraticIrrational::sqrt_of(2);  // unreachable
}

}  // namespace addcomp
