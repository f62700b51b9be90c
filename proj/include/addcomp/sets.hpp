#pragma once

// Prefix representations of subsets of N up to an explicit horizon, plus
// the packed-bit sumset kernels. All sets are immutable after
// construction; kernels are pure and never extend a horizon silently.
//
// Counting follows the window [1, x]: element 0 is representable and
// participates in sumsets but never contributes to counts.

#include <addcomp/numeric.hpp>
#include <addcomp/version.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace addcomp {

// A finite explicit set: sorted distinct nonnegative integers.
class FiniteSet {
 public:
  FiniteSet() = default;

  explicit FiniteSet(std::vector<std::uint64_t> elements) : elems_(std::move(elements)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  static FiniteSet parse(std::string_view text) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto pos = text.find(',', start);
      auto piece = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
      if (piece.empty()) throw std::invalid_argument("finite set: empty element in list");
      std::uint64_t value = 0;
      for (char c : piece) {
        if (c < '0' || c > '9') {
          throw std::invalid_argument("finite set: bad element '" + std::string(piece) + "'");
        }
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
      }
      out.push_back(value);
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return FiniteSet(std::move(out));
  }

  const std::vector<std::uint64_t>& elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  std::uint64_t k() const { return elems_.size(); }

  std::uint64_t b() const {
    if (elems_.empty()) throw std::invalid_argument("finite set: max of empty set");
    return elems_.back();
  }

  std::uint64_t min() const {
    if (elems_.empty()) throw std::invalid_argument("finite set: min of empty set");
    return elems_.front();
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(elems_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.elems_ == b.elems_; }

 private:
  std::vector<std::uint64_t> elems_;
};

// A finite union of arithmetic progressions with common modulus; its exact
// density is |residues| / modulus.
class PeriodicSet {
 public:
  PeriodicSet(std::uint64_t modulus, std::vector<std::uint64_t> residues)
      : modulus_(modulus), residues_(std::move(residues)) {
    if (modulus_ == 0) throw std::invalid_argument("periodic set: zero modulus");
    std::sort(residues_.begin(), residues_.end());
    residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
    for (auto r : residues_) {
      if (r >= modulus_) throw std::invalid_argument("periodic set: residue out of range");
    }
  }

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  DensityTarget exact_density() const {
    return DensityTarget(residues_.size(), modulus_);
  }

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> residues_;
};

// Packed-bit subset of [0, horizon] with word-level count prefix sums.
class GroundSet {
 public:
  explicit GroundSet(std::uint64_t horizon) : horizon_(horizon), words_(word_count(horizon), 0) {
    build_rank();
  }

  static GroundSet from_elements(std::uint64_t horizon, std::span<const std::uint64_t> elements) {
    GroundSet g(horizon, std::vector<std::uint64_t>(word_count(horizon), 0));
    for (auto x : elements) {
      if (x > horizon) throw std::invalid_argument("ground set: element beyond horizon");
      g.words_[x >> 6] |= std::uint64_t(1) << (x & 63);
    }
    g.build_rank();
    return g;
  }

  static GroundSet from_words(std::uint64_t horizon, std::vector<std::uint64_t> words) {
    words.resize(word_count(horizon), 0);
    GroundSet g(horizon, std::move(words));
    g.mask_tail();
    g.build_rank();
    return g;
  }

  std::uint64_t horizon() const { return horizon_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool contains(std::uint64_t x) const {
    if (x > horizon_) return false;
    return (words_[x >> 6] >> (x & 63)) & 1;
  }

  // |X ∩ [1, x]|; 0 for x < 1; error beyond the horizon.
  std::uint64_t counting(std::int64_t x) const {
    if (x < 1) return 0;
    const auto ux = static_cast<std::uint64_t>(x);
    if (ux > horizon_) throw std::out_of_range("counting: x beyond horizon");
    const std::uint64_t w = ux >> 6;
    const std::uint64_t within = (ux & 63) + 1;
    const std::uint64_t partial =
        std::popcount(within == 64 ? words_[w] : (words_[w] & ((std::uint64_t(1) << within) - 1)));
    const std::uint64_t raw = rank_[w] + partial;
    return raw - (words_[0] & 1);  // element 0 never counts
  }

  // |X ∩ [1, horizon]|
  std::uint64_t count_total() const { return total_bits() - (words_[0] & 1); }

  // number of set bits including a possible element 0
  std::uint64_t total_bits() const { return rank_.back(); }

  bool empty() const { return total_bits() == 0; }

  std::vector<std::uint64_t> elements() const {
    std::vector<std::uint64_t> out;
    out.reserve(total_bits());
    for_each_element([&](std::uint64_t x) { out.push_back(x); });
    return out;
  }

  template <typename F>
  void for_each_element(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const unsigned tz = std::countr_zero(bits);
        f((static_cast<std::uint64_t>(w) << 6) | tz);
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.horizon_ == b.horizon_ && a.words_ == b.words_;
  }

  static std::uint64_t word_count(std::uint64_t horizon) { return (horizon >> 6) + 1; }

 private:
  GroundSet(std::uint64_t horizon, std::vector<std::uint64_t> words)
      : horizon_(horizon), words_(std::move(words)) {}

  void mask_tail() {
    const std::uint64_t used = (horizon_ & 63) + 1;
    if (used < 64) words_.back() &= (std::uint64_t(1) << used) - 1;
  }

  void build_rank() {
    rank_.assign(words_.size() + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      rank_[i + 1] = rank_[i] + std::popcount(words_[i]);
    }
  }

  std::uint64_t horizon_;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> rank_;
};

// Free-function form of the counting operation.
inline std::uint64_t counting(const GroundSet& x, std::int64_t upto) { return x.counting(upto); }

namespace detail {

static_assert(kWordBits == 64, "shift-or kernel is written for 64-bit words");

// dst |= src << shift, over equal-length word arrays.
inline void or_shift(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                     std::uint64_t shift) {
  const std::size_t w = dst.size();
  const std::uint64_t q = shift >> 6;
  const unsigned r = shift & 63;
  if (q >= w) return;
  if (r == 0) {
    for (std::size_t i = q; i < w; ++i) dst[i] |= src[i - q];
  } else {
    dst[q] |= src[0] << r;
    for (std::size_t i = q + 1; i < w; ++i) {
      dst[i] |= (src[i - q] << r) | (src[i - q - 1] >> (64 - r));
    }
  }
}

}  // namespace detail

// (A + B) ∩ [0, N] for finite B, N = horizon of A. Exact: every element of
// the true sumset that is <= N arises from summands <= N.
inline GroundSet sumset(const GroundSet& a, const FiniteSet& b) {
  std::vector<std::uint64_t> out(GroundSet::word_count(a.horizon()), 0);
  for (auto shift : b.elements()) {
    if (shift > a.horizon()) continue;
    detail::or_shift(out, a.words(), shift);
  }
  return GroundSet::from_words(a.horizon(), std::move(out));
}

// (A + C) ∩ [0, N] for two ground sets on the same horizon. Iterates over
// the sparser operand.
inline GroundSet sumset(const GroundSet& a, const GroundSet& c) {
  if (a.horizon() != c.horizon()) {
    throw std::invalid_argument("sumset: operands must share a horizon");
  }
  const GroundSet& sparse = a.total_bits() <= c.total_bits() ? a : c;
  const GroundSet& dense = a.total_bits() <= c.total_bits() ? c : a;
  std::vector<std::uint64_t> out(GroundSet::word_count(a.horizon()), 0);
  sparse.for_each_element(
      [&](std::uint64_t shift) { detail::or_shift(out, dense.words(), shift); });
  return GroundSet::from_words(a.horizon(), std::move(out));
}

// (jA) ∩ [0, N] by j-1 successive self-foldings, each truncated at N.
inline GroundSet iterated_sumset(const GroundSet& a, std::uint64_t j) {
  if (j == 0) throw std::invalid_argument("iterated_sumset: j must be positive");
  GroundSet result = a;
  for (std::uint64_t step = 1; step < j; ++step) result = sumset(result, a);
  return result;
}

// {floor(theta * a) : a ∈ X} ∩ [0, out_horizon], theta >= 1.
inline GroundSet floor_scale(const GroundSet& x, const Theta& theta, std::uint64_t out_horizon) {
  if (!theta_at_least_one(theta)) {
    throw std::invalid_argument("floor_scale: theta must be >= 1");
  }
  std::vector<std::uint64_t> out(GroundSet::word_count(out_horizon), 0);
  bool done = false;
  x.for_each_element([&](std::uint64_t a) {
    if (done) return;
    const std::uint64_t mapped = floor_mul(theta, a);
    if (mapped > out_horizon) {
      done = true;  // floor(theta*a) is nondecreasing in a for theta >= 1
      return;
    }
    out[mapped >> 6] |= std::uint64_t(1) << (mapped & 63);
  });
  return GroundSet::from_words(out_horizon, std::move(out));
}

// Expands a periodic description up to N.
inline GroundSet materialize(const PeriodicSet& p, std::uint64_t horizon) {
  std::vector<std::uint64_t> out(GroundSet::word_count(horizon), 0);
  for (auto r : p.residues()) {
    for (std::uint64_t x = r; x <= horizon; x += p.modulus()) {
      out[x >> 6] |= std::uint64_t(1) << (x & 63);
      if (horizon - x < p.modulus()) break;
    }
  }
  return GroundSet::from_words(horizon, std::move(out));
}

// ---------------------------------------------------------------------------
// Serialization. Text: "horizon=N" header then one element per line.
// Binary: horizon as little-endian u64, then the packed words little-endian.

inline void write_set_text(std::ostream& os, const GroundSet& g) {
  os << "horizon=" << g.horizon() << "\n";
  g.for_each_element([&](std::uint64_t x) { os << x << "\n"; });
}

inline GroundSet read_set_text(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("horizon=", 0) != 0) {
    throw std::invalid_argument("set text: missing horizon header");
  }
  const std::uint64_t horizon = std::stoull(header.substr(8));
  std::vector<std::uint64_t> elems;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    elems.push_back(std::stoull(line));
  }
  return GroundSet::from_elements(horizon, elems);
}

inline void write_set_binary(std::ostream& os, const GroundSet& g) {
  auto put_u64 = [&](std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(bytes, 8);
  };
  put_u64(g.horizon());
  for (auto w : g.words()) put_u64(w);
}

inline GroundSet read_set_binary(std::istream& is) {
  auto get_u64 = [&]() -> std::uint64_t {
    char bytes[8];
    if (!is.read(bytes, 8)) throw std::invalid_argument("set binary: truncated input");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    }
    return v;
  };
  const std::uint64_t horizon = get_u64();
  std::vector<std::uint64_t> words(GroundSet::word_count(horizon));
  for (auto& w : words) w = get_u64();
  return GroundSet::from_words(horizon, std::move(words));
}

}  // namespace addcomp
