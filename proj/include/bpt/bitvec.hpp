#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpt/common.hpp"
#include "bpt/io.hpp"

namespace bpt {

/// Packed parenthesis sequence B[1..length]; '(' is a 1 bit and ')' a 0 bit.
///
/// Bits are stored most-significant-first inside 64-bit words, so position p
/// (0-based) lives at bit 63 - p % 64 of word p / 64. An aligned c-bit chunk
/// therefore reads in sequence order from its high bit down, which is also the
/// byte order of the packed external form.
class ParenBitvector {
 public:
  ParenBitvector() = default;
  explicit ParenBitvector(std::uint64_t length) : size_(length), words_((length + 63) / 64, 0) {}

  /// Parses '(' and ')' and skips ASCII whitespace; anything else is rejected.
  static ParenBitvector from_string(std::string_view text) {
    std::uint64_t count = 0;
    for (char ch : text) {
      if (ch == '(' || ch == ')') {
        ++count;
      } else if (!is_space(ch)) {
        throw format_error(std::string("unexpected character in parenthesis text: '") + ch + "'");
      }
    }
    ParenBitvector out(count);
    std::uint64_t p = 0;
    for (char ch : text) {
      if (ch == '(') {
        out.words_[p >> 6] |= top_bit(p);
        ++p;
      } else if (ch == ')') {
        ++p;
      }
    }
    return out;
  }

  template <typename Range>
  static ParenBitvector from_bits(const Range& bits) {
    ParenBitvector out(static_cast<std::uint64_t>(std::size(bits)));
    std::uint64_t p = 0;
    for (bool b : bits) {
      if (b) out.words_[p >> 6] |= top_bit(p);
      ++p;
    }
    return out;
  }

  /// External binary form: 8-byte little-endian bit length, then the bits
  /// packed most-significant-first into ceil(length / 8) bytes.
  static ParenBitvector from_packed(std::span<const std::byte> raw) {
    if (raw.size() < 8) throw format_error("packed parentheses: missing length header");
    std::uint64_t length = 0;
    for (int k = 7; k >= 0; --k) length = (length << 8) | std::to_integer<std::uint64_t>(raw[k]);
    const std::uint64_t payload = (length + 7) / 8;
    if (raw.size() - 8 < payload) throw format_error("packed parentheses: truncated payload");
    ParenBitvector out(length);
    for (std::uint64_t k = 0; k < payload; ++k) {
      const auto byte = std::to_integer<std::uint64_t>(raw[8 + k]);
      out.words_[k >> 3] |= byte << (56 - 8 * (k & 7));
    }
    out.clear_tail();
    return out;
  }

  [[nodiscard]] std::vector<std::byte> to_packed() const {
    std::vector<std::byte> out(8 + (size_ + 7) / 8);
    for (int k = 0; k < 8; ++k) out[k] = static_cast<std::byte>((size_ >> (8 * k)) & 0xFF);
    for (std::uint64_t k = 0; k < (size_ + 7) / 8; ++k) {
      out[8 + k] = static_cast<std::byte>((words_[k >> 3] >> (56 - 8 * (k & 7))) & 0xFF);
    }
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    s.reserve(size_);
    for (std::uint64_t i = 1; i <= size_; ++i) s.push_back((*this)[i] ? '(' : ')');
    return s;
  }

  [[nodiscard]] std::uint64_t size() const noexcept { return size_; }
  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Unchecked 1-based access.
  bool operator[](position_t i) const noexcept {
    const std::uint64_t p = i - 1;
    return (words_[p >> 6] & top_bit(p)) != 0;
  }

  /// Checked 1-based access.
  [[nodiscard]] bool get(position_t i) const {
    detail::check_range("bit position", i, 1, size_);
    return (*this)[i];
  }

  void set(position_t i, bool value) {
    detail::check_range("bit position", i, 1, size_);
    const std::uint64_t p = i - 1;
    if (value) {
      words_[p >> 6] |= top_bit(p);
    } else {
      words_[p >> 6] &= ~top_bit(p);
    }
  }

  /// The `width`-bit chunk starting at 0-based `offset`; offset must be a
  /// multiple of width and width must divide 64.
  [[nodiscard]] std::uint32_t chunk(std::uint64_t offset, unsigned width) const noexcept {
    const std::uint64_t w = words_[offset >> 6];
    const unsigned shift = 64 - width - static_cast<unsigned>(offset & 63);
    return static_cast<std::uint32_t>((w >> shift) & ((std::uint64_t{1} << width) - 1));
  }

  /// Number of 1 bits in B[l..r]; zero when l > r.
  [[nodiscard]] std::uint64_t ones(position_t l, position_t r) const noexcept {
    if (l > r) return 0;
    std::uint64_t a = l - 1;
    const std::uint64_t b = r;  // exclusive, 0-based
    std::uint64_t count = 0;
    while (a < b) {
      const std::uint64_t word = a >> 6;
      const unsigned lo = static_cast<unsigned>(a & 63);
      const unsigned hi = static_cast<unsigned>(std::min<std::uint64_t>(64, b - (word << 6)));
      std::uint64_t w = words_[word] << lo;
      w >>= lo;                       // drop bits before a
      if (hi < 64) w >>= (64 - hi);   // drop bits at or after b
      count += static_cast<std::uint64_t>(std::popcount(w));
      a = (word << 6) + hi;
    }
    return count;
  }

  /// Position of the k-th `bit` at or after position l (k >= 1). Returns 0
  /// when fewer than k occurrences remain.
  [[nodiscard]] position_t select_from(position_t l, std::uint64_t k, bool bit) const noexcept {
    std::uint64_t a = l - 1;
    while (a < size_) {
      const std::uint64_t word = a >> 6;
      std::uint64_t w = bit ? words_[word] : ~words_[word];
      const unsigned lo = static_cast<unsigned>(a & 63);
      if (lo != 0) w &= (~std::uint64_t{0}) >> lo;
      const std::uint64_t word_end = std::min<std::uint64_t>((word + 1) << 6, size_);
      if (word_end < ((word + 1) << 6)) w &= ~((~std::uint64_t{0}) >> (word_end - (word << 6)));
      const auto pc = static_cast<std::uint64_t>(std::popcount(w));
      if (pc >= k) {
        while (true) {
          const unsigned lz = static_cast<unsigned>(std::countl_zero(w));
          if (--k == 0) return (word << 6) + lz + 1;
          w &= ~(std::uint64_t{1} << (63 - lz));
        }
      }
      k -= pc;
      a = (word + 1) << 6;
    }
    return 0;
  }

  /// Excess never negative and zero at the end; length even and at least 2.
  [[nodiscard]] bool is_balanced() const noexcept {
    if (size_ < 2 || (size_ & 1) != 0) return false;
    std::int64_t e = 0;
    for (std::uint64_t i = 1; i <= size_; ++i) {
      e += (*this)[i] ? 1 : -1;
      if (e < 0) return false;
    }
    return e == 0;
  }

  void save(io::Writer& out) const {
    out.put<std::uint64_t>(size_);
    out.put_vector(words_);
  }

  static ParenBitvector load(io::Reader& in) {
    ParenBitvector out;
    out.size_ = in.get<std::uint64_t>();
    out.words_ = in.get_vector<std::uint64_t>();
    if (out.words_.size() != (out.size_ + 63) / 64) throw format_error("parenthesis word count mismatch");
    return out;
  }

  [[nodiscard]] std::uint64_t size_in_bits() const noexcept { return words_.size() * 64; }

  bool operator==(const ParenBitvector&) const = default;

 private:
  static constexpr std::uint64_t top_bit(std::uint64_t p) noexcept { return std::uint64_t{1} << (63 - (p & 63)); }
  static constexpr bool is_space(char ch) noexcept {
    return ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t' || ch == '\v' || ch == '\f';
  }

  void clear_tail() noexcept {
    if ((size_ & 63) != 0) words_.back() &= ~((~std::uint64_t{0}) >> (size_ & 63));
  }

  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Excess profile of one chunk read left to right starting from relative
/// excess 0. m/M/n range over the excess after each bit (the starting 0 is
/// excluded); pairs10 counts "10" pairs that start and end inside the chunk.
struct ChunkSummary {
  std::int8_t e = 0;
  std::int8_t m = 0;
  std::int8_t M = 0;
  std::uint8_t n = 0;
  std::uint8_t ones = 0;
  std::uint8_t pairs10 = 0;

  bool operator==(const ChunkSummary&) const = default;
};

/// Lookup table of ChunkSummary for every chunk value of a given width.
class ChunkTable {
 public:
  /// Bit-by-bit summary of `value` read as `width` parentheses, first
  /// parenthesis in the most significant bit.
  static ChunkSummary summarize(std::uint32_t value, unsigned width) {
    if (width == 0 || width > 16) throw std::invalid_argument("chunk width must be in [1, 16]");
    ChunkSummary s;
    int e = 0;
    int m = std::numeric_limits<int>::max();
    int M = std::numeric_limits<int>::min();
    int n = 0;
    int ones = 0;
    int pairs = 0;
    for (unsigned j = 0; j < width; ++j) {
      const bool bit = ((value >> (width - 1 - j)) & 1u) != 0;
      e += bit ? 1 : -1;
      ones += bit ? 1 : 0;
      if (e < m) {
        m = e;
        n = 1;
      } else if (e == m) {
        ++n;
      }
      M = std::max(M, e);
      if (j + 1 < width && bit && ((value >> (width - 2 - j)) & 1u) == 0) ++pairs;
    }
    s.e = static_cast<std::int8_t>(e);
    s.m = static_cast<std::int8_t>(m);
    s.M = static_cast<std::int8_t>(M);
    s.n = static_cast<std::uint8_t>(n);
    s.ones = static_cast<std::uint8_t>(ones);
    s.pairs10 = static_cast<std::uint8_t>(pairs);
    return s;
  }

  static ChunkTable build(unsigned width) {
    if (width != 8 && width != 16) throw std::invalid_argument("chunk width must be 8 or 16");
    ChunkTable t;
    t.width_ = width;
    t.entries_.resize(std::size_t{1} << width);
    for (std::uint32_t v = 0; v < t.entries_.size(); ++v) t.entries_[v] = summarize(v, width);
    return t;
  }

  /// Process-wide shared tables, built on first use.
  static const ChunkTable& get(unsigned width) {
    if (width == 8) {
      static const ChunkTable t8 = build(8);
      return t8;
    }
    if (width == 16) {
      static const ChunkTable t16 = build(16);
      return t16;
    }
    throw std::invalid_argument("chunk width must be 8 or 16");
  }

  [[nodiscard]] unsigned width() const noexcept { return width_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  const ChunkSummary& operator[](std::uint32_t value) const noexcept { return entries_[value]; }

 private:
  unsigned width_ = 0;
  std::vector<ChunkSummary> entries_;
};

inline ChunkTable build_chunk_table(unsigned width) { return ChunkTable::build(width); }

// Block-scan kernels. Every kernel walks bit by bit until it reaches a
// chunk-aligned position, consumes whole chunks through the table while the
// chunk lies inside the range, and drops back to bits only for the chunk that
// holds the answer and for unaligned ends. Excess values are in whatever
// frame the caller supplies (absolute, bucket-relative, ...).
namespace scan {

struct Hit {
  bool found = false;
  position_t pos = 0;
  excess_t excess = 0;  // excess at pos (the hit, or the range end on a miss)
};

struct Extremum {
  excess_t value = 0;
  position_t pos = 0;        // leftmost position attaining value
  std::uint64_t count = 0;   // occurrences of value (min kernels only)
};

struct Select {
  bool found = false;
  position_t pos = 0;
  std::uint64_t remaining = 0;  // on a miss: q minus the occurrences seen
};

inline int step(bool bit) noexcept { return bit ? 1 : -1; }

/// First j in (from, last] with excess(j) == target, given excess(from).
inline Hit forward(const ParenBitvector& bits, const ChunkTable& table, position_t from, excess_t from_excess,
                   position_t last, excess_t target) {
  const unsigned c = table.width();
  excess_t exc = from_excess;
  position_t p = from;  // excess(p) == exc
  while (p < last) {
    if ((p % c) == 0 && p + c <= last) {
      const ChunkSummary& s = table[bits.chunk(p, c)];
      if (target >= exc + s.m && target <= exc + s.M) {
        for (position_t q = p + 1;; ++q) {
          exc += step(bits[q]);
          if (exc == target) return {true, q, exc};
        }
      }
      exc += s.e;
      p += c;
      continue;
    }
    ++p;
    exc += step(bits[p]);
    if (exc == target) return {true, p, exc};
  }
  return {false, last, exc};
}

/// Largest j in [lo, top] with excess(j) == target, given excess(top).
/// Requires lo >= 1. On a miss the returned excess is excess(lo - 1).
inline Hit backward(const ParenBitvector& bits, const ChunkTable& table, position_t top, excess_t top_excess,
                    position_t lo, excess_t target) {
  const unsigned c = table.width();
  excess_t exc = top_excess;
  position_t j = top;  // excess(j) == exc, candidates [lo, j] remain
  while (j >= lo) {
    if ((j % c) == 0 && j >= lo + c - 1) {
      const ChunkSummary& s = table[bits.chunk(j - c, c)];
      const excess_t base = exc - s.e;  // excess(j - c)
      if (target >= base + s.m && target <= base + s.M) {
        for (position_t q = j;; --q) {
          if (exc == target) return {true, q, exc};
          exc -= step(bits[q]);
        }
      }
      exc = base;
      j -= c;
      continue;
    }
    if (exc == target) return {true, j, exc};
    exc -= step(bits[j]);
    --j;
  }
  return {false, lo - 1, exc};
}

namespace detail {

template <bool Min>
inline Extremum extremum(const ParenBitvector& bits, const ChunkTable& table, position_t l, position_t r,
                         excess_t base) {
  const unsigned c = table.width();
  Extremum best{Min ? std::numeric_limits<excess_t>::max() : std::numeric_limits<excess_t>::min(), 0, 0};
  bool lazy = false;  // best came from a chunk whose leftmost hit is not yet located
  position_t lazy_chunk = 0;
  excess_t lazy_base = 0;
  excess_t exc = base;
  position_t p = l - 1;
  while (p < r) {
    if ((p % c) == 0 && p + c <= r) {
      const ChunkSummary& s = table[bits.chunk(p, c)];
      const excess_t v = exc + (Min ? s.m : s.M);
      if (Min ? v < best.value : v > best.value) {
        best.value = v;
        best.count = Min ? s.n : 0;
        lazy = true;
        lazy_chunk = p;
        lazy_base = exc;
      } else if (Min && v == best.value) {
        best.count += s.n;
      }
      exc += s.e;
      p += c;
      continue;
    }
    ++p;
    exc += step(bits[p]);
    if (Min ? exc < best.value : exc > best.value) {
      best.value = exc;
      best.pos = p;
      best.count = 1;
      lazy = false;
    } else if (Min && exc == best.value) {
      ++best.count;
    }
  }
  if (lazy) {
    excess_t e = lazy_base;
    for (position_t q = lazy_chunk + 1;; ++q) {
      e += step(bits[q]);
      if (e == best.value) {
        best.pos = q;
        break;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Leftmost minimum of excess over [l, r] and its multiplicity; base is excess(l - 1).
inline Extremum min(const ParenBitvector& bits, const ChunkTable& table, position_t l, position_t r, excess_t base) {
  return detail::extremum<true>(bits, table, l, r, base);
}

/// Leftmost maximum of excess over [l, r]; count is not computed.
inline Extremum max(const ParenBitvector& bits, const ChunkTable& table, position_t l, position_t r, excess_t base) {
  return detail::extremum<false>(bits, table, l, r, base);
}

/// q-th position j in [l, r] with excess(j) == value, where value is no
/// larger than any excess in the range.
inline Select select_min(const ParenBitvector& bits, const ChunkTable& table, position_t l, position_t r,
                         excess_t base, excess_t value, std::uint64_t q) {
  const unsigned c = table.width();
  excess_t exc = base;
  position_t p = l - 1;
  while (p < r) {
    if ((p % c) == 0 && p + c <= r) {
      const ChunkSummary& s = table[bits.chunk(p, c)];
      if (exc + s.m == value) {
        if (q <= s.n) {
          for (position_t x = p + 1;; ++x) {
            exc += step(bits[x]);
            if (exc == value && --q == 0) return {true, x, 0};
          }
        }
        q -= s.n;
      }
      exc += s.e;
      p += c;
      continue;
    }
    ++p;
    exc += step(bits[p]);
    if (exc == value && --q == 0) return {true, p, 0};
  }
  return {false, 0, q};
}

/// Number of "10" pairs starting at positions in [l, r] (the pair may end at r + 1).
inline std::uint64_t count_pairs10(const ParenBitvector& bits, const ChunkTable& table, position_t l,
                                   position_t r) {
  const unsigned c = table.width();
  const std::uint64_t n = bits.size();
  std::uint64_t count = 0;
  position_t p = l - 1;
  while (p < r) {
    if ((p % c) == 0 && p + c <= r) {
      const std::uint32_t v = bits.chunk(p, c);
      count += table[v].pairs10;
      // pair straddling into the next chunk
      if ((v & 1u) != 0 && p + c < n && !bits[p + c + 1]) ++count;
      p += c;
      continue;
    }
    ++p;
    if (bits[p] && p < n && !bits[p + 1]) ++count;
  }
  return count;
}

/// Start position of the k-th "10" pair starting in [l, r].
inline Select select_pairs10(const ParenBitvector& bits, const ChunkTable& table, position_t l, position_t r,
                             std::uint64_t k) {
  const unsigned c = table.width();
  const std::uint64_t n = bits.size();
  position_t p = l - 1;
  while (p < r) {
    if ((p % c) == 0 && p + c <= r) {
      const std::uint32_t v = bits.chunk(p, c);
      const bool straddle = (v & 1u) != 0 && p + c < n && !bits[p + c + 1];
      const std::uint64_t here = table[v].pairs10 + (straddle ? 1u : 0u);
      if (k > here) {
        k -= here;
        p += c;
        continue;
      }
      for (position_t x = p + 1;; ++x) {
        if (bits[x] && x < n && !bits[x + 1] && --k == 0) return {true, x, 0};
      }
    }
    ++p;
    if (bits[p] && p < n && !bits[p + 1] && --k == 0) return {true, p, 0};
  }
  return {false, 0, k};
}

}  // namespace scan
}  // namespace bpt
