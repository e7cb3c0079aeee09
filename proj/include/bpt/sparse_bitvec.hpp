#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bpt/common.hpp"
#include "bpt/io.hpp"

namespace bpt {

/// Plain bitvector (0-based, LSB-first words) with rank/select directories:
/// cumulative ranks every 512 bits and a superblock hint every 512 ones/zeros.
class RankSelectBits {
 public:
  RankSelectBits() = default;

  explicit RankSelectBits(std::vector<std::uint64_t> words, std::uint64_t size)
      : size_(size), words_(std::move(words)) {
    words_.resize((size_ + 63) / 64, 0);
    if ((size_ & 63) != 0) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    build_directories();
  }

  [[nodiscard]] std::uint64_t size() const noexcept { return size_; }
  [[nodiscard]] std::uint64_t ones() const noexcept { return super_.empty() ? 0 : super_.back(); }

  bool operator[](std::uint64_t p) const noexcept { return (words_[p >> 6] >> (p & 63)) & 1u; }

  /// Ones in [0, p).
  [[nodiscard]] std::uint64_t rank1(std::uint64_t p) const noexcept {
    const std::uint64_t sb = p / kSuperBits;
    std::uint64_t r = super_[sb];
    for (std::uint64_t w = sb * kWordsPerSuper; w < (p >> 6); ++w) r += static_cast<std::uint64_t>(std::popcount(words_[w]));
    if ((p & 63) != 0) r += static_cast<std::uint64_t>(std::popcount(words_[p >> 6] & ((std::uint64_t{1} << (p & 63)) - 1)));
    return r;
  }

  /// 0-based position of the k-th one (k >= 1); k must not exceed ones().
  [[nodiscard]] std::uint64_t select1(std::uint64_t k) const noexcept { return select<true>(k); }

  /// 0-based position of the k-th zero (k >= 1); k must not exceed size() - ones().
  [[nodiscard]] std::uint64_t select0(std::uint64_t k) const noexcept { return select<false>(k); }

  [[nodiscard]] std::uint64_t size_in_bits() const noexcept {
    return words_.size() * 64 + super_.size() * 64 + (hint1_.size() + hint0_.size()) * 32;
  }

  void save(io::Writer& out) const {
    out.put<std::uint64_t>(size_);
    out.put_vector(words_);
  }

  static RankSelectBits load(io::Reader& in) {
    const auto size = in.get<std::uint64_t>();
    auto words = in.get_vector<std::uint64_t>();
    if (words.size() != (size + 63) / 64) throw format_error("rank/select word count mismatch");
    return RankSelectBits(std::move(words), size);
  }

 private:
  static constexpr std::uint64_t kSuperBits = 512;
  static constexpr std::uint64_t kWordsPerSuper = kSuperBits / 64;
  static constexpr std::uint64_t kHintStep = 512;

  std::uint64_t super_ones(std::uint64_t sb, bool one) const noexcept {
    return one ? super_[sb] : sb * kSuperBits - super_[sb];
  }

  void build_directories() {
    const std::uint64_t supers = (size_ + kSuperBits - 1) / kSuperBits;
    super_.assign(supers + 1, 0);
    for (std::uint64_t sb = 0; sb < supers; ++sb) {
      std::uint64_t c = 0;
      for (std::uint64_t w = sb * kWordsPerSuper; w < std::min<std::uint64_t>((sb + 1) * kWordsPerSuper, words_.size()); ++w)
        c += static_cast<std::uint64_t>(std::popcount(words_[w]));
      super_[sb + 1] = super_[sb] + c;
    }
    hint1_.clear();
    hint0_.clear();
    std::uint64_t next1 = 1;
    std::uint64_t next0 = 1;
    for (std::uint64_t sb = 0; sb < supers; ++sb) {
      const std::uint64_t end_bits = std::min<std::uint64_t>((sb + 1) * kSuperBits, size_);
      while (next1 <= super_[sb + 1]) {
        hint1_.push_back(static_cast<std::uint32_t>(sb));
        next1 += kHintStep;
      }
      const std::uint64_t zeros_end = end_bits - super_[sb + 1];
      while (next0 <= zeros_end) {
        hint0_.push_back(static_cast<std::uint32_t>(sb));
        next0 += kHintStep;
      }
    }
  }

  template <bool One>
  std::uint64_t select(std::uint64_t k) const noexcept {
    const auto& hints = One ? hint1_ : hint0_;
    std::uint64_t sb = hints[(k - 1) / kHintStep];
    const std::uint64_t supers = super_.size() - 1;
    while (sb + 1 < supers && super_ones(sb + 1, One) < k) ++sb;
    k -= super_ones(sb, One);
    for (std::uint64_t w = sb * kWordsPerSuper;; ++w) {
      const std::uint64_t word = One ? words_[w] : ~words_[w];
      const auto pc = static_cast<std::uint64_t>(std::popcount(word));
      if (pc >= k) return (w << 6) + select_in_word(word, k);
      k -= pc;
    }
  }

  static std::uint64_t select_in_word(std::uint64_t w, std::uint64_t k) noexcept {
    for (std::uint64_t i = 1; i < k; ++i) w &= w - 1;
    return static_cast<std::uint64_t>(std::countr_zero(w));
  }

  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> super_;
  std::vector<std::uint32_t> hint1_;
  std::vector<std::uint32_t> hint0_;
};

/// Sparse bitvector over positions [1, universe] holding r ones, split into
/// fixed-width low parts and a unary-coded high part (Elias-Fano layout).
/// select1 is constant time; rank1 searches one high bucket of at most
/// 2^low_width candidates; select0 binary-searches through select1.
class SparseBitvector {
 public:
  SparseBitvector() = default;

  /// `ones` must be strictly increasing positions in [1, universe].
  SparseBitvector(std::span<const std::uint64_t> ones, std::uint64_t universe) : universe_(universe), r_(ones.size()) {
    for (std::size_t i = 0; i < ones.size(); ++i) {
      if (ones[i] < 1 || ones[i] > universe || (i > 0 && ones[i] <= ones[i - 1]))
        throw std::invalid_argument("sparse bitvector: positions must be strictly increasing in [1, universe]");
    }
    if (r_ == 0 || r_ == universe_) return;  // degenerate: no high part
    low_width_ = static_cast<unsigned>(std::bit_width(universe_ / r_) - 1);
    low_.assign((r_ * low_width_ + 63) / 64, 0);
    const std::uint64_t high_bits = r_ + ((universe_ - 1) >> low_width_) + 1;
    std::vector<std::uint64_t> hw((high_bits + 63) / 64, 0);
    for (std::uint64_t i = 0; i < r_; ++i) {
      const std::uint64_t x = ones[i] - 1;
      set_low(i, x & low_mask());
      const std::uint64_t h = (x >> low_width_) + i;
      hw[h >> 6] |= std::uint64_t{1} << (h & 63);
    }
    high_ = RankSelectBits(std::move(hw), high_bits);
  }

  [[nodiscard]] std::uint64_t universe() const noexcept { return universe_; }
  [[nodiscard]] std::uint64_t count() const noexcept { return r_; }
  [[nodiscard]] unsigned low_width() const noexcept { return low_width_; }

  /// Position of the k-th one, 1 <= k <= count().
  [[nodiscard]] std::uint64_t select1(std::uint64_t k) const {
    detail::check_range("sparse select1", k, 1, r_);
    if (r_ == universe_) return k;
    const std::uint64_t pos = high_.select1(k);
    const std::uint64_t high = pos - (k - 1);
    return ((high << low_width_) | get_low(k - 1)) + 1;
  }

  /// Ones in [1, i], 0 <= i <= universe().
  [[nodiscard]] std::uint64_t rank1(std::uint64_t i) const {
    detail::check_range("sparse rank1", i, 0, universe_);
    if (r_ == 0 || i == 0) return 0;
    if (r_ == universe_ || i == universe_) return i == universe_ ? r_ : i;
    // count 0-based values x < i
    const std::uint64_t bucket = i >> low_width_;
    const std::uint64_t target_low = i & low_mask();
    const std::uint64_t zeros = high_.size() - high_.ones();
    std::uint64_t first = 0;  // index of the first element in `bucket`
    std::uint64_t start = 0;  // position in high_ of that element
    if (bucket > 0) {
      if (bucket > zeros) return r_;
      const std::uint64_t z = high_.select0(bucket);
      first = z - (bucket - 1);
      start = z + 1;
    }
    std::uint64_t lo = first;
    std::uint64_t hi = first;
    while (start + (hi - first) < high_.size() && high_[start + (hi - first)]) ++hi;
    // elements [first, hi) share this high part; lows are increasing
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (get_low(mid) < target_low) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  [[nodiscard]] std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

  /// Position of the k-th zero, 1 <= k <= universe() - count().
  [[nodiscard]] std::uint64_t select0(std::uint64_t k) const {
    detail::check_range("sparse select0", k, 1, universe_ - r_);
    if (r_ == 0) return k;
    // largest c with select1(c) - c < k, i.e. the ones preceding the k-th zero
    std::uint64_t lo = 0;
    std::uint64_t hi = r_;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (select1(mid) - mid < k) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    return k + lo;
  }

  [[nodiscard]] bool get(std::uint64_t i) const {
    detail::check_range("sparse position", i, 1, universe_);
    return rank1(i) != rank1(i - 1);
  }

  [[nodiscard]] std::uint64_t size_in_bits() const noexcept {
    return 3 * 64 + low_.size() * 64 + high_.size_in_bits();
  }

  void save(io::Writer& out) const {
    out.put<std::uint64_t>(universe_);
    out.put<std::uint64_t>(r_);
    out.put<std::uint8_t>(static_cast<std::uint8_t>(low_width_));
    out.put_vector(low_);
    high_.save(out);
  }

  static SparseBitvector load(io::Reader& in) {
    SparseBitvector s;
    s.universe_ = in.get<std::uint64_t>();
    s.r_ = in.get<std::uint64_t>();
    s.low_width_ = in.get<std::uint8_t>();
    s.low_ = in.get_vector<std::uint64_t>();
    s.high_ = RankSelectBits::load(in);
    if (s.r_ > s.universe_ || s.low_width_ > 63 || s.low_.size() != (s.r_ * s.low_width_ + 63) / 64)
      throw format_error("sparse bitvector header mismatch");
    return s;
  }

 private:
  [[nodiscard]] std::uint64_t low_mask() const noexcept { return (std::uint64_t{1} << low_width_) - 1; }

  void set_low(std::uint64_t i, std::uint64_t v) noexcept {
    if (low_width_ == 0) return;
    const std::uint64_t bit = i * low_width_;
    low_[bit >> 6] |= v << (bit & 63);
    if ((bit & 63) + low_width_ > 64) low_[(bit >> 6) + 1] |= v >> (64 - (bit & 63));
  }

  [[nodiscard]] std::uint64_t get_low(std::uint64_t i) const noexcept {
    if (low_width_ == 0) return 0;
    const std::uint64_t bit = i * low_width_;
    std::uint64_t v = low_[bit >> 6] >> (bit & 63);
    if ((bit & 63) + low_width_ > 64) v |= low_[(bit >> 6) + 1] << (64 - (bit & 63));
    return v & low_mask();
  }

  std::uint64_t universe_ = 0;
  std::uint64_t r_ = 0;
  unsigned low_width_ = 0;
  std::vector<std::uint64_t> low_;
  RankSelectBits high_;
};

}  // namespace bpt
