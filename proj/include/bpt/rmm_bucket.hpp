#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpt/bitvec.hpp"
#include "bpt/common.hpp"
#include "bpt/io.hpp"

namespace bpt {

/// Range min-max tree over one bucket of the parenthesis sequence.
///
/// The bucket covers global positions start+1 .. start+width. All positions
/// taken and returned here are bucket-relative (1..width, with 0 standing for
/// the bucket start), and all excess values are relative to excess(start).
///
/// Leaf t of the heap covers block t, i.e. relative positions t*b+1 ..
/// min((t+1)*b, width). Node fields are 16-bit: the minimum is stored as is,
/// the maximum is stored minus one so that +2^15 fits, and heap slots past
/// the last block hold an empty [m, M] interval so searches never enter them.
class RmmBucket {
 public:
  RmmBucket() = default;

  RmmBucket(const ParenBitvector& bits, position_t start, std::uint32_t width, std::uint32_t block, unsigned chunk,
            bool store_counts)
      : start_(start), width_(width), block_(block), table_(&ChunkTable::get(chunk)), chunk_(chunk) {
    if (width == 0) throw std::invalid_argument("bucket width must be positive");
    if (block < 2) throw std::invalid_argument("block width must be at least 2");
    if (start + width > bits.size()) throw std::invalid_argument("bucket extends past the sequence");
    blocks_ = (width_ + block_ - 1) / block_;
    leaves_ = std::bit_ceil(blocks_);
    min_.assign(2 * leaves_, kEmptyMin);
    max_.assign(2 * leaves_, kEmptyMax);
    if (store_counts) count_.assign(2 * leaves_, 0);
    ones_.resize(blocks_);
    pairs_.resize(blocks_);

    std::uint64_t ones = 0;
    std::uint64_t pairs = 0;
    for (std::uint32_t t = 0; t < blocks_; ++t) {
      const position_t lo = start_ + block_first(t);
      const position_t hi = start_ + block_last(t);
      const auto base = static_cast<excess_t>(2 * ones) - static_cast<excess_t>(t) * block_;
      const scan::Extremum mn = scan::min(bits, *table_, lo, hi, base);
      const scan::Extremum mx = scan::max(bits, *table_, lo, hi, base);
      const std::uint32_t v = leaves_ + t;
      min_[v] = static_cast<std::int16_t>(mn.value);
      max_[v] = static_cast<std::int16_t>(mx.value - 1);
      if (store_counts) count_[v] = static_cast<std::uint16_t>(mn.count);
      ones += bits.ones(lo, hi);
      pairs += scan::count_pairs10(bits, *table_, lo, hi);
      ones_[t] = static_cast<std::uint16_t>(ones);
      pairs_[t] = static_cast<std::uint16_t>(pairs);
    }
    for (std::uint32_t v = leaves_ - 1; v >= 1; --v) {
      const NodeSummary s = combine(v);
      min_[v] = s.min;
      max_[v] = s.max;
      if (store_counts) count_[v] = s.count;
    }
  }

  [[nodiscard]] position_t start() const noexcept { return start_; }
  [[nodiscard]] std::uint32_t width() const noexcept { return width_; }
  [[nodiscard]] std::uint32_t block() const noexcept { return block_; }
  [[nodiscard]] std::uint32_t num_blocks() const noexcept { return blocks_; }
  [[nodiscard]] std::uint32_t num_leaves() const noexcept { return leaves_; }
  [[nodiscard]] bool stores_counts() const noexcept { return !count_.empty(); }

  /// Heap node accessors (1 <= v < 2 * num_leaves()).
  [[nodiscard]] int node_min(std::uint32_t v) const noexcept { return min_[v]; }
  [[nodiscard]] int node_max(std::uint32_t v) const noexcept { return max_[v] + 1; }
  [[nodiscard]] bool node_empty(std::uint32_t v) const noexcept { return max_[v] == kEmptyMax && min_[v] == kEmptyMin; }

  /// Occurrences of node_min(v) inside v's area, recounted when not stored.
  [[nodiscard]] std::uint64_t node_count(const ParenBitvector& bits, std::uint32_t v) const {
    if (!count_.empty()) return count_[v];
    if (node_empty(v)) return 0;
    if (v >= leaves_) {
      const std::uint32_t t = v - leaves_;
      return scan::min(bits, *table_, start_ + block_first(t), start_ + block_last(t), block_base(t)).count;
    }
    std::uint64_t c = 0;
    for (std::uint32_t child : {2 * v, 2 * v + 1}) {
      if (node_min(child) == node_min(v)) c += node_count(bits, child);
    }
    return c;
  }

  [[nodiscard]] int min_value() const noexcept { return node_min(1); }
  [[nodiscard]] int max_value() const noexcept { return node_max(1); }
  [[nodiscard]] int end_excess() const noexcept { return 2 * static_cast<int>(ones_.back()) - static_cast<int>(width_); }
  [[nodiscard]] std::uint64_t total_ones() const noexcept { return ones_.back(); }
  [[nodiscard]] std::uint64_t total_pairs10() const noexcept { return pairs_.back(); }

  /// Relative excess at relative position r (0 <= r <= width).
  [[nodiscard]] excess_t excess(const ParenBitvector& bits, std::uint32_t r) const noexcept {
    if (r == 0) return 0;
    const std::uint32_t t = (r - 1) / block_;
    const std::uint64_t ones = ones_before(t) + bits.ones(start_ + block_first(t), start_ + r);
    return static_cast<excess_t>(2 * ones) - static_cast<excess_t>(r);
  }

  /// Smallest j in (i, width] with excess(j) = excess(i) + d.
  [[nodiscard]] std::optional<std::uint32_t> fwdsearch(const ParenBitvector& bits, std::uint32_t i, excess_t d) const {
    const excess_t e = excess(bits, i);
    return forward(bits, i, e, e + d);
  }

  /// Smallest j in (i, width] with relative excess(j) = target.
  [[nodiscard]] std::optional<std::uint32_t> fwdsearch_to(const ParenBitvector& bits, std::uint32_t i,
                                                          excess_t target) const {
    return forward(bits, i, excess(bits, i), target);
  }

  /// Largest j in [0, i) with excess(j) = excess(i) + d; i <= width.
  [[nodiscard]] std::optional<std::uint32_t> bwdsearch(const ParenBitvector& bits, std::uint32_t i, excess_t d) const {
    return bwdsearch_to(bits, i, excess(bits, i) + d);
  }

  /// Largest j in [0, i) with relative excess(j) = target; i may be width + 1.
  [[nodiscard]] std::optional<std::uint32_t> bwdsearch_to(const ParenBitvector& bits, std::uint32_t i,
                                                          excess_t target) const {
    if (i == 0) return std::nullopt;
    if (auto j = backward(bits, i - 1, excess(bits, i - 1), target)) return j;
    if (target == 0) return 0u;
    return std::nullopt;
  }

  /// Leftmost minimum over relative [i, j] with its multiplicity.
  [[nodiscard]] scan::Extremum rmq(const ParenBitvector& bits, std::uint32_t i, std::uint32_t j) const {
    return extremum<true, false>(bits, i, j);
  }

  [[nodiscard]] scan::Extremum rmq_counted(const ParenBitvector& bits, std::uint32_t i, std::uint32_t j) const {
    return extremum<true, true>(bits, i, j);
  }

  /// Leftmost maximum over relative [i, j]; count is not filled.
  [[nodiscard]] scan::Extremum rMq(const ParenBitvector& bits, std::uint32_t i, std::uint32_t j) const {
    return extremum<false, false>(bits, i, j);
  }

  [[nodiscard]] std::uint64_t mincount(const ParenBitvector& bits, std::uint32_t i, std::uint32_t j) const {
    return extremum<true, true>(bits, i, j).count;
  }

  /// Position of the q-th occurrence of `value` in relative [i, j], where
  /// value is the range minimum. On a miss, returns nullopt and reduces q by
  /// the occurrences seen.
  [[nodiscard]] std::optional<std::uint32_t> select_value(const ParenBitvector& bits, std::uint32_t i,
                                                          std::uint32_t j, excess_t value, std::uint64_t& q) const {
    const std::uint32_t ti = (i - 1) / block_;
    const std::uint32_t tj = (j - 1) / block_;
    if (ti == tj) return select_in(bits, i, j, excess(bits, i - 1), value, q);
    if (auto p = select_in(bits, i, block_last(ti), excess(bits, i - 1), value, q)) return p;
    for (std::uint32_t v : cover(ti + 1, tj)) {
      if (node_min(v) != value) continue;
      const std::uint64_t c = node_count(bits, v);
      if (q > c) {
        q -= c;
        continue;
      }
      while (v < leaves_) {
        const std::uint32_t l = 2 * v;
        if (node_min(l) == value) {
          const std::uint64_t cl = node_count(bits, l);
          if (q <= cl) {
            v = l;
            continue;
          }
          q -= cl;
        }
        v = l + 1;
      }
      const std::uint32_t t = v - leaves_;
      return select_in(bits, block_first(t), block_last(t), block_base(t), value, q);
    }
    return select_in(bits, block_first(tj), j, block_base(tj), value, q);
  }

  /// Position of the q-th minimum in relative [i, j].
  [[nodiscard]] std::uint32_t minselect(const ParenBitvector& bits, std::uint32_t i, std::uint32_t j,
                                        std::uint64_t q) const {
    const excess_t value = rmq(bits, i, j).value;
    std::uint64_t left = q;
    if (q == 0) throw std::out_of_range("minselect: rank must be positive");
    if (auto p = select_value(bits, i, j, value, left)) return *p;
    throw std::out_of_range("minselect: rank " + std::to_string(q) + " exceeds the minimum count");
  }

  /// Ones in relative [1, i].
  [[nodiscard]] std::uint64_t rank1(const ParenBitvector& bits, std::uint32_t i) const noexcept {
    if (i == 0) return 0;
    const std::uint32_t t = (i - 1) / block_;
    return ones_before(t) + bits.ones(start_ + block_first(t), start_ + i);
  }

  /// "10" pairs starting in relative [1, i]; a pair may end just past the bucket.
  [[nodiscard]] std::uint64_t rank10(const ParenBitvector& bits, std::uint32_t i) const noexcept {
    if (i == 0) return 0;
    const std::uint32_t t = (i - 1) / block_;
    return pairs_before(t) + scan::count_pairs10(bits, *table_, start_ + block_first(t), start_ + i);
  }

  /// Relative position of the k-th one, 1 <= k <= total_ones().
  [[nodiscard]] std::uint32_t select1(const ParenBitvector& bits, std::uint64_t k) const {
    const std::uint32_t t = first_block_reaching(k, [this](std::uint32_t b) { return std::uint64_t{ones_[b]}; });
    const position_t p = bits.select_from(start_ + block_first(t), k - ones_before(t), true);
    return static_cast<std::uint32_t>(p - start_);
  }

  /// Relative position of the k-th zero, 1 <= k <= width - total_ones().
  [[nodiscard]] std::uint32_t select0(const ParenBitvector& bits, std::uint64_t k) const {
    const std::uint32_t t =
        first_block_reaching(k, [this](std::uint32_t b) { return std::uint64_t{block_last(b)} - ones_[b]; });
    const std::uint64_t before = t == 0 ? 0 : std::uint64_t{t} * block_ - ones_[t - 1];
    const position_t p = bits.select_from(start_ + block_first(t), k - before, false);
    return static_cast<std::uint32_t>(p - start_);
  }

  /// Relative start of the k-th "10" pair, 1 <= k <= total_pairs10().
  [[nodiscard]] std::uint32_t select10(const ParenBitvector& bits, std::uint64_t k) const {
    const std::uint32_t t = first_block_reaching(k, [this](std::uint32_t b) { return std::uint64_t{pairs_[b]}; });
    const scan::Select s = scan::select_pairs10(bits, *table_, start_ + block_first(t), start_ + block_last(t),
                                                k - pairs_before(t));
    return static_cast<std::uint32_t>(s.pos - start_);
  }

  /// Recomputes every stored field from the bits and throws std::logic_error
  /// on the first mismatch.
  void verify(const ParenBitvector& bits) const {
    std::uint64_t ones = 0;
    std::uint64_t pairs = 0;
    for (std::uint32_t t = 0; t < blocks_; ++t) {
      const position_t lo = start_ + block_first(t);
      const position_t hi = start_ + block_last(t);
      excess_t e = block_base(t);
      excess_t mn = std::numeric_limits<excess_t>::max();
      excess_t mx = std::numeric_limits<excess_t>::min();
      std::uint64_t n = 0;
      for (position_t p = lo; p <= hi; ++p) {
        e += bits[p] ? 1 : -1;
        if (e < mn) {
          mn = e;
          n = 1;
        } else if (e == mn) {
          ++n;
        }
        mx = std::max(mx, e);
        ones += bits[p] ? 1 : 0;
        if (bits[p] && p < bits.size() && !bits[p + 1]) ++pairs;
      }
      const std::uint32_t v = leaves_ + t;
      if (node_min(v) != mn || node_max(v) != mx || node_count(bits, v) != n)
        fail("leaf " + std::to_string(t) + " summary differs from its block");
      if (ones_[t] != ones || pairs_[t] != pairs) fail("block prefix " + std::to_string(t) + " is stale");
    }
    for (std::uint32_t t = blocks_; t < leaves_; ++t) {
      if (!node_empty(leaves_ + t)) fail("padding leaf is not empty");
    }
    for (std::uint32_t v = leaves_ - 1; v >= 1; --v) {
      const NodeSummary s = combine(v);
      if (s.min != min_[v] || s.max != max_[v] || (!count_.empty() && s.count != count_[v]))
        fail("node " + std::to_string(v) + " does not match its children");
    }
  }

  struct Space {
    std::uint64_t nodes = 0;     // min/max fields
    std::uint64_t counts = 0;    // min-count fields
    std::uint64_t prefixes = 0;  // per-block ones and pair prefixes
    std::uint64_t header = 0;
  };

  [[nodiscard]] Space space() const noexcept {
    Space s;
    s.nodes = (min_.size() + max_.size()) * 16;
    s.counts = count_.size() * 16;
    s.prefixes = (ones_.size() + pairs_.size()) * 16;
    s.header = 64 + 3 * 32;
    return s;
  }

  void save(io::Writer& out) const {
    out.put<std::uint64_t>(start_);
    out.put<std::uint32_t>(width_);
    out.put<std::uint32_t>(block_);
    out.put_vector(min_);
    out.put_vector(max_);
    out.put_vector(count_);
    out.put_vector(ones_);
    out.put_vector(pairs_);
  }

  static RmmBucket load(io::Reader& in, unsigned chunk) {
    RmmBucket b;
    b.start_ = in.get<std::uint64_t>();
    b.width_ = in.get<std::uint32_t>();
    b.block_ = in.get<std::uint32_t>();
    b.min_ = in.get_vector<std::int16_t>();
    b.max_ = in.get_vector<std::int16_t>();
    b.count_ = in.get_vector<std::uint16_t>();
    b.ones_ = in.get_vector<std::uint16_t>();
    b.pairs_ = in.get_vector<std::uint16_t>();
    if (b.width_ == 0 || b.block_ < 2) throw format_error("bucket header is invalid");
    b.blocks_ = (b.width_ + b.block_ - 1) / b.block_;
    b.leaves_ = std::bit_ceil(b.blocks_);
    if (b.min_.size() != 2 * b.leaves_ || b.max_.size() != 2 * b.leaves_ ||
        (!b.count_.empty() && b.count_.size() != 2 * b.leaves_) || b.ones_.size() != b.blocks_ ||
        b.pairs_.size() != b.blocks_)
      throw format_error("bucket arrays have inconsistent sizes");
    b.table_ = &ChunkTable::get(chunk);
    b.chunk_ = chunk;
    return b;
  }

 private:
  static constexpr std::int16_t kEmptyMin = std::numeric_limits<std::int16_t>::max();
  static constexpr std::int16_t kEmptyMax = std::numeric_limits<std::int16_t>::min();

  struct NodeSummary {
    std::int16_t min;
    std::int16_t max;
    std::uint16_t count;
  };

  [[noreturn]] void fail(const std::string& what) const {
    throw std::logic_error("bucket at " + std::to_string(start_) + ": " + what);
  }

  [[nodiscard]] NodeSummary combine(std::uint32_t v) const noexcept {
    const std::uint32_t l = 2 * v;
    const std::uint32_t r = l + 1;
    NodeSummary s{std::min(min_[l], min_[r]), std::max(max_[l], max_[r]), 0};
    if (!count_.empty()) {
      std::uint32_t c = 0;
      if (min_[l] == s.min) c += count_[l];
      if (min_[r] == s.min) c += count_[r];
      s.count = static_cast<std::uint16_t>(c);
    }
    return s;
  }

  [[nodiscard]] std::uint32_t block_first(std::uint32_t t) const noexcept { return t * block_ + 1; }
  [[nodiscard]] std::uint32_t block_last(std::uint32_t t) const noexcept {
    return std::min<std::uint32_t>((t + 1) * block_, width_);
  }
  [[nodiscard]] std::uint64_t ones_before(std::uint32_t t) const noexcept { return t == 0 ? 0 : ones_[t - 1]; }
  [[nodiscard]] std::uint64_t pairs_before(std::uint32_t t) const noexcept { return t == 0 ? 0 : pairs_[t - 1]; }
  /// Relative excess just before block t.
  [[nodiscard]] excess_t block_base(std::uint32_t t) const noexcept {
    return static_cast<excess_t>(2 * ones_before(t)) - static_cast<excess_t>(t) * block_;
  }
  [[nodiscard]] bool contains(std::uint32_t v, excess_t target) const noexcept {
    return node_min(v) <= target && target <= node_max(v);
  }

  template <typename Prefix>
  [[nodiscard]] std::uint32_t first_block_reaching(std::uint64_t k, Prefix prefix) const {
    std::uint32_t lo = 0;
    std::uint32_t hi = blocks_;
    while (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      if (prefix(mid) < k) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo == blocks_) throw std::out_of_range("bucket select: rank " + std::to_string(k) + " exceeds the bucket");
    return lo;
  }

  std::optional<std::uint32_t> forward(const ParenBitvector& bits, std::uint32_t i, excess_t from_excess,
                                       excess_t target) const {
    if (i >= width_) return std::nullopt;
    const std::uint32_t t = i / block_;
    scan::Hit h = scan::forward(bits, *table_, start_ + i, from_excess, start_ + block_last(t), target);
    if (h.found) return static_cast<std::uint32_t>(h.pos - start_);
    std::uint32_t v = leaves_ + t;
    while (v > 1 && !((v & 1) == 0 && contains(v + 1, target))) v >>= 1;
    if (v == 1) return std::nullopt;
    ++v;
    while (v < leaves_) v = contains(2 * v, target) ? 2 * v : 2 * v + 1;
    const std::uint32_t u = v - leaves_;
    h = scan::forward(bits, *table_, start_ + u * block_, block_base(u), start_ + block_last(u), target);
    return static_cast<std::uint32_t>(h.pos - start_);
  }

  // Largest j in [1, top] with excess(j) == target, given excess(top).
  std::optional<std::uint32_t> backward(const ParenBitvector& bits, std::uint32_t top, excess_t top_excess,
                                        excess_t target) const {
    if (top == 0) return std::nullopt;
    const std::uint32_t t = (top - 1) / block_;
    scan::Hit h = scan::backward(bits, *table_, start_ + top, top_excess, start_ + block_first(t), target);
    if (h.found) return static_cast<std::uint32_t>(h.pos - start_);
    std::uint32_t v = leaves_ + t;
    while (v > 1 && !((v & 1) == 1 && contains(v - 1, target))) v >>= 1;
    if (v == 1) return std::nullopt;
    --v;
    while (v < leaves_) v = contains(2 * v + 1, target) ? 2 * v + 1 : 2 * v;
    const std::uint32_t u = v - leaves_;
    const std::uint32_t last = block_last(u);
    const excess_t last_excess = 2 * static_cast<excess_t>(ones_[u]) - static_cast<excess_t>(last);
    h = scan::backward(bits, *table_, start_ + last, last_excess, start_ + block_first(u), target);
    return static_cast<std::uint32_t>(h.pos - start_);
  }

  struct Cover {
    std::array<std::uint32_t, 64> nodes{};
    std::uint32_t size = 0;
    [[nodiscard]] const std::uint32_t* begin() const noexcept { return nodes.data(); }
    [[nodiscard]] const std::uint32_t* end() const noexcept { return nodes.data() + size; }
  };

  /// Maximal heap nodes covering blocks [first, last), left to right.
  [[nodiscard]] Cover cover(std::uint32_t first, std::uint32_t last) const noexcept {
    Cover c;
    std::array<std::uint32_t, 32> right{};
    std::uint32_t nr = 0;
    std::uint32_t lo = leaves_ + first;
    std::uint32_t hi = leaves_ + last;
    while (lo < hi) {
      if (lo & 1) c.nodes[c.size++] = lo++;
      if (hi & 1) right[nr++] = --hi;
      lo >>= 1;
      hi >>= 1;
    }
    while (nr > 0) c.nodes[c.size++] = right[--nr];
    return c;
  }

  template <bool Min, bool Count>
  scan::Extremum extremum(const ParenBitvector& bits, std::uint32_t i, std::uint32_t j) const {
    const std::uint32_t ti = (i - 1) / block_;
    const std::uint32_t tj = (j - 1) / block_;
    const auto block_scan = [&](std::uint32_t l, std::uint32_t r, excess_t base) {
      scan::Extremum x = Min ? scan::min(bits, *table_, start_ + l, start_ + r, base)
                             : scan::max(bits, *table_, start_ + l, start_ + r, base);
      x.pos -= start_;
      return x;
    };
    if (ti == tj) return block_scan(i, j, excess(bits, i - 1));

    scan::Extremum best = block_scan(i, block_last(ti), excess(bits, i - 1));
    const auto better = [](excess_t a, excess_t b) { return Min ? a < b : a > b; };
    std::uint32_t best_node = 0;
    for (std::uint32_t v : cover(ti + 1, tj)) {
      const excess_t val = Min ? node_min(v) : node_max(v);
      if (better(val, best.value)) {
        best.value = val;
        best.count = Count ? node_count(bits, v) : 0;
        best_node = v;
      } else if (Count && val == best.value) {
        best.count += node_count(bits, v);
      }
    }
    if (best_node != 0) {
      std::uint32_t v = best_node;
      while (v < leaves_) v = ((Min ? node_min(2 * v) : node_max(2 * v)) == best.value) ? 2 * v : 2 * v + 1;
      const std::uint32_t u = v - leaves_;
      best.pos = block_scan(block_first(u), block_last(u), block_base(u)).pos;
    }
    const scan::Extremum tail = block_scan(block_first(tj), j, block_base(tj));
    if (better(tail.value, best.value)) {
      best = tail;
    } else if (Count && tail.value == best.value) {
      best.count += tail.count;
    }
    return best;
  }

  std::optional<std::uint32_t> select_in(const ParenBitvector& bits, std::uint32_t l, std::uint32_t r, excess_t base,
                                         excess_t value, std::uint64_t& q) const {
    const scan::Select s = scan::select_min(bits, *table_, start_ + l, start_ + r, base, value, q);
    if (s.found) return static_cast<std::uint32_t>(s.pos - start_);
    q = s.remaining;
    return std::nullopt;
  }

  position_t start_ = 0;
  std::uint32_t width_ = 0;
  std::uint32_t block_ = 0;
  std::uint32_t blocks_ = 0;
  std::uint32_t leaves_ = 0;
  const ChunkTable* table_ = nullptr;
  unsigned chunk_ = 16;
  std::vector<std::int16_t> min_;
  std::vector<std::int16_t> max_;  // stored as maximum - 1
  std::vector<std::uint16_t> count_;
  std::vector<std::uint16_t> ones_;   // ones in blocks 0..t
  std::vector<std::uint16_t> pairs_;  // "10" pairs starting in blocks 0..t
};

}  // namespace bpt
