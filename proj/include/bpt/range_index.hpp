#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpt/common.hpp"
#include "bpt/io.hpp"

namespace bpt {

/// Lowest node of the perfect binary tree over buckets that covers the
/// 0-based bucket range [first, last], first < last. The node sits at height
/// h + 1; its left child ends at bucket `split`, so first <= split < last.
struct BucketCover {
  unsigned h = 0;          // height of the two children
  std::uint64_t node = 0;  // heap id (root = 1) in a tree with `leaves` leaves
  std::uint32_t split = 0;
};

inline BucketCover lowest_cover(std::uint32_t first, std::uint32_t last, std::uint64_t leaves) {
  if (first >= last) throw std::invalid_argument("lowest_cover needs first < last");
  BucketCover c;
  c.h = static_cast<unsigned>(std::bit_width(first ^ last) - 1);
  c.node = (leaves >> (c.h + 1)) + (first >> (c.h + 1));
  const std::uint32_t s = (first >> (c.h + 1)) << (c.h + 1);
  c.split = s + (1u << c.h) - 1;
  return c;
}

/// Minimum/maximum queries over runs of whole buckets.
///
/// For every child level h of the perfect binary tree and every bucket x,
/// cell[h][x] summarizes the part of x's height-h ancestor that faces the
/// sibling: a left child keeps the suffix starting at x, a right child the
/// prefix ending at x. A query [first, last] then reads exactly one suffix
/// cell and one prefix cell. Cells hold the bucket attaining the leftmost
/// extreme plus, for the min tree, the total number of minimum positions.
class RangeIndex {
 public:
  struct MinResult {
    excess_t value = 0;
    std::uint32_t bucket = 0;  // bucket holding the leftmost minimum
    std::uint64_t count = 0;   // minimum positions over the whole range
  };

  struct MaxResult {
    excess_t value = 0;
    std::uint32_t bucket = 0;
  };

  struct Located {
    std::uint32_t bucket = 0;
    std::uint64_t rank = 0;  // rank of the occurrence among the bucket's minima
  };

  RangeIndex() = default;

  /// m/M: absolute bucket extremes; min_count: occurrences of m[x] in bucket x.
  RangeIndex(std::span<const excess_t> m, std::span<const excess_t> M, std::span<const std::uint64_t> min_count)
      : n_(static_cast<std::uint32_t>(m.size())) {
    leaves_ = n_ == 0 ? 1 : std::bit_ceil(static_cast<std::uint64_t>(n_));
    levels_ = static_cast<unsigned>(std::bit_width(leaves_) - 1);
    min_count_.assign(min_count.begin(), min_count.end());
    min_id_.assign(std::size_t{levels_} * n_, 0);
    min_cnt_.assign(std::size_t{levels_} * n_, 0);
    max_id_.assign(std::size_t{levels_} * n_, 0);
    for (unsigned h = 0; h < levels_; ++h) {
      const std::uint32_t span = 1u << h;
      for (std::uint32_t s = 0; s < n_; s += span) {
        const std::uint32_t e = std::min<std::uint64_t>(s + span, n_) - 1;
        if (((s >> h) & 1u) == 0) {
          // left child: suffixes, built leftward; ties move to the left
          std::uint32_t bmin = e;
          std::uint32_t bmax = e;
          std::uint64_t cnt = 0;
          for (std::uint32_t x = e + 1; x-- > s;) {
            if (m[x] < m[bmin]) cnt = 0;
            if (m[x] <= m[bmin]) {
              bmin = x;
              cnt += min_count[x];
            }
            if (M[x] >= M[bmax]) bmax = x;
            put(h, x, bmin, cnt, bmax);
          }
        } else {
          // right child: prefixes, built rightward; ties keep the left one
          std::uint32_t bmin = s;
          std::uint32_t bmax = s;
          std::uint64_t cnt = 0;
          for (std::uint32_t x = s; x <= e; ++x) {
            if (x == s || m[x] < m[bmin]) {
              bmin = x;
              cnt = min_count[x];
            } else if (m[x] == m[bmin]) {
              cnt += min_count[x];
            }
            if (M[x] > M[bmax]) bmax = x;
            put(h, x, bmin, cnt, bmax);
          }
        }
      }
    }
  }

  [[nodiscard]] std::uint32_t size() const noexcept { return n_; }
  [[nodiscard]] std::uint64_t leaves() const noexcept { return leaves_; }
  [[nodiscard]] unsigned levels() const noexcept { return levels_; }

  [[nodiscard]] BucketCover cover(std::uint32_t first, std::uint32_t last) const { return lowest_cover(first, last, leaves_); }

  /// Leftmost minimum over buckets [first, last] and its total count.
  [[nodiscard]] MinResult range_min(std::span<const excess_t> m, std::uint32_t first, std::uint32_t last) const {
    check(first, last);
    if (first == last) return {m[first], first, min_count_[first]};
    const BucketCover c = cover(first, last);
    const std::uint32_t rb = min_id_[cell(c.h, first)];
    const std::uint32_t lb = min_id_[cell(c.h, last)];
    const std::uint64_t rc = min_cnt_[cell(c.h, first)];
    const std::uint64_t lc = min_cnt_[cell(c.h, last)];
    if (m[rb] < m[lb]) return {m[rb], rb, rc};
    if (m[rb] == m[lb]) return {m[rb], rb, rc + lc};
    return {m[lb], lb, lc};
  }

  /// Leftmost maximum over buckets [first, last].
  [[nodiscard]] MaxResult range_max(std::span<const excess_t> M, std::uint32_t first, std::uint32_t last) const {
    check(first, last);
    if (first == last) return {M[first], first};
    const BucketCover c = cover(first, last);
    const std::uint32_t rb = max_id_[cell(c.h, first)];
    const std::uint32_t lb = max_id_[cell(c.h, last)];
    if (M[rb] >= M[lb]) return {M[rb], rb};
    return {M[lb], lb};
  }

  /// Bucket holding the q-th minimum position (counted from the left) over
  /// buckets [first, last], and the rank of that position inside the bucket.
  [[nodiscard]] Located range_minselect(std::span<const excess_t> m, std::uint32_t first, std::uint32_t last,
                                        std::uint64_t q) const {
    const MinResult r = range_min(m, first, last);
    if (q == 0 || q > r.count) {
      throw std::out_of_range("range_minselect: rank " + std::to_string(q) + " not in [1, " +
                              std::to_string(r.count) + "]");
    }
    if (first == last) return {first, q};
    const BucketCover c = cover(first, last);
    const excess_t mu = r.value;
    // left part [first, split]: suffix cells, counts shrink as x moves right
    const auto suffix = [&](std::uint32_t x) -> std::uint64_t {
      const std::size_t at = cell(c.h, x);
      return m[min_id_[at]] == mu ? min_cnt_[at] : 0;
    };
    const std::uint64_t left_total = suffix(first);
    if (q <= left_total) {
      // the q-th from the left is the (left_total - q + 1)-th from the right
      const std::uint64_t from_right = left_total - q + 1;
      std::uint32_t lo = first;  // suffix(lo) >= from_right holds
      std::uint32_t hi = c.split;
      while (lo < hi) {
        const std::uint32_t mid = lo + (hi - lo + 1) / 2;
        if (suffix(mid) >= from_right) {
          lo = mid;
        } else {
          hi = mid - 1;
        }
      }
      const std::uint64_t after = lo == c.split ? 0 : suffix(lo + 1);
      return {lo, min_count_[lo] - (from_right - after) + 1};
    }
    q -= left_total;
    // right part [split + 1, last]: prefix cells, counts grow with y
    const auto prefix = [&](std::uint32_t y) -> std::uint64_t {
      const std::size_t at = cell(c.h, y);
      return m[min_id_[at]] == mu ? min_cnt_[at] : 0;
    };
    std::uint32_t lo = c.split + 1;
    std::uint32_t hi = last;  // prefix(hi) >= q holds
    while (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      if (prefix(mid) >= q) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const std::uint64_t before = lo == c.split + 1 ? 0 : prefix(lo - 1);
    return {lo, q - before};
  }

  /// Cross-checks every cell against a direct scan of its bucket run and
  /// throws std::logic_error on mismatch.
  void verify(std::span<const excess_t> m, std::span<const excess_t> M) const {
    for (unsigned h = 0; h < levels_; ++h) {
      for (std::uint32_t x = 0; x < n_; ++x) {
        const std::uint32_t s = (x >> h) << h;
        const std::uint32_t e = std::min<std::uint64_t>(s + (1u << h), n_) - 1;
        const bool left = ((x >> h) & 1u) == 0;
        const std::uint32_t a = left ? x : s;
        const std::uint32_t b = left ? e : x;
        std::uint32_t bmin = a;
        std::uint32_t bmax = a;
        std::uint64_t cnt = 0;
        for (std::uint32_t y = a; y <= b; ++y) {
          if (m[y] < m[bmin]) bmin = y;
          if (M[y] > M[bmax]) bmax = y;
        }
        for (std::uint32_t y = a; y <= b; ++y) cnt += m[y] == m[bmin] ? min_count_[y] : 0;
        const std::size_t at = cell(h, x);
        if (min_id_[at] != bmin || min_cnt_[at] != cnt || max_id_[at] != bmax)
          throw std::logic_error("range index cell (" + std::to_string(h) + ", " + std::to_string(x) + ") is wrong");
      }
    }
    for (std::uint32_t a = 0; a + 1 < n_; ++a) {
      for (std::uint32_t b = a + 1; b < n_ && b < a + 64; ++b) {
        const BucketCover c = cover(a, b);
        if (!(a <= c.split && c.split < b)) throw std::logic_error("lowest_cover split outside the range");
      }
    }
  }

  [[nodiscard]] std::uint64_t min_tree_bits() const noexcept {
    return 32 * (min_id_.size() + min_cnt_.size()) + 16 * min_count_.size();
  }
  [[nodiscard]] std::uint64_t max_tree_bits() const noexcept { return 32 * max_id_.size(); }
  /// Bits of the count-only parts (cell counts and per-bucket counts).
  [[nodiscard]] std::uint64_t count_bits() const noexcept { return 32 * min_cnt_.size() + 16 * min_count_.size(); }

  void save(io::Writer& out) const {
    out.put<std::uint32_t>(n_);
    out.put_vector(min_count_);
    out.put_vector(min_id_);
    out.put_vector(min_cnt_);
    out.put_vector(max_id_);
  }

  static RangeIndex load(io::Reader& in) {
    RangeIndex r;
    r.n_ = in.get<std::uint32_t>();
    r.min_count_ = in.get_vector<std::uint16_t>();
    r.min_id_ = in.get_vector<std::uint32_t>();
    r.min_cnt_ = in.get_vector<std::uint32_t>();
    r.max_id_ = in.get_vector<std::uint32_t>();
    r.leaves_ = r.n_ == 0 ? 1 : std::bit_ceil(static_cast<std::uint64_t>(r.n_));
    r.levels_ = static_cast<unsigned>(std::bit_width(r.leaves_) - 1);
    const std::size_t cells = std::size_t{r.levels_} * r.n_;
    if (r.min_count_.size() != r.n_ || r.min_id_.size() != cells || r.min_cnt_.size() != cells ||
        r.max_id_.size() != cells)
      throw format_error("range index arrays have inconsistent sizes");
    for (std::uint32_t id : r.min_id_) {
      if (id >= r.n_) throw format_error("range index bucket id out of range");
    }
    for (std::uint32_t id : r.max_id_) {
      if (id >= r.n_) throw format_error("range index bucket id out of range");
    }
    return r;
  }

 private:
  [[nodiscard]] std::size_t cell(unsigned h, std::uint32_t x) const noexcept { return std::size_t{h} * n_ + x; }

  void put(unsigned h, std::uint32_t x, std::uint32_t bmin, std::uint64_t cnt, std::uint32_t bmax) {
    min_id_[cell(h, x)] = bmin;
    min_cnt_[cell(h, x)] = static_cast<std::uint32_t>(cnt);
    max_id_[cell(h, x)] = bmax;
  }

  void check(std::uint32_t first, std::uint32_t last) const {
    if (first > last || last >= n_) {
      throw std::out_of_range("bucket range [" + std::to_string(first) + ", " + std::to_string(last) +
                              "] outside [0, " + std::to_string(n_) + ")");
    }
  }

  std::uint32_t n_ = 0;
  std::uint64_t leaves_ = 1;
  unsigned levels_ = 0;
  std::vector<std::uint16_t> min_count_;
  std::vector<std::uint32_t> min_id_;
  std::vector<std::uint32_t> min_cnt_;
  std::vector<std::uint32_t> max_id_;
};

}  // namespace bpt
