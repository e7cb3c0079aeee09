#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpt/common.hpp"
#include "bpt/io.hpp"

namespace bpt {

/// Per-bucket excess summaries, bucket k covering positions k*beta+1 ..
/// min((k+1)*beta, 2n) (0-based k). e[k] is the absolute excess at the end
/// of bucket k; m[k] and M[k] are the absolute extremes inside it.
struct BucketArrays {
  std::vector<excess_t> e;
  std::vector<excess_t> m;
  std::vector<excess_t> M;

  [[nodiscard]] std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(e.size()); }
  /// Absolute excess just before bucket k.
  [[nodiscard]] excess_t start(std::uint32_t k) const noexcept { return k == 0 ? 0 : e[k - 1]; }

  /// Throws std::logic_error if m <= e <= M or either no-holes condition fails.
  void verify(std::uint32_t beta) const {
    for (std::uint32_t k = 0; k < size(); ++k) {
      if (!(m[k] <= e[k] && e[k] <= M[k])) throw std::logic_error("bucket " + std::to_string(k) + ": e outside [m, M]");
      const excess_t step = e[k] - start(k);
      if (step > static_cast<excess_t>(beta) || -step > static_cast<excess_t>(beta))
        throw std::logic_error("bucket " + std::to_string(k) + ": excess change exceeds the bucket width");
      if (k + 1 < size() && (M[k + 1] < m[k] - 1 || M[k] < m[k + 1] - 1))
        throw std::logic_error("buckets " + std::to_string(k) + "/" + std::to_string(k + 1) + " leave a hole");
    }
  }

  void save(io::Writer& out) const {
    out.put_vector(e);
    out.put_vector(m);
    out.put_vector(M);
  }

  static BucketArrays load(io::Reader& in) {
    BucketArrays a;
    a.e = in.get_vector<excess_t>();
    a.m = in.get_vector<excess_t>();
    a.M = in.get_vector<excess_t>();
    if (a.m.size() != a.e.size() || a.M.size() != a.e.size()) throw format_error("bucket arrays differ in length");
    return a;
  }
};

/// Optional instrumentation filled by ancestor searches.
struct SearchTrace {
  std::uint64_t jump_levels = 0;   // jump-table entries probed
  std::uint64_t ladder_steps = 0;  // ladder cells compared
  bool used_forest = false;
};

enum class Direction : std::uint8_t { forward, backward };
enum class Extreme : std::uint8_t { min, max };

/// Forest over buckets where the parent of k is the nearest bucket in the
/// given direction whose extreme is strictly beyond k's (smaller for min,
/// larger for max). Buckets with no such bucket hang from a virtual root
/// with id size(). Level-ancestor support uses a long-path decomposition
/// with every path extended upward by its own length (ladders) plus
/// power-of-two jump pointers.
class LadderForest {
 public:
  LadderForest() = default;

  LadderForest(std::span<const excess_t> values, Direction dir, Extreme ext) : dir_(dir), ext_(ext) {
    n_ = static_cast<std::uint32_t>(values.size());
    const std::uint32_t root = n_;
    parent_.assign(n_, root);

    // monotone stack over the buckets in reverse query order
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n_; ++s) {
      const std::uint32_t k = dir_ == Direction::forward ? n_ - 1 - s : s;
      while (!stack.empty() && !beyond(values[stack.back()], values[k])) stack.pop_back();
      if (!stack.empty()) parent_[k] = stack.back();
      stack.push_back(k);
    }

    // children come before parents in `up` order
    const auto up = [&](std::uint32_t s) { return dir_ == Direction::forward ? s : n_ - 1 - s; };
    std::vector<std::uint32_t> height(n_ + 1, 1);
    std::vector<std::uint32_t> heavy(n_ + 1, kNone);
    for (std::uint32_t s = 0; s < n_; ++s) {
      const std::uint32_t k = up(s);
      const std::uint32_t p = parent_[k];
      if (height[k] + 1 > height[p]) {
        height[p] = height[k] + 1;
        heavy[p] = k;
      }
    }
    depth_.assign(n_ + 1, 0);
    for (std::uint32_t s = n_; s-- > 0;) {
      const std::uint32_t k = up(s);
      depth_[k] = depth_[parent_[k]] + 1;
    }

    // long paths, each starting at a node that is not its parent's heavy child
    primary_.assign(n_ + 1, 0);
    ladder_of_.assign(n_ + 1, 0);
    ladder_begin_.push_back(0);
    std::vector<std::uint32_t> path;
    for (std::uint32_t top = 0; top <= n_; ++top) {
      if (top != root && heavy[parent_[top]] == top) continue;
      path.clear();
      for (std::uint32_t v = top; v != kNone; v = heavy[v]) path.push_back(v);
      const auto id = static_cast<std::uint32_t>(ladder_begin_.size() - 1);
      for (std::size_t q = path.size(); q-- > 0;) {
        primary_[path[q]] = static_cast<std::uint32_t>(cells_.size());
        ladder_of_[path[q]] = id;
        cells_.push_back(path[q]);
      }
      std::uint32_t v = top;
      for (std::size_t extra = 0; extra < path.size() && v != root; ++extra) {
        v = parent_[v];
        cells_.push_back(v);
      }
      ladder_begin_.push_back(static_cast<std::uint32_t>(cells_.size()));
    }

    // jump[k][l] = ancestor at distance 2^l, for 2^l <= depth(k)
    jump_begin_.assign(n_ + 2, 0);
    for (std::uint32_t k = 0; k <= n_; ++k) jump_begin_[k + 1] = jump_begin_[k] + levels(k);
    jumps_.assign(jump_begin_[n_ + 1], 0);
    for (std::uint32_t s = n_; s-- > 0;) {
      const std::uint32_t k = up(s);
      jumps_[jump_begin_[k]] = parent_[k];
      for (std::uint32_t l = 1; l < levels(k); ++l) {
        const std::uint32_t mid = jumps_[jump_begin_[k] + l - 1];
        jumps_[jump_begin_[k] + l] = jumps_[jump_begin_[mid] + l - 1];
      }
    }
  }

  [[nodiscard]] std::uint32_t size() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t root() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t parent(std::uint32_t k) const { return parent_.at(k); }
  [[nodiscard]] std::uint32_t depth(std::uint32_t k) const { return depth_.at(k); }
  [[nodiscard]] std::size_t ladder_cells() const noexcept { return cells_.size(); }
  [[nodiscard]] std::size_t num_ladders() const noexcept { return ladder_begin_.size() - 1; }
  [[nodiscard]] Direction direction() const noexcept { return dir_; }
  [[nodiscard]] Extreme extreme() const noexcept { return ext_; }

  /// Ladder `id` as bucket ids from its bottom node upward.
  [[nodiscard]] std::span<const std::uint32_t> ladder(std::size_t id) const {
    return std::span<const std::uint32_t>(cells_).subspan(ladder_begin_.at(id), ladder_begin_[id + 1] - ladder_begin_[id]);
  }

  /// Ancestor of k at distance 2^l (l < number of levels of k).
  [[nodiscard]] std::uint32_t jump(std::uint32_t k, std::uint32_t l) const {
    if (l >= levels(k)) throw std::out_of_range("jump level beyond node depth");
    return jumps_[jump_begin_[k] + l];
  }

  /// Nearest proper ancestor u of `start` whose extreme reaches `target`
  /// (values[u] <= target for min forests, >= for max forests). Returns
  /// nullopt when only the virtual root qualifies.
  [[nodiscard]] std::optional<std::uint32_t> ancestor_search(std::span<const excess_t> values, std::uint32_t start,
                                                             excess_t target, SearchTrace* trace = nullptr) const {
    const auto ok = [&](std::uint32_t u) { return u == n_ || reaches(values[u], target); };
    if (trace) trace->used_forest = true;
    const std::uint32_t lv = levels(start);
    const std::uint32_t* jumps = jumps_.data() + jump_begin_[start];
    // smallest l with jumps[l] qualifying; lv when none does
    std::uint32_t l = 0;
    const std::uint32_t linear = std::min(lv, kSequentialProbes);
    while (l < linear) {
      if (trace) ++trace->jump_levels;
      if (ok(jumps[l])) break;
      ++l;
    }
    if (l == linear && linear < lv) {
      std::uint32_t lo = linear;
      std::uint32_t hi = lv;
      while (lo < hi) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        if (trace) ++trace->jump_levels;
        if (ok(jumps[mid])) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      l = lo;
    }
    std::uint32_t answer;
    if (l == 0) {
      answer = jumps[0];
    } else {
      // the answer lies strictly above base and within base's ladder
      const std::uint32_t base = jumps[l - 1];
      const std::uint32_t id = ladder_of_[base];
      const std::uint32_t* first = cells_.data() + primary_[base] + 1;
      const std::uint32_t* last = cells_.data() + ladder_begin_[id + 1];
      std::uint64_t probes = 0;
      const std::uint32_t* it = std::partition_point(first, last, [&](std::uint32_t u) {
        ++probes;
        return !ok(u);
      });
      if (trace) trace->ladder_steps += probes;
      if (it == last) throw std::logic_error("ladder does not reach the qualifying ancestor");
      answer = *it;
    }
    if (answer == n_) return std::nullopt;
    return answer;
  }

  /// Checks parent relation, ladder monotonicity, cell budget and jumps;
  /// throws std::logic_error on failure.
  void verify(std::span<const excess_t> values) const {
    const auto fail = [](const std::string& what) { throw std::logic_error("ladder forest: " + what); };
    for (std::uint32_t k = 0; k < n_; ++k) {
      const std::uint32_t p = parent_[k];
      std::uint32_t expect = n_;
      if (dir_ == Direction::forward) {
        for (std::uint32_t x = k + 1; x < n_; ++x) {
          if (beyond(values[x], values[k])) {
            expect = x;
            break;
          }
        }
      } else {
        for (std::uint32_t x = k; x-- > 0;) {
          if (beyond(values[x], values[k])) {
            expect = x;
            break;
          }
        }
      }
      if (p != expect) fail("parent of " + std::to_string(k) + " is wrong");
    }
    if (cells_.size() > 2 * static_cast<std::size_t>(n_ + 1)) fail("ladders exceed 2n' cells");
    std::vector<std::uint32_t> primaries(n_ + 1, 0);
    for (std::size_t id = 0; id < num_ladders(); ++id) {
      const auto lad = ladder(id);
      for (std::size_t q = 0; q < lad.size(); ++q) {
        if (q + 1 < lad.size()) {
          if (parent_[lad[q]] != lad[q + 1]) fail("ladder is not an upward path");
          if (lad[q + 1] != n_ && !beyond(values[lad[q + 1]], values[lad[q]])) fail("ladder values are not monotone");
        }
        if (primary_[lad[q]] == ladder_begin_[id] + q) ++primaries[lad[q]];
      }
    }
    for (std::uint32_t k = 0; k <= n_; ++k) {
      if (primaries[k] != 1) fail("node " + std::to_string(k) + " lacks a unique primary copy");
    }
    for (std::uint32_t k = 0; k < n_; ++k) {
      for (std::uint32_t l = 0; l < levels(k); ++l) {
        const std::uint32_t a = jump(k, l);
        if (depth_[k] - depth_[a] != (1u << l)) fail("jump distance mismatch");
      }
    }
  }

  [[nodiscard]] std::uint64_t size_in_bits() const noexcept {
    return 32 * (cells_.size() + ladder_begin_.size() + primary_.size() + ladder_of_.size() + jump_begin_.size() +
                 jumps_.size()) +
           64;
  }

  void save(io::Writer& out) const {
    out.put<std::uint8_t>(static_cast<std::uint8_t>(dir_));
    out.put<std::uint8_t>(static_cast<std::uint8_t>(ext_));
    out.put<std::uint32_t>(n_);
    out.put_vector(parent_);
    out.put_vector(cells_);
    out.put_vector(ladder_begin_);
    out.put_vector(primary_);
    out.put_vector(ladder_of_);
    out.put_vector(jump_begin_);
    out.put_vector(jumps_);
  }

  static LadderForest load(io::Reader& in) {
    LadderForest f;
    f.dir_ = static_cast<Direction>(in.get<std::uint8_t>());
    f.ext_ = static_cast<Extreme>(in.get<std::uint8_t>());
    f.n_ = in.get<std::uint32_t>();
    f.parent_ = in.get_vector<std::uint32_t>();
    f.cells_ = in.get_vector<std::uint32_t>();
    f.ladder_begin_ = in.get_vector<std::uint32_t>();
    f.primary_ = in.get_vector<std::uint32_t>();
    f.ladder_of_ = in.get_vector<std::uint32_t>();
    f.jump_begin_ = in.get_vector<std::uint32_t>();
    f.jumps_ = in.get_vector<std::uint32_t>();
    if (f.parent_.size() != f.n_ || f.primary_.size() != f.n_ + 1 || f.ladder_of_.size() != f.n_ + 1 ||
        f.jump_begin_.size() != f.n_ + 2 || f.ladder_begin_.empty() || f.jumps_.size() != f.jump_begin_.back() ||
        f.ladder_begin_.back() != f.cells_.size())
      throw format_error("ladder forest arrays have inconsistent sizes");
    f.depth_.assign(f.n_ + 1, 0);
    const auto up = [&](std::uint32_t s) { return f.dir_ == Direction::forward ? f.n_ - 1 - s : s; };
    for (std::uint32_t s = 0; s < f.n_; ++s) {
      const std::uint32_t k = up(s);
      if (f.parent_[k] > f.n_) throw format_error("ladder forest parent out of range");
      f.depth_[k] = f.depth_[f.parent_[k]] + 1;
    }
    return f;
  }

 private:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  static constexpr std::uint32_t kSequentialProbes = 6;

  /// Number of jump levels of k: floor(log2(depth)) + 1, zero at the root.
  [[nodiscard]] std::uint32_t levels(std::uint32_t k) const noexcept {
    return depth_[k] == 0 ? 0 : static_cast<std::uint32_t>(std::bit_width(depth_[k]));
  }

  /// Whether value a is strictly beyond b for this forest's extreme.
  [[nodiscard]] bool beyond(excess_t a, excess_t b) const noexcept { return ext_ == Extreme::min ? a < b : a > b; }
  [[nodiscard]] bool reaches(excess_t v, excess_t target) const noexcept {
    return ext_ == Extreme::min ? v <= target : v >= target;
  }

  Direction dir_ = Direction::forward;
  Extreme ext_ = Extreme::min;
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::uint32_t> ladder_begin_;
  std::vector<std::uint32_t> primary_;    // cell index of each node's primary copy
  std::vector<std::uint32_t> ladder_of_;  // ladder holding that copy
  std::vector<std::uint32_t> jump_begin_;
  std::vector<std::uint32_t> jumps_;
};

/// The four forests used to route searches that leave their bucket.
class LadderIndex {
 public:
  LadderIndex() = default;

  explicit LadderIndex(const BucketArrays& a)
      : fwd_min_(a.m, Direction::forward, Extreme::min),
        fwd_max_(a.M, Direction::forward, Extreme::max),
        bwd_min_(a.m, Direction::backward, Extreme::min),
        bwd_max_(a.M, Direction::backward, Extreme::max) {}

  /// Smallest k > from with m[k] <= target <= M[k].
  [[nodiscard]] std::optional<std::uint32_t> find_bucket_fwd(const BucketArrays& a, std::uint32_t from,
                                                             excess_t target, SearchTrace* trace = nullptr) const {
    const std::uint32_t k = from + 1;
    if (k >= a.size()) return std::nullopt;
    if (a.m[k] <= target && target <= a.M[k]) return k;
    return target < a.m[k] ? fwd_min_.ancestor_search(a.m, k, target, trace)
                           : fwd_max_.ancestor_search(a.M, k, target, trace);
  }

  /// Largest k < from with m[k] <= target <= M[k].
  [[nodiscard]] std::optional<std::uint32_t> find_bucket_bwd(const BucketArrays& a, std::uint32_t from,
                                                             excess_t target, SearchTrace* trace = nullptr) const {
    if (from == 0) return std::nullopt;
    const std::uint32_t k = from - 1;
    if (a.m[k] <= target && target <= a.M[k]) return k;
    return target < a.m[k] ? bwd_min_.ancestor_search(a.m, k, target, trace)
                           : bwd_max_.ancestor_search(a.M, k, target, trace);
  }

  [[nodiscard]] const LadderForest& forest(Direction d, Extreme x) const noexcept {
    if (d == Direction::forward) return x == Extreme::min ? fwd_min_ : fwd_max_;
    return x == Extreme::min ? bwd_min_ : bwd_max_;
  }

  void verify(const BucketArrays& a) const {
    fwd_min_.verify(a.m);
    fwd_max_.verify(a.M);
    bwd_min_.verify(a.m);
    bwd_max_.verify(a.M);
  }

  [[nodiscard]] std::uint64_t size_in_bits() const noexcept {
    return fwd_min_.size_in_bits() + fwd_max_.size_in_bits() + bwd_min_.size_in_bits() + bwd_max_.size_in_bits();
  }

  void save(io::Writer& out) const {
    for (const LadderForest* f : {&fwd_min_, &fwd_max_, &bwd_min_, &bwd_max_}) {
      io::Writer w;
      f->save(w);
      out.put_section(w);
    }
  }

  static LadderIndex load(io::Reader& in) {
    LadderIndex x;
    for (LadderForest* f : {&x.fwd_min_, &x.fwd_max_, &x.bwd_min_, &x.bwd_max_}) {
      io::Reader r = in.section();
      *f = LadderForest::load(r);
      r.expect_end("ladder forest");
    }
    return x;
  }

 private:
  LadderForest fwd_min_;
  LadderForest fwd_max_;
  LadderForest bwd_min_;
  LadderForest bwd_max_;
};

}  // namespace bpt
