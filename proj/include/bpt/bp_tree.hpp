#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpt/bitvec.hpp"
#include "bpt/common.hpp"
#include "bpt/config.hpp"
#include "bpt/global_rank_select.hpp"
#include "bpt/io.hpp"
#include "bpt/ladder_index.hpp"
#include "bpt/range_index.hpp"
#include "bpt/rmm_bucket.hpp"

namespace bpt {

/// Ordinal tree (or forest) stored as a balanced parenthesis sequence plus
/// bucketed navigation indexes.
///
/// Nodes are identified by the 1-based position of their '('. The sequence is
/// cut into buckets of config().beta parentheses, each with its own range
/// min-max tree; searches that leave a bucket are routed through ladder
/// forests over the bucket extremes, and range queries spanning buckets
/// through a perfect binary tree over them.
///
/// Searches that find no answer return an empty optional. Arguments outside
/// their domain throw std::out_of_range, and node operations applied to a
/// ')' position throw std::invalid_argument.
class SuccinctTree {
 public:
  SuccinctTree() = default;

  explicit SuccinctTree(ParenBitvector bits, Config config = {}) : config_(config), bits_(std::move(bits)) {
    config_.validate();
    if (!bits_.is_balanced()) throw std::invalid_argument("parenthesis sequence is not balanced");
    build();
  }

  static SuccinctTree from_string(std::string_view text, Config config = {}) {
    return SuccinctTree(ParenBitvector::from_string(text), config);
  }

  [[nodiscard]] const Config& config() const noexcept { return config_; }
  [[nodiscard]] const ParenBitvector& bits() const noexcept { return bits_; }
  /// Sequence length 2n.
  [[nodiscard]] position_t length() const noexcept { return bits_.size(); }
  /// Node count n.
  [[nodiscard]] std::uint64_t nodes() const noexcept { return bits_.size() / 2; }
  [[nodiscard]] std::uint32_t num_buckets() const noexcept { return static_cast<std::uint32_t>(buckets_.size()); }
  [[nodiscard]] const RmmBucket& bucket(std::uint32_t k) const { return buckets_.at(k); }
  [[nodiscard]] const BucketArrays& bucket_arrays() const noexcept { return arrays_; }
  [[nodiscard]] const LadderIndex& ladders() const noexcept { return ladders_; }
  [[nodiscard]] const RangeIndex& ranges() const noexcept { return ranges_; }
  [[nodiscard]] const GlobalRankSelect& counters() const noexcept { return counters_; }

  // ---------------------------------------------------------------- primitives

  /// Opens minus closes in B[1..i], 0 <= i <= 2n.
  [[nodiscard]] excess_t excess(position_t i) const {
    detail::check_range("excess position", i, 0, length());
    if (i == 0) return 0;
    const std::uint32_t k = bucket_of(i);
    return arrays_.start(k) + buckets_[k].excess(bits_, rel(i, k));
  }

  /// Smallest j > i with excess(j) = excess(i) + d, 0 <= i <= 2n.
  [[nodiscard]] std::optional<position_t> fwdsearch(position_t i, excess_t d, SearchTrace* trace = nullptr) const {
    detail::check_range("fwdsearch position", i, 0, length());
    if (i == length()) return std::nullopt;
    const std::uint32_t k = static_cast<std::uint32_t>(i / config_.beta);
    const RmmBucket& b = buckets_[k];
    const auto r = static_cast<std::uint32_t>(i - b.start());
    const excess_t from = b.excess(bits_, r);
    const excess_t target = arrays_.start(k) + from + d;
    if (auto j = b.fwdsearch_to(bits_, r, from + d)) return b.start() + *j;
    const auto u = ladders_.find_bucket_fwd(arrays_, k, target, trace);
    if (!u) return std::nullopt;
    const RmmBucket& ub = buckets_[*u];
    const auto j = ub.fwdsearch_to(bits_, 0, target - arrays_.start(*u));
    if (!j) throw std::logic_error("bucket chosen by the ladder search does not attain the target");
    return ub.start() + *j;
  }

  /// Largest j < i with excess(j) = excess(i) + d, 0 <= i <= 2n + 1. Position
  /// 2n + 1 is an anchor with excess 0, so bwdsearch(2n + 1, d) is the last
  /// position with excess d. Position 0 (excess 0) is a valid answer.
  [[nodiscard]] std::optional<position_t> bwdsearch(position_t i, excess_t d, SearchTrace* trace = nullptr) const {
    detail::check_range("bwdsearch position", i, 0, length() + 1);
    if (i == 0) return std::nullopt;
    const excess_t target = (i > length() ? 0 : excess(i)) + d;
    return last_before(i, target, trace);
  }

  /// Leftmost position of the minimum excess in B[i..j].
  [[nodiscard]] position_t rmq(position_t i, position_t j) const { return range_extreme<true>(i, j).pos; }

  /// Leftmost position of the maximum excess in B[i..j].
  [[nodiscard]] position_t rMq(position_t i, position_t j) const { return range_extreme<false>(i, j).pos; }

  /// Number of positions in [i, j] attaining the minimum excess of B[i..j].
  [[nodiscard]] std::uint64_t mincount(position_t i, position_t j) const { return range_min_count(i, j).count; }

  /// Position of the q-th minimum of B[i..j], 1 <= q <= mincount(i, j).
  [[nodiscard]] position_t minselect(position_t i, position_t j, std::uint64_t q) const {
    const Zones z = range_min_count(i, j);
    if (q == 0 || q > z.count) {
      throw std::out_of_range("minselect rank " + std::to_string(q) + " not in [1, " + std::to_string(z.count) + "]");
    }
    const std::uint32_t ki = bucket_of(i);
    const std::uint32_t kj = bucket_of(j);
    const RmmBucket& bi = buckets_[ki];
    const excess_t in_i = z.value - arrays_.start(ki);
    if (ki == kj) {
      std::uint64_t left = q;
      return bi.start() + *bi.select_value(bits_, rel(i, ki), rel(j, ki), in_i, left);
    }
    if (z.first == z.value) {
      std::uint64_t left = q;
      if (auto p = bi.select_value(bits_, rel(i, ki), bi.width(), in_i, left)) return bi.start() + *p;
      q = left;
    }
    if (ki + 1 < kj && z.middle == z.value) {
      if (q <= z.middle_count) {
        const RangeIndex::Located at = ranges_.range_minselect(arrays_.m, ki + 1, kj - 1, q);
        const RmmBucket& b = buckets_[at.bucket];
        return b.start() + b.minselect(bits_, 1, b.width(), at.rank);
      }
      q -= z.middle_count;
    }
    const RmmBucket& bj = buckets_[kj];
    std::uint64_t left = q;
    const auto p = bj.select_value(bits_, 1, rel(j, kj), z.value - arrays_.start(kj), left);
    if (!p) throw std::logic_error("minselect ran past the last zone");
    return bj.start() + *p;
  }

  /// Occurrences of pattern x ending the count at position i (0 <= i <= 2n).
  /// For "10" a pair counts when its '(' lies in [1, i].
  [[nodiscard]] std::uint64_t rank(Pattern x, position_t i) const {
    detail::check_range("rank position", i, 0, length());
    if (i == 0) return 0;
    const std::uint32_t k = bucket_of(i);
    const RmmBucket& b = buckets_[k];
    const std::uint32_t r = rel(i, k);
    std::uint64_t in;
    switch (x) {
      case Pattern::one: in = b.rank1(bits_, r); break;
      case Pattern::zero: in = r - b.rank1(bits_, r); break;
      default: in = b.rank10(bits_, r); break;
    }
    return counters_.before(x, k) + in;
  }

  /// Position of the k-th occurrence of pattern x (for "10", of its '(').
  [[nodiscard]] position_t select(Pattern x, std::uint64_t k) const {
    const GlobalRankSelect::Located at = counters_.locate(x, k);
    const RmmBucket& b = buckets_[at.bucket];
    switch (x) {
      case Pattern::one: return b.start() + b.select1(bits_, at.rank);
      case Pattern::zero: return b.start() + b.select0(bits_, at.rank);
      default: return b.start() + b.select10(bits_, at.rank);
    }
  }

  [[nodiscard]] std::uint64_t count(Pattern x) const noexcept { return counters_.total(x); }

  // --------------------------------------------------------- tree operations

  [[nodiscard]] static constexpr position_t root() noexcept { return 1; }

  /// Matching ')' of the '(' at i.
  [[nodiscard]] position_t close(position_t i) const {
    require_open(i);
    return *fwdsearch(i, -1);
  }

  /// Matching '(' of the ')' at i.
  [[nodiscard]] position_t open(position_t i) const {
    detail::check_range("position", i, 1, length());
    if (bits_[i]) throw std::invalid_argument("open: position " + std::to_string(i) + " holds '('");
    return *bwdsearch(i, 0) + 1;
  }

  /// Opening of the tightest pair strictly enclosing the '(' at i; none for a root.
  [[nodiscard]] std::optional<position_t> enclose(position_t i) const {
    require_open(i);
    const auto j = bwdsearch(i, -2);
    if (!j) return std::nullopt;
    return *j + 1;
  }

  [[nodiscard]] bool isleaf(position_t i) const {
    require_open(i);
    return !bits_[i + 1];
  }

  [[nodiscard]] bool isancestor(position_t i, position_t j) const {
    require_open(j);
    return i <= j && j < close(i);
  }

  [[nodiscard]] excess_t depth(position_t i) const {
    require_open(i);
    return excess(i);
  }

  [[nodiscard]] std::uint64_t subtree(position_t i) const { return (close(i) - i + 1) / 2; }

  [[nodiscard]] std::optional<position_t> parent(position_t i) const { return enclose(i); }

  /// First child; throws std::invalid_argument on a leaf.
  [[nodiscard]] position_t first_child(position_t i) const {
    if (isleaf(i)) throw std::invalid_argument("first_child: node " + std::to_string(i) + " is a leaf");
    return i + 1;
  }

  /// Last child; throws std::invalid_argument on a leaf.
  [[nodiscard]] position_t last_child(position_t i) const {
    if (isleaf(i)) throw std::invalid_argument("last_child: node " + std::to_string(i) + " is a leaf");
    return open(close(i) - 1);
  }

  [[nodiscard]] std::optional<position_t> next_sibling(position_t i) const {
    const position_t j = close(i) + 1;
    if (j > length() || !bits_[j]) return std::nullopt;
    return j;
  }

  [[nodiscard]] std::optional<position_t> prev_sibling(position_t i) const {
    require_open(i);
    if (i == 1 || bits_[i - 1]) return std::nullopt;
    return open(i - 1);
  }

  [[nodiscard]] std::uint64_t preorder(position_t i) const {
    require_open(i);
    return rank(Pattern::one, i);
  }

  [[nodiscard]] position_t preorderselect(std::uint64_t k) const { return select(Pattern::one, k); }

  [[nodiscard]] std::uint64_t postorder(position_t i) const { return rank(Pattern::zero, close(i)); }

  [[nodiscard]] position_t postorderselect(std::uint64_t k) const { return open(select(Pattern::zero, k)); }

  /// Ancestor d levels above i (d = 0 gives i); none when d >= depth(i).
  [[nodiscard]] std::optional<position_t> levelancestor(position_t i, std::uint64_t d) const {
    require_open(i);
    if (d == 0) return i;
    const auto j = bwdsearch(i, -static_cast<excess_t>(d) - 1);
    if (!j) return std::nullopt;
    return *j + 1;
  }

  /// Next node in preorder with the same depth.
  [[nodiscard]] std::optional<position_t> levelnext(position_t i) const { return fwdsearch(close(i), 1); }

  /// Previous node in preorder with the same depth.
  [[nodiscard]] std::optional<position_t> levelprev(position_t i) const {
    require_open(i);
    const auto j = bwdsearch(i, 0);
    if (!j) return std::nullopt;
    return open(*j + 1);
  }

  /// First node in preorder with depth d >= 1.
  [[nodiscard]] std::optional<position_t> levelleftmost(std::uint64_t d) const {
    if (d == 0) return std::nullopt;
    return fwdsearch(0, static_cast<excess_t>(d));
  }

  /// Last node in preorder with depth d >= 1. The last position j with
  /// excess d is either that node's '(' or a ')' inside its subtree, in which
  /// case the node is the one enclosing j at depth d.
  [[nodiscard]] std::optional<position_t> levelrightmost(std::uint64_t d) const {
    if (d == 0) return std::nullopt;
    const auto j = bwdsearch(length() + 1, static_cast<excess_t>(d));
    if (!j || *j == 0) return std::nullopt;
    if (bits_[*j]) return *j;
    return *bwdsearch(*j, -1) + 1;
  }

  /// Lowest common ancestor; none when i and j lie in different trees.
  [[nodiscard]] std::optional<position_t> lca(position_t i, position_t j) const {
    require_open(i);
    require_open(j);
    if (i > j) std::swap(i, j);
    if (isancestor(i, j)) return i;
    return parent(rmq(i, j) + 1);
  }

  /// First deepest node of i's subtree.
  [[nodiscard]] position_t deepestnode(position_t i) const { return rMq(i, close(i)); }

  [[nodiscard]] excess_t height(position_t i) const { return excess(deepestnode(i)) - excess(i); }

  [[nodiscard]] std::uint64_t degree(position_t i) const {
    const position_t c = close(i);
    if (c == i + 1) return 0;
    return mincount(i + 1, c - 1);
  }

  /// q-th child, 1 <= q <= degree(i).
  [[nodiscard]] position_t child(position_t i, std::uint64_t q) const {
    const std::uint64_t deg = degree(i);
    if (q == 0 || q > deg) {
      throw std::out_of_range("child rank " + std::to_string(q) + " not in [1, " + std::to_string(deg) + "]");
    }
    if (q == 1) return i + 1;
    return minselect(i + 1, close(i) - 1, q - 1) + 1;
  }

  /// 1-based position of i among its siblings (among the roots for a root).
  [[nodiscard]] std::uint64_t childrank(position_t i) const {
    require_open(i);
    if (i == 1 || bits_[i - 1]) return 1;
    const auto p = parent(i);
    if (!p) return mincount(1, i) + 1;
    return mincount(*p + 1, i) + 1;
  }

  [[nodiscard]] std::uint64_t leafrank(position_t i) const {
    detail::check_range("leafrank position", i, 0, length());
    return rank(Pattern::pair10, i);
  }

  [[nodiscard]] position_t leafselect(std::uint64_t k) const { return select(Pattern::pair10, k); }

  [[nodiscard]] std::uint64_t numleaves(position_t i) const {
    return rank(Pattern::pair10, close(i)) - rank(Pattern::pair10, i - 1);
  }

  [[nodiscard]] position_t leftmostleaf(position_t i) const {
    require_open(i);
    return select(Pattern::pair10, rank(Pattern::pair10, i - 1) + 1);
  }

  [[nodiscard]] position_t rightmostleaf(position_t i) const {
    return select(Pattern::pair10, rank(Pattern::pair10, close(i)));
  }

  // ------------------------------------------------------------- maintenance

  /// Recomputes every index from B and throws std::logic_error on mismatch.
  void verify() const {
    arrays_.verify(config_.beta);
    for (std::uint32_t k = 0; k < num_buckets(); ++k) {
      const RmmBucket& b = buckets_[k];
      b.verify(bits_);
      const excess_t s = arrays_.start(k);
      if (arrays_.e[k] != s + b.end_excess() || arrays_.m[k] != s + b.min_value() ||
          arrays_.M[k] != s + b.max_value())
        throw std::logic_error("bucket arrays disagree with bucket " + std::to_string(k));
      const auto mn = b.rmq_counted(bits_, 1, b.width());
      if (min_pos_[k] + 1u != mn.pos || b.rMq(bits_, 1, b.width()).pos != max_pos_[k] + 1u)
        throw std::logic_error("stored extreme positions disagree with bucket " + std::to_string(k));
    }
    ladders_.verify(arrays_);
    ranges_.verify(arrays_.m, arrays_.M);
  }

  /// Global position of the leftmost minimum / maximum inside bucket k.
  [[nodiscard]] position_t bucket_min_pos(std::uint32_t k) const { return buckets_.at(k).start() + min_pos_[k] + 1; }
  [[nodiscard]] position_t bucket_max_pos(std::uint32_t k) const { return buckets_.at(k).start() + max_pos_[k] + 1; }

  static constexpr std::array<char, 8> kMagic{'B', 'P', 'T', 'I', 'D', 'X', '\r', '\n'};
  static constexpr std::uint32_t kVersion = 1;

  [[nodiscard]] std::vector<std::byte> serialize() const {
    io::Writer out;
    for (char c : kMagic) out.put<std::uint8_t>(static_cast<std::uint8_t>(c));
    out.put<std::uint32_t>(kVersion);
    config_.save(out);
    {
      io::Writer w;
      bits_.save(w);
      out.put_section(w);
    }
    {
      io::Writer w;
      w.put<std::uint32_t>(num_buckets());
      for (const RmmBucket& b : buckets_) {
        io::Writer bw;
        b.save(bw);
        w.put_section(bw);
      }
      out.put_section(w);
    }
    {
      io::Writer w;
      arrays_.save(w);
      w.put_vector(min_pos_);
      w.put_vector(max_pos_);
      out.put_section(w);
    }
    {
      io::Writer w;
      ladders_.save(w);
      out.put_section(w);
    }
    {
      io::Writer w;
      ranges_.save(w);
      out.put_section(w);
    }
    {
      io::Writer w;
      counters_.save(w);
      out.put_section(w);
    }
    return out.bytes();
  }

  static SuccinctTree deserialize(std::span<const std::byte> data) {
    io::Reader in(data);
    for (char c : kMagic) {
      if (in.get<std::uint8_t>() != static_cast<std::uint8_t>(c)) throw format_error("not a tree index (bad magic)");
    }
    const auto version = in.get<std::uint32_t>();
    if (version != kVersion) throw format_error("unsupported index version " + std::to_string(version));
    SuccinctTree t;
    t.config_ = Config::load(in);
    {
      io::Reader r = in.section();
      t.bits_ = ParenBitvector::load(r);
      r.expect_end("parentheses");
    }
    {
      io::Reader r = in.section();
      const auto count = r.get<std::uint32_t>();
      t.buckets_.reserve(count);
      for (std::uint32_t k = 0; k < count; ++k) {
        io::Reader br = r.section();
        t.buckets_.push_back(RmmBucket::load(br, t.config_.chunk));
        br.expect_end("bucket");
      }
      r.expect_end("buckets");
    }
    {
      io::Reader r = in.section();
      t.arrays_ = BucketArrays::load(r);
      t.min_pos_ = r.get_vector<std::uint16_t>();
      t.max_pos_ = r.get_vector<std::uint16_t>();
      r.expect_end("bucket arrays");
    }
    {
      io::Reader r = in.section();
      t.ladders_ = LadderIndex::load(r);
      r.expect_end("ladders");
    }
    {
      io::Reader r = in.section();
      t.ranges_ = RangeIndex::load(r);
      r.expect_end("range index");
    }
    {
      io::Reader r = in.section();
      t.counters_ = GlobalRankSelect::load(r);
      r.expect_end("counters");
    }
    in.expect_end("index");
    t.check_loaded();
    return t;
  }

  void save(const std::string& path) const {
    const auto data = serialize();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!f) throw std::runtime_error("failed writing " + path);
  }

  static SuccinctTree load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::vector<char> raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return deserialize(std::as_bytes(std::span<const char>(raw)));
  }

 private:
  struct Zones {
    excess_t value = 0;  // overall minimum
    std::uint64_t count = 0;
    excess_t first = 0;   // minimum in the bucket of i (or the whole range)
    excess_t middle = 0;  // minimum over the whole buckets in between
    std::uint64_t middle_count = 0;
  };

  void build() {
    const position_t len = length();
    const std::uint32_t beta = config_.beta;
    const auto nb = static_cast<std::uint32_t>((len + beta - 1) / beta);
    buckets_.reserve(nb);
    arrays_.e.resize(nb);
    arrays_.m.resize(nb);
    arrays_.M.resize(nb);
    min_pos_.resize(nb);
    max_pos_.resize(nb);
    std::vector<std::uint64_t> min_counts(nb);
    std::array<std::vector<std::uint64_t>, 3> per_bucket;
    for (auto& v : per_bucket) v.resize(nb);
    excess_t start = 0;
    for (std::uint32_t k = 0; k < nb; ++k) {
      const position_t first = position_t{k} * beta;
      const auto width = static_cast<std::uint32_t>(std::min<position_t>(beta, len - first));
      buckets_.emplace_back(bits_, first, width, config_.block, config_.chunk, config_.store_counts);
      const RmmBucket& b = buckets_.back();
      arrays_.e[k] = start + b.end_excess();
      arrays_.m[k] = start + b.min_value();
      arrays_.M[k] = start + b.max_value();
      const scan::Extremum mn = b.rmq_counted(bits_, 1, width);
      min_pos_[k] = static_cast<std::uint16_t>(mn.pos - 1);
      max_pos_[k] = static_cast<std::uint16_t>(b.rMq(bits_, 1, width).pos - 1);
      min_counts[k] = mn.count;
      per_bucket[static_cast<std::size_t>(Pattern::zero)][k] = width - b.total_ones();
      per_bucket[static_cast<std::size_t>(Pattern::one)][k] = b.total_ones();
      per_bucket[static_cast<std::size_t>(Pattern::pair10)][k] = b.total_pairs10();
      start = arrays_.e[k];
    }
    ladders_ = LadderIndex(arrays_);
    ranges_ = RangeIndex(arrays_.m, arrays_.M, min_counts);
    counters_ = GlobalRankSelect(per_bucket);
  }

  void check_loaded() const {
    config_.validate();
    const auto nb = static_cast<std::uint32_t>((length() + config_.beta - 1) / config_.beta);
    if (!bits_.is_balanced() || buckets_.size() != nb || arrays_.size() != nb || min_pos_.size() != nb ||
        max_pos_.size() != nb || ranges_.size() != nb || ladders_.forest(Direction::forward, Extreme::min).size() != nb)
      throw format_error("index components disagree on the bucket count");
    for (std::uint32_t k = 0; k < nb; ++k) {
      const RmmBucket& b = buckets_[k];
      if (b.start() != position_t{k} * config_.beta ||
          b.width() != std::min<position_t>(config_.beta, length() - b.start()))
        throw format_error("bucket " + std::to_string(k) + " has the wrong extent");
    }
  }

  void require_open(position_t i) const {
    detail::check_range("node", i, 1, length());
    if (!bits_[i]) throw std::invalid_argument("position " + std::to_string(i) + " holds ')', not a node");
  }

  /// Bucket holding position i >= 1.
  [[nodiscard]] std::uint32_t bucket_of(position_t i) const noexcept {
    return static_cast<std::uint32_t>((i - 1) / config_.beta);
  }
  [[nodiscard]] std::uint32_t rel(position_t i, std::uint32_t k) const noexcept {
    return static_cast<std::uint32_t>(i - buckets_[k].start());
  }

  /// Largest j in [0, i) with excess(j) = target, 1 <= i <= 2n + 1.
  std::optional<position_t> last_before(position_t i, excess_t target, SearchTrace* trace) const {
    const position_t top = i - 1;
    if (top == 0) return target == 0 ? std::optional<position_t>(0) : std::nullopt;
    const std::uint32_t k = bucket_of(top);
    const RmmBucket& b = buckets_[k];
    if (auto j = b.bwdsearch_to(bits_, rel(top, k) + 1, target - arrays_.start(k))) return b.start() + *j;
    if (const auto u = ladders_.find_bucket_bwd(arrays_, k, target, trace)) {
      const RmmBucket& ub = buckets_[*u];
      const auto j = ub.bwdsearch_to(bits_, ub.width() + 1, target - arrays_.start(*u));
      if (!j) throw std::logic_error("bucket chosen by the ladder search does not attain the target");
      return ub.start() + *j;
    }
    return target == 0 ? std::optional<position_t>(0) : std::nullopt;
  }

  void check_interval(position_t i, position_t j) const {
    if (i < 1 || i > j || j > length()) {
      throw std::out_of_range("range [" + std::to_string(i) + ", " + std::to_string(j) + "] not inside [1, " +
                              std::to_string(length()) + "]");
    }
  }

  struct Best {
    excess_t value = 0;
    position_t pos = 0;
  };

  template <bool Min>
  Best range_extreme(position_t i, position_t j) const {
    check_interval(i, j);
    const std::uint32_t ki = bucket_of(i);
    const std::uint32_t kj = bucket_of(j);
    const auto in_bucket = [&](std::uint32_t k, std::uint32_t l, std::uint32_t r) {
      const RmmBucket& b = buckets_[k];
      const scan::Extremum x = Min ? b.rmq(bits_, l, r) : b.rMq(bits_, l, r);
      return Best{arrays_.start(k) + x.value, b.start() + x.pos};
    };
    if (ki == kj) return in_bucket(ki, rel(i, ki), rel(j, ki));
    const auto better = [](excess_t a, excess_t b) { return Min ? a < b : a > b; };
    Best best = in_bucket(ki, rel(i, ki), buckets_[ki].width());
    if (ki + 1 < kj) {
      Best mid;
      if constexpr (Min) {
        const RangeIndex::MinResult r = ranges_.range_min(arrays_.m, ki + 1, kj - 1);
        mid = {r.value, bucket_min_pos(r.bucket)};
      } else {
        const RangeIndex::MaxResult r = ranges_.range_max(arrays_.M, ki + 1, kj - 1);
        mid = {r.value, bucket_max_pos(r.bucket)};
      }
      if (better(mid.value, best.value)) best = mid;
    }
    const Best last = in_bucket(kj, 1, rel(j, kj));
    if (better(last.value, best.value)) best = last;
    return best;
  }

  Zones range_min_count(position_t i, position_t j) const {
    check_interval(i, j);
    const std::uint32_t ki = bucket_of(i);
    const std::uint32_t kj = bucket_of(j);
    Zones z;
    if (ki == kj) {
      const scan::Extremum x = buckets_[ki].rmq_counted(bits_, rel(i, ki), rel(j, ki));
      z.value = z.first = arrays_.start(ki) + x.value;
      z.count = x.count;
      return z;
    }
    const scan::Extremum a = buckets_[ki].rmq_counted(bits_, rel(i, ki), buckets_[ki].width());
    const scan::Extremum c = buckets_[kj].rmq_counted(bits_, 1, rel(j, kj));
    z.first = arrays_.start(ki) + a.value;
    const excess_t last = arrays_.start(kj) + c.value;
    z.value = std::min(z.first, last);
    z.middle = std::numeric_limits<excess_t>::max();
    if (ki + 1 < kj) {
      const RangeIndex::MinResult r = ranges_.range_min(arrays_.m, ki + 1, kj - 1);
      z.middle = r.value;
      z.middle_count = r.count;
      z.value = std::min(z.value, z.middle);
    }
    if (z.first == z.value) z.count += a.count;
    if (z.middle == z.value) z.count += z.middle_count;
    if (last == z.value) z.count += c.count;
    return z;
  }

  Config config_;
  ParenBitvector bits_;
  std::vector<RmmBucket> buckets_;
  BucketArrays arrays_;
  std::vector<std::uint16_t> min_pos_;  // offset - 1 of each bucket's leftmost minimum
  std::vector<std::uint16_t> max_pos_;  // offset - 1 of each bucket's leftmost maximum
  LadderIndex ladders_;
  RangeIndex ranges_;
  GlobalRankSelect counters_;
};

}  // namespace bpt
