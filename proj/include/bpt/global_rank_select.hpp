#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpt/common.hpp"
#include "bpt/io.hpp"
#include "bpt/sparse_bitvec.hpp"

namespace bpt {

/// Per-bucket running counts of each pattern, kept implicitly.
///
/// For pattern x with r_x[k] occurrences before bucket k (0-based) and
/// r_x[n'] occurrences in total, the sparse bitvector B_x has a one at
/// position (k + 1) + r_x[k] for k = 0..n'. Hence r_x[k] = select1(k+1) - (k+1),
/// and the bucket holding the j-th occurrence is select0(j) - j - 1.
class GlobalRankSelect {
 public:
  struct Located {
    std::uint32_t bucket = 0;
    std::uint64_t rank = 0;  // occurrence rank inside that bucket
  };

  GlobalRankSelect() = default;

  /// per_bucket[x][k]: occurrences of pattern x inside bucket k, where a
  /// "10" pair belongs to the bucket holding its '('.
  explicit GlobalRankSelect(const std::array<std::vector<std::uint64_t>, 3>& per_bucket) {
    for (std::size_t x = 0; x < 3; ++x) {
      const auto& c = per_bucket[x];
      std::vector<std::uint64_t> ones;
      ones.reserve(c.size() + 1);
      std::uint64_t before = 0;
      for (std::size_t k = 0; k <= c.size(); ++k) {
        ones.push_back(k + 1 + before);
        if (k < c.size()) before += c[k];
      }
      totals_[x] = before;
      b_[x] = SparseBitvector(ones, c.size() + 1 + before);
    }
  }

  [[nodiscard]] std::uint64_t total(Pattern x) const noexcept { return totals_[index(x)]; }
  [[nodiscard]] const SparseBitvector& bitvector(Pattern x) const noexcept { return b_[index(x)]; }

  /// Occurrences of x in buckets 0..k-1 (k may equal the bucket count).
  [[nodiscard]] std::uint64_t before(Pattern x, std::uint32_t k) const {
    return b_[index(x)].select1(std::uint64_t{k} + 1) - (std::uint64_t{k} + 1);
  }

  /// Bucket containing the j-th occurrence of x and its rank there.
  [[nodiscard]] Located locate(Pattern x, std::uint64_t j) const {
    detail::check_range("select rank", j, 1, totals_[index(x)]);
    const auto& b = b_[index(x)];
    const std::uint64_t k = b.select0(j) - j - 1;
    return {static_cast<std::uint32_t>(k), j - before(x, static_cast<std::uint32_t>(k))};
  }

  [[nodiscard]] std::uint64_t size_in_bits() const noexcept {
    return b_[0].size_in_bits() + b_[1].size_in_bits() + b_[2].size_in_bits() + 3 * 64;
  }

  void save(io::Writer& out) const {
    for (std::size_t x = 0; x < 3; ++x) {
      out.put<std::uint64_t>(totals_[x]);
      b_[x].save(out);
    }
  }

  static GlobalRankSelect load(io::Reader& in) {
    GlobalRankSelect g;
    for (std::size_t x = 0; x < 3; ++x) {
      g.totals_[x] = in.get<std::uint64_t>();
      g.b_[x] = SparseBitvector::load(in);
      if (g.b_[x].universe() != g.b_[x].count() + g.totals_[x]) throw format_error("pattern counter size mismatch");
    }
    return g;
  }

 private:
  static std::size_t index(Pattern x) noexcept { return static_cast<std::size_t>(x); }

  std::array<std::uint64_t, 3> totals_{};
  std::array<SparseBitvector, 3> b_;
};

}  // namespace bpt
