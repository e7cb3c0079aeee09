#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bpt/common.hpp"
#include "bpt/io.hpp"

namespace bpt {

/// Build parameters of a SuccinctTree.
struct Config {
  /// Bucket width in parentheses. Node fields are 16-bit and relative to the
  /// bucket start, which caps it at 2^15.
  std::uint32_t beta = 1u << 15;
  /// Leaf block width of each bucket's min-max tree, in parentheses.
  std::uint32_t block = 1024;
  /// Width of the lookup-table chunks used by block scans (8 or 16).
  unsigned chunk = 16;
  /// Whether min-count fields are stored; without them mincount/minselect
  /// recount inside the bucket.
  bool store_counts = true;

  static constexpr std::uint32_t kMaxBeta = 1u << 15;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const {
    if (beta < 2 || beta > kMaxBeta) {
      throw std::invalid_argument("bucket width must be in [2, " + std::to_string(kMaxBeta) + "], got " +
                                  std::to_string(beta));
    }
    if (block < 2) throw std::invalid_argument("block width must be at least 2, got " + std::to_string(block));
    if (block < beta && beta % block != 0) {
      throw std::invalid_argument("block width " + std::to_string(block) + " must divide bucket width " +
                                  std::to_string(beta));
    }
    if (chunk != 8 && chunk != 16) throw std::invalid_argument("chunk width must be 8 or 16");
  }

  /// Number of leaf blocks in a full bucket.
  [[nodiscard]] std::uint32_t blocks_per_bucket() const noexcept { return (beta + block - 1) / block; }

  void save(io::Writer& out) const {
    out.put<std::uint32_t>(beta);
    out.put<std::uint32_t>(block);
    out.put<std::uint8_t>(static_cast<std::uint8_t>(chunk));
    out.put<bool>(store_counts);
  }

  static Config load(io::Reader& in) {
    Config c;
    c.beta = in.get<std::uint32_t>();
    c.block = in.get<std::uint32_t>();
    c.chunk = in.get<std::uint8_t>();
    c.store_counts = in.get<bool>();
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw format_error(std::string("stored configuration is invalid: ") + e.what());
    }
    return c;
  }

  bool operator==(const Config&) const = default;
};

}  // namespace bpt
