#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpt/bp_tree.hpp"

namespace bpt {

/// Bit accounting of a built index, per component and in bits per node.
struct SpaceReport {
  struct Line {
    std::string name;
    std::uint64_t bits = 0;
    double bpn = 0.0;
  };

  std::uint64_t nodes = 0;
  std::vector<Line> lines;
  std::uint64_t count_bits = 0;  // min-count fields, reported apart
  std::uint64_t total_with_counts = 0;
  std::uint64_t total_without_counts = 0;

  [[nodiscard]] double bpn_with_counts() const noexcept { return per_node(total_with_counts); }
  [[nodiscard]] double bpn_without_counts() const noexcept { return per_node(total_without_counts); }

  [[nodiscard]] double per_node(std::uint64_t bits) const noexcept {
    return nodes == 0 ? 0.0 : static_cast<double>(bits) / static_cast<double>(nodes);
  }

  [[nodiscard]] const Line* find(const std::string& name) const {
    for (const Line& l : lines) {
      if (l.name == name) return &l;
    }
    return nullptr;
  }
};

/// Raw B is charged at its exact length 2n; word padding is not counted.
/// The shared chunk lookup tables belong to the process, not to the index.
inline SpaceReport measure(const SuccinctTree& t) {
  SpaceReport r;
  r.nodes = t.nodes();

  std::uint64_t nodes = 0;
  std::uint64_t counts = 0;
  std::uint64_t prefixes = 0;
  std::uint64_t headers = 0;
  for (std::uint32_t k = 0; k < t.num_buckets(); ++k) {
    const RmmBucket::Space s = t.bucket(k).space();
    nodes += s.nodes;
    counts += s.counts;
    prefixes += s.prefixes;
    headers += s.header;
  }
  const std::uint64_t nb = t.num_buckets();
  const std::uint64_t arrays = 3 * 64 * nb + 2 * 16 * nb;  // e, m, M and extreme offsets

  auto add = [&](std::string name, std::uint64_t bits) {
    r.lines.push_back({std::move(name), bits, r.per_node(bits)});
  };
  add("raw B", t.length());
  add("rmM nodes", nodes + headers);
  add("min counts", counts);
  add("block prefixes", prefixes);
  add("bucket arrays", arrays);
  add("ladders", t.ladders().size_in_bits());
  add("range min tree", t.ranges().min_tree_bits() - t.ranges().count_bits());
  add("range min counts", t.ranges().count_bits());
  add("range max tree", t.ranges().max_tree_bits());
  add("counters", t.counters().size_in_bits());

  r.count_bits = counts + t.ranges().count_bits();
  for (const auto& l : r.lines) r.total_with_counts += l.bits;
  r.total_without_counts = r.total_with_counts - r.count_bits;
  return r;
}

}  // namespace bpt
