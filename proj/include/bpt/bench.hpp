#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bpt/bp_tree.hpp"

namespace bpt::bench {

enum class Mode { traversal, rmq, op_latency };

inline Mode parse_mode(const std::string& s) {
  if (s == "traversal") return Mode::traversal;
  if (s == "rmq") return Mode::rmq;
  if (s == "op-latency") return Mode::op_latency;
  throw std::invalid_argument("unknown bench mode '" + s + "'");
}

struct Spec {
  Mode mode = Mode::traversal;
  double p = 0.0;
  std::uint64_t sample_min = 200'000;
  std::uint64_t pairs = 200'000;
  std::uint64_t seed = 1;
  std::uint32_t percentiles = 100;
};

struct Row {
  std::string name;
  std::string param;
  double mean_us = 0.0;
  std::uint64_t n = 0;
  std::string extra;
};

inline constexpr const char* kCsvVersion = "# bpt-bench-csv v1";

inline void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << kCsvVersion << '\n' << "name,param,mean_us,n,extra\n";
  for (const Row& r : rows) out << r.name << ',' << r.param << ',' << r.mean_us << ',' << r.n << ',' << r.extra << '\n';
}

/// Depth-first sampling from the first root: descend to one uniformly chosen
/// child, and to each remaining child independently with probability p.
/// Passes are repeated until at least sample_min nodes were visited; a pass
/// with p = 1 covers the whole tree and is never repeated. The result lists
/// opening positions in visiting order and may contain repeats.
inline std::vector<position_t> sample_nodes(const SuccinctTree& t, double p, std::uint64_t sample_min,
                                            std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("descent probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<position_t> out;
  std::vector<position_t> stack;
  std::vector<position_t> kids;
  do {
    stack.assign(1, SuccinctTree::root());
    while (!stack.empty()) {
      const position_t v = stack.back();
      stack.pop_back();
      out.push_back(v);
      if (t.isleaf(v)) continue;
      kids.clear();
      for (std::optional<position_t> c = t.first_child(v); c; c = t.next_sibling(*c)) kids.push_back(*c);
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, kids.size() - 1)(rng);
      // Push in reverse so children are visited left to right.
      for (std::size_t q = kids.size(); q-- > 0;) {
        if (q == pick || coin(rng)) stack.push_back(kids[q]);
      }
    }
  } while (p < 1.0 && out.size() < sample_min);
  return out;
}

/// Random pairs i < j over [1, 2n], sorted by j - i.
inline std::vector<std::pair<position_t, position_t>> sample_pairs(const SuccinctTree& t, std::uint64_t count,
                                                                    std::uint64_t seed) {
  if (t.length() < 2) throw std::invalid_argument("rmq sweep needs at least two positions");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<position_t> pos(1, t.length());
  std::vector<std::pair<position_t, position_t>> out;
  out.reserve(count);
  while (out.size() < count) {
    position_t i = pos(rng);
    position_t j = pos(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    out.emplace_back(i, j);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second - a.first < b.second - b.first; });
  return out;
}

namespace detail {

template <class F>
double mean_us(std::uint64_t count, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  const auto t1 = std::chrono::steady_clock::now();
  const double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
  return count == 0 ? 0.0 : us / static_cast<double>(count);
}

inline volatile std::uint64_t sink = 0;

inline std::string fmt(double p) {
  std::string s = std::to_string(p);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace detail

inline std::vector<Row> traversal(const SuccinctTree& t, const Spec& spec) {
  const auto nodes = sample_nodes(t, spec.p, spec.sample_min, spec.seed);
  std::vector<position_t> closes(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) closes[k] = t.close(nodes[k]);
  const std::string param = "p=" + detail::fmt(spec.p);
  const std::uint64_t n = nodes.size();
  std::vector<Row> rows;
  std::uint64_t acc = 0;
  rows.push_back({"close", param, detail::mean_us(n, [&] {
                    for (position_t v : nodes) acc += t.close(v);
                  }),
                  n, ""});
  rows.push_back({"open", param, detail::mean_us(n, [&] {
                    for (position_t c : closes) acc += t.open(c);
                  }),
                  n, ""});
  rows.push_back({"enclose", param, detail::mean_us(n, [&] {
                    for (position_t v : nodes) acc += t.enclose(v).value_or(0);
                  }),
                  n, ""});
  detail::sink = acc;
  return rows;
}

inline std::vector<Row> rmq_sweep(const SuccinctTree& t, const Spec& spec) {
  if (spec.percentiles == 0) throw std::invalid_argument("percentile count must be positive");
  const auto pairs = sample_pairs(t, spec.pairs, spec.seed);
  std::vector<Row> rows;
  std::uint64_t acc = 0;
  for (std::uint32_t g = 0; g < spec.percentiles; ++g) {
    const std::size_t lo = pairs.size() * g / spec.percentiles;
    const std::size_t hi = pairs.size() * (g + 1) / spec.percentiles;
    if (lo == hi) continue;
    const double us = detail::mean_us(hi - lo, [&] {
      for (std::size_t k = lo; k < hi; ++k) acc += t.rmq(pairs[k].first, pairs[k].second);
    });
    const position_t span = pairs[hi - 1].second - pairs[hi - 1].first;
    rows.push_back({"rmq", std::to_string(g + 1), us, hi - lo, "max_gap=" + std::to_string(span)});
  }
  detail::sink = acc;
  return rows;
}

/// Latency of the navigation repertoire over the traversal sample.
inline std::vector<Row> op_latency(const SuccinctTree& t, const Spec& spec) {
  const auto nodes = sample_nodes(t, spec.p, spec.sample_min, spec.seed);
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<position_t> partner(nodes.size());
  for (auto& v : partner) v = nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];
  const std::string param = "p=" + detail::fmt(spec.p);
  const std::uint64_t n = nodes.size();
  std::uint64_t acc = 0;
  std::vector<Row> rows;
  auto time = [&](const char* name, auto&& op) {
    rows.push_back({name, param, detail::mean_us(n, [&] {
                      for (std::size_t k = 0; k < nodes.size(); ++k) acc += op(k);
                    }),
                    n, ""});
  };
  time("parent", [&](std::size_t k) { return t.parent(nodes[k]).value_or(0); });
  time("depth", [&](std::size_t k) { return static_cast<std::uint64_t>(t.depth(nodes[k])); });
  time("subtree", [&](std::size_t k) { return t.subtree(nodes[k]); });
  time("next_sibling", [&](std::size_t k) { return t.next_sibling(nodes[k]).value_or(0); });
  time("degree", [&](std::size_t k) { return t.degree(nodes[k]); });
  time("childrank", [&](std::size_t k) { return t.childrank(nodes[k]); });
  time("preorder", [&](std::size_t k) { return t.preorder(nodes[k]); });
  time("postorder", [&](std::size_t k) { return t.postorder(nodes[k]); });
  time("levelnext", [&](std::size_t k) { return t.levelnext(nodes[k]).value_or(0); });
  time("lca", [&](std::size_t k) { return t.lca(nodes[k], partner[k]).value_or(0); });
  time("height", [&](std::size_t k) { return static_cast<std::uint64_t>(t.height(nodes[k])); });
  time("leafrank", [&](std::size_t k) { return t.leafrank(nodes[k]); });
  time("numleaves", [&](std::size_t k) { return t.numleaves(nodes[k]); });
  detail::sink = acc;
  return rows;
}

inline std::vector<Row> run(const SuccinctTree& t, const Spec& spec) {
  switch (spec.mode) {
    case Mode::traversal: return traversal(t, spec);
    case Mode::rmq: return rmq_sweep(t, spec);
    default: return op_latency(t, spec);
  }
}

}  // namespace bpt::bench
