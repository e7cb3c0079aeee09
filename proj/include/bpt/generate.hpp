#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bpt::gen {

enum class Kind { uniform, path, star, caterpillar, binary };

inline Kind parse_kind(std::string_view s) {
  if (s == "uniform") return Kind::uniform;
  if (s == "path") return Kind::path;
  if (s == "star") return Kind::star;
  if (s == "caterpillar") return Kind::caterpillar;
  if (s == "binary") return Kind::binary;
  throw std::invalid_argument("unknown tree kind '" + std::string(s) + "'");
}

/// Uniformly random ordinal tree with n nodes. A random word with n - 1 '('
/// and n ')' has exactly one rotation whose every proper prefix stays above
/// the final level (cycle lemma). Rotating to start just after the first
/// global minimum gives that rotation; dropping its last ')' leaves a Dyck
/// word on n - 1 pairs, which becomes the children of a root.
inline std::string uniform(std::uint64_t n, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  std::string w(n - 1, '(');
  w.append(n, ')');
  std::shuffle(w.begin(), w.end(), rng);
  std::int64_t e = 0;
  std::int64_t low = 1;
  std::size_t at = 0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    e += w[t] == '(' ? 1 : -1;
    if (e < low) {
      low = e;
      at = t;
    }
  }
  std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at + 1), w.end());
  w.pop_back();
  return '(' + w + ')';
}

inline std::string path(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  return std::string(n, '(') + std::string(n, ')');
}

inline std::string star(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  std::string s = "(";
  for (std::uint64_t i = 1; i < n; ++i) s += "()";
  return s + ")";
}

/// Spine of nodes, each carrying one leaf while the budget allows.
inline std::string caterpillar(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  std::string s;
  std::uint64_t used = 0;
  std::uint64_t spine = 0;
  while (used < n) {
    s += '(';
    ++used;
    ++spine;
    if (used < n) {
      s += "()";
      ++used;
    }
  }
  return s + std::string(spine, ')');
}

/// Complete binary tree in heap order (node v has children 2v and 2v + 1).
inline std::string binary(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  std::string s;
  s.reserve(2 * n);
  // Iterative preorder: a positive entry opens node v, zero closes one.
  std::vector<std::uint64_t> stack{1};
  while (!stack.empty()) {
    const std::uint64_t v = stack.back();
    stack.pop_back();
    if (v == 0) {
      s += ')';
      continue;
    }
    s += '(';
    stack.push_back(0);
    if (2 * v + 1 <= n) stack.push_back(2 * v + 1);
    if (2 * v <= n) stack.push_back(2 * v);
  }
  return s;
}

inline std::string make(Kind kind, std::uint64_t n, std::uint64_t seed) {
  switch (kind) {
    case Kind::uniform: {
      std::mt19937_64 rng(seed);
      return uniform(n, rng);
    }
    case Kind::path: return path(n);
    case Kind::star: return star(n);
    case Kind::caterpillar: return caterpillar(n);
    default: return binary(n);
  }
}

}  // namespace bpt::gen
