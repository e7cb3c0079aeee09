#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Brute-force references for tests. Nothing here touches the succinct
// structures: primitives scan a plain excess array, and tree operations walk
// an explicit pointer tree built from the same text.
namespace bpt::oracle {

using pos = std::uint64_t;
using exc = std::int64_t;

/// Primitives evaluated literally from their definitions over E[0..2n].
class NaivePrimitives {
 public:
  explicit NaivePrimitives(std::string_view parens) {
    e_.push_back(0);
    for (char c : parens) {
      if (c != '(' && c != ')') continue;
      b_.push_back(c == '(');
      e_.push_back(e_.back() + (c == '(' ? 1 : -1));
    }
  }

  [[nodiscard]] pos length() const noexcept { return b_.size(); }
  [[nodiscard]] bool bit(pos i) const { return b_.at(i - 1); }
  [[nodiscard]] exc excess(pos i) const { return e_.at(i); }

  /// min{ j > i : E[j] = E[i] + d }
  [[nodiscard]] std::optional<pos> fwdsearch(pos i, exc d) const {
    const exc t = e_.at(i) + d;
    for (pos j = i + 1; j <= length(); ++j) {
      if (e_[j] == t) return j;
    }
    return std::nullopt;
  }

  /// max{ j < i : E[j] = E[i] + d }, with E[2n+1] taken as 0.
  [[nodiscard]] std::optional<pos> bwdsearch(pos i, exc d) const {
    const exc t = (i == length() + 1 ? 0 : e_.at(i)) + d;
    for (pos j = i; j-- > 0;) {
      if (e_[j] == t) return j;
    }
    return std::nullopt;
  }

  [[nodiscard]] pos rmq(pos i, pos j) const {
    pos best = i;
    for (pos x = i; x <= j; ++x) {
      if (e_[x] < e_[best]) best = x;
    }
    return best;
  }

  [[nodiscard]] pos rMq(pos i, pos j) const {
    pos best = i;
    for (pos x = i; x <= j; ++x) {
      if (e_[x] > e_[best]) best = x;
    }
    return best;
  }

  /// Zero for an empty range (i > j).
  [[nodiscard]] std::uint64_t mincount(pos i, pos j) const {
    if (i > j) return 0;
    const exc m = e_[rmq(i, j)];
    std::uint64_t c = 0;
    for (pos x = i; x <= j; ++x) c += e_[x] == m ? 1 : 0;
    return c;
  }

  [[nodiscard]] std::optional<pos> minselect(pos i, pos j, std::uint64_t q) const {
    if (i > j || q == 0) return std::nullopt;
    const exc m = e_[rmq(i, j)];
    for (pos x = i; x <= j; ++x) {
      if (e_[x] == m && --q == 0) return x;
    }
    return std::nullopt;
  }

  /// pattern: 0, 1, or 2 for "10" (counted by start position).
  [[nodiscard]] std::uint64_t rank(int pattern, pos i) const {
    std::uint64_t c = 0;
    for (pos x = 1; x <= i; ++x) c += matches(pattern, x) ? 1 : 0;
    return c;
  }

  [[nodiscard]] std::optional<pos> select(int pattern, std::uint64_t k) const {
    if (k == 0) return std::nullopt;
    for (pos x = 1; x <= length(); ++x) {
      if (matches(pattern, x) && --k == 0) return x;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::uint64_t count(int pattern) const { return rank(pattern, length()); }

 private:
  [[nodiscard]] bool matches(int pattern, pos x) const {
    switch (pattern) {
      case 0: return !b_[x - 1];
      case 1: return b_[x - 1];
      default: return b_[x - 1] && x < length() && !b_[x];
    }
  }

  std::vector<bool> b_;
  std::vector<exc> e_;
};

/// Explicit ordinal forest. Node ids are the positions of their '('.
class PointerTree {
 public:
  static constexpr std::uint32_t kNil = 0xFFFFFFFFu;

  struct Node {
    pos open = 0;
    pos close = 0;
    std::uint32_t parent = kNil;
    std::vector<std::uint32_t> children;
    std::uint64_t preorder = 0;   // 1-based
    std::uint64_t postorder = 0;  // 1-based
    std::uint64_t depth = 0;      // roots have depth 1
    std::uint64_t size = 0;
    std::uint64_t height = 0;
    std::uint32_t deepest = kNil;  // first deepest node of the subtree
  };

  explicit PointerTree(std::string_view parens) {
    std::vector<std::uint32_t> stack;
    pos p = 0;
    std::uint64_t post = 0;
    for (char c : parens) {
      if (c != '(' && c != ')') continue;
      ++p;
      if (c == '(') {
        const auto id = static_cast<std::uint32_t>(nodes_.size());
        Node n;
        n.open = p;
        n.preorder = id + 1;
        n.depth = stack.size() + 1;
        if (!stack.empty()) {
          n.parent = stack.back();
          nodes_[stack.back()].children.push_back(id);
        } else {
          roots_.push_back(id);
        }
        nodes_.push_back(n);
        stack.push_back(id);
        at_.push_back(id);
      } else {
        if (stack.empty()) throw std::invalid_argument("unbalanced parentheses");
        const std::uint32_t id = stack.back();
        stack.pop_back();
        Node& n = nodes_[id];
        n.close = p;
        n.postorder = ++post;
        n.size = 1;
        n.height = 0;
        n.deepest = id;
        for (std::uint32_t c2 : n.children) {
          const Node& ch = nodes_[c2];
          n.size += ch.size;
          if (ch.height + 1 > n.height) {
            n.height = ch.height + 1;
            n.deepest = ch.deepest;
          }
        }
        at_.push_back(id);
      }
    }
    if (!stack.empty()) throw std::invalid_argument("unbalanced parentheses");
    for (std::uint32_t id = 0; id < nodes_.size(); ++id) by_postorder_.resize(nodes_.size());
    for (std::uint32_t id = 0; id < nodes_.size(); ++id) by_postorder_[nodes_[id].postorder - 1] = id;
  }

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] const Node& node(std::uint32_t id) const { return nodes_.at(id); }
  [[nodiscard]] const std::vector<std::uint32_t>& roots() const noexcept { return roots_; }

  /// Node id owning the parenthesis at position p.
  [[nodiscard]] std::uint32_t owner(pos p) const { return at_.at(p - 1); }
  /// Node id whose '(' is at position i; throws if i holds ')'.
  [[nodiscard]] std::uint32_t id_of(pos i) const {
    const std::uint32_t id = owner(i);
    if (nodes_[id].open != i) throw std::invalid_argument("position is not an opening parenthesis");
    return id;
  }
  [[nodiscard]] pos at(std::uint32_t id) const { return nodes_.at(id).open; }
  [[nodiscard]] bool is_open(pos i) const { return nodes_[owner(i)].open == i; }

  /// BP re-serialization of the forest.
  [[nodiscard]] std::string to_parens() const {
    std::string s;
    for (std::uint32_t r : roots_) emit(r, s);
    return s;
  }

  [[nodiscard]] pos close(pos i) const { return nodes_[id_of(i)].close; }
  [[nodiscard]] pos open(pos i) const { return nodes_[owner(i)].open; }
  [[nodiscard]] std::optional<pos> parent(pos i) const {
    const Node& n = nodes_[id_of(i)];
    if (n.parent == kNil) return std::nullopt;
    return at(n.parent);
  }
  [[nodiscard]] bool isleaf(pos i) const { return nodes_[id_of(i)].children.empty(); }
  [[nodiscard]] bool isancestor(pos i, pos j) const {
    std::uint32_t a = id_of(i);
    for (std::uint32_t v = id_of(j); v != kNil; v = nodes_[v].parent) {
      if (v == a) return true;
    }
    return false;
  }
  [[nodiscard]] std::uint64_t depth(pos i) const { return nodes_[id_of(i)].depth; }
  [[nodiscard]] std::uint64_t subtree(pos i) const { return nodes_[id_of(i)].size; }
  [[nodiscard]] std::optional<pos> first_child(pos i) const {
    const Node& n = nodes_[id_of(i)];
    if (n.children.empty()) return std::nullopt;
    return at(n.children.front());
  }
  [[nodiscard]] std::optional<pos> last_child(pos i) const {
    const Node& n = nodes_[id_of(i)];
    if (n.children.empty()) return std::nullopt;
    return at(n.children.back());
  }
  [[nodiscard]] std::optional<pos> next_sibling(pos i) const { return sibling(i, +1); }
  [[nodiscard]] std::optional<pos> prev_sibling(pos i) const { return sibling(i, -1); }
  [[nodiscard]] std::uint64_t preorder(pos i) const { return nodes_[id_of(i)].preorder; }
  [[nodiscard]] pos preorderselect(std::uint64_t k) const { return at(static_cast<std::uint32_t>(k - 1)); }
  [[nodiscard]] std::uint64_t postorder(pos i) const { return nodes_[id_of(i)].postorder; }
  [[nodiscard]] pos postorderselect(std::uint64_t k) const { return at(by_postorder_.at(k - 1)); }

  [[nodiscard]] std::optional<pos> levelancestor(pos i, std::uint64_t d) const {
    std::uint32_t v = id_of(i);
    for (std::uint64_t s = 0; s < d; ++s) {
      v = nodes_[v].parent;
      if (v == kNil) return std::nullopt;
    }
    return at(v);
  }

  /// Next/previous node in preorder with the same depth, across trees.
  [[nodiscard]] std::optional<pos> levelnext(pos i) const {
    const std::uint32_t v = id_of(i);
    for (std::uint32_t u = v + 1; u < nodes_.size(); ++u) {
      if (nodes_[u].depth == nodes_[v].depth) return at(u);
    }
    return std::nullopt;
  }
  [[nodiscard]] std::optional<pos> levelprev(pos i) const {
    const std::uint32_t v = id_of(i);
    for (std::uint32_t u = v; u-- > 0;) {
      if (nodes_[u].depth == nodes_[v].depth) return at(u);
    }
    return std::nullopt;
  }
  [[nodiscard]] std::optional<pos> levelleftmost(std::uint64_t d) const {
    for (std::uint32_t u = 0; u < nodes_.size(); ++u) {
      if (nodes_[u].depth == d) return at(u);
    }
    return std::nullopt;
  }
  [[nodiscard]] std::optional<pos> levelrightmost(std::uint64_t d) const {
    for (std::uint32_t u = static_cast<std::uint32_t>(nodes_.size()); u-- > 0;) {
      if (nodes_[u].depth == d) return at(u);
    }
    return std::nullopt;
  }

  [[nodiscard]] std::optional<pos> lca(pos i, pos j) const {
    std::uint32_t a = id_of(i);
    std::uint32_t b = id_of(j);
    while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
    while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
    while (a != b) {
      a = nodes_[a].parent;
      b = nodes_[b].parent;
      if (a == kNil || b == kNil) return std::nullopt;
    }
    return at(a);
  }

  [[nodiscard]] pos deepestnode(pos i) const { return at(nodes_[id_of(i)].deepest); }
  [[nodiscard]] std::uint64_t height(pos i) const { return nodes_[id_of(i)].height; }
  [[nodiscard]] std::uint64_t degree(pos i) const { return nodes_[id_of(i)].children.size(); }
  [[nodiscard]] std::optional<pos> child(pos i, std::uint64_t q) const {
    const Node& n = nodes_[id_of(i)];
    if (q == 0 || q > n.children.size()) return std::nullopt;
    return at(n.children[q - 1]);
  }
  /// 1-based index among siblings (among roots for a root).
  [[nodiscard]] std::uint64_t childrank(pos i) const {
    const std::uint32_t v = id_of(i);
    const auto& list = nodes_[v].parent == kNil ? roots_ : nodes_[nodes_[v].parent].children;
    for (std::size_t q = 0; q < list.size(); ++q) {
      if (list[q] == v) return q + 1;
    }
    throw std::logic_error("node missing from its parent's child list");
  }

  /// Leaves whose '(' lies in [1, i]; i may be any position in [0, 2n].
  [[nodiscard]] std::uint64_t leafrank(pos i) const {
    std::uint64_t c = 0;
    for (const Node& n : nodes_) c += (n.children.empty() && n.open <= i) ? 1 : 0;
    return c;
  }
  [[nodiscard]] std::optional<pos> leafselect(std::uint64_t k) const {
    if (k == 0) return std::nullopt;
    for (const Node& n : nodes_) {
      if (n.children.empty() && --k == 0) return n.open;
    }
    return std::nullopt;
  }
  [[nodiscard]] std::uint64_t numleaves(pos i) const {
    const std::uint32_t v = id_of(i);
    std::uint64_t c = 0;
    for (std::uint32_t u = v; u < v + nodes_[v].size; ++u) c += nodes_[u].children.empty() ? 1 : 0;
    return c;
  }
  [[nodiscard]] pos leftmostleaf(pos i) const {
    std::uint32_t v = id_of(i);
    while (!nodes_[v].children.empty()) v = nodes_[v].children.front();
    return at(v);
  }
  [[nodiscard]] pos rightmostleaf(pos i) const {
    std::uint32_t v = id_of(i);
    while (!nodes_[v].children.empty()) v = nodes_[v].children.back();
    return at(v);
  }

 private:
  void emit(std::uint32_t v, std::string& s) const {
    s.push_back('(');
    for (std::uint32_t c : nodes_[v].children) emit(c, s);
    s.push_back(')');
  }

  [[nodiscard]] std::optional<pos> sibling(pos i, int dir) const {
    const std::uint32_t v = id_of(i);
    const auto& list = nodes_[v].parent == kNil ? roots_ : nodes_[nodes_[v].parent].children;
    for (std::size_t q = 0; q < list.size(); ++q) {
      if (list[q] != v) continue;
      if (dir > 0) return q + 1 < list.size() ? std::optional<pos>(at(list[q + 1])) : std::nullopt;
      return q > 0 ? std::optional<pos>(at(list[q - 1])) : std::nullopt;
    }
    return std::nullopt;
  }

  std::vector<Node> nodes_;  // in preorder
  std::vector<std::uint32_t> roots_;
  std::vector<std::uint32_t> at_;  // owner of each parenthesis
  std::vector<std::uint32_t> by_postorder_;
};

}  // namespace bpt::oracle
