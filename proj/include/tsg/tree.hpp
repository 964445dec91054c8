// Rooted ordered trees of mixed-arity carets and their subdivision
// semantics.
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsg/rational.hpp"
#include "tsg/signature.hpp"

namespace tsg {

/// Child-index path from the root; empty addresses the root.
using TreePath = std::vector<int>;

/// Immutable tree value. Copies share structure.
class Tree {
 public:
  Tree();  // a single leaf

  static Tree leaf() { return Tree(); }
  static Tree caret(int arity);
  static Tree caret(int arity, std::vector<Tree> children);

  /// Grammar: leaf = "."; caret = "[a c_1 ... c_a]". Arities outside the
  /// signature are rejected with ParseError.
  static Tree parse(std::string_view text, const GroupSignature& sig);
  /// Parses a tree starting at text[pos], advancing pos past it.
  static Tree parse_prefix(std::string_view text, std::size_t& pos,
                           const GroupSignature& sig);

  bool is_leaf() const { return node_->arity == 0; }
  int arity() const { return node_->arity; }
  const std::vector<Tree>& children() const { return node_->children; }
  const Tree& child(std::size_t i) const { return node_->children[i]; }

  std::size_t leaf_count() const { return node_->leaves; }
  std::size_t caret_count() const { return node_->carets; }
  /// Carets on the longest root-to-leaf path.
  int depth() const { return node_->depth; }

  const Tree& at(const TreePath& path) const;
  Tree replace(const TreePath& path, const Tree& subtree) const;
  /// Replaces leaf number leaf_index by subtree.
  Tree graft(std::size_t leaf_index, const Tree& subtree) const;
  /// Grafts grafts[i] onto leaf i for every leaf.
  Tree graft_all(const std::vector<Tree>& grafts) const;

  /// Caret arities in level order (top to bottom, left to right).
  std::vector<int> level_order_types() const;
  /// Full structural encoding in level order: arity for carets, 0 for
  /// leaves.
  std::vector<int> level_order_shape() const;

  std::string str() const;
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Tree& a, const Tree& b);

 private:
  struct Node {
    int arity = 0;
    std::vector<Tree> children;
    std::size_t leaves = 1;
    std::size_t carets = 0;
    int depth = 0;
    std::size_t hash = 0;
  };
  explicit Tree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TreeHash {
  std::size_t operator()(const Tree& t) const { return t.hash(); }
};

std::ostream& operator<<(std::ostream& os, const Tree& t);

/// Closed subinterval [lo, hi] of [0, 1].
struct Interval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Per-arity caret counts along a leaf path, indexed like the signature.
struct ValenceVector {
  std::vector<int> counts;
  friend bool operator==(const ValenceVector&, const ValenceVector&) = default;
  friend auto operator<=>(const ValenceVector&, const ValenceVector&) = default;
};

/// A single subtree substitution: the p-caret-over-q-carets block rooted at
/// path becomes the q-caret-over-p-carets block.
struct SubstitutionMove {
  TreePath path;
  int from_arity = 0;
  int to_arity = 0;
  friend bool operator==(const SubstitutionMove&, const SubstitutionMove&) = default;
};

/// Leaf intervals left to right.
std::vector<Interval> subdivision(const Tree& t);
/// Leaf endpoints 0 = x_0 < ... < x_L = 1.
std::vector<Rational> subdivision_points(const Tree& t);

std::vector<ValenceVector> valences(const Tree& t, const GroupSignature& sig);

/// Same leaf count and leafwise equal valences, i.e. same subdivision.
bool trees_equivalent(const Tree& t, const Tree& s, const GroupSignature& sig);

/// Throws PatternMismatch unless path roots a p-caret whose children are all
/// q-carets. Grandchild subtrees keep their left-to-right order.
Tree substitute(const Tree& t, const TreePath& path, int p, int q);
Tree apply_move(const Tree& t, const SubstitutionMove& move);

/// Equivalent tree with an m-ary root, or nullopt when some leaf has
/// m-valence zero. Moves used are appended to moves when provided.
std::optional<Tree> retype_root(const Tree& t, int m, const GroupSignature& sig,
                                std::vector<SubstitutionMove>* moves = nullptr);

/// Substitution moves carrying t to s, or nullopt when inequivalent.
std::optional<std::vector<SubstitutionMove>> transform_sequence(
    const Tree& t, const Tree& s, const GroupSignature& sig);

/// Rows of uniform caret type, n_1 rows first; every leaf has valence v.
Tree balanced_tree(const ValenceVector& v, const GroupSignature& sig);

/// Right vine of n-carets: each caret hangs off the last child of the
/// previous one.
Tree right_vine(int arity, std::size_t carets);

/// Every tree with exactly leaves leaves, each once: root arity ascending,
/// then child leaf-count compositions lexicographically.
std::vector<Tree> enumerate_trees(std::size_t leaves, const GroupSignature& sig);
void for_each_tree(std::size_t leaves, const GroupSignature& sig,
                   const std::function<void(const Tree&)>& visit);

}  // namespace tsg
