// Exact minimal diagrams and the unique minimal representative.
#pragma once

#include <cstddef>
#include <vector>

#include "tsg/diagram.hpp"
#include "tsg/plmap.hpp"
#include "tsg/signature.hpp"

namespace tsg {

struct CanonicalElement {
  PLMap map;
  TreePair rep;
  std::size_t leaf_count = 1;
  int depth = 0;

  friend bool operator==(const CanonicalElement&, const CanonicalElement&) = default;
};

/// Leaf partitions (interior breakpoints of the domain tree) of every
/// minimal diagram of f, in increasing order.
std::vector<std::vector<Rational>> minimal_partitions(const PLMap& f,
                                                      const GroupSignature& sig);

/// Every minimal diagram of f. Each domain partition contributes all trees
/// realizing it, paired with all range trees realizing its image.
std::vector<TreePair> minimal_diagrams(const PLMap& f, const GroupSignature& sig);

std::size_t minimal_leaf_count(const PLMap& f, const GroupSignature& sig);

/// Caret types in level order, domain then range. Diagrams whose type
/// sequences agree are separated by their level-order shapes, so the order
/// is total on structurally distinct diagrams.
struct CaretOrderKey {
  std::vector<int> domain_types;
  std::vector<int> domain_shape;
  std::vector<int> range_types;
  std::vector<int> range_shape;

  friend bool operator==(const CaretOrderKey&, const CaretOrderKey&) = default;
  friend auto operator<=>(const CaretOrderKey&, const CaretOrderKey&) = default;
};

CaretOrderKey caret_order_key(const TreePair& d);

CanonicalElement canonicalize(const PLMap& f, const GroupSignature& sig);
CanonicalElement canonicalize(const TreePair& x, const GroupSignature& sig);

/// Realizations of a partition of [0, 1] (interior points, increasing) as a
/// tree. smallest_realization picks the smallest arity at every node in level
/// order, which minimizes the level-order type sequence.
std::optional<Tree> smallest_realization(const std::vector<Rational>& points,
                                         const GroupSignature& sig);
std::vector<Tree> all_realizations(const std::vector<Rational>& points,
                                   const GroupSignature& sig);

struct MoveSearchResult {
  bool reached = false;
  std::size_t states = 0;
  std::size_t max_leaves = 0;  // largest diagram on the path found
};

/// Breadth-first search from x over exposed-pair cancellation, exposed-pair
/// addition and subtree substitution, never exceeding L(x) + budget leaves.
/// Succeeds when the canonical representative of x is reached.
MoveSearchResult move_search(const TreePair& x, std::size_t budget,
                             const GroupSignature& sig);
bool move_closure_check(const TreePair& x, std::size_t budget, const GroupSignature& sig);

}  // namespace tsg
