// Tree-pair diagrams as group elements.
#pragma once

#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tsg/plmap.hpp"
#include "tsg/signature.hpp"
#include "tsg/tree.hpp"

namespace tsg {

/// (T_-, T_+): leaf interval i of the domain maps linearly onto leaf
/// interval i of the range.
class TreePair {
 public:
  TreePair() = default;  // (Leaf, Leaf)
  /// Throws std::invalid_argument on a leaf-count mismatch.
  TreePair(Tree domain, Tree range);

  /// "<domain> | <range>".
  static TreePair parse(std::string_view text, const GroupSignature& sig);
  std::string str() const;

  const Tree& domain() const { return domain_; }
  const Tree& range() const { return range_; }
  std::size_t leaf_count() const { return domain_.leaf_count(); }

  friend bool operator==(const TreePair&, const TreePair&) = default;

 private:
  Tree domain_;
  Tree range_;
};

std::ostream& operator<<(std::ostream& os, const TreePair& d);

PLMap to_map(const TreePair& d);

/// Common-refinement construction on a uniform grid, then exposed-pair
/// reduction. Throws DomainRejection when f is not in the group.
TreePair from_map(const PLMap& f, const GroupSignature& sig);

struct CommonSubdivision {
  Tree t;        // t extended by grafts at its leaves
  Tree s;        // s extended by grafts at its leaves
  Tree witness;  // equivalent to both, built from balanced blocks
  std::vector<Tree> t_grafts;  // per leaf of the original t
  std::vector<Tree> s_grafts;  // per leaf of the original s
};

CommonSubdivision common_subdivision(const Tree& t, const Tree& s,
                                     const GroupSignature& sig);

/// x o y.
TreePair compose(const TreePair& x, const TreePair& y, const GroupSignature& sig);
TreePair invert(const TreePair& x);
bool is_identity(const TreePair& x, const GroupSignature& sig);
TreePair cancel_exposed_pairs(const TreePair& x);

/// Exposed carets of t as (index of first leaf, arity, path).
struct ExposedCaret {
  std::size_t first_leaf = 0;
  int arity = 0;
  TreePath path;
};
std::vector<ExposedCaret> exposed_carets(const Tree& t);

}  // namespace tsg
