// Word-metric bounds over the finite generating set, and a BFS oracle.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsg/minimizer.hpp"
#include "tsg/plmap.hpp"
#include "tsg/signature.hpp"
#include "tsg/words.hpp"

namespace tsg {

struct MetricConstants {
  long b = 1;  // (n_k - 1) / (n_1 - 1)
  long B = 1;  // n_k * n_1^b
  long a = 1;  // n_k + n_1
  long c = 5;
  long d = 10;

  // Measured on X and its inverses. a and b alone presume L(g) <= a - 1
  // and D(g) <= b + 1, which fails for the larger subscripts of X:
  // (z_2)_2 in F(2,3) has 6 leaves and depth 5.
  long leaf_max = 1;    // max L(g)
  long depth_max = 0;   // max D(g)
  long growth = 1;      // max leaves of the balanced tree covering g's range valences

  /// Requires divisibility.
  static MetricConstants of(const GroupSignature& sig);

  long chain_a() const { return std::max(a, leaf_max); }
  long chain_B() const { return std::max(B, growth); }
  long depth_factor() const { return std::max(b + 2, depth_max); }
};

/// 0 for the identity, else the least n + 1 with A * G^n >= L(x), where
/// A and G are a and B raised to the measured generator values.
std::size_t lower_bound(const CanonicalElement& x, const GroupSignature& sig);
/// The same chain with a and B unmodified. Can exceed |x|_X.
std::size_t nominal_lower_bound(const CanonicalElement& x, const GroupSignature& sig);

/// The normal form rewritten over X: every letter whose subscript is too
/// large for X is conjugated down by powers of (z_1)_0, then the word is
/// freely reduced.
Word to_finite_word(const CanonicalElement& x, const GroupSignature& sig);

/// Sphere-by-sphere BFS of the Cayley graph over X and its inverses, keyed
/// by the map.
class CayleyBall {
 public:
  CayleyBall(const GroupSignature& sig, int radius);

  int radius() const { return radius_; }
  std::size_t size() const { return length_.size(); }
  /// Elements at distance exactly r, in discovery order.
  const std::vector<PLMap>& sphere(int r) const { return spheres_[r]; }
  std::optional<int> length(const PLMap& f) const;

 private:
  int radius_;
  std::vector<std::vector<PLMap>> spheres_;
  std::unordered_map<PLMap, int, PLMapHash> length_;
};

/// Exact |x|_X when at most maxRadius.
std::optional<int> bfs_length(const CanonicalElement& x, int maxRadius,
                              const GroupSignature& sig);

struct GrowthRow {
  int n = 0;
  std::size_t leaves = 0;
  std::size_t lower_bound = 0;
  std::size_t finite_word_length = 0;
  std::optional<int> bfs_length;
  bool matches_law = false;       // leaves == n_j^n
  bool domain_n1_ary = false;     // domain tree uses only n_1-carets
  bool range_balanced = false;    // range tree is the balanced n_j-ary tree
};

/// Rows for (y_j)_0^n, n = 1..nMax. bfs_length is filled for n <= bfsRadius.
std::vector<GrowthRow> growth_experiment(int j, int nMax, const GroupSignature& sig,
                                         int bfsRadius = 0);
/// Header "n,leaves,lower_bound,finite_word_length,bfs_length"; unknown
/// lengths are left empty.
std::string growth_csv(const std::vector<GrowthRow>& rows);

using LeafCount = std::function<std::size_t(const PLMap&)>;

/// D(x) <= depth_factor * length, and L(xg) <= chain_B * L(x) for every g in
/// X and its inverses. leaves defaults to minimal_leaf_count.
bool depth_bound_check(const CanonicalElement& x, std::size_t length,
                       const GroupSignature& sig, const LeafCount& leaves = {});

}  // namespace tsg
