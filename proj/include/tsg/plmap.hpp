// Exact piecewise-linear homeomorphisms of [0, 1].
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tsg/rational.hpp"
#include "tsg/signature.hpp"

namespace tsg {

/// Breakpoint pairs (x_i, y_i) with 0 = x_0 < ... < x_m = 1 and likewise
/// for y. Values built through the public constructors are canonical: no
/// interior breakpoint joins two segments of equal slope. Equality of
/// canonical maps is element equality.
class PLMap {
 public:
  PLMap();  // identity

  /// Validates monotonicity and endpoints, then canonicalizes. Throws
  /// std::invalid_argument on malformed input.
  PLMap(std::vector<Rational> xs, std::vector<Rational> ys);

  /// "x0,y0;x1,y1;..." in lowest terms.
  static PLMap parse(std::string_view text);
  std::string str() const;

  const std::vector<Rational>& xs() const { return xs_; }
  const std::vector<Rational>& ys() const { return ys_; }
  std::size_t pieces() const { return xs_.size() - 1; }

  bool is_identity() const { return xs_.size() == 2; }

  Rational operator()(const Rational& x) const;
  /// Preimage of y.
  Rational inverse_at(const Rational& y) const;
  /// Slope of the piece containing x (right-hand slope at breakpoints).
  Rational slope_at(const Rational& x) const;
  std::vector<Rational> slopes() const;

  /// True iff no breakpoint lies strictly inside (lo, hi).
  bool affine_on(const Rational& lo, const Rational& hi) const;

  PLMap inverse() const;

  /// Checks breakpoints in Z[1/(n_1...n_k)] and slopes in <n_1,...,n_k>.
  bool belongs_to(const GroupSignature& sig) const;

  std::size_t hash() const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  void canonicalize();

  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

/// (f o g)(x) = f(g(x)).
PLMap compose(const PLMap& f, const PLMap& g);

struct PLMapHash {
  std::size_t operator()(const PLMap& f) const { return f.hash(); }
};

}  // namespace tsg
