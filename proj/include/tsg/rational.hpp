// Exact rationals for breakpoints and slope bookkeeping.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsg {

class GroupSignature;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(mpq_class v) : value_(std::move(v)) {
    value_.canonicalize();
  }
  Rational(const mpz_class& n, const mpz_class& d);

  /// Parses "p/q" or "p"; throws std::invalid_argument on malformed input
  /// or a zero denominator.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  std::string str() const;

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct RationalHash {
  std::size_t operator()(const Rational& r) const { return r.hash(); }
};

/// Exponent vector e with slope n_1^{e_1} ... n_k^{e_k}.
struct SlopeExponent {
  std::vector<int> exponents;

  friend bool operator==(const SlopeExponent&, const SlopeExponent&) = default;
  friend auto operator<=>(const SlopeExponent&, const SlopeExponent&) = default;

  SlopeExponent& operator+=(const SlopeExponent& o);
  friend SlopeExponent operator+(SlopeExponent a, const SlopeExponent& b) {
    return a += b;
  }
  SlopeExponent operator-() const;

  Rational value(const GroupSignature& sig) const;
};

/// n^e as an exact rational (e may be negative).
Rational power(long n, int e);

/// Decomposes a positive rational as a product of signature arities.
/// Multiplicatively dependent arities resolve to the lexicographically
/// smallest vector with every |e_j| <= 64.
std::optional<SlopeExponent> slope_decompose(const Rational& r,
                                             const GroupSignature& sig);

/// Like slope_decompose, but minimizes sum |e_j| first (ties broken
/// lexicographically). Agrees with slope_decompose for independent arities.
std::optional<SlopeExponent> shortest_slope_decomposition(const Rational& r,
                                                          const GroupSignature& sig);

/// True iff the denominator divides a power of n_1 ... n_k.
bool in_base_ring(const Rational& r, const GroupSignature& sig);

}  // namespace tsg
