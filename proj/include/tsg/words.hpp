// Generators, words, leaf exponent matrices, normal forms and relators.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsg/diagram.hpp"
#include "tsg/minimizer.hpp"
#include "tsg/plmap.hpp"
#include "tsg/signature.hpp"

namespace tsg {

enum class Family { Y, Z };

/// (y_j)_i^e or (z_j)_i^e with j 1-based into the signature. (y_1)_i is the
/// identity.
struct Generator {
  Family family = Family::Z;
  int j = 1;
  long i = 0;
  int exponent = 1;

  bool same_letter(const Generator& o) const {
    return family == o.family && j == o.j && i == o.i;
  }
  Generator inverse() const { return {family, j, i, -exponent}; }
  std::string str() const;

  friend bool operator==(const Generator&, const Generator&) = default;
};

using Word = std::vector<Generator>;

/// Tokens "y<j>_<i>" / "z<j>_<i>" with optional "^<e>", separated by
/// whitespace. Throws ParseError carrying the offending offset.
Word parse_word(std::string_view text, const GroupSignature& sig);
std::string print_word(const Word& w);
/// Merges adjacent equal letters and drops zero exponents (free reduction).
Word normalize(const Word& w);
Word inverse(const Word& w);
/// Sum of |exponent|.
std::size_t word_length(const Word& w);

/// Diagram of the letter with exponent +-1 (other exponents are rejected
/// with std::invalid_argument). Throws DivisibilityError for families j >= 2
/// without divisibility.
TreePair generator_diagram(const Generator& g, const GroupSignature& sig);

/// The map of a word, leftmost letter outermost.
PLMap word_map(const Word& w, const GroupSignature& sig);
CanonicalElement evaluate(const Word& w, const GroupSignature& sig);

/// One column of a leaf exponent matrix.
struct ExponentColumn {
  int caret_type = 0;  // arity
  int run = 0;
  friend bool operator==(const ExponentColumn&, const ExponentColumn&) = default;
};
using LeafExponentMatrix = std::vector<ExponentColumn>;

std::vector<LeafExponentMatrix> leaf_exponent_matrices(const Tree& t);

/// Carets on the rightmost root path, top to bottom.
std::vector<Tree> right_spine(const Tree& t);

struct PositiveFactors {
  TreePair positive;  // (vine, T_+)
  TreePair negative;  // (vine, T_-); x = positive o negative^-1
};
PositiveFactors positive_factor(const CanonicalElement& x, const GroupSignature& sig);

struct YLetter {
  int family = 2;  // 1-based
  long index = 0;
  friend bool operator==(const YLetter&, const YLetter&) = default;
};
struct ZLetter {
  int family = 1;
  long index = 0;
  int power = 1;
  friend bool operator==(const ZLetter&, const ZLetter&) = default;
};

/// P N^{-1} with P = y_pos z_pos and N = y_neg z_neg both positive words
/// read off the two trees of the canonical representative. The negative
/// lists are stored in N's own (positive) order.
struct NormalForm {
  std::vector<YLetter> y_pos;
  std::vector<ZLetter> z_pos;
  std::vector<ZLetter> z_neg;
  std::vector<YLetter> y_neg;

  Word word() const;
  std::string str() const { return print_word(word()); }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Positive word (y part, z part) of the diagram (vine, t).
std::pair<std::vector<YLetter>, std::vector<ZLetter>> positive_normal_form(
    const Tree& t, const GroupSignature& sig);

NormalForm normal_form(const CanonicalElement& x, const GroupSignature& sig);

/// The tree T with positive_normal_form(T) equal to the given letters, or
/// nullopt when no tree of at most max_leaves leaves has them. (vine, T)
/// represents the positive word the letters spell.
std::optional<Tree> positive_tree(const std::vector<YLetter>& ys,
                                  const std::vector<ZLetter>& zs,
                                  const GroupSignature& sig, std::size_t max_leaves = 64);

struct NormalFormReport {
  std::vector<std::string> violations;
  /// Last positive z index equals last negative z index (reported only).
  bool alpha_meets_gamma = false;
  bool ok() const { return violations.empty(); }
};
NormalFormReport check_normal_form(const NormalForm& nf, const GroupSignature& sig);

struct Relator {
  std::string family;  // e.g. "infinite-1z", "finite-3a"
  Word lhs;
  Word rhs;
};

/// Instances of the presentation's relation families. Infinite families
/// range over free indices 0..2*n_k.
std::vector<Relator> relators(const GroupSignature& sig, bool finite);

/// The finite generating set X, exponents +1.
std::vector<Generator> finite_generators(const GroupSignature& sig);

}  // namespace tsg
