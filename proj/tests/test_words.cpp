#include <doctest.h>

#include <random>
#include <set>

#include "tsg/errors.hpp"
#include "tsg/words.hpp"

using namespace tsg;

namespace {

const GroupSignature F23({2, 3});
const GroupSignature F2({2});

const char* kFixture =
    "y2_1 y2_3 z1_0^2 z1_1 z1_3 z2_4 z1_4 z2_8 z1_9 z1_12 z1_13^2 z1_16^-1 z2_15^-1 "
    "z1_12^-1 z2_12^-1 z1_10^-1 z1_8^-1 z2_2^-2 z1_2^-1 z1_0^-1 z2_0^-1 y2_0^-1";
const char* kFixtureNegative = "y2_0 z2_0 z1_0 z1_2 z2_2^2 z1_8 z1_10 z2_12 z1_12 z2_15 z1_16";

Word W(const char* s, const GroupSignature& sig = F23) { return parse_word(s, sig); }

bool map_equal(const Word& a, const Word& b, const GroupSignature& sig) {
  return word_map(a, sig) == word_map(b, sig);
}

std::size_t parse_error_at(const char* s) {
  try {
    parse_word(s, F23);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

Word random_word(std::mt19937& rng, const GroupSignature& sig, int length) {
  auto gens = finite_generators(sig);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::bernoulli_distribution flip;
  Word w;
  for (int i = 0; i < length; ++i) {
    Generator g = gens[pick(rng)];
    w.push_back(flip(rng) ? g : g.inverse());
  }
  return w;
}

// Carets with no edge on the rightmost root path.
std::size_t non_right_carets(const Tree& t, bool right = true) {
  if (t.is_leaf()) return 0;
  std::size_t n = right ? 0 : 1;
  for (std::size_t i = 0; i < t.children().size(); ++i)
    n += non_right_carets(t.child(i), right && i + 1 == t.children().size());
  return n;
}

}  // namespace

TEST_CASE("word grammar") {
  Word w = W("y2_1 z1_0^2 z2_3^-1");
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Generator{Family::Y, 2, 1, 1});
  CHECK(w[1] == Generator{Family::Z, 1, 0, 2});
  CHECK(w[2] == Generator{Family::Z, 2, 3, -1});
  CHECK(print_word(w) == "y2_1 z1_0^2 z2_3^-1");
  CHECK(W("").empty());
  CHECK(W("  ").empty());
  CHECK(W(kFixture).size() == 22);
  CHECK(print_word(W(kFixture)) == kFixture);
  CHECK(parse_error_at("z1_0^0") == 5);
  CHECK(parse_error_at("z3_0") == 1);
  CHECK(parse_error_at("z1_0 x") == 5);
  CHECK(parse_error_at("z1 0") == 2);
  CHECK(parse_error_at("z1_0z1_1") == 4);
  CHECK(parse_error_at("z1_") == 3);
  CHECK(parse_error_at("y2_0^") == 5);
}

TEST_CASE("normalize and inverse") {
  CHECK(normalize(W("z1_0 z1_0^-1")).empty());
  CHECK(print_word(normalize(W("z1_0 z1_0 y2_1 y2_1^-1 z1_0^-3"))) == "z1_0^-1");
  CHECK(print_word(inverse(W("y2_1 z1_0^2"))) == "z1_0^-2 y2_1^-1");
  CHECK(word_length(W("y2_1 z1_0^2 z2_3^-3")) == 6);
  for (const char* s : {"y2_1 z1_0^2 z2_3^-1", kFixture})
    CHECK(print_word(W(print_word(W(s)).c_str())) == print_word(normalize(W(s))));
}

TEST_CASE("generator diagrams") {
  auto z10 = generator_diagram({Family::Z, 1, 0, 1}, F2);
  CHECK(z10.str() == "[2 . [2 . .]] | [2 [2 . .] .]");
  CHECK(generator_diagram({Family::Y, 2, 0, 1}, F23).str() == "[2 . [2 . .]] | [3 . . .]");
  CHECK(generator_diagram({Family::Y, 1, 4, 1}, F23) == TreePair());
  CHECK(invert(generator_diagram({Family::Y, 2, 0, 1}, F23)) ==
        generator_diagram({Family::Y, 2, 0, -1}, F23));
  CHECK_THROWS_AS(generator_diagram({Family::Y, 2, 0, 1}, GroupSignature({3, 4})),
                  DivisibilityError);
  CHECK_THROWS_AS(generator_diagram({Family::Z, 1, 0, 2}, F23), std::invalid_argument);
  // the (z_1) letters of F(2) are the standard x_i: x_i x_j = x_j x_{i+1}... via maps
  CHECK(map_equal(W("z1_2 z1_0", F2), W("z1_0 z1_3", F2), F2));
  GroupSignature s235({2, 3, 5});
  for (int j = 1; j <= 3; ++j)
    for (long i = 0; i < 6; ++i)
      for (Family f : {Family::Y, Family::Z}) {
        if (f == Family::Y && j == 1) continue;
        TreePair d = generator_diagram({f, j, i, 1}, s235);
        CHECK(d.domain().leaf_count() == d.range().leaf_count());
        CHECK(right_vine(2, d.domain().caret_count()) == d.domain());
      }
}

TEST_CASE("evaluation") {
  CHECK(evaluate({}, F23).map.is_identity());
  CHECK(evaluate(W("z1_0 z1_0^-1"), F23).rep == TreePair());
  CHECK(evaluate(W("y2_0^2"), F23).leaf_count == 9);
  CHECK(evaluate(W("y2_0"), F23).leaf_count == 3);
  CHECK(evaluate(W("y1_3 z1_0"), F23).map == evaluate(W("z1_0"), F23).map);
  // leftmost letter outermost
  PLMap a = word_map(W("z1_0"), F23), b = word_map(W("y2_0"), F23);
  CHECK(word_map(W("z1_0 y2_0"), F23) == compose(a, b));
}

TEST_CASE("leaf exponent matrices") {
  for (Tree t : {Tree(), right_vine(2, 4), right_vine(3, 2)})
    for (const auto& m : leaf_exponent_matrices(t)) CHECK(m.empty());
  auto m = leaf_exponent_matrices(Tree::parse("[3 . . .]", F23));
  CHECK(m[0].empty());
  m = leaf_exponent_matrices(Tree::parse("[2 [3 [3 . . .] . .] .]", F23));
  CHECK(m[0] == LeafExponentMatrix{{3, 2}});
  CHECK(m[1].empty());
  m = leaf_exponent_matrices(Tree::parse("[2 [2 [3 . . .] .] .]", F23));
  CHECK(m[0] == LeafExponentMatrix{{2, 1}, {3, 1}});
}

TEST_CASE("worked normal form example") {
  NormalForm printed;
  for (const Generator& g : W(kFixture)) {
    if (g.exponent > 0 && g.family == Family::Y) printed.y_pos.push_back({g.j, g.i});
    if (g.exponent > 0 && g.family == Family::Z) printed.z_pos.push_back({g.j, g.i, g.exponent});
    if (g.exponent < 0 && g.family == Family::Z)
      printed.z_neg.insert(printed.z_neg.begin(), {g.j, g.i, -g.exponent});
    if (g.exponent < 0 && g.family == Family::Y)
      printed.y_neg.insert(printed.y_neg.begin(), {g.j, g.i});
  }
  CHECK(printed.str() == kFixture);
  CHECK(print_word(NormalForm{printed.y_neg, printed.z_neg, {}, {}}.word()) == kFixtureNegative);
  CHECK(check_normal_form(printed, F23).ok());

  // T_- is the tree whose positive normal form is the negative factor
  auto t_minus = positive_tree(printed.y_neg, printed.z_neg, F23);
  REQUIRE(t_minus);
  CHECK(t_minus->leaf_count() == 20);
  auto mats = leaf_exponent_matrices(*t_minus);
  CHECK(mats[0] == LeafExponentMatrix{{3, 1}, {2, 1}});
  CHECK(mats[1].empty());
  CHECK(mats[2] == LeafExponentMatrix{{2, 1}, {3, 2}});
  auto t_plus = positive_tree(printed.y_pos, printed.z_pos, F23);
  REQUIRE(t_plus);
  REQUIRE(t_plus->leaf_count() == 19);
  // a vine caret on the last leaf leaves the positive letters unchanged
  Tree padded = t_plus->graft(18, Tree::caret(2));
  CHECK(positive_normal_form(padded, F23) == positive_normal_form(*t_plus, F23));

  const PLMap w = word_map(W(kFixture), F23);
  TreePair diagram(*t_minus, padded);
  CHECK(to_map(diagram) == w);
  CanonicalElement x = evaluate(W(kFixture), F23);
  CHECK(x.leaf_count <= 20);
  NormalForm nf = normal_form(x, F23);
  CHECK(check_normal_form(nf, F23).ok());
  CHECK(word_map(parse_word(nf.str(), F23), F23) == w);
}

TEST_CASE("normal form on random words") {
  std::mt19937 rng(9);
  for (const auto& sig : {F23, GroupSignature({3, 5}), GroupSignature({2, 3, 5})}) {
    for (int t = 0; t < 40; ++t) {
      Word w = random_word(rng, sig, 1 + t % 4);
      CanonicalElement x = evaluate(w, sig);
      NormalForm nf = normal_form(x, sig);
      CHECK(check_normal_form(nf, sig).ok());
      CHECK(word_map(nf.word(), sig) == x.map);
      PositiveFactors pf = positive_factor(x, sig);
      CHECK(to_map(compose(pf.positive, invert(pf.negative), sig)) == x.map);
    }
  }
}

TEST_CASE("positive diagrams") {
  for (std::size_t l = 1; l <= 7; ++l)
    for (const Tree& t : enumerate_trees(l, F23)) {
      auto [ys, zs] = positive_normal_form(t, F23);
      Word w;
      for (const YLetter& y : ys) w.push_back({Family::Y, y.family, y.index, 1});
      for (const ZLetter& z : zs) w.push_back({Family::Z, z.family, z.index, z.power});
      CHECK(word_map(w, F23) == to_map(TreePair(right_vine(2, l - 1), t)));
      long zsum = 0;
      for (const ZLetter& z : zs) zsum += z.power;
      CHECK(zsum == static_cast<long>(non_right_carets(t)));
      CHECK(ys.size() <= right_spine(t).size());
      CHECK(zs.size() <= l);
      auto back = positive_tree(ys, zs, F23);
      REQUIRE(back);
      CHECK(back->leaf_count() <= t.leaf_count());
      CHECK(positive_normal_form(*back, F23) == std::make_pair(ys, zs));
    }
}

TEST_CASE("positive words may have non-vine minimal diagrams") {
  CanonicalElement x = evaluate(W("y2_0^2"), F23);
  CHECK(x.leaf_count == 9);
  CHECK(x.rep.domain() != right_vine(2, 8));
  CHECK_FALSE(normal_form(x, F23).z_neg.empty());
}

TEST_CASE("normal form checker") {
  NormalForm bad;
  bad.y_pos = {{2, 3}, {2, 3}};
  CHECK_FALSE(check_normal_form(bad, F23).ok());
  bad = {};
  bad.z_pos = {{1, 4, 1}, {1, 2, 1}};
  CHECK_FALSE(check_normal_form(bad, F23).ok());
  bad = {};
  bad.z_pos = {{1, 4, 1}, {1, 4, 2}};
  CHECK_FALSE(check_normal_form(bad, F23).ok());
  bad = {};
  bad.z_pos = {{1, 0, 2}, {1, 1, 1}};
  CHECK(check_normal_form(bad, F23).ok());
  bad.z_pos = {{1, 0, 0}};
  CHECK_FALSE(check_normal_form(bad, F23).ok());
  bad = {};
  bad.y_pos = {{1, 0}};
  CHECK_FALSE(check_normal_form(bad, F23).ok());
}

TEST_CASE("word problem on a small ball") {
  std::mt19937 rng(12);
  std::vector<Word> words;
  for (int t = 0; t < 60; ++t) words.push_back(random_word(rng, F23, 1 + t % 3));
  words.push_back(W("z1_0 z1_0^-1"));
  words.push_back({});
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a; b < words.size(); ++b) {
      auto x = evaluate(words[a], F23), y = evaluate(words[b], F23);
      CHECK((normal_form(x, F23) == normal_form(y, F23)) == (x.map == y.map));
    }
}

TEST_CASE("relator instances") {
  CHECK(map_equal(W("z1_0 z2_0 z2_3"), W("z2_0 z1_0 z1_2 z1_4"), F23));
  CHECK(map_equal(W("y2_2 z1_0"), W("z1_0 y2_3"), F23));
  // the y_1 convention drops letters
  CHECK(map_equal(W("y1_2 z1_0 y1_0"), W("z1_0"), F23));
  for (const auto& sig : {F23, GroupSignature({3, 5}), GroupSignature({2, 3, 5})})
    for (bool finite : {false, true}) {
      auto rels = relators(sig, finite);
      CHECK_FALSE(rels.empty());
      std::set<std::string> families;
      for (const Relator& r : rels) {
        families.insert(r.family);
        CHECK_MESSAGE(map_equal(r.lhs, r.rhs, sig),
                      r.family << ": " << print_word(r.lhs) << " = " << print_word(r.rhs));
      }
      CHECK(families.size() >= 3);
    }
}

TEST_CASE("finite generating set") {
  auto x = finite_generators(F23);
  CHECK(x.size() == 8);
  CHECK(finite_generators(GroupSignature({2, 3, 5})).size() == 3 + 5 + 2 + 3 + 5);
  for (const Generator& g : x) CHECK(g.exponent == 1);
}
