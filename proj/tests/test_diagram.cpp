#include <doctest.h>

#include <random>

#include "tsg/diagram.hpp"
#include "tsg/errors.hpp"

using namespace tsg;

namespace {

const GroupSignature F23({2, 3});
const GroupSignature F2({2});

Tree T(const char* s, const GroupSignature& sig = F23) { return Tree::parse(s, sig); }
TreePair D(const char* s, const GroupSignature& sig = F23) { return TreePair::parse(s, sig); }

const char* kIden = "[2 [3 . . .] [3 . . .]] | [3 [2 . .] [2 . .] [2 . .]]";

// Evaluates a diagram at x straight from the two subdivisions.
Rational apply(const TreePair& d, const Rational& x) {
  auto dom = subdivision(d.domain());
  auto ran = subdivision(d.range());
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (x <= dom[i].hi)
      return ran[i].lo + (x - dom[i].lo) * ran[i].length() / dom[i].length();
  return 1;
}

std::vector<Rational> probes(std::mt19937& rng) {
  std::vector<Rational> out{0, 1};
  std::uniform_int_distribution<long> k(0, 6 * 6 * 6 * 36);
  for (int i = 0; i < 24; ++i) out.push_back(Rational(k(rng), 6 * 6 * 6 * 36));
  return out;
}

TreePair random_pair(std::mt19937& rng, std::size_t max_leaves) {
  static std::vector<std::vector<Tree>> pool;
  if (pool.empty())
    for (std::size_t l = 0; l <= 7; ++l)
      pool.push_back(l ? enumerate_trees(l, F23) : std::vector<Tree>{});
  std::uniform_int_distribution<std::size_t> leaves(1, max_leaves);
  const auto& p = pool[leaves(rng)];
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  return TreePair(p[pick(rng)], p[pick(rng)]);
}

}  // namespace

TEST_CASE("diagram text") {
  CHECK(D(kIden).str() == kIden);
  CHECK(TreePair().str() == ". | .");
  CHECK_THROWS_AS(D("[2 . .] | [3 . . .]"), std::invalid_argument);
  CHECK_THROWS_AS(D("[2 . .] [2 . .]"), ParseError);
  CHECK_THROWS_AS(D("[2 . .] | [2 . .] x"), ParseError);
}

TEST_CASE("plmap basics") {
  PLMap id;
  CHECK(id.is_identity());
  CHECK(id.str() == "0,0;1,1");
  PLMap f = PLMap::parse("0,0;1/2,1/4;3/4,1/2;1,1");
  CHECK(f(Rational(1, 4)) == Rational(1, 8));
  CHECK(f.inverse_at(Rational(1, 8)) == Rational(1, 4));
  CHECK(f.slope_at(Rational(1, 2)) == Rational(1));
  CHECK(f.slope_at(Rational(9, 10)) == Rational(2));
  CHECK(f.slopes() == std::vector<Rational>{Rational(1, 2), 1, 2});
  CHECK(f.affine_on(Rational(1, 2), Rational(3, 4)));
  CHECK_FALSE(f.affine_on(0, Rational(3, 4)));
  CHECK(compose(f, f.inverse()).is_identity());
  CHECK(f.belongs_to(F2));
  // collinear points disappear
  CHECK(PLMap::parse("0,0;1/2,1/2;1,1").is_identity());
  CHECK(PLMap::parse("0,0;1/5,1/5;1,1").is_identity());
  CHECK_FALSE(PLMap::parse("0,0;1/5,1/4;1,1").belongs_to(F23));
  CHECK_FALSE(PLMap::parse("0,0;1/2,1/5;1,1").belongs_to(F23));
  CHECK_THROWS_AS(PLMap::parse("0,0;1/2,1/2;1/2,3/4;1,1"), std::invalid_argument);
  CHECK_THROWS_AS(PLMap::parse("0,0;1,2"), std::invalid_argument);
  CHECK_THROWS_AS(PLMap::parse("0,0;1/2,3/4;3/4,1/2;1,1"), std::invalid_argument);
}

TEST_CASE("to_map") {
  CHECK(to_map(TreePair()).is_identity());
  CHECK(to_map(D(kIden)).is_identity());
  PLMap z = to_map(D("[2 . [2 . .]] | [2 [2 . .] .]", F2));
  CHECK(z.str() == "0,0;1/2,1/4;3/4,1/2;1,1");
  std::mt19937 rng(1);
  for (int t = 0; t < 300; ++t) {
    TreePair d = random_pair(rng, 7);
    PLMap f = to_map(d);
    for (const Rational& x : probes(rng)) CHECK(f(x) == apply(d, x));
    CHECK(f.belongs_to(F23));
  }
}

TEST_CASE("from_map") {
  CHECK(from_map(PLMap(), F23) == TreePair());
  CHECK_THROWS_AS(from_map(PLMap::parse("0,0;1/5,1/4;1,1"), F23), DomainRejection);
  CHECK_THROWS_AS(from_map(PLMap::parse("0,0;1/2,1/5;1,1"), F23), DomainRejection);
  std::mt19937 rng(2);
  for (int t = 0; t < 300; ++t) {
    TreePair d = random_pair(rng, 7);
    TreePair e = from_map(to_map(d), F23);
    CHECK(to_map(e) == to_map(d));
  }
  GroupSignature s35({3, 5});
  PLMap f = to_map(D("[3 . . [5 . . . . .]] | [5 . . . [3 . . .] .]", s35));
  CHECK(to_map(from_map(f, s35)) == f);
}

TEST_CASE("common subdivision") {
  Tree s = T("[3 . [2 . .] .]");
  auto c = common_subdivision(Tree(), s, F23);
  CHECK(c.t == s);
  CHECK(c.s == s);
  CHECK(c.witness == s);
  Tree t = T("[2 [3 . . .] .]");
  c = common_subdivision(t, t, F23);
  CHECK(c.t == t);
  CHECK(c.s == t);
  CHECK(c.witness == t);
  c = common_subdivision(T("[2 . .]"), T("[3 . . .]"), F23);
  CHECK(c.t.leaf_count() == 6);
  CHECK(c.s.leaf_count() == 6);
  CHECK(trees_equivalent(c.witness, balanced_tree({{1, 1}}, F23), F23));
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    TreePair p = random_pair(rng, 7);
    TreePair q = random_pair(rng, 7);
    c = common_subdivision(p.domain(), q.range(), F23);
    CHECK(trees_equivalent(c.t, c.s, F23));
    CHECK(trees_equivalent(c.t, c.witness, F23));
    CHECK(p.domain().graft_all(c.t_grafts) == c.t);
    CHECK(q.range().graft_all(c.s_grafts) == c.s);
  }
}

TEST_CASE("composition") {
  TreePair y2 = D("[2 . [2 . .]] | [3 . . .]");
  TreePair z1 = D("[2 . [2 . .]] | [2 [2 . .] .]");
  TreePair prod = compose(invert(y2), z1, F23);
  CHECK(to_map(prod) == compose(to_map(y2).inverse(), to_map(z1)));
  std::mt19937 rng(4);
  for (int t = 0; t < 300; ++t) {
    TreePair x = random_pair(rng, 6), y = random_pair(rng, 6), z = random_pair(rng, 6);
    TreePair xy = compose(x, y, F23);
    for (const Rational& p : probes(rng)) CHECK(apply(xy, p) == apply(x, apply(y, p)));
    CHECK(to_map(compose(xy, z, F23)) == to_map(compose(x, compose(y, z, F23), F23)));
    CHECK(is_identity(compose(x, invert(x), F23), F23));
    CHECK(to_map(compose(x, TreePair(), F23)) == to_map(x));
    CHECK(to_map(compose(TreePair(), x, F23)) == to_map(x));
  }
}

TEST_CASE("inversion and identity") {
  TreePair y2 = D("[2 . [2 . .]] | [3 . . .]");
  CHECK(invert(TreePair()) == TreePair());
  CHECK(invert(invert(y2)) == y2);
  CHECK(compose(to_map(invert(y2)), to_map(y2)).is_identity());
  CHECK(is_identity(TreePair(), F23));
  CHECK(is_identity(D(kIden), F23));
  CHECK_FALSE(is_identity(D("[2 . [2 . .]] | [2 [2 . .] .]"), F23));
  std::mt19937 rng(5);
  for (int t = 0; t < 500; ++t) {
    TreePair x = random_pair(rng, 6);
    CHECK(is_identity(x, F23) == to_map(x).is_identity());
  }
}

TEST_CASE("exposed caret pairs") {
  CHECK(cancel_exposed_pairs(D("[2 . .] | [2 . .]")) == TreePair());
  CHECK(cancel_exposed_pairs(D(kIden)) == D(kIden));
  TreePair y2 = D("[2 . [2 . .]] | [3 . . .]");
  CHECK(cancel_exposed_pairs(y2) == y2);
  // (2,3) grafted on the same leaf of both trees of y2
  TreePair grown(y2.domain().graft(1, T("[3 . . .]")), y2.range().graft(1, T("[3 . . .]")));
  CHECK(cancel_exposed_pairs(grown) == y2);
  auto ex = exposed_carets(T("[2 [2 . .] [3 . . .]]"));
  REQUIRE(ex.size() == 2);
  CHECK(ex[0].first_leaf == 0);
  CHECK(ex[0].arity == 2);
  CHECK(ex[1].first_leaf == 2);
  CHECK(ex[1].path == TreePath{1});
  std::mt19937 rng(6);
  for (int t = 0; t < 300; ++t) {
    TreePair x = random_pair(rng, 7);
    TreePair r = cancel_exposed_pairs(x);
    CHECK(to_map(r) == to_map(x));
    CHECK(r.leaf_count() <= x.leaf_count());
  }
}
