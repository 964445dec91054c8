#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "tsg/metric.hpp"
#include "tsg/minimizer.hpp"
#include "tsg/words.hpp"

using namespace tsg;

namespace {

const GroupSignature F23({2, 3});

TreePair D(const char* s) { return TreePair::parse(s, F23); }

const char* kIden = "[2 [3 . . .] [3 . . .]] | [3 [2 . .] [2 . .] [2 . .]]";

// All trees up to 9 leaves, indexed by leaf count and by their breakpoints.
struct TreeIndex {
  std::vector<std::vector<Tree>> by_leaves;
  std::map<std::vector<Rational>, std::vector<Tree>> by_points;

  TreeIndex() {
    by_leaves.resize(10);
    for (std::size_t l = 1; l <= 9; ++l) {
      by_leaves[l] = enumerate_trees(l, F23);
      for (const Tree& t : by_leaves[l]) by_points[subdivision_points(t)].push_back(t);
    }
  }
};

const TreeIndex& index() {
  static TreeIndex idx;
  return idx;
}

// Minimal diagrams by exhaustive search: the smallest l for which some domain
// tree has f affine on each leaf and f carries its points onto some tree.
std::set<std::string> brute_minimal(const PLMap& f) {
  const auto& idx = index();
  for (std::size_t l = 1; l <= 9; ++l) {
    std::set<std::string> found;
    for (const Tree& t : idx.by_leaves[l]) {
      auto pts = subdivision_points(t);
      bool affine = true;
      for (std::size_t i = 1; i < pts.size() && affine; ++i)
        affine = f.affine_on(pts[i - 1], pts[i]);
      if (!affine) continue;
      std::vector<Rational> image;
      for (const Rational& p : pts) image.push_back(f(p));
      auto it = idx.by_points.find(image);
      if (it == idx.by_points.end()) continue;
      for (const Tree& s : it->second) found.insert(TreePair(t, s).str());
    }
    if (!found.empty()) return found;
  }
  return {};
}

std::set<std::string> names(const std::vector<TreePair>& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(d.str());
  return out;
}

}  // namespace

TEST_CASE("minimal diagrams agree with exhaustive search") {
  CayleyBall ball(F23, 2);
  int checked = 0;
  for (int r = 0; r <= 2; ++r)
    for (const PLMap& f : ball.sphere(r)) {
      auto expect = brute_minimal(f);
      if (expect.empty()) continue;  // needs more than 9 leaves
      auto got = minimal_diagrams(f, F23);
      CHECK(names(got) == expect);
      CHECK(minimal_leaf_count(f, F23) == got.front().leaf_count());
      ++checked;
    }
  CHECK(checked > 200);
}

TEST_CASE("canonical representative") {
  CanonicalElement id = canonicalize(D(kIden), F23);
  CHECK(id.rep == TreePair());
  CHECK(id.leaf_count == 1);
  CHECK(id.map.is_identity());

  std::mt19937 rng(9);
  auto gens = finite_generators(F23);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1), len(1, 5);
  for (int t = 0; t < 150; ++t) {
    Word w;
    for (int k = len(rng); k > 0; --k) {
      Generator g = gens[pick(rng)];
      w.push_back(sign(rng) ? g : g.inverse());
    }
    PLMap f = word_map(w, F23);
    CanonicalElement x = canonicalize(f, F23);
    CHECK(to_map(x.rep) == f);
    CHECK(canonicalize(x.rep, F23) == x);
    CHECK(cancel_exposed_pairs(x.rep) == x.rep);
    CHECK(x.depth == std::max(x.rep.domain().depth(), x.rep.range().depth()));
    auto all = minimal_diagrams(f, F23);
    CaretOrderKey best = caret_order_key(x.rep);
    std::set<CaretOrderKey> keys;
    for (const auto& d : all) {
      CHECK(d.leaf_count() == x.leaf_count);
      CHECK(to_map(d) == f);
      CHECK(best <= caret_order_key(d));
      keys.insert(caret_order_key(d));
    }
    CHECK(keys.size() == all.size());  // the order separates distinct diagrams
  }
}

TEST_CASE("an element with two unrelated minimal diagrams") {
  PLMap f = PLMap::parse("0,0;1/2,1/3;7/12,2/3;5/8,3/4;3/4,7/8;1,1");
  auto all = minimal_diagrams(f, F23);
  REQUIRE(all.size() == 2);
  CHECK(names(all) == std::set<std::string>{
                          "[2 [2 . .] [2 [2 [3 . [2 . .] .] .] .]] | [2 [3 . . .] [2 [3 . . .] [2 . .]]]",
                          "[2 . [3 [2 . [2 . .]] [2 [2 . .] .] .]] | [3 . . [2 [2 . [2 . .]] [2 [2 . .] .]]]"});
  CHECK_FALSE(trees_equivalent(all[0].domain(), all[1].domain(), F23));
  CHECK_FALSE(trees_equivalent(all[0].range(), all[1].range(), F23));
  CHECK(names(all) == brute_minimal(f));
}

TEST_CASE("caret order key") {
  TreePair d = D(kIden);
  CaretOrderKey k = caret_order_key(d);
  CHECK(k.domain_types == std::vector<int>{2, 3, 3});
  CHECK(k.range_types == std::vector<int>{3, 2, 2, 2});
  CHECK(caret_order_key(TreePair()) < k);
}

TEST_CASE("realizations") {
  auto pts = subdivision_points(Tree::parse("[2 [3 . . .] [3 . . .]]", F23));
  std::vector<Rational> interior(pts.begin() + 1, pts.end() - 1);
  auto all = all_realizations(interior, F23);
  CHECK(all.size() == 2);
  auto small = smallest_realization(interior, F23);
  REQUIRE(small);
  CHECK(small->str() == "[2 [3 . . .] [3 . . .]]");
  CHECK_FALSE(smallest_realization({Rational(1, 5)}, F23));
  for (std::size_t l = 1; l <= 7; ++l)
    for (const Tree& t : enumerate_trees(l, F23)) {
      auto p = subdivision_points(t);
      std::vector<Rational> in(p.begin() + 1, p.end() - 1);
      auto r = all_realizations(in, F23);
      CHECK(r.size() == index().by_points.at(p).size());
    }
}

TEST_CASE("move search reaches the canonical representative") {
  auto r = move_search(D(kIden), 0, F23);
  CHECK(r.reached);
  CHECK(move_closure_check(D(kIden), 0, F23));
  // reduced and not minimal: no cancellation or substitution applies until
  // a pair is added
  TreePair x = D("[2 [2 . .] [3 . . .]] | [3 . [2 . .] [2 . .]]");
  CHECK(cancel_exposed_pairs(x) == x);
  CHECK(minimal_leaf_count(to_map(x), F23) == 4);
  CHECK_FALSE(move_closure_check(x, 0, F23));
  auto grown = move_search(x, 2, F23);
  CHECK(grown.reached);
  CHECK(grown.max_leaves > x.leaf_count());
}
