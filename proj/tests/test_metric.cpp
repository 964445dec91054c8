#include <doctest.h>

#include <algorithm>
#include <random>

#include "tsg/metric.hpp"

using namespace tsg;

namespace {

const GroupSignature F23({2, 3});

Word W(const char* s, const GroupSignature& sig = F23) { return parse_word(s, sig); }

// Least n >= 1 with a * g^(n-1) >= leaves, by repeated multiplication.
std::size_t chain(std::size_t leaves, long a, long g) {
  std::size_t n = 1;
  for (long v = a; v < static_cast<long>(leaves); v *= g) ++n;
  return n;
}

bool in_x(const Generator& g, const std::vector<Generator>& x) {
  return std::any_of(x.begin(), x.end(), [&](const Generator& h) { return h.same_letter(g); });
}

Word random_word(std::mt19937& rng, const std::vector<Generator>& gens, int max_len) {
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1), len(1, max_len);
  Word w;
  for (int k = len(rng); k > 0; --k) {
    Generator g = gens[pick(rng)];
    w.push_back(sign(rng) ? g : g.inverse());
  }
  return w;
}

}  // namespace

TEST_CASE("constants") {
  MetricConstants m = MetricConstants::of(F23);
  CHECK(m.b == 2);
  CHECK(m.B == 12);
  CHECK(m.a == 5);
  CHECK(m.c == 5);
  CHECK(m.d == 10);

  // measured values, recomputed from the minimal diagrams of X and X^-1
  std::size_t leaves = 0;
  int depth = 0;
  for (const Generator& g : finite_generators(F23))
    for (const Generator& h : {g, g.inverse()}) {
      CanonicalElement x = evaluate({h}, F23);
      leaves = std::max(leaves, x.leaf_count);
      depth = std::max(depth, x.depth);
    }
  CHECK(m.leaf_max == static_cast<long>(leaves));
  CHECK(m.depth_max == depth);
  CHECK(m.leaf_max == 6);
  CHECK(m.depth_max == 5);
  CHECK(m.growth == 32);
  CHECK(m.chain_a() == 6);
  CHECK(m.chain_B() == 32);
  CHECK(m.depth_factor() == 5);

  MetricConstants n = MetricConstants::of(GroupSignature({2, 3, 5}));
  CHECK(n.b == 4);
  CHECK(n.B == 5 * 16);
  CHECK(n.a == 7);
  CHECK(n.chain_a() >= n.a);
  CHECK_THROWS_AS(MetricConstants::of(GroupSignature({3, 4})), DivisibilityError);
}

TEST_CASE("the assumed generator bounds fail on X") {
  // (z_2)_2 has more leaves than a - 1 and is deeper than b + 1
  CanonicalElement z = evaluate(W("z2_2"), F23);
  MetricConstants m = MetricConstants::of(F23);
  CHECK(z.leaf_count == 6);
  CHECK(z.leaf_count > static_cast<std::size_t>(m.a - 1));
  CHECK(z.depth > m.b + 1);
  CHECK(bfs_length(z, 1, F23) == 1);
  CHECK(nominal_lower_bound(z, F23) == 2);
  CHECK(lower_bound(z, F23) == 1);
}

TEST_CASE("lower bound chain") {
  MetricConstants m = MetricConstants::of(F23);
  CHECK(lower_bound(evaluate({}, F23), F23) == 0);
  CayleyBall ball(F23, 2);
  for (int r = 1; r <= 2; ++r)
    for (const PLMap& f : ball.sphere(r)) {
      CanonicalElement x = canonicalize(f, F23);
      CHECK(lower_bound(x, F23) == chain(x.leaf_count, m.chain_a(), m.chain_B()));
      CHECK(nominal_lower_bound(x, F23) == chain(x.leaf_count, m.a, m.B));
      CHECK(lower_bound(x, F23) <= static_cast<std::size_t>(r));
    }
}

TEST_CASE("cayley ball") {
  CayleyBall ball(F23, 2);
  CHECK(ball.sphere(0).size() == 1);
  CHECK(ball.sphere(1).size() == 16);
  CHECK(ball.length(PLMap()) == 0);
  CHECK(ball.length(word_map(W("y2_0 y2_0"), F23)) == 2);
  CHECK(ball.length(word_map(W("z1_0 z1_0^-1"), F23)) == 0);
  CHECK_FALSE(ball.length(word_map(W("y2_0 y2_0 y2_0"), F23)));
  std::size_t total = 0;
  for (int r = 0; r <= 2; ++r) total += ball.sphere(r).size();
  CHECK(total == ball.size());
  for (const Generator& g : finite_generators(F23))
    CHECK(bfs_length(evaluate({g}, F23), 2, F23) == 1);
}

TEST_CASE("finite words") {
  auto x = finite_generators(F23);
  CHECK(x.size() == 8);
  CHECK(to_finite_word(evaluate({}, F23), F23).empty());
  std::mt19937 rng(21);
  // random words over the infinite set, with subscripts up to 6
  std::vector<Generator> wide;
  for (long i = 0; i <= 6; ++i) {
    wide.push_back({Family::Z, 1, i, 1});
    wide.push_back({Family::Z, 2, i, 1});
    wide.push_back({Family::Y, 2, i, 1});
  }
  MetricConstants m = MetricConstants::of(F23);
  for (int t = 0; t < 100; ++t) {
    CanonicalElement e = evaluate(random_word(rng, wide, 4), F23);
    Word fw = to_finite_word(e, F23);
    CHECK(word_map(fw, F23) == e.map);
    for (const Generator& g : fw) CHECK(in_x(g, x));
    CHECK(word_length(fw) <= static_cast<std::size_t>(m.c) * e.leaf_count);
  }
}

TEST_CASE("growth of powers") {
  auto rows = growth_experiment(2, 4, F23, 2);
  REQUIRE(rows.size() == 4);
  std::size_t p = 1;
  for (const auto& r : rows) {
    p *= 3;
    CHECK(r.leaves == p);
    CHECK(r.matches_law);
    CHECK(r.domain_n1_ary);
    CHECK(r.range_balanced);
    CHECK(r.lower_bound <= static_cast<std::size_t>(r.n));
    CHECK(r.finite_word_length >= static_cast<std::size_t>(r.n));
  }
  CHECK(rows[0].bfs_length == 1);
  CHECK(rows[1].bfs_length == 2);
  CHECK_FALSE(rows[2].bfs_length);
  std::string csv = growth_csv(rows);
  CHECK(csv.rfind("n,leaves,lower_bound,finite_word_length,bfs_length\n", 0) == 0);
  CHECK(csv.find("\n1,3,") != std::string::npos);
  CHECK(csv.back() == '\n');

  GroupSignature s235({2, 3, 5});
  auto five = growth_experiment(3, 2, s235);
  REQUIRE(five.size() == 2);
  CHECK(five[0].leaves == 5);
  CHECK(five[1].leaves == 25);
  CHECK(five[1].matches_law);
}

TEST_CASE("depth and growth per letter") {
  CayleyBall ball(F23, 2);
  LeafCount leaves = [](const PLMap& f) { return minimal_leaf_count(f, F23); };
  for (int r = 0; r <= 2; ++r)
    for (const PLMap& f : ball.sphere(r))
      CHECK(depth_bound_check(canonicalize(f, F23), r, F23, leaves));
}
