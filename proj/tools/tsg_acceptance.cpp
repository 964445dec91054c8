// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

#include <CLI11.hpp>

#include "tsg/metric.hpp"
#include "tsg/minimizer.hpp"
#include "tsg/words.hpp"

using namespace tsg;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " " << n << " " << what << ": " << detail << std::endl;
}

const GroupSignature F23({2, 3});

// The diagram of a word, by composing generator diagrams (never via maps).
TreePair word_diagram(const Word& w, const GroupSignature& sig) {
  TreePair d;
  for (const Generator& g : w) {
    Generator unit = g;
    unit.exponent = 1;
    TreePair step = generator_diagram(unit, sig);
    if (g.exponent < 0) step = invert(step);
    for (int e = 0; e < std::abs(g.exponent); ++e)
      d = cancel_exposed_pairs(compose(d, step, sig));
  }
  return d;
}

void growth_law() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream det;
  auto rows = growth_experiment(2, 6, F23);
  long p = 1;
  for (const auto& r : rows) {
    p *= 3;
    ok = ok && r.leaves == static_cast<std::size_t>(p) && r.matches_law;
  }
  det << "F(2,3) L((y2)_0^n) =";
  for (const auto& r : rows) det << " " << r.leaves;
  GroupSignature s235({2, 3, 5});
  auto five = growth_experiment(3, 3, s235);
  p = 1;
  for (const auto& r : five) {
    p *= 5;
    ok = ok && r.leaves == static_cast<std::size_t>(p) && r.matches_law;
  }
  det << "; F(2,3,5) L((y3)_0^n) =";
  for (const auto& r : five) det << " " << r.leaves;
  double t = since(t0);
  ok = ok && rows.size() == 6 && five.size() == 3 && t < 60;
  det << "; " << t << "s";
  report(1, ok, "growth law", det.str());
}

void identity_recognition() {
  TreePair d = TreePair::parse("[2 [3 . . .] [3 . . .]] | [3 [2 . .] [2 . .] [2 . .]]", F23);
  CanonicalElement x = canonicalize(d, F23);
  bool ok = x.rep == TreePair() && is_identity(d, F23);
  report(2, ok, "identity recognition", "reduces to " + x.rep.str());
}

void presentation() {
  std::size_t count = 0, bad = 0;
  for (const char* s : {"2,3", "3,5", "2,3,5"}) {
    GroupSignature sig = GroupSignature::parse(s);
    for (bool finite : {false, true})
      for (const Relator& r : relators(sig, finite)) {
        ++count;
        if (!(word_map(r.lhs, sig) == word_map(r.rhs, sig))) {
          if (bad++ < 3) std::cout << "  relator " << r.family << " fails in F(" << s << ")\n";
        }
      }
  }
  report(3, bad == 0 && count > 0, "presentation soundness",
         std::to_string(count) + " relators, " + std::to_string(bad) + " failures");
}

void worked_example() {
  const char* printed =
      "y2_1 y2_3 z1_0^2 z1_1 z1_3 z2_4 z1_4 z2_8 z1_9 z1_12 z1_13^2 z1_16^-1 z2_15^-1 "
      "z1_12^-1 z2_12^-1 z1_10^-1 z1_8^-1 z2_2^-2 z1_2^-1 z1_0^-1 z2_0^-1 y2_0^-1";
  Word w = parse_word(printed, F23);
  std::vector<YLetter> ys;
  std::vector<ZLetter> zs;
  for (const Generator& g : w) {
    if (g.exponent > 0) continue;
    if (g.family == Family::Y) ys.insert(ys.begin(), {g.j, g.i});
    else zs.insert(zs.begin(), {g.j, g.i, -g.exponent});
  }
  auto t_minus = positive_tree(ys, zs, F23);
  bool ok = t_minus.has_value();
  std::string detail = "no tree for the negative factor";
  if (t_minus) {
    auto m = leaf_exponent_matrices(*t_minus);
    ok = m.size() >= 3 && m[0] == LeafExponentMatrix{{3, 1}, {2, 1}} && m[1].empty() &&
         m[2] == LeafExponentMatrix{{2, 1}, {3, 2}};
    CanonicalElement x = evaluate(w, F23);
    NormalForm nf = normal_form(x, F23);
    bool round = evaluate(parse_word(nf.str(), F23), F23).map == x.map;
    ok = ok && round && check_normal_form(nf, F23).ok();
    detail = "T_- has " + std::to_string(t_minus->leaf_count()) + " leaves, E0 E1 E2 " +
             (ok ? "as printed" : "differ") + ", NF round trip " + (round ? "ok" : "broken");
  }
  report(4, ok, "worked normal form example", detail);
}

struct BallData {
  CayleyBall ball;
  std::unordered_map<PLMap, CanonicalElement, PLMapHash> canon;
  explicit BallData(int radius) : ball(F23, radius) {}
};

void canonicalize_through(BallData& b, int radius) {
  for (int r = 0; r <= radius; ++r)
    for (const PLMap& f : b.ball.sphere(r))
      if (!b.canon.count(f)) b.canon.emplace(f, canonicalize(f, F23));
}

void word_problem(BallData& b, Clock::time_point t0) {
  std::map<std::string, PLMap> by_nf;
  std::size_t elements = 0, disagree = 0;
  auto gens = finite_generators(F23);
  for (int r = 0; r <= 3; ++r)
    for (const PLMap& f : b.ball.sphere(r)) {
      ++elements;
      const CanonicalElement& x = b.canon.at(f);
      std::string nf = normal_form(x, F23).str();
      auto [it, fresh] = by_nf.emplace(nf, f);
      if (!fresh && !(it->second == f)) ++disagree;  // equal NF, different maps
      if (!(word_map(parse_word(nf, F23), F23) == f)) ++disagree;
      // a second word for the same element: the finite word, composed as diagrams
      CanonicalElement y = canonicalize(word_diagram(to_finite_word(x, F23), F23), F23);
      if (normal_form(y, F23).str() != nf) ++disagree;
      if (r >= 3) continue;
      // every edge gives another word for a neighbour
      TreePair d = x.rep;
      for (const Generator& g : gens)
        for (const Generator& h : {g, g.inverse()}) {
          CanonicalElement z = canonicalize(compose(d, word_diagram({h}, F23), F23), F23);
          auto other = b.canon.find(z.map);
          if (other == b.canon.end() ||
              normal_form(z, F23).str() != normal_form(other->second, F23).str())
            ++disagree;
        }
    }
  double t = since(t0);
  bool ok = disagree == 0 && by_nf.size() == elements && t < 600;
  std::ostringstream det;
  det << elements << " elements, " << by_nf.size() << " normal forms, " << disagree
      << " disagreements, " << t << "s";
  report(5, ok, "word problem on the radius-3 ball", det.str());
}

void sandwich(BallData& b) {
  const int R = b.ball.radius();
  std::size_t bad = 0, nominal_bad = 0, depth_bad = 0;
  double worst = 0;
  LeafCount leaves = [&](const PLMap& f) {
    auto it = b.canon.find(f);
    return it != b.canon.end() ? it->second.leaf_count : minimal_leaf_count(f, F23);
  };
  for (int r = 0; r <= R; ++r)
    for (const PLMap& f : b.ball.sphere(r)) {
      const CanonicalElement& x = b.canon.at(f);
      Word fw = to_finite_word(x, F23);
      std::size_t lb = lower_bound(x, F23), fl = word_length(fw);
      std::size_t len = static_cast<std::size_t>(r);
      bool ok = lb <= len && len <= fl && fl <= 10 * x.leaf_count && word_map(fw, F23) == f;
      if (!ok && bad++ < 3)
        std::cout << "  sandwich fails at " << f.str() << ": " << lb << " " << r << " " << fl
                  << " " << x.leaf_count << "\n";
      if (nominal_lower_bound(x, F23) > len) ++nominal_bad;
      if (r < R && !depth_bound_check(x, len, F23, leaves)) ++depth_bad;
      worst = std::max(worst, static_cast<double>(fl) / static_cast<double>(x.leaf_count));
    }
  std::ostringstream det;
  det << b.ball.size() << " elements, " << bad << " violations; max |word|/L = " << worst
      << "; depth and per-letter growth violations " << depth_bad
      << "; the nominal constants overshoot on " << nominal_bad << " elements";
  report(6, bad == 0 && depth_bad == 0,
         "metric sandwich on the radius-" + std::to_string(R) + " ball", det.str());
}

void minimizer_truth(BallData& b) {
  std::size_t elements = 0, bad = 0, exhibits = 0;
  std::string example;
  for (int r = 0; r <= 3; ++r)
    for (const PLMap& f : b.ball.sphere(r)) {
      ++elements;
      const CanonicalElement& x = b.canon.at(f);
      auto all = minimal_diagrams(f, F23);
      bool ok = !all.empty() && canonicalize(x.rep, F23) == x;
      CaretOrderKey key = caret_order_key(x.rep);
      for (const TreePair& d : all)
        ok = ok && d.leaf_count() == x.leaf_count && to_map(d) == f &&
             !(caret_order_key(d) < key);
      TreePair built = word_diagram(to_finite_word(x, F23), F23);
      ok = ok && built.leaf_count() >= x.leaf_count && canonicalize(built, F23) == x;
      if (!ok) ++bad;
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
          if (!trees_equivalent(all[i].domain(), all[j].domain(), F23) &&
              !trees_equivalent(all[i].range(), all[j].range(), F23)) {
            if (exhibits++ == 0) example = f.str();
          }
    }
  std::ostringstream det;
  det << elements << " elements, " << bad << " failures, " << exhibits
      << " pairs of unrelated minimal diagrams (first at " << example << ")";
  report(7, bad == 0 && exhibits > 0, "minimizer ground truth", det.str());
}

void tree_layer() {
  auto t0 = Clock::now();
  std::size_t pairs = 0, equivalent = 0, bad = 0;
  for (std::size_t l = 1; l <= 9; ++l) {
    auto all = enumerate_trees(l, F23);
    std::vector<std::vector<Rational>> pts;
    std::vector<std::vector<ValenceVector>> vals;
    for (const Tree& t : all) {
      pts.push_back(subdivision_points(t));
      vals.push_back(valences(t, F23));
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (int m : {2, 3}) {
        int idx = F23.index_of(m);
        bool positive = true;
        for (const auto& v : vals[i]) positive = positive && v.counts[idx] > 0;
        auto res = retype_root(all[i], m, F23);
        if (res.has_value() != positive ||
            (res && (res->arity() != m || subdivision_points(*res) != pts[i])))
          ++bad;
      }
      for (std::size_t j = 0; j < all.size(); ++j) {
        ++pairs;
        bool eq = trees_equivalent(all[i], all[j], F23);
        if (eq != (pts[i] == pts[j])) ++bad;
        if (!eq) continue;
        ++equivalent;
        auto seq = transform_sequence(all[i], all[j], F23);
        if (!seq) {
          ++bad;
          continue;
        }
        Tree cur = all[i];
        for (const auto& mv : *seq) cur = apply_move(cur, mv);
        if (!(cur == all[j])) ++bad;
      }
    }
  }
  std::ostringstream det;
  det << pairs << " pairs up to 9 leaves, " << equivalent << " equivalent, " << bad
      << " failures, " << since(t0) << "s";
  report(8, bad == 0, "tree layer", det.str());
}

void oracle_algebra() {
  std::mt19937 rng(2024);
  auto gens = finite_generators(F23);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1), len(0, 4);
  auto random_word = [&] {
    Word w;
    for (int k = len(rng); k > 0; --k) {
      Generator g = gens[pick(rng)];
      w.push_back(sign(rng) ? g : g.inverse());
    }
    return w;
  };
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Word a = random_word(), b = random_word(), c = random_word();
    TreePair x = word_diagram(a, F23), y = word_diagram(b, F23), z = word_diagram(c, F23);
    PLMap left = to_map(compose(compose(x, y, F23), z, F23));
    PLMap right = to_map(compose(x, compose(y, z, F23), F23));
    bool ok = left == right && left == compose(compose(word_map(a, F23), word_map(b, F23)),
                                               word_map(c, F23));
    ok = ok && is_identity(compose(x, invert(x), F23), F23) &&
         is_identity(compose(invert(y), y, F23), F23);
    ok = ok && to_map(compose(x, TreePair(), F23)) == to_map(x) &&
         to_map(compose(TreePair(), x, F23)) == to_map(x);
    PLMap f = to_map(z);
    ok = ok && canonicalize(from_map(f, F23), F23) == canonicalize(f, F23);
    if (!ok) ++bad;
  }
  report(9, bad == 0, "oracle algebra", "1000 word triples, " + std::to_string(bad) + " failures");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int radius = 4;
  app.add_option("--radius", radius, "ball radius for the metric sandwich")->check(CLI::Range(3, 4));
  CLI11_PARSE(app, argc, argv);

  growth_law();
  identity_recognition();
  presentation();
  worked_example();

  BallData ball(radius);
  auto t0 = Clock::now();
  canonicalize_through(ball, 3);
  word_problem(ball, t0);
  canonicalize_through(ball, radius);
  sandwich(ball);
  minimizer_truth(ball);

  tree_layer();
  oracle_algebra();
  return failures == 0 ? 0 : 1;
}
