#include "tsg/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "tsg/errors.hpp"

namespace tsg {

TreePair::TreePair(Tree domain, Tree range)
    : domain_(std::move(domain)), range_(std::move(range)) {
  if (domain_.leaf_count() != range_.leaf_count()) {
    throw std::invalid_argument("tree-pair diagram trees have " +
                                std::to_string(domain_.leaf_count()) + " and " +
                                std::to_string(range_.leaf_count()) + " leaves");
  }
}

TreePair TreePair::parse(std::string_view text, const GroupSignature& sig) {
  std::size_t bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw ParseError("diagram text needs '<domain> | <range>'", 0);
  }
  std::size_t pos = 0;
  std::string_view left = text.substr(0, bar);
  Tree d = Tree::parse_prefix(left, pos, sig);
  while (pos < left.size() && std::isspace(static_cast<unsigned char>(left[pos]))) ++pos;
  if (pos != left.size()) throw ParseError("trailing text before '|'", pos);
  std::string_view right = text.substr(bar + 1);
  pos = 0;
  Tree r;
  try {
    r = Tree::parse_prefix(right, pos, sig);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), bar + 1 + e.position());
  }
  while (pos < right.size() && std::isspace(static_cast<unsigned char>(right[pos]))) ++pos;
  if (pos != right.size()) throw ParseError("trailing text after range tree", bar + 1 + pos);
  return TreePair(std::move(d), std::move(r));
}

std::string TreePair::str() const { return domain_.str() + " | " + range_.str(); }

std::ostream& operator<<(std::ostream& os, const TreePair& d) { return os << d.str(); }

PLMap to_map(const TreePair& d) {
  return PLMap(subdivision_points(d.domain()), subdivision_points(d.range()));
}

namespace {

long mpz_valuation(mpz_class z, long p) {
  long v = 0;
  while (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

// Cheapest valence V whose balanced tree has every breakpoint of f among its
// leaf endpoints.
ValenceVector grid_valence(const PLMap& f, const GroupSignature& sig) {
  std::vector<long> primes;
  {
    long n = sig.product();
    for (long p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        primes.push_back(p);
        while (n % p == 0) n /= p;
      }
    }
    if (n > 1) primes.push_back(n);
  }
  std::vector<long> need(primes.size(), 0);
  auto absorb = [&](const Rational& r) {
    for (std::size_t p = 0; p < primes.size(); ++p) {
      need[p] = std::max(need[p], mpz_valuation(r.denominator(), primes[p]));
    }
  };
  for (const Rational& x : f.xs()) absorb(x);
  for (const Rational& y : f.ys()) absorb(y);

  const std::size_t k = sig.size();
  std::vector<std::vector<long>> ord(primes.size(), std::vector<long>(k, 0));
  for (std::size_t p = 0; p < primes.size(); ++p) {
    for (std::size_t j = 0; j < k; ++j) {
      long n = sig.arity(j);
      while (n % primes[p] == 0) {
        n /= primes[p];
        ++ord[p][j];
      }
    }
  }
  long cap = 0;
  for (long v : need) cap = std::max(cap, v);

  std::vector<int> cur(k, 0), best;
  double best_cost = INFINITY;
  std::vector<long> have(primes.size(), 0);
  std::function<void(std::size_t, double)> search = [&](std::size_t j, double cost) {
    if (cost >= best_cost) return;
    if (j == k) {
      for (std::size_t p = 0; p < primes.size(); ++p) {
        if (have[p] < need[p]) return;
      }
      best_cost = cost;
      best = cur;
      return;
    }
    for (long v = 0; v <= cap; ++v) {
      cur[j] = static_cast<int>(v);
      for (std::size_t p = 0; p < primes.size(); ++p) have[p] += ord[p][j] * v;
      search(j + 1, cost + static_cast<double>(v) * std::log(static_cast<double>(sig.arity(j))));
      for (std::size_t p = 0; p < primes.size(); ++p) have[p] -= ord[p][j] * v;
    }
    cur[j] = 0;
  };
  search(0, 0.0);
  return ValenceVector{best};
}

}  // namespace

TreePair from_map(const PLMap& f, const GroupSignature& sig) {
  if (!f.belongs_to(sig)) {
    throw DomainRejection("map " + f.str() + " is not an element of F(" + sig.str() + ")");
  }
  ValenceVector grid = grid_valence(f, sig);
  Tree base = balanced_tree(grid, sig);
  Rational m(static_cast<long>(base.leaf_count()));

  std::vector<Tree> dom_grafts, ran_grafts;
  const std::size_t k = sig.size();
  for (std::size_t i = 1; i < f.xs().size(); ++i) {
    Rational dx = f.xs()[i] - f.xs()[i - 1];
    Rational dy = f.ys()[i] - f.ys()[i - 1];
    SlopeExponent e = *shortest_slope_decomposition(dy / dx, sig);
    ValenceVector up{std::vector<int>(k, 0)}, down{std::vector<int>(k, 0)};
    for (std::size_t j = 0; j < k; ++j) {
      (e.exponents[j] > 0 ? up : down).counts[j] = std::abs(e.exponents[j]);
    }
    // slope P/Q: each domain cell splits into P pieces, each range cell into Q
    Tree dom_piece = balanced_tree(up, sig);
    Tree ran_piece = balanced_tree(down, sig);
    Rational dom_cells = dx * m, ran_cells = dy * m;
    dom_grafts.insert(dom_grafts.end(), dom_cells.numerator().get_ui(), dom_piece);
    ran_grafts.insert(ran_grafts.end(), ran_cells.numerator().get_ui(), ran_piece);
  }
  return cancel_exposed_pairs(TreePair(base.graft_all(dom_grafts), base.graft_all(ran_grafts)));
}

namespace {

void subdivide(const Tree& a, const Tree& b, const GroupSignature& sig,
               std::vector<Tree>& ga, std::vector<Tree>& gb, Tree& witness) {
  if (a.is_leaf()) {
    ga.push_back(b);
    gb.insert(gb.end(), b.leaf_count(), Tree::leaf());
    witness = b;
    return;
  }
  if (b.is_leaf()) {
    ga.insert(ga.end(), a.leaf_count(), Tree::leaf());
    gb.push_back(a);
    witness = a;
    return;
  }
  if (a.arity() == b.arity()) {
    std::vector<Tree> kids(static_cast<std::size_t>(a.arity()));
    for (std::size_t c = 0; c < kids.size(); ++c) {
      subdivide(a.child(c), b.child(c), sig, ga, gb, kids[c]);
    }
    witness = Tree::caret(a.arity(), std::move(kids));
    return;
  }
  std::vector<ValenceVector> va = valences(a, sig), vb = valences(b, sig);
  ValenceVector top{std::vector<int>(sig.size(), 0)};
  for (const auto* vs : {&va, &vb}) {
    for (const ValenceVector& v : *vs) {
      for (std::size_t j = 0; j < sig.size(); ++j) {
        top.counts[j] = std::max(top.counts[j], v.counts[j]);
      }
    }
  }
  auto fill = [&](const std::vector<ValenceVector>& vs, std::vector<Tree>& out) {
    for (const ValenceVector& v : vs) {
      ValenceVector rest = top;
      for (std::size_t j = 0; j < sig.size(); ++j) rest.counts[j] -= v.counts[j];
      out.push_back(balanced_tree(rest, sig));
    }
  };
  fill(va, ga);
  fill(vb, gb);
  witness = balanced_tree(top, sig);
}

}  // namespace

CommonSubdivision common_subdivision(const Tree& t, const Tree& s, const GroupSignature& sig) {
  CommonSubdivision out;
  subdivide(t, s, sig, out.t_grafts, out.s_grafts, out.witness);
  out.t = t.graft_all(out.t_grafts);
  out.s = s.graft_all(out.s_grafts);
  return out;
}

TreePair compose(const TreePair& x, const TreePair& y, const GroupSignature& sig) {
  // y's range meets x's domain; grafts propagate to the partner leaves
  CommonSubdivision cs = common_subdivision(x.domain(), y.range(), sig);
  Tree range = x.range().graft_all(cs.t_grafts);
  Tree domain = y.domain().graft_all(cs.s_grafts);
  return cancel_exposed_pairs(TreePair(std::move(domain), std::move(range)));
}

TreePair invert(const TreePair& x) { return TreePair(x.range(), x.domain()); }

bool is_identity(const TreePair& x, const GroupSignature& sig) {
  return trees_equivalent(x.domain(), x.range(), sig);
}

std::vector<ExposedCaret> exposed_carets(const Tree& t) {
  std::vector<ExposedCaret> out;
  std::size_t next_leaf = 0;
  TreePath path;
  std::function<void(const Tree&)> rec = [&](const Tree& node) {
    if (node.is_leaf()) {
      ++next_leaf;
      return;
    }
    if (node.leaf_count() == static_cast<std::size_t>(node.arity())) {
      out.push_back({next_leaf, node.arity(), path});
      next_leaf += node.leaf_count();
      return;
    }
    for (std::size_t c = 0; c < node.children().size(); ++c) {
      path.push_back(static_cast<int>(c));
      rec(node.child(c));
      path.pop_back();
    }
  };
  rec(t);
  return out;
}

TreePair cancel_exposed_pairs(const TreePair& x) {
  Tree d = x.domain(), r = x.range();
  while (true) {
    std::vector<ExposedCaret> ed = exposed_carets(d), er = exposed_carets(r);
    std::map<std::pair<std::size_t, int>, const TreePath*> in_range;
    for (const ExposedCaret& e : er) in_range[{e.first_leaf, e.arity}] = &e.path;
    bool any = false;
    for (const ExposedCaret& e : ed) {
      auto it = in_range.find({e.first_leaf, e.arity});
      if (it == in_range.end()) continue;
      // disjoint exposed carets keep their paths valid under these edits
      d = d.replace(e.path, Tree::leaf());
      r = r.replace(*it->second, Tree::leaf());
      any = true;
    }
    if (!any) break;
  }
  return TreePair(std::move(d), std::move(r));
}

}  // namespace tsg
