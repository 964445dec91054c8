#include "tsg/minimizer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tsg {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

struct Span {
  Rational lo;
  Rational hi;
  friend bool operator==(const Span&, const Span&) = default;
};

struct SpanHash {
  std::size_t operator()(const Span& s) const {
    return s.lo.hash() * 1000003u ^ s.hi.hash();
  }
};

// Membership of an integer in the multiplicative monoid generated by the
// arities.
class MonoidTest {
 public:
  explicit MonoidTest(const GroupSignature& sig) : sig_(sig) {}

  bool contains(const mpz_class& n) {
    if (n == 1) return true;
    std::string key = n.get_str(16);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool ok = false;
    for (std::size_t j = sig_.size(); j-- > 0 && !ok;) {
      unsigned long a = static_cast<unsigned long>(sig_.arity(j));
      if (mpz_divisible_ui_p(n.get_mpz_t(), a)) {
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), n.get_mpz_t(), a);
        ok = contains(q);
      }
    }
    memo_.emplace(std::move(key), ok);
    return ok;
  }

 private:
  const GroupSignature& sig_;
  std::unordered_map<std::string, bool> memo_;
};

// One side of the search. A span is good when g is affine on it and carries
// it onto a standard interval; the domain side uses g = f, the range side
// g = f^{-1}. Results only depend on a span's shape: on spans where g is
// affine that is the image length together with the image offset modulo
// that length, otherwise the span itself.
class Side {
 public:
  Side(PLMap g, const GroupSignature& sig)
      : g_(std::move(g)), slopes_(g_.slopes()), sig_(sig), monoid_(sig) {}

  std::size_t best(const Span& s, std::size_t budget) { return best(node(s), budget); }

  std::size_t exact_best(const Span& s) {
    for (std::size_t budget = 4;; budget *= 2) {
      std::size_t v = best(s, budget);
      if (v != kInf) return v;
    }
  }

  const PLMap& map() const { return g_; }

 private:
  struct Shape {
    bool affine = false;
    Rational a;  // image length, or lo
    Rational b;  // image offset modulo the length, or hi
    friend bool operator==(const Shape&, const Shape&) = default;
  };
  struct ShapeHash {
    std::size_t operator()(const Shape& k) const {
      return (k.a.hash() * 1000003u ^ k.b.hash()) + k.affine;
    }
  };
  struct Node {
    Span span;
    Span image;
    bool affine = false;
    bool good = false;
    std::size_t exact = kInf;
    std::size_t above = 0;  // best > above is known
    std::vector<std::vector<std::size_t>> kids;  // per arity, node ids
  };

  Rational eval(const Rational& x) const {
    const auto& xs = g_.xs();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (i == xs.size()) return g_.ys().back();
    --i;
    if (xs[i] == x) return g_.ys()[i];
    return g_.ys()[i] + slopes_[i] * (x - xs[i]);
  }

  // image is g(s) when already known.
  std::size_t node(const Span& s, const Span* image = nullptr) {
    auto cached = by_span_.find(s);
    if (cached != by_span_.end()) return cached->second;
    Shape key;
    key.affine = image ? true : g_.affine_on(s.lo, s.hi);
    Rational glo = image ? image->lo : eval(s.lo);
    Rational ghi = image ? image->hi : eval(s.hi);
    if (key.affine) {
      key.a = ghi - glo;
      Rational q = glo / key.a;
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
      key.b = glo - key.a * Rational(fl, mpz_class(1));
    } else {
      key.a = s.lo;
      key.b = s.hi;
    }
    auto it = ids_.find(key);
    if (it != ids_.end()) {
      by_span_.emplace(s, it->second);
      return it->second;
    }
    Node n;
    n.span = s;
    n.image = {glo, ghi};
    n.affine = key.affine;
    n.good = key.affine && standard(glo, ghi);
    if (n.good) n.exact = 1;
    nodes_.push_back(std::move(n));
    ids_.emplace(std::move(key), nodes_.size() - 1);
    by_span_.emplace(s, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  bool standard(const Rational& lo, const Rational& hi) {
    Rational len = hi - lo;
    if (len.numerator() != 1) return false;
    mpz_class n = len.denominator();
    if (!monoid_.contains(n)) return false;
    return (lo * Rational(n, mpz_class(1))).is_integer();
  }

  const std::vector<std::size_t>& children(std::size_t id, std::size_t arity_index) {
    if (nodes_[id].kids.empty()) nodes_[id].kids.resize(sig_.size());
    if (!nodes_[id].kids[arity_index].empty()) return nodes_[id].kids[arity_index];
    const int a = sig_.arity(arity_index);
    const Span s = nodes_[id].span;
    const bool affine = nodes_[id].affine;
    const Span image = nodes_[id].image;
    Rational step = (s.hi - s.lo) / Rational(a);
    Rational image_step = (image.hi - image.lo) / Rational(a);
    std::vector<std::size_t> out;
    Rational lo = s.lo, image_lo = image.lo;
    for (int c = 0; c < a; ++c) {
      const bool last = c + 1 == a;
      Rational hi = last ? s.hi : lo + step;
      if (affine) {
        Span kid_image{image_lo, last ? image.hi : image_lo + image_step};
        out.push_back(node({lo, hi}, &kid_image));
        image_lo = kid_image.hi;
      } else {
        out.push_back(node({lo, hi}));
      }
      lo = hi;
    }
    nodes_[id].kids[arity_index] = std::move(out);
    return nodes_[id].kids[arity_index];
  }

  // Fewest good leaves partitioning the span admissibly, or kInf when that
  // exceeds budget.
  std::size_t best(std::size_t id, std::size_t budget) {
    {
      const Node& n = nodes_[id];
      if (n.exact != kInf) return n.exact <= budget ? n.exact : kInf;
      if (budget <= n.above) return kInf;
    }
    std::size_t found = kInf;
    for (std::size_t ai = 0; ai < sig_.size(); ++ai) {
      if (static_cast<std::size_t>(sig_.arity(ai)) > budget) break;
      std::vector<std::size_t> kids = children(id, ai);
      // only strictly better splits matter once one is known
      std::size_t limit = found == kInf ? budget : found - 1;
      std::size_t used = 0;
      bool ok = true;
      for (std::size_t c = 0; c < kids.size() && ok; ++c) {
        std::size_t rest = kids.size() - c - 1;
        if (used + rest + 1 > limit) {
          ok = false;
          break;
        }
        std::size_t v = best(kids[c], limit - used - rest);
        if (v == kInf) ok = false;
        else used += v;
      }
      if (ok && used <= limit) found = used;
    }
    Node& n = nodes_[id];
    if (found != kInf) return n.exact = found;
    n.above = std::max(n.above, budget);
    return kInf;
  }

  PLMap g_;
  std::vector<Rational> slopes_;
  const GroupSignature& sig_;
  MonoidTest monoid_;
  std::vector<Node> nodes_;
  std::unordered_map<Span, std::size_t, SpanHash> by_span_;
  std::unordered_map<Shape, std::size_t, ShapeHash> ids_;
};

// Joint search for the minimal partitions. A state is a list of domain spans
// and a list of range spans covering the same stretch; the first spans of
// both lists start together. When their ends differ the longer one contains
// a partition point and must split; when they agree the aligned pair is an
// independent subproblem.
class JointSearch {
 public:
  using Partitions = std::vector<std::vector<Rational>>;

  JointSearch(const PLMap& f, const GroupSignature& sig)
      : f_(f), sig_(sig), dom_(f, sig), ran_(f.inverse(), sig) {}

  Partitions solve() {
    const Span unit{Rational(0), Rational(1)};
    std::size_t budget = std::max(dom_.exact_best(unit), ran_.exact_best(unit));
    for (;; ++budget) {
      const Entry* e = aligned(unit, budget);
      if (e) return e->parts;
    }
  }

 private:
  struct Entry {
    std::size_t exact = kInf;
    std::size_t above = 0;
    Partitions parts;  // interior domain points, all optimal choices
  };
  struct ListHash {
    std::size_t operator()(const std::pair<std::vector<Span>, std::vector<Span>>& k) const {
      std::size_t h = k.first.size() * 31 + k.second.size();
      for (const Span& s : k.first) h = h * 1000003u ^ SpanHash()(s);
      for (const Span& s : k.second) h = h * 1000003u ^ SpanHash()(s);
      return h;
    }
  };

  std::vector<Span> split(const Span& s, int arity) const {
    std::vector<Span> out;
    Rational step = (s.hi - s.lo) / Rational(arity);
    Rational lo = s.lo;
    for (int c = 0; c < arity; ++c) {
      Rational hi = c + 1 == arity ? s.hi : lo + step;
      out.push_back({lo, hi});
      lo = hi;
    }
    return out;
  }

  // max of the one-sided optima over both lists, or kInf once it exceeds
  // budget
  std::size_t floor(const std::vector<Span>& ds, const std::vector<Span>& rs,
                    std::size_t budget) {
    std::size_t a = 0, b = 0;
    for (const Span& d : ds) {
      if (a >= budget + 1) return kInf;
      std::size_t v = dom_.best(d, budget - a);
      if (v == kInf) return kInf;
      a += v;
    }
    for (const Span& r : rs) {
      if (b >= budget + 1) return kInf;
      std::size_t v = ran_.best(r, budget - b);
      if (v == kInf) return kInf;
      b += v;
    }
    return std::max(a, b);
  }

  static void merge(Entry& into, std::size_t cost, Partitions parts) {
    if (cost < into.exact) {
      into.exact = cost;
      into.parts = std::move(parts);
    } else if (cost == into.exact) {
      into.parts.insert(into.parts.end(), std::make_move_iterator(parts.begin()),
                        std::make_move_iterator(parts.end()));
    }
  }

  static void dedupe(Partitions& p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }

  // Domain span d whose image is a node of the range tree.
  const Entry* aligned(const Span& d, std::size_t budget) {
    auto& e = single_[d];
    if (e.exact != kInf) return e.exact <= budget ? &e : nullptr;
    if (f_.affine_on(d.lo, d.hi)) {
      e.exact = 1;
      e.parts = {{}};
      return budget >= 1 ? &e : nullptr;
    }
    if (budget <= e.above) return nullptr;
    Entry found;
    const Span image{f_(d.lo), f_(d.hi)};
    for (int a : sig_.arities()) {
      for (int b : sig_.arities()) {
        std::size_t limit = found.exact == kInf ? budget : found.exact;
        const Entry* sub = lists(split(d, a), split(image, b), limit);
        if (sub) merge(found, sub->exact, sub->parts);
      }
    }
    auto& again = single_[d];
    if (found.exact == kInf) {
      again.above = std::max(again.above, budget);
      return nullptr;
    }
    dedupe(found.parts);
    again = std::move(found);
    return &again;
  }

  const Entry* lists(const std::vector<Span>& ds, const std::vector<Span>& rs,
                     std::size_t budget) {
    if (ds.size() == 1 && rs.size() == 1) return aligned(ds[0], budget);
    if (floor(ds, rs, budget) == kInf) return nullptr;
    auto key = std::make_pair(ds, rs);
    {
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        const Entry& e = it->second;
        if (e.exact != kInf) return e.exact <= budget ? &e : nullptr;
        if (budget <= e.above) return nullptr;
      }
    }
    Entry found;
    const Rational d_end = f_(ds[0].hi);
    const Rational& r_end = rs[0].hi;
    if (d_end == r_end) {
      std::vector<Span> dt(ds.begin() + 1, ds.end()), rt(rs.begin() + 1, rs.end());
      std::size_t tail_floor = floor(dt, rt, budget - 1);
      if (tail_floor != kInf) {
        const Entry* head = aligned(ds[0], budget - tail_floor);
        if (head) {
          Partitions head_parts = head->parts;
          std::size_t head_cost = head->exact;
          const Entry* tail = lists(dt, rt, budget - head_cost);
          if (tail) {
            Partitions joined;
            for (const auto& hp : head_parts) {
              for (const auto& tp : tail->parts) {
                std::vector<Rational> pts = hp;
                pts.push_back(ds[0].hi);
                pts.insert(pts.end(), tp.begin(), tp.end());
                joined.push_back(std::move(pts));
              }
            }
            merge(found, head_cost + tail->exact, std::move(joined));
          }
        }
      }
    } else {
      // the span reaching further holds a partition point and must split
      const bool split_range = d_end < r_end;
      for (int a : sig_.arities()) {
        std::vector<Span> nd = ds, nr = rs;
        std::vector<Span>& target = split_range ? nr : nd;
        std::vector<Span> kids = split(target[0], a);
        target.erase(target.begin());
        target.insert(target.begin(), kids.begin(), kids.end());
        std::size_t limit = found.exact == kInf ? budget : found.exact;
        const Entry* sub = lists(nd, nr, limit);
        if (sub) merge(found, sub->exact, sub->parts);
      }
    }
    auto& slot = memo_[key];
    if (found.exact == kInf) {
      slot.above = std::max(slot.above, budget);
      return nullptr;
    }
    dedupe(found.parts);
    slot = std::move(found);
    return &slot;
  }

  const PLMap& f_;
  const GroupSignature& sig_;
  Side dom_;
  Side ran_;
  std::unordered_map<Span, Entry, SpanHash> single_;
  std::unordered_map<std::pair<std::vector<Span>, std::vector<Span>>, Entry, ListHash> memo_;
};

// Realizing trees for a partition given by its full point list.
class Realizer {
 public:
  Realizer(const std::vector<Rational>& interior, const GroupSignature& sig) : sig_(sig) {
    points_.reserve(interior.size() + 2);
    points_.push_back(Rational(0));
    points_.insert(points_.end(), interior.begin(), interior.end());
    points_.push_back(Rational(1));
  }

  std::optional<Tree> smallest() { return smallest(0, points_.size() - 1); }

  std::vector<Tree> all() { return all(0, points_.size() - 1); }

 private:
  // Point indices of the split of [points[i], points[j]] into arity equal
  // parts, or empty if some split point is missing.
  std::vector<std::size_t> splits(std::size_t i, std::size_t j, int arity) const {
    std::vector<std::size_t> out{i};
    Rational step = (points_[j] - points_[i]) / Rational(arity);
    for (int c = 1; c < arity; ++c) {
      Rational x = points_[i] + step * Rational(c);
      auto it = std::lower_bound(points_.begin() + static_cast<long>(out.back()),
                                 points_.begin() + static_cast<long>(j), x);
      if (it == points_.begin() + static_cast<long>(j) || *it != x) return {};
      out.push_back(static_cast<std::size_t>(it - points_.begin()));
    }
    out.push_back(j);
    return out;
  }

  std::optional<Tree> smallest(std::size_t i, std::size_t j) {
    if (j == i + 1) return Tree::leaf();
    auto key = std::make_pair(i, j);
    if (failed_.count(key)) return std::nullopt;
    for (int a : sig_.arities()) {
      std::vector<std::size_t> cut = splits(i, j, a);
      if (cut.empty()) continue;
      std::vector<Tree> kids;
      for (int c = 0; c < a; ++c) {
        auto sub = smallest(cut[static_cast<std::size_t>(c)], cut[static_cast<std::size_t>(c) + 1]);
        if (!sub) break;
        kids.push_back(*sub);
      }
      if (kids.size() == static_cast<std::size_t>(a)) return Tree::caret(a, std::move(kids));
    }
    failed_.insert(key);
    return std::nullopt;
  }

  std::vector<Tree> all(std::size_t i, std::size_t j) {
    if (j == i + 1) return {Tree::leaf()};
    std::vector<Tree> out;
    for (int a : sig_.arities()) {
      std::vector<std::size_t> cut = splits(i, j, a);
      if (cut.empty()) continue;
      std::vector<std::vector<Tree>> options;
      for (int c = 0; c < a; ++c) {
        options.push_back(all(cut[static_cast<std::size_t>(c)], cut[static_cast<std::size_t>(c) + 1]));
        if (options.back().empty()) break;
      }
      if (options.size() != static_cast<std::size_t>(a) || options.back().empty()) continue;
      std::vector<std::size_t> idx(options.size(), 0);
      while (true) {
        std::vector<Tree> kids;
        for (std::size_t c = 0; c < options.size(); ++c) kids.push_back(options[c][idx[c]]);
        out.push_back(Tree::caret(a, std::move(kids)));
        std::size_t c = options.size();
        bool done = true;
        while (c > 0) {
          --c;
          if (++idx[c] < options[c].size()) {
            done = false;
            break;
          }
          idx[c] = 0;
        }
        if (done) break;
      }
    }
    return out;
  }

  const GroupSignature& sig_;
  std::vector<Rational> points_;
  std::set<std::pair<std::size_t, std::size_t>> failed_;
};

std::vector<Rational> image(const PLMap& f, const std::vector<Rational>& pts) {
  std::vector<Rational> out;
  out.reserve(pts.size());
  for (const Rational& p : pts) out.push_back(f(p));
  return out;
}

}  // namespace

std::optional<Tree> smallest_realization(const std::vector<Rational>& points,
                                         const GroupSignature& sig) {
  return Realizer(points, sig).smallest();
}

std::vector<Tree> all_realizations(const std::vector<Rational>& points,
                                   const GroupSignature& sig) {
  return Realizer(points, sig).all();
}

std::vector<std::vector<Rational>> minimal_partitions(const PLMap& f,
                                                      const GroupSignature& sig) {
  if (f.is_identity()) return {{}};
  return JointSearch(f, sig).solve();
}

std::vector<TreePair> minimal_diagrams(const PLMap& f, const GroupSignature& sig) {
  std::vector<TreePair> out;
  for (const auto& pts : minimal_partitions(f, sig)) {
    std::vector<Tree> doms = all_realizations(pts, sig);
    std::vector<Tree> rans = all_realizations(image(f, pts), sig);
    for (const Tree& d : doms) {
      for (const Tree& r : rans) out.emplace_back(d, r);
    }
  }
  std::sort(out.begin(), out.end(), [](const TreePair& a, const TreePair& b) {
    return caret_order_key(a) < caret_order_key(b);
  });
  return out;
}

std::size_t minimal_leaf_count(const PLMap& f, const GroupSignature& sig) {
  return minimal_partitions(f, sig).front().size() + 1;
}

CaretOrderKey caret_order_key(const TreePair& d) {
  return {d.domain().level_order_types(), d.domain().level_order_shape(),
          d.range().level_order_types(), d.range().level_order_shape()};
}

CanonicalElement canonicalize(const PLMap& f, const GroupSignature& sig) {
  std::optional<TreePair> rep;
  std::optional<CaretOrderKey> rep_key;
  for (const auto& pts : minimal_partitions(f, sig)) {
    TreePair d(*smallest_realization(pts, sig), *smallest_realization(image(f, pts), sig));
    CaretOrderKey key = caret_order_key(d);
    if (!rep_key || key < *rep_key) {
      rep_key = std::move(key);
      rep = std::move(d);
    }
  }
  CanonicalElement out{f, *rep, rep->leaf_count(),
                       std::max(rep->domain().depth(), rep->range().depth())};
  return out;
}

CanonicalElement canonicalize(const TreePair& x, const GroupSignature& sig) {
  return canonicalize(to_map(x), sig);
}

namespace {

struct PairHash {
  std::size_t operator()(const TreePair& d) const {
    return d.domain().hash() * 1000003u ^ d.range().hash();
  }
};

// Paths of p-carets whose children are all q-carets with leaf children.
void substitution_sites(const Tree& t, TreePath& path,
                        std::vector<std::tuple<TreePath, int, int>>& out) {
  if (t.is_leaf()) return;
  int q = t.child(0).arity();
  bool pattern = q != 0 && q != t.arity();
  for (const Tree& c : t.children()) {
    pattern = pattern && c.arity() == q &&
              c.leaf_count() == static_cast<std::size_t>(q);
  }
  if (pattern) out.emplace_back(path, t.arity(), q);
  for (std::size_t c = 0; c < t.children().size(); ++c) {
    path.push_back(static_cast<int>(c));
    substitution_sites(t.child(c), path, out);
    path.pop_back();
  }
}

std::vector<Tree> substitution_neighbors(const Tree& t) {
  std::vector<std::tuple<TreePath, int, int>> sites;
  TreePath path;
  substitution_sites(t, path, sites);
  std::vector<Tree> out;
  for (const auto& [p, from, to] : sites) out.push_back(substitute(t, p, from, to));
  return out;
}

}  // namespace

MoveSearchResult move_search(const TreePair& x, std::size_t budget, const GroupSignature& sig) {
  const TreePair target = canonicalize(x, sig).rep;
  const std::size_t cap = x.leaf_count() + budget;
  std::unordered_map<TreePair, std::size_t, PairHash> seen{{x, x.leaf_count()}};
  std::deque<TreePair> queue{x};
  MoveSearchResult result;
  while (!queue.empty()) {
    TreePair d = queue.front();
    queue.pop_front();
    std::size_t path_max = seen[d];
    if (d == target) {
      result.reached = true;
      result.max_leaves = path_max;
      break;
    }
    std::vector<TreePair> next;
    std::vector<ExposedCaret> ed = exposed_carets(d.domain()), er = exposed_carets(d.range());
    for (const ExposedCaret& a : ed) {
      for (const ExposedCaret& b : er) {
        if (a.first_leaf == b.first_leaf && a.arity == b.arity) {
          next.emplace_back(d.domain().replace(a.path, Tree::leaf()),
                            d.range().replace(b.path, Tree::leaf()));
        }
      }
    }
    for (int a : sig.arities()) {
      if (d.leaf_count() + static_cast<std::size_t>(a) - 1 > cap) continue;
      for (std::size_t leaf = 0; leaf < d.leaf_count(); ++leaf) {
        next.emplace_back(d.domain().graft(leaf, Tree::caret(a)),
                          d.range().graft(leaf, Tree::caret(a)));
      }
    }
    for (const Tree& t : substitution_neighbors(d.domain())) next.emplace_back(t, d.range());
    for (const Tree& t : substitution_neighbors(d.range())) next.emplace_back(d.domain(), t);
    for (TreePair& n : next) {
      if (seen.count(n)) continue;
      seen.emplace(n, std::max(path_max, n.leaf_count()));
      queue.push_back(std::move(n));
    }
  }
  result.states = seen.size();
  return result;
}

bool move_closure_check(const TreePair& x, std::size_t budget, const GroupSignature& sig) {
  return move_search(x, budget, sig).reached;
}

}  // namespace tsg
