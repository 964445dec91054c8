#include "tsg/tree.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <ostream>
#include <sstream>

#include "tsg/errors.hpp"

namespace tsg {

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Tree::Tree() {
  static const auto kLeaf = [] {
    auto n = std::make_shared<Node>();
    n->hash = 0x51ed270b;
    return std::shared_ptr<const Node>(n);
  }();
  node_ = kLeaf;
}

Tree Tree::caret(int arity) {
  return caret(arity, std::vector<Tree>(static_cast<std::size_t>(arity)));
}

Tree Tree::caret(int arity, std::vector<Tree> children) {
  if (arity < 2 || children.size() != static_cast<std::size_t>(arity)) {
    throw std::invalid_argument("caret of arity " + std::to_string(arity) +
                                " needs exactly that many children");
  }
  auto n = std::make_shared<Node>();
  n->arity = arity;
  n->leaves = 0;
  n->carets = 1;
  n->hash = combine(0x7f4a7c15, static_cast<std::size_t>(arity));
  for (const Tree& c : children) {
    n->leaves += c.leaf_count();
    n->carets += c.caret_count();
    n->depth = std::max(n->depth, c.depth() + 1);
    n->hash = combine(n->hash, c.hash());
  }
  if (n->depth == 0) n->depth = 1;
  n->children = std::move(children);
  return Tree(std::shared_ptr<const Node>(std::move(n)));
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.arity() != b.arity() ||
      a.leaf_count() != b.leaf_count()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!(a.child(i) == b.child(i))) return false;
  }
  return true;
}

const Tree& Tree::at(const TreePath& path) const {
  const Tree* cur = this;
  for (int i : path) {
    if (cur->is_leaf() || i < 0 || i >= cur->arity()) {
      throw std::out_of_range("tree path leaves the tree");
    }
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return *cur;
}

Tree Tree::replace(const TreePath& path, const Tree& subtree) const {
  std::function<Tree(const Tree&, std::size_t)> rec = [&](const Tree& t,
                                                          std::size_t d) -> Tree {
    if (d == path.size()) return subtree;
    int i = path[d];
    if (t.is_leaf() || i < 0 || i >= t.arity()) {
      throw std::out_of_range("tree path leaves the tree");
    }
    std::vector<Tree> kids = t.children();
    kids[static_cast<std::size_t>(i)] = rec(kids[static_cast<std::size_t>(i)], d + 1);
    return Tree::caret(t.arity(), std::move(kids));
  };
  return rec(*this, 0);
}

Tree Tree::graft(std::size_t leaf_index, const Tree& subtree) const {
  if (leaf_index >= leaf_count()) throw std::out_of_range("leaf index out of range");
  if (is_leaf()) return subtree;
  std::vector<Tree> kids = children();
  for (Tree& c : kids) {
    if (leaf_index < c.leaf_count()) {
      c = c.graft(leaf_index, subtree);
      break;
    }
    leaf_index -= c.leaf_count();
  }
  return Tree::caret(arity(), std::move(kids));
}

Tree Tree::graft_all(const std::vector<Tree>& grafts) const {
  if (grafts.size() != leaf_count()) {
    throw std::invalid_argument("graft_all needs one tree per leaf");
  }
  std::size_t next = 0;
  std::function<Tree(const Tree&)> rec = [&](const Tree& t) -> Tree {
    if (t.is_leaf()) return grafts[next++];
    std::vector<Tree> kids;
    kids.reserve(t.children().size());
    bool changed = false;
    for (const Tree& c : t.children()) {
      kids.push_back(rec(c));
      changed = changed || kids.back().node_ != c.node_;
    }
    return changed ? Tree::caret(t.arity(), std::move(kids)) : t;
  };
  return rec(*this);
}

std::vector<int> Tree::level_order_types() const {
  std::vector<int> out;
  std::deque<const Tree*> queue{this};
  while (!queue.empty()) {
    const Tree* t = queue.front();
    queue.pop_front();
    if (t->is_leaf()) continue;
    out.push_back(t->arity());
    for (const Tree& c : t->children()) queue.push_back(&c);
  }
  return out;
}

std::vector<int> Tree::level_order_shape() const {
  std::vector<int> out;
  std::deque<const Tree*> queue{this};
  while (!queue.empty()) {
    const Tree* t = queue.front();
    queue.pop_front();
    out.push_back(t->arity());
    for (const Tree& c : t->children()) queue.push_back(&c);
  }
  return out;
}

std::string Tree::str() const {
  if (is_leaf()) return ".";
  std::string s = "[" + std::to_string(arity());
  for (const Tree& c : children()) {
    s += ' ';
    s += c.str();
  }
  s += ']';
  return s;
}

std::ostream& operator<<(std::ostream& os, const Tree& t) { return os << t.str(); }

Tree Tree::parse_prefix(std::string_view text, std::size_t& pos,
                        const GroupSignature& sig) {
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size()) throw ParseError("unexpected end of tree", pos);
  if (text[pos] == '.') {
    ++pos;
    return Tree::leaf();
  }
  if (text[pos] != '[') {
    throw ParseError(std::string("expected '.' or '[' but found '") + text[pos] + "'", pos);
  }
  ++pos;
  skip();
  std::size_t start = pos;
  int arity = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    arity = arity * 10 + (text[pos] - '0');
    if (arity > 1000000) throw ParseError("arity too large", start);
    ++pos;
  }
  if (pos == start) throw ParseError("expected caret arity", pos);
  if (!sig.contains(arity)) {
    throw ParseError("arity " + std::to_string(arity) + " is not in the signature (" +
                         sig.str() + ")",
                     start);
  }
  std::vector<Tree> kids;
  for (int i = 0; i < arity; ++i) kids.push_back(parse_prefix(text, pos, sig));
  skip();
  if (pos >= text.size() || text[pos] != ']') {
    throw ParseError("expected ']' closing caret of arity " + std::to_string(arity), pos);
  }
  ++pos;
  return Tree::caret(arity, std::move(kids));
}

Tree Tree::parse(std::string_view text, const GroupSignature& sig) {
  std::size_t pos = 0;
  Tree t = parse_prefix(text, pos, sig);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw ParseError("trailing characters after tree", pos);
  return t;
}

std::vector<Interval> subdivision(const Tree& t) {
  std::vector<Interval> out;
  out.reserve(t.leaf_count());
  std::function<void(const Tree&, const Rational&, const Rational&)> rec =
      [&](const Tree& node, const Rational& lo, const Rational& len) {
        if (node.is_leaf()) {
          out.push_back({lo, lo + len});
          return;
        }
        Rational step = len / Rational(node.arity());
        Rational cur = lo;
        for (const Tree& c : node.children()) {
          rec(c, cur, step);
          cur += step;
        }
      };
  rec(t, Rational(0), Rational(1));
  return out;
}

std::vector<Rational> subdivision_points(const Tree& t) {
  std::vector<Rational> pts{Rational(0)};
  for (const Interval& iv : subdivision(t)) pts.push_back(iv.hi);
  return pts;
}

std::vector<ValenceVector> valences(const Tree& t, const GroupSignature& sig) {
  std::vector<ValenceVector> out;
  out.reserve(t.leaf_count());
  ValenceVector cur{std::vector<int>(sig.size(), 0)};
  std::function<void(const Tree&)> rec = [&](const Tree& node) {
    if (node.is_leaf()) {
      out.push_back(cur);
      return;
    }
    int idx = sig.index_of(node.arity());
    if (idx < 0) throw std::invalid_argument("tree arity outside the signature");
    ++cur.counts[static_cast<std::size_t>(idx)];
    for (const Tree& c : node.children()) rec(c);
    --cur.counts[static_cast<std::size_t>(idx)];
  };
  rec(t);
  return out;
}

namespace {

// Valence vectors of all leaves, concatenated.
void flat_valences(const Tree& node, const GroupSignature& sig, std::vector<int>& cur,
                   std::vector<int>& out) {
  if (node.is_leaf()) {
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  int idx = sig.index_of(node.arity());
  if (idx < 0) throw std::invalid_argument("tree arity outside the signature");
  ++cur[static_cast<std::size_t>(idx)];
  for (const Tree& c : node.children()) flat_valences(c, sig, cur, out);
  --cur[static_cast<std::size_t>(idx)];
}

}  // namespace

bool trees_equivalent(const Tree& t, const Tree& s, const GroupSignature& sig) {
  if (t.leaf_count() != s.leaf_count()) return false;
  thread_local std::vector<int> cur, a, b;
  cur.assign(sig.size(), 0);
  a.clear();
  b.clear();
  flat_valences(t, sig, cur, a);
  flat_valences(s, sig, cur, b);
  return a == b;
}

Tree substitute(const Tree& t, const TreePath& path, int p, int q) {
  if (p == q) throw PatternMismatch("substitution needs two distinct arities");
  const Tree& top = t.at(path);
  if (top.arity() != p) {
    throw PatternMismatch("node does not root a " + std::to_string(p) + "-caret");
  }
  std::vector<Tree> flat;
  flat.reserve(static_cast<std::size_t>(p * q));
  for (const Tree& c : top.children()) {
    if (c.arity() != q) {
      throw PatternMismatch("children of the " + std::to_string(p) +
                            "-caret are not all " + std::to_string(q) + "-carets");
    }
    flat.insert(flat.end(), c.children().begin(), c.children().end());
  }
  std::vector<Tree> outer;
  outer.reserve(static_cast<std::size_t>(q));
  for (int b = 0; b < q; ++b) {
    std::vector<Tree> inner(flat.begin() + b * p, flat.begin() + (b + 1) * p);
    outer.push_back(Tree::caret(p, std::move(inner)));
  }
  return t.replace(path, Tree::caret(q, std::move(outer)));
}

Tree apply_move(const Tree& t, const SubstitutionMove& move) {
  return substitute(t, move.path, move.from_arity, move.to_arity);
}

namespace {

bool all_leaves_reach(const Tree& t, int m) {
  if (t.is_leaf()) return false;
  if (t.arity() == m) return true;
  for (const Tree& c : t.children()) {
    if (!all_leaves_reach(c, m)) return false;
  }
  return true;
}

// First caret (depth-first, left to right) of the m-free rooted subtree whose
// children are all m-carets.
bool find_exposed(const Tree& t, int m, TreePath& path) {
  bool all_m = true;
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    const Tree& c = t.child(i);
    if (c.arity() != m) {
      all_m = false;
      path.push_back(static_cast<int>(i));
      if (find_exposed(c, m, path)) return true;
      path.pop_back();
    }
  }
  return all_m;
}

}  // namespace

std::optional<Tree> retype_root(const Tree& t, int m, const GroupSignature& sig,
                                std::vector<SubstitutionMove>* moves) {
  if (!sig.contains(m)) throw std::invalid_argument("arity outside the signature");
  if (!all_leaves_reach(t, m)) return std::nullopt;
  Tree cur = t;
  while (cur.arity() != m) {
    TreePath path;
    find_exposed(cur, m, path);
    SubstitutionMove move{path, cur.at(path).arity(), m};
    cur = apply_move(cur, move);
    if (moves) moves->push_back(std::move(move));
  }
  return cur;
}

std::optional<std::vector<SubstitutionMove>> transform_sequence(
    const Tree& t, const Tree& s, const GroupSignature& sig) {
  if (!trees_equivalent(t, s, sig)) return std::nullopt;
  std::vector<SubstitutionMove> moves;
  Tree cur = t;
  std::deque<TreePath> queue{TreePath{}};
  while (!queue.empty()) {
    TreePath path = std::move(queue.front());
    queue.pop_front();
    const Tree& target = s.at(path);
    if (target.is_leaf()) continue;
    const Tree& here = cur.at(path);
    if (here.arity() != target.arity()) {
      std::vector<SubstitutionMove> local;
      auto retyped = retype_root(here, target.arity(), sig, &local);
      if (!retyped) return std::nullopt;
      for (SubstitutionMove& mv : local) {
        mv.path.insert(mv.path.begin(), path.begin(), path.end());
        moves.push_back(std::move(mv));
      }
      cur = cur.replace(path, *retyped);
    }
    for (int i = 0; i < target.arity(); ++i) {
      TreePath next = path;
      next.push_back(i);
      queue.push_back(std::move(next));
    }
  }
  return moves;
}

Tree balanced_tree(const ValenceVector& v, const GroupSignature& sig) {
  if (v.counts.size() != sig.size()) {
    throw std::invalid_argument("valence vector length differs from signature size");
  }
  std::vector<int> rows;
  for (std::size_t j = 0; j < v.counts.size(); ++j) {
    if (v.counts[j] < 0) throw std::invalid_argument("negative valence");
    rows.insert(rows.end(), static_cast<std::size_t>(v.counts[j]), sig.arity(j));
  }
  Tree t;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    t = Tree::caret(*it, std::vector<Tree>(static_cast<std::size_t>(*it), t));
  }
  return t;
}

Tree right_vine(int arity, std::size_t carets) {
  Tree t;
  for (std::size_t i = 0; i < carets; ++i) {
    std::vector<Tree> kids(static_cast<std::size_t>(arity));
    kids.back() = t;
    t = Tree::caret(arity, std::move(kids));
  }
  return t;
}

namespace {

class TreeCatalog {
 public:
  explicit TreeCatalog(const GroupSignature& sig) : sig_(sig) {}

  const std::vector<Tree>& get(std::size_t leaves) {
    auto it = memo_.find(leaves);
    if (it != memo_.end()) return it->second;
    std::vector<Tree> out;
    if (leaves == 1) {
      out.push_back(Tree::leaf());
    } else {
      for (int a : sig_.arities()) {
        if (static_cast<std::size_t>(a) > leaves) continue;
        std::vector<std::size_t> parts(static_cast<std::size_t>(a), 1);
        compositions(leaves, parts, 0, leaves - static_cast<std::size_t>(a), out, a);
      }
    }
    return memo_.emplace(leaves, std::move(out)).first->second;
  }

 private:
  void compositions(std::size_t total, std::vector<std::size_t>& parts, std::size_t idx,
                    std::size_t spare, std::vector<Tree>& out, int a) {
    if (idx + 1 == parts.size()) {
      parts[idx] = 1 + spare;
      emit(parts, out, a);
      return;
    }
    for (std::size_t extra = 0; extra <= spare; ++extra) {
      parts[idx] = 1 + extra;
      compositions(total, parts, idx + 1, spare - extra, out, a);
    }
  }

  void emit(const std::vector<std::size_t>& parts, std::vector<Tree>& out, int a) {
    std::vector<const std::vector<Tree>*> lists;
    for (std::size_t p : parts) {
      const auto& l = get(p);
      if (l.empty()) return;
      lists.push_back(&l);
    }
    std::vector<std::size_t> idx(parts.size(), 0);
    while (true) {
      std::vector<Tree> kids;
      kids.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) kids.push_back((*lists[i])[idx[i]]);
      out.push_back(Tree::caret(a, std::move(kids)));
      std::size_t pos = parts.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < lists[pos]->size()) break;
        idx[pos] = 0;
        if (pos == 0) return;
      }
    }
  }

  const GroupSignature& sig_;
  std::map<std::size_t, std::vector<Tree>> memo_;
};

}  // namespace

std::vector<Tree> enumerate_trees(std::size_t leaves, const GroupSignature& sig) {
  if (leaves == 0) throw std::invalid_argument("a tree has at least one leaf");
  TreeCatalog catalog(sig);
  return catalog.get(leaves);
}

void for_each_tree(std::size_t leaves, const GroupSignature& sig,
                   const std::function<void(const Tree&)>& visit) {
  for (const Tree& t : enumerate_trees(leaves, sig)) visit(t);
}

}  // namespace tsg
