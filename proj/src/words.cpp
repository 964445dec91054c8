#include "tsg/words.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tsg/errors.hpp"

namespace tsg {

std::string Generator::str() const {
  std::string s = (family == Family::Y ? "y" : "z") + std::to_string(j) + "_" + std::to_string(i);
  if (exponent != 1) s += "^" + std::to_string(exponent);
  return s;
}

Word parse_word(std::string_view text, const GroupSignature& sig) {
  Word out;
  std::size_t pos = 0;
  auto digits = [&](std::size_t& p, const char* what) -> long {
    std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p == start) throw ParseError(std::string("expected ") + what, start);
    if (p - start > 9) throw ParseError(std::string(what) + " too large", start);
    return std::stol(std::string(text.substr(start, p - start)));
  };
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    Generator g;
    char c = text[pos];
    if (c == 'y') g.family = Family::Y;
    else if (c == 'z') g.family = Family::Z;
    else throw ParseError(std::string("unexpected character '") + c + "'", pos);
    ++pos;
    std::size_t family_at = pos;
    long j = digits(pos, "family index");
    if (j < 1 || static_cast<std::size_t>(j) > sig.size()) {
      throw ParseError("unknown family index " + std::to_string(j) + " for F(" + sig.str() + ")",
                       family_at);
    }
    g.j = static_cast<int>(j);
    if (pos >= text.size() || text[pos] != '_') throw ParseError("expected '_'", pos);
    ++pos;
    g.i = digits(pos, "subscript");
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::size_t exp_at = pos;
      bool negative = pos < text.size() && text[pos] == '-';
      if (negative) ++pos;
      long e = digits(pos, "exponent");
      if (e == 0) throw ParseError("zero exponent", exp_at);
      g.exponent = static_cast<int>(negative ? -e : e);
    }
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("expected whitespace after generator", pos);
    }
    out.push_back(g);
  }
  return out;
}

std::string print_word(const Word& w) {
  std::string s;
  for (const Generator& g : w) {
    if (!s.empty()) s += ' ';
    s += g.str();
  }
  return s;
}

Word normalize(const Word& w) {
  Word out;
  for (const Generator& g : w) {
    if (!out.empty() && out.back().same_letter(g)) {
      out.back().exponent += g.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else if (g.exponent != 0) {
      out.push_back(g);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::size_t word_length(const Word& w) {
  std::size_t n = 0;
  for (const Generator& g : w) n += static_cast<std::size_t>(std::abs(g.exponent));
  return n;
}

TreePair generator_diagram(const Generator& g, const GroupSignature& sig) {
  if (g.exponent != 1 && g.exponent != -1) {
    throw std::invalid_argument("generator_diagram takes exponent +1 or -1");
  }
  if (g.i < 0) throw std::invalid_argument("negative generator subscript");
  if (g.j < 1 || static_cast<std::size_t>(g.j) > sig.size()) {
    throw std::invalid_argument("unknown family index " + std::to_string(g.j));
  }
  const std::size_t jj = static_cast<std::size_t>(g.j - 1);
  const int n1 = sig.min_arity();
  const int nj = sig.arity(jj);
  if (g.family == Family::Y && g.j == 1) return TreePair();
  if (g.j >= 2) sig.require_divisible("the generator " + Generator{g.family, g.j, g.i, 1}.str());
  const std::size_t b = static_cast<std::size_t>(g.j == 1 ? 1 : sig.vine_factor(jj));
  const std::size_t i = static_cast<std::size_t>(g.i);
  TreePair d;
  if (g.family == Family::Z) {
    std::size_t q = i / static_cast<std::size_t>(n1 - 1);
    Tree range = right_vine(n1, q + 1).graft(i, Tree::caret(nj));
    d = TreePair(right_vine(n1, q + 1 + b), range);
  } else {
    Tree range = right_vine(n1, i);
    range = range.graft(range.leaf_count() - 1, Tree::caret(nj));
    d = TreePair(right_vine(n1, i + b), range);
  }
  return g.exponent == 1 ? d : invert(d);
}

namespace {

const PLMap& letter_map(const Generator& g, const GroupSignature& sig) {
  static std::mutex lock;
  static std::map<std::tuple<std::string, int, int, long, int>, PLMap> cache;
  auto key = std::make_tuple(sig.str(), static_cast<int>(g.family), g.j, g.i, g.exponent > 0 ? 1 : -1);
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Generator unit = g;
  unit.exponent = g.exponent > 0 ? 1 : -1;
  return cache.emplace(key, to_map(generator_diagram(unit, sig))).first->second;
}

}  // namespace

PLMap word_map(const Word& w, const GroupSignature& sig) {
  PLMap f;
  for (const Generator& g : w) {
    const PLMap& step = letter_map(g, sig);
    for (int e = 0; e < std::abs(g.exponent); ++e) f = compose(f, step);
  }
  return f;
}

CanonicalElement evaluate(const Word& w, const GroupSignature& sig) {
  return canonicalize(word_map(w, sig), sig);
}

std::vector<LeafExponentMatrix> leaf_exponent_matrices(const Tree& t) {
  struct Step {
    int arity;
    int child;
    bool right;
  };
  std::vector<LeafExponentMatrix> out;
  std::vector<Step> path;
  std::function<void(const Tree&, bool)> rec = [&](const Tree& node, bool on_spine) {
    if (node.is_leaf()) {
      // climb through leftmost edges of non-right carets, leaf-nearest first
      std::vector<int> types;
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (it->child != 0 || it->right) break;
        types.push_back(it->arity);
      }
      LeafExponentMatrix m;
      for (auto it = types.rbegin(); it != types.rend(); ++it) {
        if (!m.empty() && m.back().caret_type == *it) ++m.back().run;
        else m.push_back({*it, 1});
      }
      out.push_back(std::move(m));
      return;
    }
    const int last = node.arity() - 1;
    for (int c = 0; c <= last; ++c) {
      path.push_back({node.arity(), c, on_spine});
      rec(node.child(static_cast<std::size_t>(c)), on_spine && c == last);
      path.pop_back();
    }
  };
  rec(t, true);
  return out;
}

std::vector<Tree> right_spine(const Tree& t) {
  std::vector<Tree> out;
  for (const Tree* n = &t; !n->is_leaf(); n = &n->children().back()) out.push_back(*n);
  return out;
}

PositiveFactors positive_factor(const CanonicalElement& x, const GroupSignature& sig) {
  sig.require_divisible("positive factorization");
  const std::size_t leaves = x.rep.leaf_count();
  const std::size_t step = static_cast<std::size_t>(sig.min_arity() - 1);
  if ((leaves - 1) % step != 0) {
    throw std::logic_error("leaf count incompatible with an n_1-ary vine");
  }
  Tree vine = right_vine(sig.min_arity(), (leaves - 1) / step);
  return {TreePair(vine, x.rep.range()), TreePair(vine, x.rep.domain())};
}

std::pair<std::vector<YLetter>, std::vector<ZLetter>> positive_normal_form(
    const Tree& t, const GroupSignature& sig) {
  sig.require_divisible("the normal form");
  const long n1 = sig.min_arity();
  std::vector<YLetter> ys;
  long pos = 0;  // leaves of the right-caret subtree left of the current caret
  for (const Tree& c : right_spine(t)) {
    if (c.arity() != n1) ys.push_back({sig.index_of(c.arity()) + 1, pos / (n1 - 1)});
    pos += c.arity() - 1;
  }
  std::vector<ZLetter> zs;
  std::vector<LeafExponentMatrix> mats = leaf_exponent_matrices(t);
  for (std::size_t leaf = 0; leaf < mats.size(); ++leaf) {
    for (const ExponentColumn& col : mats[leaf]) {
      zs.push_back({sig.index_of(col.caret_type) + 1, static_cast<long>(leaf), col.run});
    }
  }
  return {std::move(ys), std::move(zs)};
}

NormalForm normal_form(const CanonicalElement& x, const GroupSignature& sig) {
  sig.require_divisible("the normal form");
  NormalForm nf;
  std::tie(nf.y_pos, nf.z_pos) = positive_normal_form(x.rep.range(), sig);
  std::tie(nf.y_neg, nf.z_neg) = positive_normal_form(x.rep.domain(), sig);
  return nf;
}

std::optional<Tree> positive_tree(const std::vector<YLetter>& ys,
                                  const std::vector<ZLetter>& zs,
                                  const GroupSignature& sig, std::size_t max_leaves) {
  sig.require_divisible("the normal form");
  Word w;
  for (const YLetter& y : ys) w.push_back({Family::Y, y.family, y.index, 1});
  for (const ZLetter& z : zs) w.push_back({Family::Z, z.family, z.index, z.power});
  const PLMap f = word_map(w, sig);
  const int n1 = sig.min_arity();
  // T's leaves are the images of the vine's leaves
  for (std::size_t carets = 0; 1 + carets * (n1 - 1) <= max_leaves; ++carets) {
    const std::vector<Rational> pts = subdivision_points(right_vine(n1, carets));
    bool affine = true;
    for (std::size_t i = 1; i < pts.size() && affine; ++i) affine = f.affine_on(pts[i - 1], pts[i]);
    if (!affine) continue;
    std::vector<Rational> image;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) image.push_back(f(pts[i]));
    for (const Tree& t : all_realizations(image, sig)) {
      auto [ty, tz] = positive_normal_form(t, sig);
      if (ty == ys && tz == zs) return t;
    }
  }
  return std::nullopt;
}

Word NormalForm::word() const {
  Word w;
  for (const YLetter& y : y_pos) w.push_back({Family::Y, y.family, y.index, 1});
  for (const ZLetter& z : z_pos) w.push_back({Family::Z, z.family, z.index, z.power});
  for (auto it = z_neg.rbegin(); it != z_neg.rend(); ++it) {
    w.push_back({Family::Z, it->family, it->index, -it->power});
  }
  for (auto it = y_neg.rbegin(); it != y_neg.rend(); ++it) {
    w.push_back({Family::Y, it->family, it->index, -1});
  }
  return w;
}

NormalFormReport check_normal_form(const NormalForm& nf, const GroupSignature& sig) {
  NormalFormReport report;
  const long k = static_cast<long>(sig.size());
  auto check_y = [&](const std::vector<YLetter>& ys, const char* side) {
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (ys[i].family < 2 || ys[i].family > k) {
        report.violations.push_back(std::string(side) + " y letter with family " +
                                    std::to_string(ys[i].family));
        continue;
      }
      if (ys[i].index < 0) report.violations.push_back(std::string(side) + " negative y index");
      if (i + 1 < ys.size()) {
        long gap = sig.vine_factor(static_cast<std::size_t>(ys[i].family - 1));
        if (ys[i + 1].index < ys[i].index + gap) {
          report.violations.push_back(std::string(side) + " y indices " +
                                      std::to_string(ys[i].index) + ", " +
                                      std::to_string(ys[i + 1].index) + " closer than " +
                                      std::to_string(gap));
        }
      }
    }
  };
  auto check_z = [&](const std::vector<ZLetter>& zs, const char* side) {
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (zs[i].family < 1 || zs[i].family > k || zs[i].power < 1 || zs[i].index < 0) {
        report.violations.push_back(std::string(side) + " malformed z letter");
      }
      if (i + 1 < zs.size()) {
        if (zs[i + 1].index < zs[i].index) {
          report.violations.push_back(std::string(side) + " z indices decrease");
        } else if (zs[i + 1].index == zs[i].index && zs[i + 1].family == zs[i].family) {
          report.violations.push_back(std::string(side) + " repeated z family at index " +
                                      std::to_string(zs[i].index));
        }
      }
    }
  };
  check_y(nf.y_pos, "positive");
  check_y(nf.y_neg, "negative");
  check_z(nf.z_pos, "positive");
  check_z(nf.z_neg, "negative");
  report.alpha_meets_gamma = !nf.z_pos.empty() && !nf.z_neg.empty() &&
                             nf.z_pos.back().index == nf.z_neg.back().index;
  return report;
}

std::vector<Generator> finite_generators(const GroupSignature& sig) {
  std::vector<Generator> out;
  for (std::size_t j = 1; j < sig.size(); ++j) {
    for (long i = 0; i < sig.arity(j); ++i) out.push_back({Family::Y, static_cast<int>(j + 1), i, 1});
  }
  for (std::size_t j = 0; j < sig.size(); ++j) {
    for (long i = 0; i < sig.arity(j); ++i) out.push_back({Family::Z, static_cast<int>(j + 1), i, 1});
  }
  return out;
}

namespace {

Generator Y(int j, long i, int e = 1) { return {Family::Y, j, i, e}; }
Generator Z(int j, long i, int e = 1) { return {Family::Z, j, i, e}; }

// (z_i)_p (z_i)_{p+step} ... with count letters.
void z_run(Word& w, int family, long start, long step, long count) {
  for (long t = 0; t < count; ++t) w.push_back(Z(family, start + t * step));
}

Word conjugate(const Word& by, const Word& w) {
  Word out = inverse(by);
  out.insert(out.end(), w.begin(), w.end());
  out.insert(out.end(), by.begin(), by.end());
  return out;
}

}  // namespace

std::vector<Relator> relators(const GroupSignature& sig, bool finite) {
  sig.require_divisible("the group presentation");
  const int k = static_cast<int>(sig.size());
  const long n1 = sig.min_arity();
  auto n = [&](int j) { return static_cast<long>(sig.arity(static_cast<std::size_t>(j - 1))); };
  auto b = [&](int j) { return static_cast<long>(sig.vine_factor(static_cast<std::size_t>(j - 1))); };
  std::vector<Relator> out;

  // gamma_j (z_r)_i = (z_r)_i gamma_{j + shift}
  auto shifted = [&](const Generator& g, int r) {
    Generator h = g;
    h.i += g.family == Family::Z ? n(r) - 1 : b(r);
    return h;
  };
  // the tree-substitution relations, carets on the right side
  auto right_relation = [&](int i, int j, long l) {
    Relator rel{finite ? "finite-2" : "infinite-2", {}, {}};
    const long p = (n1 - 1) * l;
    rel.lhs = {Y(i, l), Y(j, l + b(i))};
    z_run(rel.lhs, j, p, n(j), n(i) - 1);
    rel.rhs = {Y(j, l), Y(i, l + b(j))};
    z_run(rel.rhs, i, p, n(i), n(j) - 1);
    return rel;
  };
  // the tree-substitution relations away from the right side
  auto inner_relation = [&](int i, int j, long l) {
    Relator rel{finite ? "finite-3" : "infinite-3", {Z(i, l)}, {Z(j, l)}};
    z_run(rel.lhs, j, l, n(j), n(i));
    z_run(rel.rhs, i, l, n(i), n(j));
    return rel;
  };

  if (!finite) {
    const long top = 2 * sig.max_arity();
    for (int r = 1; r <= k; ++r) {
      for (long i = 0; i <= top; ++i) {
        for (long j = 0; j <= top; ++j) {
          for (int m = 1; m <= k; ++m) {
            if (i < j) {
              Generator g = Z(m, j);
              out.push_back({"infinite-1z", {g, Z(r, i)}, {Z(r, i), shifted(g, r)}});
            }
            if (i < (n1 - 1) * j) {
              Generator g = Y(m, j);
              out.push_back({"infinite-1y", {g, Z(r, i)}, {Z(r, i), shifted(g, r)}});
            }
          }
        }
      }
    }
    for (int i = 1; i <= k; ++i) {
      for (int j = i + 1; j <= k; ++j) {
        for (long l = 0; l <= top; ++l) {
          out.push_back(right_relation(i, j, l));
          out.push_back(inner_relation(i, j, l));
        }
      }
    }
    return out;
  }

  for (int l = 1; l <= k; ++l) {
    Word z0 = {Z(l, 0)};
    for (int m = 1; m <= k; ++m) {
      for (Family fam : {Family::Y, Family::Z}) {
        for (long j = 0; j < n(m); ++j) {
          Word g = {{fam, m, j, 1}};
          for (long i = 0; i < j; ++i) {
            Word zi = {Z(l, i)};
            out.push_back({"finite-1a", conjugate(zi, g), conjugate(z0, g)});
            out.push_back({"finite-1b", conjugate(zi, conjugate(z0, g)),
                           conjugate({Z(l, 0, 2)}, g)});
          }
        }
        // printed with gamma_1 on the left and gamma_j on the right; the
        // identity holds with gamma_1 on both sides
        if (n(m) > 1) {
          Word g = {{fam, m, 1, 1}};
          out.push_back({"finite-1c", conjugate({Z(l, n(l) - 1)}, conjugate({Z(l, 0, 2)}, g)),
                         conjugate({Z(l, 0, 3)}, g)});
        }
      }
    }
  }
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      for (long l = 0; l <= 1; ++l) {
        out.push_back(right_relation(i, j, l));
        out.push_back(inner_relation(i, j, l));
      }
    }
  }
  return out;
}

}  // namespace tsg
