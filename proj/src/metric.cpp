#include "tsg/metric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace tsg {

namespace {

MetricConstants compute_constants(const GroupSignature& sig) {
  MetricConstants m;
  const long n1 = sig.min_arity();
  const long nk = sig.max_arity();
  m.b = sig.vine_factor(sig.size() - 1);
  m.B = nk;
  for (long i = 0; i < m.b; ++i) m.B *= n1;
  m.a = nk + n1;
  for (const Generator& g : finite_generators(sig)) {
    const CanonicalElement x = evaluate({g}, sig);
    m.leaf_max = std::max<long>(m.leaf_max, x.leaf_count);
    m.depth_max = std::max<long>(m.depth_max, x.depth);
    // g^-1 has the trees swapped, so both trees serve as a range
    for (const Tree* t : {&x.rep.range(), &x.rep.domain()}) {
      std::vector<int> top(sig.size(), 0);
      for (const ValenceVector& v : valences(*t, sig))
        for (std::size_t i = 0; i < top.size(); ++i)
          top[i] = std::max(top[i], v.counts[i]);
      long leaves = 1;
      for (std::size_t i = 0; i < top.size(); ++i)
        for (int e = 0; e < top[i]; ++e) leaves *= sig.arity(i);
      m.growth = std::max(m.growth, leaves);
    }
  }
  return m;
}

}  // namespace

MetricConstants MetricConstants::of(const GroupSignature& sig) {
  sig.require_divisible("metric constants");
  static std::mutex mutex;
  static std::map<std::vector<int>, MetricConstants> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(sig.arities());
  if (it == cache.end()) it = cache.emplace(sig.arities(), compute_constants(sig)).first;
  return it->second;
}

namespace {

std::size_t chain_bound(std::size_t leaves, long a, long B) {
  unsigned long long v = a;
  std::size_t n = 0;
  while (v < leaves) {
    v *= B;
    ++n;
  }
  return n + 1;
}

}  // namespace

std::size_t lower_bound(const CanonicalElement& x, const GroupSignature& sig) {
  if (x.map.is_identity()) return 0;
  const MetricConstants m = MetricConstants::of(sig);
  return chain_bound(x.leaf_count, m.chain_a(), m.chain_B());
}

std::size_t nominal_lower_bound(const CanonicalElement& x, const GroupSignature& sig) {
  if (x.map.is_identity()) return 0;
  const MetricConstants m = MetricConstants::of(sig);
  return chain_bound(x.leaf_count, m.a, m.B);
}

namespace {

Generator z10(int e) { return {Family::Z, 1, 0, e}; }

void append_conjugated(Word& out, const Generator& g, long shift) {
  if (shift > 0) out.push_back(z10(static_cast<int>(-shift)));
  out.push_back(g);
  if (shift > 0) out.push_back(z10(static_cast<int>(shift)));
}

}  // namespace

Word to_finite_word(const CanonicalElement& x, const GroupSignature& sig) {
  sig.require_divisible("finite words");
  const long step = sig.min_arity() - 1;
  Word out;
  for (const Generator& g : normal_form(x, sig).word()) {
    const long top = sig.arity(g.j - 1) - 1;  // largest subscript in X
    if (g.i <= top) {
      out.push_back(g);
    } else if (g.family == Family::Z) {
      // (z_m)_{i + n_1 - 1} = (z_1)_0^-1 (z_m)_i (z_1)_0 for i >= 1
      const long q = (g.i - top + step - 1) / step;
      append_conjugated(out, {g.family, g.j, g.i - q * step, g.exponent}, q);
    } else {
      // (y_m)_{i + 1} = (z_1)_0^-1 (y_m)_i (z_1)_0 for i >= 1
      append_conjugated(out, {g.family, g.j, top, g.exponent}, g.i - top);
    }
  }
  return normalize(out);
}

CayleyBall::CayleyBall(const GroupSignature& sig, int radius) : radius_(radius) {
  std::vector<PLMap> steps;
  for (const Generator& g : finite_generators(sig)) {
    steps.push_back(word_map({g}, sig));
    steps.push_back(word_map({g.inverse()}, sig));
  }
  spheres_.push_back({PLMap()});
  length_.emplace(PLMap(), 0);
  for (int r = 1; r <= radius; ++r) {
    std::vector<PLMap> next;
    for (const PLMap& f : spheres_.back())
      for (const PLMap& s : steps) {
        PLMap h = compose(f, s);
        if (length_.emplace(h, r).second) next.push_back(std::move(h));
      }
    spheres_.push_back(std::move(next));
  }
}

std::optional<int> CayleyBall::length(const PLMap& f) const {
  auto it = length_.find(f);
  if (it == length_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> bfs_length(const CanonicalElement& x, int maxRadius,
                              const GroupSignature& sig) {
  return CayleyBall(sig, maxRadius).length(x.map);
}

namespace {

bool uniform(const Tree& t, int arity) {
  if (t.is_leaf()) return true;
  if (t.arity() != arity) return false;
  return std::all_of(t.children().begin(), t.children().end(),
                     [&](const Tree& c) { return uniform(c, arity); });
}

bool full(const Tree& t, int arity, int depth) {
  if (t.is_leaf()) return depth == 0;
  if (t.arity() != arity || depth == 0) return false;
  return std::all_of(t.children().begin(), t.children().end(),
                     [&](const Tree& c) { return full(c, arity, depth - 1); });
}

}  // namespace

std::vector<GrowthRow> growth_experiment(int j, int nMax, const GroupSignature& sig,
                                         int bfsRadius) {
  sig.require_divisible("growth experiment");
  if (j < 2 || j > static_cast<int>(sig.size()))
    throw std::invalid_argument("growth experiment needs 2 <= j <= k");
  const int nj = sig.arity(j - 1);
  std::optional<CayleyBall> ball;
  if (bfsRadius > 0) ball.emplace(sig, std::min(bfsRadius, nMax));
  std::vector<GrowthRow> rows;
  std::size_t expected = 1;
  for (int n = 1; n <= nMax; ++n) {
    expected *= nj;
    const CanonicalElement x = evaluate({{Family::Y, j, 0, n}}, sig);
    GrowthRow row;
    row.n = n;
    row.leaves = x.leaf_count;
    row.lower_bound = lower_bound(x, sig);
    row.finite_word_length = word_length(to_finite_word(x, sig));
    if (ball) row.bfs_length = ball->length(x.map);
    row.matches_law = x.leaf_count == expected;
    row.domain_n1_ary = uniform(x.rep.domain(), sig.min_arity());
    row.range_balanced = full(x.rep.range(), nj, n);
    rows.push_back(row);
  }
  return rows;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream os;
  os << "n,leaves,lower_bound,finite_word_length,bfs_length\n";
  for (const GrowthRow& r : rows) {
    os << r.n << ',' << r.leaves << ',' << r.lower_bound << ',' << r.finite_word_length << ',';
    if (r.bfs_length) os << *r.bfs_length;
    os << '\n';
  }
  return os.str();
}

bool depth_bound_check(const CanonicalElement& x, std::size_t length,
                       const GroupSignature& sig, const LeafCount& leaves) {
  const MetricConstants m = MetricConstants::of(sig);
  if (static_cast<std::size_t>(x.depth) >
      static_cast<std::size_t>(m.depth_factor()) * length)
    return false;
  const std::size_t factor = static_cast<std::size_t>(m.chain_B());
  for (const Generator& g : finite_generators(sig))
    for (const Generator& h : {g, g.inverse()}) {
      const PLMap xg = compose(x.map, word_map({h}, sig));
      const std::size_t l = leaves ? leaves(xg) : minimal_leaf_count(xg, sig);
      if (l > factor * x.leaf_count) return false;
    }
  return true;
}

}  // namespace tsg
