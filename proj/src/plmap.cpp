#include "tsg/plmap.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tsg {

PLMap::PLMap() : xs_{Rational(0), Rational(1)}, ys_{Rational(0), Rational(1)} {}

PLMap::PLMap(std::vector<Rational> xs, std::vector<Rational> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2) {
    throw std::invalid_argument("a PL map needs at least the two endpoints");
  }
  if (xs_.front() != Rational(0) || ys_.front() != Rational(0) ||
      xs_.back() != Rational(1) || ys_.back() != Rational(1)) {
    throw std::invalid_argument("a PL map must fix 0 and 1");
  }
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i - 1] < xs_[i]) || !(ys_[i - 1] < ys_[i])) {
      throw std::invalid_argument("PL map breakpoints must be strictly increasing");
    }
  }
  canonicalize();
}

void PLMap::canonicalize() {
  std::vector<Rational> nx{xs_.front()}, ny{ys_.front()};
  for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
    // drop (x_i, y_i) when it is collinear with the last kept point and the next one
    Rational left = (ys_[i] - ny.back()) * (xs_[i + 1] - xs_[i]);
    Rational right = (ys_[i + 1] - ys_[i]) * (xs_[i] - nx.back());
    if (left == right) continue;
    nx.push_back(xs_[i]);
    ny.push_back(ys_[i]);
  }
  nx.push_back(xs_.back());
  ny.push_back(ys_.back());
  xs_ = std::move(nx);
  ys_ = std::move(ny);
}

namespace {

Rational interpolate(const std::vector<Rational>& from, const std::vector<Rational>& to,
                     const Rational& v) {
  if (v < from.front() || v > from.back()) {
    throw std::out_of_range("PL map argument outside [0, 1]");
  }
  auto it = std::lower_bound(from.begin(), from.end(), v);
  std::size_t i = static_cast<std::size_t>(it - from.begin());
  if (*it == v) return to[i];
  return to[i - 1] + (to[i] - to[i - 1]) * (v - from[i - 1]) / (from[i] - from[i - 1]);
}

}  // namespace

Rational PLMap::operator()(const Rational& x) const { return interpolate(xs_, ys_, x); }

Rational PLMap::inverse_at(const Rational& y) const { return interpolate(ys_, xs_, y); }

Rational PLMap::slope_at(const Rational& x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i >= xs_.size()) i = xs_.size() - 1;
  if (i == 0) i = 1;
  return (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
}

std::vector<Rational> PLMap::slopes() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    out.push_back((ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]));
  }
  return out;
}

bool PLMap::affine_on(const Rational& lo, const Rational& hi) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), lo);
  return it == xs_.end() || !(*it < hi);
}

PLMap PLMap::inverse() const {
  PLMap r;
  r.xs_ = ys_;
  r.ys_ = xs_;
  return r;
}

bool PLMap::belongs_to(const GroupSignature& sig) const {
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!in_base_ring(xs_[i], sig) || !in_base_ring(ys_[i], sig)) return false;
  }
  for (const Rational& s : slopes()) {
    if (!slope_decompose(s, sig)) return false;
  }
  return true;
}

std::size_t PLMap::hash() const {
  std::size_t h = xs_.size();
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    h ^= xs_[i].hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= ys_[i].hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string PLMap::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (i) os << ';';
    os << xs_[i] << ',' << ys_[i];
  }
  return os.str();
}

PLMap PLMap::parse(std::string_view text) {
  std::vector<Rational> xs, ys;
  std::size_t pos = 0;
  std::string s(text);
  while (pos <= s.size()) {
    std::size_t semi = s.find(';', pos);
    if (semi == std::string::npos) semi = s.size();
    std::string pair = s.substr(pos, semi - pos);
    auto strip = [](std::string t) {
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(0, 1);
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
      return t;
    };
    std::size_t comma = pair.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("PL map breakpoint '" + pair + "' is not an x,y pair");
    }
    xs.push_back(Rational::parse(strip(pair.substr(0, comma))));
    ys.push_back(Rational::parse(strip(pair.substr(comma + 1))));
    pos = semi + 1;
  }
  return PLMap(std::move(xs), std::move(ys));
}

PLMap compose(const PLMap& f, const PLMap& g) {
  // breakpoints of f o g: those of g together with g^{-1}(breakpoints of f)
  std::vector<Rational> xs = g.xs();
  for (const Rational& b : f.xs()) xs.push_back(g.inverse_at(b));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const Rational& x : xs) ys.push_back(f(g(x)));
  return PLMap(std::move(xs), std::move(ys));
}

}  // namespace tsg
