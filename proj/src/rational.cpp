#include "tsg/rational.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>

#include "tsg/signature.hpp"

namespace tsg {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  value_ = mpq_class(n, d);
  value_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  value_ = mpq_class(n, d);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::hash() const {
  std::size_t h = 0;
  auto mix = [&h](const mpz_class& z) {
    const mpz_srcptr p = z.get_mpz_t();
    int n = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
    h ^= std::hash<long>()(p->_mp_size) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    for (int i = 0; i < n; ++i) {
      h ^= std::hash<mp_limb_t>()(p->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
  };
  mix(value_.get_num());
  mix(value_.get_den());
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

SlopeExponent& SlopeExponent::operator+=(const SlopeExponent& o) {
  if (exponents.size() < o.exponents.size()) exponents.resize(o.exponents.size());
  for (std::size_t i = 0; i < o.exponents.size(); ++i) exponents[i] += o.exponents[i];
  return *this;
}

SlopeExponent SlopeExponent::operator-() const {
  SlopeExponent r = *this;
  for (int& e : r.exponents) e = -e;
  return r;
}

Rational power(long n, int e) {
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), mpz_class(n).get_mpz_t(),
             static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p, mpz_class(1));
}

Rational SlopeExponent::value(const GroupSignature& sig) const {
  Rational r(1);
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    r *= power(sig.arity(j), exponents[j]);
  }
  return r;
}

namespace {

std::vector<long> prime_factors(long n) {
  std::vector<long> primes;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

int valuation(long n, long p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Strips every factor p from z and returns how many were removed.
long strip(mpz_class& z, long p) {
  long count = 0;
  mpz_class q, r;
  while (true) {
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), z.get_mpz_t(),
                   static_cast<unsigned long>(p));
    if (r != 0) break;
    z = q;
    ++count;
  }
  return count;
}

constexpr int kExponentBound = 64;

// Prime exponents of r over the primes of the signature, or nullopt when r
// has any other prime factor.
struct PrimeTarget {
  std::vector<long> primes;
  std::vector<long> target;
  std::vector<std::vector<int>> orders;  // orders[p][j] = ord_p(n_j)
};

std::optional<PrimeTarget> prime_target(const Rational& r, const GroupSignature& sig) {
  if (r.sign() <= 0) {
    throw std::invalid_argument("slope decomposition needs a positive rational");
  }
  PrimeTarget pt;
  pt.primes = prime_factors(sig.product());
  mpz_class num = r.numerator();
  mpz_class den = r.denominator();
  pt.target.resize(pt.primes.size());
  for (std::size_t p = 0; p < pt.primes.size(); ++p) {
    pt.target[p] = strip(num, pt.primes[p]) - strip(den, pt.primes[p]);
  }
  if (num != 1 || den != 1) return std::nullopt;
  pt.orders.assign(pt.primes.size(), std::vector<int>(sig.size()));
  for (std::size_t p = 0; p < pt.primes.size(); ++p) {
    for (std::size_t j = 0; j < sig.size(); ++j) {
      pt.orders[p][j] = valuation(sig.arity(j), pt.primes[p]);
    }
  }
  return pt;
}

}  // namespace

std::optional<SlopeExponent> slope_decompose(const Rational& r,
                                             const GroupSignature& sig) {
  const std::size_t k = sig.size();
  auto pt = prime_target(r, sig);
  if (!pt) return std::nullopt;
  const std::vector<long>& primes = pt->primes;
  const std::vector<std::vector<int>>& orders = pt->orders;
  const std::vector<long>& target = pt->target;
  // Primes whose last nonzero column is j pin e_j once earlier coordinates
  // are fixed.
  std::vector<std::vector<std::size_t>> pinned(k);
  for (std::size_t p = 0; p < primes.size(); ++p) {
    for (std::size_t j = k; j-- > 0;) {
      if (orders[p][j] != 0) {
        pinned[j].push_back(p);
        break;
      }
    }
  }

  SlopeExponent result;
  result.exponents.assign(k, 0);
  std::vector<long> residual = target;

  std::function<bool(std::size_t)> search = [&](std::size_t j) -> bool {
    if (j == k) {
      for (long v : residual) {
        if (v != 0) return false;
      }
      return true;
    }
    std::optional<long> forced;
    for (std::size_t p : pinned[j]) {
      if (residual[p] % orders[p][j] != 0) return false;
      long e = residual[p] / orders[p][j];
      if (forced && *forced != e) return false;
      forced = e;
    }
    long lo = -kExponentBound, hi = kExponentBound;
    if (forced) {
      if (*forced < lo || *forced > hi) return false;
      lo = hi = *forced;
    }
    for (long e = lo; e <= hi; ++e) {
      for (std::size_t p = 0; p < primes.size(); ++p) residual[p] -= orders[p][j] * e;
      result.exponents[j] = static_cast<int>(e);
      if (search(j + 1)) return true;
      for (std::size_t p = 0; p < primes.size(); ++p) residual[p] += orders[p][j] * e;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return result;
}

std::optional<SlopeExponent> shortest_slope_decomposition(const Rational& r,
                                                          const GroupSignature& sig) {
  auto first = slope_decompose(r, sig);
  if (!first) return std::nullopt;
  long bound = 0;
  for (int e : first->exponents) bound += e < 0 ? -e : e;
  auto pt = prime_target(r, sig);
  const std::size_t k = sig.size();
  SlopeExponent cur;
  cur.exponents.assign(k, 0);
  std::vector<long> residual = pt->target;
  // lexicographic walk over vectors of L1 norm exactly `left` in the tail
  std::function<bool(std::size_t, long)> search = [&](std::size_t j, long left) -> bool {
    if (j + 1 == k) {
      for (long e : {-left, left}) {
        bool ok = true;
        for (std::size_t p = 0; p < residual.size() && ok; ++p) {
          ok = residual[p] == pt->orders[p][j] * e;
        }
        if (ok) {
          cur.exponents[j] = static_cast<int>(e);
          return true;
        }
      }
      return false;
    }
    for (long e = -left; e <= left; ++e) {
      for (std::size_t p = 0; p < residual.size(); ++p) residual[p] -= pt->orders[p][j] * e;
      cur.exponents[j] = static_cast<int>(e);
      bool found = search(j + 1, left - (e < 0 ? -e : e));
      for (std::size_t p = 0; p < residual.size(); ++p) residual[p] += pt->orders[p][j] * e;
      if (found) return true;
    }
    return false;
  };
  for (long norm = 0; norm <= bound; ++norm) {
    if (search(0, norm)) return cur;
  }
  return first;
}

bool in_base_ring(const Rational& r, const GroupSignature& sig) {
  mpz_class den = r.denominator();
  for (long p : prime_factors(sig.product())) strip(den, p);
  return den == 1;
}

}  // namespace tsg
