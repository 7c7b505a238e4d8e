#include "virtmod/arith.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

namespace virtmod {

namespace {

// ---------------------------------------------------------------------------
// uint64 number theory (trial division, Miller-Rabin, Brent-Pollard rho)
// ---------------------------------------------------------------------------

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t pollard_rho_u64(std::uint64_t n) {
  // n odd composite. Floyd cycle detection with incrementing constant.
  for (std::uint64_t c = 1;; ++c) {
    auto step = [n, c](std::uint64_t x) {
      return (mulmod_u64(x, x, n) + c) % n;
    };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  static constexpr std::uint64_t kTrialBound = 9973;
  for (std::uint64_t p = 7; p <= kTrialBound && p * p <= n; p += 6) {
    for (std::uint64_t q : {p, p + 4}) {
      while (n % q == 0) {
        ++out[q];
        n /= q;
      }
    }
  }
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_rho_u64(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

// ---------------------------------------------------------------------------
// Coefficient fields and generic dense polynomial helpers
// ---------------------------------------------------------------------------

struct FpOps {
  Int p;
  using C = Int;
  Int norm(Int c) const {
    c %= p;
    if (c < 0) c += p;
    return c;
  }
  Int add(const Int& a, const Int& b) const { return norm(a + b); }
  Int sub(const Int& a, const Int& b) const { return norm(a - b); }
  Int mul(const Int& a, const Int& b) const { return norm(a * b); }
  Int neg(const Int& a) const { return norm(-a); }
  Int inv(const Int& a) const {
    // extended Euclid in Z, a != 0 mod p
    Int r0 = p, r1 = norm(a), t0 = 0, t1 = 1;
    while (r1 != 0) {
      Int q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      t0 -= q * t1;
      std::swap(t0, t1);
    }
    return norm(t0);
  }
  Int from_int(long long v) const { return norm(Int(v)); }
  static bool is_zero(const Int& a) { return a == 0; }
};

struct RatOps {
  using C = Rat;
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat sub(const Rat& a, const Rat& b) const { return a - b; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
  Rat neg(const Rat& a) const { return -a; }
  Rat inv(const Rat& a) const { return Rat(1) / a; }
  Rat from_int(long long v) const { return Rat(v); }
  static bool is_zero(const Rat& a) { return a == 0; }
};

template <class C>
void poly_trim(std::vector<C>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

template <class K>
std::vector<typename K::C> poly_add(const std::vector<typename K::C>& f,
                                    const std::vector<typename K::C>& g,
                                    const K& k) {
  std::vector<typename K::C> r(std::max(f.size(), g.size()),
                               k.from_int(0));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = k.add(r[i], g[i]);
  poly_trim(r);
  return r;
}

template <class K>
std::vector<typename K::C> poly_sub(const std::vector<typename K::C>& f,
                                    const std::vector<typename K::C>& g,
                                    const K& k) {
  std::vector<typename K::C> r(std::max(f.size(), g.size()),
                               k.from_int(0));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = k.sub(r[i], g[i]);
  poly_trim(r);
  return r;
}

template <class K>
std::vector<typename K::C> poly_neg(const std::vector<typename K::C>& f,
                                    const K& k) {
  auto r = f;
  for (auto& c : r) c = k.neg(c);
  return r;
}

template <class K>
std::vector<typename K::C> poly_mul(const std::vector<typename K::C>& f,
                                    const std::vector<typename K::C>& g,
                                    const K& k) {
  if (f.empty() || g.empty()) return {};
  std::vector<typename K::C> r(f.size() + g.size() - 1, k.from_int(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      r[i + j] = k.add(r[i + j], k.mul(f[i], g[j]));
  poly_trim(r);
  return r;
}

template <class K>
std::pair<std::vector<typename K::C>, std::vector<typename K::C>> poly_divmod(
    const std::vector<typename K::C>& f, const std::vector<typename K::C>& g,
    const K& k) {
  if (g.empty()) throw DivisionByZeroError();
  std::vector<typename K::C> r = f;
  if (f.size() < g.size()) return {{}, r};
  std::vector<typename K::C> q(f.size() - g.size() + 1, k.from_int(0));
  auto lc_inv = k.inv(g.back());
  for (std::size_t i = q.size(); i-- > 0;) {
    if (r.size() < g.size() + i) continue;
    auto c = k.mul(r[g.size() - 1 + i], lc_inv);
    if (K::is_zero(c)) continue;
    q[i] = c;
    for (std::size_t j = 0; j < g.size(); ++j)
      r[i + j] = k.sub(r[i + j], k.mul(c, g[j]));
    poly_trim(r);
  }
  poly_trim(q);
  return {q, r};
}

template <class K>
std::vector<typename K::C> poly_derivative(
    const std::vector<typename K::C>& f, const K& k) {
  if (f.size() <= 1) return {};
  std::vector<typename K::C> r(f.size() - 1, k.from_int(0));
  for (std::size_t i = 1; i < f.size(); ++i)
    r[i - 1] = k.mul(f[i], k.from_int(static_cast<long long>(i)));
  poly_trim(r);
  return r;
}

// Denominator-cleared view of a rational polynomial: f = F / den with an
// integer coefficient vector F. Rational normalization then happens once
// per output coefficient instead of once per intermediate product.
struct ClearedPoly {
  std::vector<Int> coeffs;
  Int den = 1;
};

ClearedPoly clear_denominators(const std::vector<Rat>& f) {
  ClearedPoly out;
  for (const Rat& c : f)
    out.den = boost::multiprecision::lcm(out.den,
                                         boost::multiprecision::denominator(c));
  out.coeffs.reserve(f.size());
  for (const Rat& c : f) {
    out.coeffs.push_back(boost::multiprecision::numerator(c) *
                         (out.den / boost::multiprecision::denominator(c)));
  }
  return out;
}

std::vector<Rat> restore_rationals(const std::vector<Int>& coeffs,
                                   const Int& den) {
  std::vector<Rat> out;
  out.reserve(coeffs.size());
  for (const Int& c : coeffs) out.emplace_back(c, den);
  poly_trim(out);
  return out;
}

std::vector<Int> int_convolve(const std::vector<Int>& f,
                              const std::vector<Int>& g) {
  if (f.empty() || g.empty()) return {};
  std::vector<Int> r(f.size() + g.size() - 1, Int(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  }
  return r;
}

std::vector<Rat> rat_poly_mul(const std::vector<Rat>& f,
                              const std::vector<Rat>& g) {
  ClearedPoly cf = clear_denominators(f);
  ClearedPoly cg = clear_denominators(g);
  return restore_rationals(int_convolve(cf.coeffs, cg.coeffs),
                           cf.den * cg.den);
}

// Euclidean division through integer pseudo-division: one rational
// normalization per output coefficient.
std::pair<std::vector<Rat>, std::vector<Rat>> rat_poly_divmod(
    const std::vector<Rat>& f, const std::vector<Rat>& g) {
  if (g.empty()) throw DivisionByZeroError();
  if (f.size() < g.size()) return {{}, f};
  ClearedPoly cf = clear_denominators(f);
  ClearedPoly cg = clear_denominators(g);
  const Int lc = cg.coeffs.back();
  std::vector<Int> r = cf.coeffs;
  std::vector<Int> q(r.size() - cg.coeffs.size() + 1, Int(0));
  Int scale = 1;
  for (std::size_t i = q.size(); i-- > 0;) {
    // R' = lc * R - c * x^i * G with c the current top coefficient keeps
    // scale * F = Q * G + R invariant.
    const Int c = r[cg.coeffs.size() - 1 + i];
    for (Int& x : q) x *= lc;
    for (Int& x : r) x *= lc;
    scale *= lc;
    if (c != 0) {
      q[i] += c;
      for (std::size_t j = 0; j < cg.coeffs.size(); ++j)
        r[i + j] -= c * cg.coeffs[j];
    }
  }
  // scale * F = Q * G + R, f = F/df, g = G/dg:
  //   f = (Q * dg / (df * scale)) * g + R / (df * scale)
  const Int den = cf.den * scale;
  std::vector<Int> qnum = q;
  for (Int& x : qnum) x *= cg.den;
  return {restore_rationals(qnum, den), restore_rationals(r, den)};
}

// acc + c * b over cleared integer vectors.
std::vector<Rat> rat_poly_addmul(const std::vector<Rat>& acc,
                                 const std::vector<Rat>& c,
                                 const std::vector<Rat>& b) {
  ClearedPoly ca = clear_denominators(acc);
  ClearedPoly cc = clear_denominators(c);
  ClearedPoly cb = clear_denominators(b);
  std::vector<Int> prod = int_convolve(cc.coeffs, cb.coeffs);
  Int prod_den = cc.den * cb.den;
  Int den = boost::multiprecision::lcm(ca.den, prod_den);
  Int sa = den / ca.den, sp = den / prod_den;
  std::vector<Int> sum(std::max(ca.coeffs.size(), prod.size()), Int(0));
  for (std::size_t i = 0; i < ca.coeffs.size(); ++i) sum[i] = ca.coeffs[i] * sa;
  for (std::size_t i = 0; i < prod.size(); ++i) sum[i] += prod[i] * sp;
  return restore_rationals(sum, den);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a deterministic witness set below 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// RingTag
// ---------------------------------------------------------------------------

RingTag RingTag::integers() { return RingTag(RingKind::Integers, 0); }

RingTag RingTag::poly_over_fp(std::uint64_t p) {
  if (!is_prime_u64(p)) {
    throw Error("coefficient modulus must be prime, got " + std::to_string(p));
  }
  return RingTag(RingKind::PolyOverPrimeField, p);
}

RingTag RingTag::poly_over_rationals() {
  return RingTag(RingKind::PolyOverRationals, 0);
}

std::uint64_t RingTag::prime() const {
  if (kind_ != RingKind::PolyOverPrimeField) {
    throw Error("ring has no coefficient prime");
  }
  return p_;
}

std::string RingTag::name() const {
  switch (kind_) {
    case RingKind::Integers:
      return "int";
    case RingKind::PolyOverPrimeField:
      return "fp:" + std::to_string(p_);
    case RingKind::PolyOverRationals:
      return "qpoly";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

Element Element::integer(Int value) {
  return Element(RingTag::integers(), std::move(value));
}

Element Element::from_int(const RingTag& ring, long long value) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return Element(ring, Int(value));
    case RingKind::PolyOverPrimeField:
      return poly_fp(ring.prime(), {Int(value)});
    case RingKind::PolyOverRationals:
      return poly_rat({Rat(value)});
  }
  throw Error("bad ring");
}

Element Element::poly_fp(std::uint64_t p, std::vector<Int> coeffs) {
  RingTag ring = RingTag::poly_over_fp(p);
  FpOps k{Int(p)};
  for (auto& c : coeffs) c = k.norm(c);
  poly_trim(coeffs);
  return Element(ring, std::move(coeffs));
}

Element Element::poly_rat(std::vector<Rat> coeffs) {
  poly_trim(coeffs);
  return Element(RingTag::poly_over_rationals(), std::move(coeffs));
}

Element Element::monomial(const RingTag& ring, std::size_t degree) {
  if (!ring.is_poly()) throw Error("monomial requires a polynomial ring");
  if (ring.kind() == RingKind::PolyOverPrimeField) {
    std::vector<Int> c(degree + 1, 0);
    c[degree] = 1;
    return poly_fp(ring.prime(), std::move(c));
  }
  std::vector<Rat> c(degree + 1, Rat(0));
  c[degree] = 1;
  return poly_rat(std::move(c));
}

bool Element::is_zero() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
      return std::get<Int>(v_) == 0;
    case RingKind::PolyOverPrimeField:
      return std::get<std::vector<Int>>(v_).empty();
    case RingKind::PolyOverRationals:
      return std::get<std::vector<Rat>>(v_).empty();
  }
  return false;
}

bool Element::is_one() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
      return std::get<Int>(v_) == 1;
    case RingKind::PolyOverPrimeField: {
      const auto& c = std::get<std::vector<Int>>(v_);
      return c.size() == 1 && c[0] == 1;
    }
    case RingKind::PolyOverRationals: {
      const auto& c = std::get<std::vector<Rat>>(v_);
      return c.size() == 1 && c[0] == 1;
    }
  }
  return false;
}

bool Element::is_unit() const {
  switch (ring_.kind()) {
    case RingKind::Integers: {
      const auto& v = std::get<Int>(v_);
      return v == 1 || v == -1;
    }
    case RingKind::PolyOverPrimeField:
      return std::get<std::vector<Int>>(v_).size() == 1;
    case RingKind::PolyOverRationals:
      return std::get<std::vector<Rat>>(v_).size() == 1;
  }
  return false;
}

int Element::degree() const {
  switch (ring_.kind()) {
    case RingKind::PolyOverPrimeField:
      return static_cast<int>(std::get<std::vector<Int>>(v_).size()) - 1;
    case RingKind::PolyOverRationals:
      return static_cast<int>(std::get<std::vector<Rat>>(v_).size()) - 1;
    default:
      throw Error("degree of a non-polynomial element");
  }
}

const Int& Element::int_value() const {
  if (ring_.kind() != RingKind::Integers) throw Error("not an integer element");
  return std::get<Int>(v_);
}

const std::vector<Int>& Element::fp_coeffs() const {
  if (ring_.kind() != RingKind::PolyOverPrimeField)
    throw Error("not an F_p polynomial");
  return std::get<std::vector<Int>>(v_);
}

const std::vector<Rat>& Element::rat_coeffs() const {
  if (ring_.kind() != RingKind::PolyOverRationals)
    throw Error("not a rational polynomial");
  return std::get<std::vector<Rat>>(v_);
}

namespace {

void require_same_ring(const Element& a, const Element& b) {
  if (!(a.ring() == b.ring())) throw RingMismatchError();
}

std::string rat_to_string(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

template <class C>
std::string poly_to_string(const std::vector<C>& coeffs,
                           std::string (*coef_str)(const C&)) {
  if (coeffs.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] == 0) continue;
    std::string cs = coef_str(coeffs[i]);
    bool neg = !cs.empty() && cs[0] == '-';
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    if (neg) cs = cs.substr(1);
    if (i == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::string int_str(const Int& v) { return v.str(); }
std::string rat_str(const Rat& v) { return rat_to_string(v); }

}  // namespace

std::string Element::to_string() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
      return std::get<Int>(v_).str();
    case RingKind::PolyOverPrimeField:
      return poly_to_string<Int>(std::get<std::vector<Int>>(v_), &int_str);
    case RingKind::PolyOverRationals:
      return poly_to_string<Rat>(std::get<std::vector<Rat>>(v_), &rat_str);
  }
  return "?";
}

Element operator+(const Element& a, const Element& b) {
  require_same_ring(a, b);
  switch (a.ring().kind()) {
    case RingKind::Integers:
      return Element::integer(a.int_value() + b.int_value());
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(a.ring().prime())};
      return Element::poly_fp(a.ring().prime(),
                              poly_add(a.fp_coeffs(), b.fp_coeffs(), k));
    }
    case RingKind::PolyOverRationals:
      return Element::poly_rat(poly_add(a.rat_coeffs(), b.rat_coeffs(), RatOps{}));
  }
  throw Error("bad ring");
}

Element operator-(const Element& a, const Element& b) {
  require_same_ring(a, b);
  switch (a.ring().kind()) {
    case RingKind::Integers:
      return Element::integer(a.int_value() - b.int_value());
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(a.ring().prime())};
      return Element::poly_fp(a.ring().prime(),
                              poly_sub(a.fp_coeffs(), b.fp_coeffs(), k));
    }
    case RingKind::PolyOverRationals:
      return Element::poly_rat(poly_sub(a.rat_coeffs(), b.rat_coeffs(), RatOps{}));
  }
  throw Error("bad ring");
}

Element operator*(const Element& a, const Element& b) {
  require_same_ring(a, b);
  switch (a.ring().kind()) {
    case RingKind::Integers:
      return Element::integer(a.int_value() * b.int_value());
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(a.ring().prime())};
      return Element::poly_fp(a.ring().prime(),
                              poly_mul(a.fp_coeffs(), b.fp_coeffs(), k));
    }
    case RingKind::PolyOverRationals:
      return Element::poly_rat(rat_poly_mul(a.rat_coeffs(), b.rat_coeffs()));
  }
  throw Error("bad ring");
}

Element addmul(const Element& acc, const Element& c, const Element& b) {
  require_same_ring(acc, c);
  require_same_ring(acc, b);
  if (acc.ring().kind() == RingKind::PolyOverRationals) {
    return Element::poly_rat(
        rat_poly_addmul(acc.rat_coeffs(), c.rat_coeffs(), b.rat_coeffs()));
  }
  return acc + c * b;
}

Element operator-(const Element& a) {
  switch (a.ring().kind()) {
    case RingKind::Integers:
      return Element::integer(-a.int_value());
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(a.ring().prime())};
      return Element::poly_fp(a.ring().prime(), poly_neg(a.fp_coeffs(), k));
    }
    case RingKind::PolyOverRationals:
      return Element::poly_rat(poly_neg(a.rat_coeffs(), RatOps{}));
  }
  throw Error("bad ring");
}

bool operator==(const Element& a, const Element& b) {
  if (!(a.ring() == b.ring())) return false;
  switch (a.ring().kind()) {
    case RingKind::Integers:
      return a.int_value() == b.int_value();
    case RingKind::PolyOverPrimeField:
      return a.fp_coeffs() == b.fp_coeffs();
    case RingKind::PolyOverRationals:
      return a.rat_coeffs() == b.rat_coeffs();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Euclidean structure
// ---------------------------------------------------------------------------

std::pair<Element, Element> normalize_unit(const Element& e) {
  if (e.is_zero()) throw ZeroElementError();
  switch (e.ring().kind()) {
    case RingKind::Integers: {
      if (e.int_value() < 0)
        return {Element::integer(-1), Element::integer(-e.int_value())};
      return {Element::integer(1), e};
    }
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(e.ring().prime())};
      Int lc = e.fp_coeffs().back();
      if (lc == 1) return {Element::one(e.ring()), e};
      Int inv = k.inv(lc);
      auto c = e.fp_coeffs();
      for (auto& x : c) x = k.mul(x, inv);
      return {Element::poly_fp(e.ring().prime(), {lc}),
              Element::poly_fp(e.ring().prime(), std::move(c))};
    }
    case RingKind::PolyOverRationals: {
      Rat lc = e.rat_coeffs().back();
      if (lc == 1) return {Element::one(e.ring()), e};
      auto c = e.rat_coeffs();
      for (auto& x : c) x = x / lc;
      return {Element::poly_rat({lc}), Element::poly_rat(std::move(c))};
    }
  }
  throw Error("bad ring");
}

Element unit_inverse(const Element& u) {
  if (!u.is_unit()) throw Error("element is not a unit");
  switch (u.ring().kind()) {
    case RingKind::Integers:
      return u;  // 1 and -1 are self-inverse
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(u.ring().prime())};
      return Element::poly_fp(u.ring().prime(), {k.inv(u.fp_coeffs()[0])});
    }
    case RingKind::PolyOverRationals:
      return Element::poly_rat({Rat(1) / u.rat_coeffs()[0]});
  }
  throw Error("bad ring");
}

std::pair<Element, Element> euclidean_divide(const Element& a,
                                             const Element& b) {
  require_same_ring(a, b);
  if (b.is_zero()) throw DivisionByZeroError();
  switch (a.ring().kind()) {
    case RingKind::Integers: {
      Int q = a.int_value() / b.int_value();
      Int r = a.int_value() % b.int_value();
      if (r < 0) {
        r += boost::multiprecision::abs(b.int_value());
        q = (a.int_value() - r) / b.int_value();
      }
      return {Element::integer(q), Element::integer(r)};
    }
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(a.ring().prime())};
      auto [q, r] = poly_divmod(a.fp_coeffs(), b.fp_coeffs(), k);
      return {Element::poly_fp(a.ring().prime(), std::move(q)),
              Element::poly_fp(a.ring().prime(), std::move(r))};
    }
    case RingKind::PolyOverRationals: {
      auto [q, r] = rat_poly_divmod(a.rat_coeffs(), b.rat_coeffs());
      return {Element::poly_rat(std::move(q)), Element::poly_rat(std::move(r))};
    }
  }
  throw Error("bad ring");
}

ExtendedGcd extended_gcd(const Element& a, const Element& b) {
  require_same_ring(a, b);
  if (a.is_zero() && b.is_zero()) throw BothZeroError();
  Element old_r = a, r = b;
  Element old_s = Element::one(a.ring()), s = Element::zero(a.ring());
  Element old_t = Element::zero(a.ring()), t = Element::one(a.ring());
  while (!r.is_zero()) {
    auto [q, rem] = euclidean_divide(old_r, r);
    old_r = r;
    r = rem;
    Element ns = old_s - q * s;
    old_s = s;
    s = ns;
    Element nt = old_t - q * t;
    old_t = t;
    t = nt;
  }
  auto [unit, g] = normalize_unit(old_r);
  Element w = unit_inverse(unit);
  return {g, old_s * w, old_t * w};
}

Element gcd(const Element& a, const Element& b) { return extended_gcd(a, b).g; }

Element exact_divide(const Element& a, const Element& b) {
  auto [q, r] = euclidean_divide(a, b);
  if (!r.is_zero()) throw Error("division is not exact");
  return q;
}

bool divides(const Element& a, const Element& b) {
  if (a.is_zero()) return b.is_zero();
  return euclidean_divide(b, a).second.is_zero();
}

Element derivative(const Element& f) {
  switch (f.ring().kind()) {
    case RingKind::PolyOverPrimeField: {
      FpOps k{Int(f.ring().prime())};
      return Element::poly_fp(f.ring().prime(),
                              poly_derivative(f.fp_coeffs(), k));
    }
    case RingKind::PolyOverRationals:
      return Element::poly_rat(poly_derivative(f.rat_coeffs(), RatOps{}));
    default:
      throw Error("derivative of a non-polynomial element");
  }
}

Element pow(const Element& base, unsigned exponent) {
  Element r = Element::one(base.ring());
  for (unsigned i = 0; i < exponent; ++i) r = r * base;
  return r;
}

int compare(const Element& a, const Element& b) {
  require_same_ring(a, b);
  switch (a.ring().kind()) {
    case RingKind::Integers: {
      if (a.int_value() < b.int_value()) return -1;
      if (a.int_value() > b.int_value()) return 1;
      return 0;
    }
    case RingKind::PolyOverPrimeField: {
      const auto& x = a.fp_coeffs();
      const auto& y = b.fp_coeffs();
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
      }
      return 0;
    }
    case RingKind::PolyOverRationals: {
      const auto& x = a.rat_coeffs();
      const auto& y = b.rat_coeffs();
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
      }
      return 0;
    }
  }
  return 0;
}

bool smaller_size(const Element& a, const Element& b) {
  require_same_ring(a, b);
  if (a.ring().kind() == RingKind::Integers) {
    return boost::multiprecision::abs(a.int_value()) <
           boost::multiprecision::abs(b.int_value());
  }
  return a.degree() < b.degree();
}

long long to_small_int(const Element& e) {
  const Int& v = e.int_value();
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw Error("integer element too large for narrow conversion");
  }
  return v.convert_to<long long>();
}

// ---------------------------------------------------------------------------
// Squarefree tests and factorization
// ---------------------------------------------------------------------------

namespace {

void require_factorable(const Element& d) {
  if (d.is_zero() || d.is_unit()) throw ZeroOrUnitError();
}

// f^(1/p) for an F_p polynomial with vanishing derivative. Over the prime
// field c^p = c, so f(x) = g(x)^p with g collecting every p-th coefficient.
Element fp_pth_root(const Element& f) {
  std::uint64_t p = f.ring().prime();
  const auto& c = f.fp_coeffs();
  std::vector<Int> r;
  for (std::size_t i = 0; i < c.size(); i += p) r.push_back(c[i]);
  return Element::poly_fp(p, std::move(r));
}

// Squarefree decomposition of a monic F_p polynomial: list of (monic
// squarefree factor, exponent), pairwise coprime.
std::vector<std::pair<Element, int>> fp_squarefree_decomposition(
    const Element& f_in) {
  Element f = f_in;
  std::vector<std::pair<Element, int>> out;
  Element df = derivative(f);
  if (df.is_zero()) {
    for (auto& [h, e] : fp_squarefree_decomposition(fp_pth_root(f))) {
      out.emplace_back(h, e * static_cast<int>(f.ring().prime()));
    }
    return out;
  }
  Element c = gcd(f, df);
  Element w = exact_divide(f, c);
  int i = 1;
  while (w.degree() > 0) {
    Element y = gcd(w, c);
    Element z = exact_divide(w, y);
    if (z.degree() > 0) out.emplace_back(z, i);
    w = y;
    c = exact_divide(c, y);
    ++i;
  }
  if (c.degree() > 0) {
    for (auto& [h, e] : fp_squarefree_decomposition(fp_pth_root(c))) {
      out.emplace_back(h, e * static_cast<int>(f.ring().prime()));
    }
  }
  return out;
}

Element poly_powmod(const Element& base, Int exp, const Element& mod) {
  Element r = Element::one(base.ring());
  Element b = euclidean_divide(base, mod).second;
  while (exp > 0) {
    if ((exp & 1) != 0) r = euclidean_divide(r * b, mod).second;
    b = euclidean_divide(b * b, mod).second;
    exp >>= 1;
  }
  return r;
}

// Distinct-degree factorization of a monic squarefree F_p polynomial:
// (product of irreducibles of degree d, d) pairs.
std::vector<std::pair<Element, int>> fp_distinct_degree(const Element& f_in) {
  Element f = f_in;
  std::uint64_t p = f.ring().prime();
  Element x = Element::monomial(f.ring(), 1);
  Element h = euclidean_divide(x, f).second;
  std::vector<std::pair<Element, int>> out;
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = poly_powmod(h, Int(p), f);
    Element g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = exact_divide(f, g);
      h = euclidean_divide(h, f).second;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

// Cantor-Zassenhaus equal-degree splitting: f is monic squarefree, a product
// of irreducibles all of degree d.
void fp_equal_degree(const Element& f, int d, std::mt19937_64& rng,
                     std::vector<Element>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  std::uint64_t p = f.ring().prime();
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  for (;;) {
    std::vector<Int> ac(static_cast<std::size_t>(f.degree()), 0);
    for (auto& c : ac) c = coef(rng);
    Element a = Element::poly_fp(p, std::move(ac));
    if (a.is_zero()) continue;
    Element b = Element::zero(f.ring());
    if (p == 2) {
      // trace map a + a^2 + a^4 + ... over F_2
      Element t = euclidean_divide(a, f).second;
      Element acc = t;
      for (int i = 1; i < d; ++i) {
        t = euclidean_divide(t * t, f).second;
        acc = acc + t;
      }
      b = euclidean_divide(acc, f).second;
    } else {
      Int e = (boost::multiprecision::pow(Int(p), static_cast<unsigned>(d)) - 1) / 2;
      b = poly_powmod(a, e, f) - Element::one(f.ring());
    }
    if (b.is_zero()) continue;
    Element g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      fp_equal_degree(g, d, rng, out);
      fp_equal_degree(exact_divide(f, g), d, rng, out);
      return;
    }
  }
}

bool element_less(const Element& a, const Element& b) {
  return compare(a, b) < 0;
}

}  // namespace

Factorization factor(const Element& d) {
  require_factorable(d);
  auto [unit, canon] = normalize_unit(d);
  switch (d.ring().kind()) {
    case RingKind::Integers: {
      if (canon.int_value() > Int(std::numeric_limits<std::uint64_t>::max())) {
        throw FactorizationTooHardError(
            "integer factorization is limited to inputs below 2^64");
      }
      std::map<std::uint64_t, int> fs;
      factor_u64(canon.int_value().convert_to<std::uint64_t>(), fs);
      Factorization result{unit, {}};
      for (const auto& [p, e] : fs) {
        result.factors.emplace_back(Element::integer(Int(p)), e);
      }
      return result;
    }
    case RingKind::PolyOverPrimeField: {
      std::mt19937_64 rng(0x5eedf00dULL);
      Factorization result{unit, {}};
      for (const auto& [g, e] : fp_squarefree_decomposition(canon)) {
        for (const auto& [h, deg] : fp_distinct_degree(g)) {
          std::vector<Element> irr;
          fp_equal_degree(h, deg, rng, irr);
          for (const auto& q : irr) result.factors.emplace_back(q, e);
        }
      }
      std::sort(result.factors.begin(), result.factors.end(),
                [](const auto& a, const auto& b) {
                  return element_less(a.first, b.first);
                });
      return result;
    }
    case RingKind::PolyOverRationals:
      throw UnsupportedRingError(
          "irreducible factorization over Q[x] is not supported");
  }
  throw Error("bad ring");
}

Element Factorization::value() const {
  Element r = unit;
  for (const auto& [p, e] : factors) r = r * pow(p, static_cast<unsigned>(e));
  return r;
}

bool is_squarefree(const Element& d) {
  require_factorable(d);
  switch (d.ring().kind()) {
    case RingKind::Integers: {
      Factorization f = factor(d);
      return std::all_of(f.factors.begin(), f.factors.end(),
                         [](const auto& pe) { return pe.second == 1; });
    }
    case RingKind::PolyOverPrimeField:
    case RingKind::PolyOverRationals: {
      Element df = derivative(d);
      if (df.is_zero()) return false;  // p-th power (char p only)
      return gcd(d, df).is_unit();
    }
  }
  throw Error("bad ring");
}

std::vector<std::pair<Element, int>> squarefree_decomposition(const Element& f) {
  require_factorable(f);
  auto [unit, canon] = normalize_unit(f);
  switch (f.ring().kind()) {
    case RingKind::PolyOverPrimeField:
      return fp_squarefree_decomposition(canon);
    case RingKind::PolyOverRationals: {
      // Musser's algorithm; in characteristic zero the derivative of a
      // non-constant polynomial never vanishes.
      std::vector<std::pair<Element, int>> out;
      Element c = gcd(canon, derivative(canon));
      Element w = exact_divide(canon, c);
      int i = 1;
      while (w.degree() > 0) {
        Element y = gcd(w, c);
        Element z = exact_divide(w, y);
        if (z.degree() > 0) out.emplace_back(z, i);
        w = y;
        c = exact_divide(c, y);
        ++i;
      }
      return out;
    }
    default:
      throw Error("squarefree decomposition is defined for polynomials");
  }
}

bool is_prime_element(const Element& d) {
  require_factorable(d);
  switch (d.ring().kind()) {
    case RingKind::Integers: {
      auto [unit, canon] = normalize_unit(d);
      if (canon.int_value() > Int(std::numeric_limits<std::uint64_t>::max())) {
        throw FactorizationTooHardError(
            "primality testing is limited to inputs below 2^64");
      }
      return is_prime_u64(canon.int_value().convert_to<std::uint64_t>());
    }
    case RingKind::PolyOverPrimeField: {
      Factorization f = factor(d);
      return f.factors.size() == 1 && f.factors[0].second == 1;
    }
    case RingKind::PolyOverRationals: {
      if (d.degree() == 1) return true;
      if (!is_squarefree(d)) return false;
      throw UnsupportedRingError(
          "irreducibility over Q[x] is undecidable here for squarefree "
          "polynomials of degree >= 2");
    }
  }
  throw Error("bad ring");
}

}  // namespace virtmod
