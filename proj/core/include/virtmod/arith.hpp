#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "virtmod/errors.hpp"

namespace virtmod {

// GMP-backed exact integers and rationals (rationals stay reduced with a
// positive denominator).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// The supported coefficient domains. Every one of them is a commutative
// Euclidean domain, hence a principal ideal domain.
enum class RingKind { Integers, PolyOverPrimeField, PolyOverRationals };

class RingTag {
 public:
  static RingTag integers();
  // p must be prime; checked at construction.
  static RingTag poly_over_fp(std::uint64_t p);
  static RingTag poly_over_rationals();

  RingKind kind() const { return kind_; }
  bool is_poly() const { return kind_ != RingKind::Integers; }
  // Characteristic prime; only meaningful for PolyOverPrimeField.
  std::uint64_t prime() const;

  // Short display name: "int", "fp:5", "qpoly".
  std::string name() const;

  friend bool operator==(const RingTag&, const RingTag&) = default;
  friend std::strong_ordering operator<=>(const RingTag&, const RingTag&) = default;

 private:
  RingTag(RingKind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  RingKind kind_;
  std::uint64_t p_;  // 0 unless PolyOverPrimeField
};

// An exact element of one of the supported domains. Polynomials are stored as
// coefficient sequences in ascending degree with no trailing zero; F_p
// coefficients live in [0, p) and rational coefficients are kept reduced.
class Element {
 public:
  static Element integer(Int value);
  static Element from_int(const RingTag& ring, long long value);  // constant
  static Element zero(const RingTag& ring) { return from_int(ring, 0); }
  static Element one(const RingTag& ring) { return from_int(ring, 1); }
  // Coefficients ascending; reduced mod p / trimmed as needed.
  static Element poly_fp(std::uint64_t p, std::vector<Int> coeffs);
  static Element poly_rat(std::vector<Rat> coeffs);
  // x^k over a polynomial ring.
  static Element monomial(const RingTag& ring, std::size_t degree);

  const RingTag& ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  // Degree of a polynomial; -1 for the zero polynomial. Error on integers.
  int degree() const;

  const Int& int_value() const;
  const std::vector<Int>& fp_coeffs() const;
  const std::vector<Rat>& rat_coeffs() const;

  std::string to_string() const;

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

 private:
  Element(RingTag ring, std::variant<Int, std::vector<Int>, std::vector<Rat>> v)
      : ring_(ring), v_(std::move(v)) {}
  RingTag ring_;
  std::variant<Int, std::vector<Int>, std::vector<Rat>> v_;
};

// Complete factorization into canonical primes: value = unit * prod p_i^e_i.
struct Factorization {
  Element unit;
  std::vector<std::pair<Element, int>> factors;  // canonical primes, sorted

  Element value() const;  // multiply back out
};

// e = unit * canonical, with canonical the positive / monic associate.
std::pair<Element, Element> normalize_unit(const Element& e);
// Multiplicative inverse of a unit.
Element unit_inverse(const Element& u);

// a = q*b + r with 0 <= r < |b| over the integers, deg r < deg b or r = 0
// over the polynomial rings.
std::pair<Element, Element> euclidean_divide(const Element& a, const Element& b);

struct ExtendedGcd {
  Element g;  // canonical associate
  Element u;
  Element v;  // u*a + v*b = g
};
ExtendedGcd extended_gcd(const Element& a, const Element& b);
// Canonical gcd; gcd(0, 0) raises BothZero.
Element gcd(const Element& a, const Element& b);
// Exact quotient; raises Error if b does not divide a.
Element exact_divide(const Element& a, const Element& b);
bool divides(const Element& a, const Element& b);  // a | b

// True iff no prime square divides d. Polynomials use the derivative-gcd
// test, integers go through factor().
bool is_squarefree(const Element& d);

// Complete factorization. Integers: trial division then Brent-Pollard rho,
// inputs < 2^64 (beyond that FactorizationTooHard). F_p[x]: squarefree
// decomposition, distinct-degree, Cantor-Zassenhaus splitting. Q[x] is not
// supported (UnsupportedRing).
Factorization factor(const Element& d);

// Primality / irreducibility of a non-zero non-unit. Over Q[x] this is only
// decidable for degree 1 (true) and non-squarefree inputs (false);
// everything else raises UnsupportedRing.
bool is_prime_element(const Element& d);

// Squarefree decomposition of a polynomial element: pairwise coprime monic
// squarefree parts with exponents whose product is the canonical associate.
// Works over both polynomial rings (no irreducible splitting involved).
std::vector<std::pair<Element, int>> squarefree_decomposition(const Element& f);

// Formal derivative of a polynomial element.
Element derivative(const Element& f);

Element pow(const Element& base, unsigned exponent);

// acc + c * b in one step. Over Q[x] this clears denominators once and
// convolves integer coefficient vectors, which is far cheaper than
// normalizing every intermediate rational.
Element addmul(const Element& acc, const Element& c, const Element& b);

// Total order inside one ring (integers numerically; polynomials by degree,
// then coefficients from the leading one down). Returns <0, 0, >0.
int compare(const Element& a, const Element& b);
// Strict Euclidean-size comparison used for pivot selection.
bool smaller_size(const Element& a, const Element& b);

// Narrowing helper for small integer elements (oracle bridge).
long long to_small_int(const Element& e);

bool is_prime_u64(std::uint64_t n);

}  // namespace virtmod
