#include "virtmod/modpid.hpp"

#include <algorithm>
#include <map>

namespace virtmod {

namespace {

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const {
    return compare(a, b) < 0;
  }
};

using PrimeMap = std::map<Element, std::vector<int>, ElementLess>;

// prime -> ascending exponent list, one entry per invariant factor the prime
// divides. Inherits factor()'s ring support (UnsupportedRing over Q[x]).
PrimeMap primary_map(const StructureDescriptor& s) {
  PrimeMap m;
  for (const Element& d : s.invariant_factors()) {
    for (const auto& [p, e] : factor(d).factors) m[p].push_back(e);
  }
  for (auto& [p, es] : m) std::sort(es.begin(), es.end());
  return m;
}

// Full factorization when the ring allows it; over Q[x] succeeds only when
// the squarefree parts come out linear (linear polynomials are prime, higher
// degrees are undecidable here).
std::optional<std::vector<std::pair<Element, int>>> try_full_factor(
    const Element& d) {
  if (d.ring().kind() == RingKind::PolyOverRationals) {
    std::vector<std::pair<Element, int>> out;
    for (const auto& [part, e] : squarefree_decomposition(d)) {
      if (part.degree() != 1) return std::nullopt;
      out.emplace_back(part, e);
    }
    return out;
  }
  return factor(d).factors;
}

StructureDescriptor descriptor_from_primary(const RingTag& ring,
                                            std::size_t free_rank,
                                            const PrimeMap& components) {
  std::size_t chain_len = 0;
  for (const auto& [p, es] : components)
    chain_len = std::max(chain_len, es.size());
  std::vector<Element> factors;
  for (std::size_t i = 0; i < chain_len; ++i) {
    Element d = Element::one(ring);
    for (const auto& [p, es] : components) {
      // Align every partition at the top so that d_i | d_{i+1}.
      long long idx = static_cast<long long>(es.size()) -
                      static_cast<long long>(chain_len) +
                      static_cast<long long>(i);
      if (idx >= 0)
        d = d * pow(p, static_cast<unsigned>(es[static_cast<std::size_t>(idx)]));
    }
    factors.push_back(d);
  }
  return StructureDescriptor::make(ring, free_rank, std::move(factors));
}

}  // namespace

StructureDescriptor StructureDescriptor::make(RingTag ring,
                                              std::size_t free_rank,
                                              std::vector<Element> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Element& d = factors[i];
    if (!(d.ring() == ring)) throw RingMismatchError();
    if (d.is_zero() || d.is_unit())
      throw Error("invariant factors must be non-zero non-units");
    auto [unit, canon] = normalize_unit(d);
    if (!unit.is_one())
      throw Error("invariant factors must be canonical associates");
    if (i > 0 && !divides(factors[i - 1], d))
      throw Error("invariant factors must form a divisibility chain");
  }
  return StructureDescriptor(ring, free_rank, std::move(factors));
}

std::string StructureDescriptor::to_string() const {
  if (is_zero_module()) return "0";
  std::string base;
  switch (ring_.kind()) {
    case RingKind::Integers:
      base = "Z";
      break;
    case RingKind::PolyOverPrimeField:
      base = "F" + std::to_string(ring_.prime()) + "[x]";
      break;
    case RingKind::PolyOverRationals:
      base = "Q[x]";
      break;
  }
  std::string out;
  if (free_rank_ > 0) {
    out = base;
    if (free_rank_ > 1) out += "^" + std::to_string(free_rank_);
  }
  for (const Element& d : factors_) {
    if (!out.empty()) out += " (+) ";
    out += base + "/(" + d.to_string() + ")";
  }
  return out;
}

bool operator==(const StructureDescriptor& a, const StructureDescriptor& b) {
  return a.ring_ == b.ring_ && a.free_rank_ == b.free_rank_ &&
         a.factors_ == b.factors_;
}

int compare_descriptors(const StructureDescriptor& a,
                        const StructureDescriptor& b) {
  if (!(a.ring() == b.ring())) throw RingMismatchError();
  if (a.free_rank() != b.free_rank())
    return a.free_rank() < b.free_rank() ? -1 : 1;
  const auto& x = a.invariant_factors();
  const auto& y = b.invariant_factors();
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    int c = compare(x[i], y[i]);
    if (c != 0) return c;
  }
  return 0;
}

StructureDescriptor structure(const Presentation& p) {
  std::size_t nonzero = 0;
  std::vector<Element> factors;
  for (const Element& d : smith_diagonal(p.relations)) {
    if (d.is_zero()) continue;
    ++nonzero;
    if (!d.is_unit()) factors.push_back(d);
  }
  return StructureDescriptor::make(p.ring, p.generators - nonzero,
                                   std::move(factors));
}

Presentation to_presentation(const StructureDescriptor& s) {
  const std::size_t k = s.invariant_factors().size();
  const std::size_t g = k + s.free_rank();
  MatrixOverDomain rel(s.ring(), k, g);
  for (std::size_t i = 0; i < k; ++i) rel.at(i, i) = s.invariant_factors()[i];
  return Presentation(s.ring(), g, std::move(rel));
}

bool is_isomorphic(const StructureDescriptor& a, const StructureDescriptor& b) {
  if (!(a.ring() == b.ring())) throw RingMismatchError();
  return a == b;
}

StructureDescriptor direct_sum(const StructureDescriptor& a,
                               const StructureDescriptor& b) {
  if (!(a.ring() == b.ring())) throw RingMismatchError();
  std::vector<Element> all = a.invariant_factors();
  all.insert(all.end(), b.invariant_factors().begin(),
             b.invariant_factors().end());
  const std::size_t rank = a.free_rank() + b.free_rank();
  if (all.empty()) return StructureDescriptor::make(a.ring(), rank, {});
  Presentation p(a.ring(), all.size(),
                 MatrixOverDomain::diagonal(a.ring(), all));
  StructureDescriptor torsion = structure(p);
  return StructureDescriptor::make(a.ring(), rank,
                                   torsion.invariant_factors());
}

std::pair<StructureDescriptor, std::size_t> torsion_free_split(
    const StructureDescriptor& s) {
  return {StructureDescriptor::make(s.ring(), 0, s.invariant_factors()),
          s.free_rank()};
}

StructureDescriptor socle(const StructureDescriptor& s) {
  if (s.invariant_factors().empty())
    return StructureDescriptor::zero_module(s.ring());
  if (s.ring().kind() == RingKind::PolyOverRationals) {
    bool all_squarefree = std::all_of(
        s.invariant_factors().begin(), s.invariant_factors().end(),
        [](const Element& d) { return is_squarefree(d); });
    if (all_squarefree)
      return StructureDescriptor::make(s.ring(), 0, s.invariant_factors());
    throw UnsupportedRingError(
        "socle over Q[x] needs prime splitting unless the torsion is "
        "squarefree");
  }
  PrimeMap socle_components;
  for (const auto& [p, es] : primary_map(s)) {
    socle_components[p] = std::vector<int>(es.size(), 1);
  }
  return descriptor_from_primary(s.ring(), 0, socle_components);
}

std::size_t uniform_dimension(const StructureDescriptor& s) {
  std::size_t dim = s.free_rank();
  for (const Element& d : s.invariant_factors()) {
    auto fs = try_full_factor(d);
    if (!fs) {
      throw UnsupportedRingError(
          "uniform dimension needs the primary components; the torsion "
          "cannot be split over this ring");
    }
    dim += fs->size();
  }
  return dim;
}

std::optional<int> krull_dimension(const StructureDescriptor& s) {
  if (s.is_zero_module()) return std::nullopt;
  return s.free_rank() == 0 ? 0 : 1;
}

PrimaryDecomposition primary_decomposition(const StructureDescriptor& s) {
  if (s.ring().kind() == RingKind::PolyOverRationals) {
    throw UnsupportedRingError(
        "primary decomposition over Q[x] needs irreducible factorization");
  }
  PrimaryDecomposition out{s.ring(), s.free_rank(), {}};
  for (const auto& [p, es] : primary_map(s)) {
    out.components.push_back(PrimaryComponent{p, es});
  }
  return out;
}

StructureDescriptor PrimaryDecomposition::reassemble() const {
  PrimeMap m;
  for (const auto& c : components) {
    auto es = c.exponents;
    std::sort(es.begin(), es.end());
    m[c.prime] = es;
  }
  return descriptor_from_primary(ring, free_rank, m);
}

bool embeds(const StructureDescriptor& a, const StructureDescriptor& b) {
  if (!(a.ring() == b.ring())) throw RingMismatchError();
  if (a.free_rank() > b.free_rank()) return false;
  if (a.invariant_factors().empty()) return true;
  PrimeMap pa = primary_map(a);
  PrimeMap pb = primary_map(b);
  for (const auto& [p, ea] : pa) {
    auto it = pb.find(p);
    const std::vector<int> empty;
    const std::vector<int>& eb = it == pb.end() ? empty : it->second;
    int max_e = ea.back();
    for (int t = 1; t <= max_e; ++t) {
      auto count_ge = [t](const std::vector<int>& es) {
        return std::count_if(es.begin(), es.end(),
                             [t](int e) { return e >= t; });
      };
      if (count_ge(ea) > count_ge(eb)) return false;
    }
  }
  return true;
}

bool subisomorphic(const StructureDescriptor& a, const StructureDescriptor& b) {
  return embeds(a, b) && embeds(b, a);
}

bool is_quasi_prime_ideal(const Element& d) {
  if (d.ring().kind() == RingKind::PolyOverRationals) {
    throw UnsupportedRingError(
        "quasi-prime testing needs primality, unavailable over Q[x]");
  }
  if (d.is_unit()) throw UnitIdealError();
  if (d.is_zero()) return true;
  return is_prime_element(d);
}

}  // namespace virtmod
