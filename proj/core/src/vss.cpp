#include "virtmod/vss.hpp"

#include <algorithm>
#include <map>

namespace virtmod {

namespace {

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const {
    return compare(a, b) < 0;
  }
};

bool torsion_squarefree(const StructureDescriptor& s) {
  // The chain d1 | ... | dk makes the last factor decisive.
  if (s.invariant_factors().empty()) return true;
  return is_squarefree(s.invariant_factors().back());
}

}  // namespace

std::vector<StructureDescriptor> VSDecomposition::descriptors() const {
  std::vector<StructureDescriptor> out;
  out.reserve(summands.size());
  for (const auto& [d, tag] : summands) out.push_back(d);
  return out;
}

StructureDescriptor VSDecomposition::reassemble() const {
  StructureDescriptor acc = StructureDescriptor::zero_module(ring);
  for (const auto& [d, tag] : summands) acc = direct_sum(acc, d);
  return acc;
}

bool is_virtually_simple(const StructureDescriptor& s) {
  if (s.free_rank() == 1 && s.invariant_factors().empty()) return true;
  if (s.free_rank() == 0 && s.invariant_factors().size() == 1) {
    return is_prime_element(s.invariant_factors()[0]);
  }
  return false;
}

bool is_virtually_semisimple(const StructureDescriptor& s) {
  return torsion_squarefree(s);
}

bool is_completely_virtually_semisimple(const StructureDescriptor& s) {
  return is_virtually_semisimple(s);
}

bool is_semisimple(const StructureDescriptor& s) {
  return s.free_rank() == 0 && torsion_squarefree(s);
}

bool is_fully_virtually_semisimple(const StructureDescriptor& s) {
  // A free summand surjects onto D/(p^2), which already fails virtual
  // semisimplicity; torsion quotients of semisimple torsion stay semisimple.
  return is_semisimple(s);
}

bool is_quasi_injective(const StructureDescriptor& s) {
  if (s.is_zero_module()) return true;
  if (s.free_rank() != 0) return false;
  PrimaryDecomposition pd = primary_decomposition(s);
  for (const auto& c : pd.components) {
    for (int e : c.exponents) {
      if (e != c.exponents.front()) return false;
    }
  }
  return true;
}

std::optional<std::pair<Element, Element>> non_vss_witness(
    const StructureDescriptor& s) {
  for (const Element& d : s.invariant_factors()) {
    if (is_squarefree(d)) continue;
    if (d.ring().kind() == RingKind::PolyOverRationals) {
      for (const auto& [part, e] : squarefree_decomposition(d)) {
        if (e >= 2) return std::make_pair(d, part);
      }
    } else {
      for (const auto& [p, e] : factor(d).factors) {
        if (e >= 2) return std::make_pair(d, p);
      }
    }
    throw Error("squarefree test and decomposition disagree");
  }
  return std::nullopt;
}

VSDecomposition decompose_virtually_simple(const StructureDescriptor& s) {
  if (auto witness = non_vss_witness(s)) {
    throw NotDecomposableError(witness->first, witness->second);
  }
  VSDecomposition out{s.ring(), {}};
  for (std::size_t i = 0; i < s.free_rank(); ++i) {
    out.summands.emplace_back(StructureDescriptor::free_module(s.ring(), 1),
                              SummandTag::FreeOfRankOneOverBase);
  }
  for (const Element& d : s.invariant_factors()) {
    if (d.ring().kind() == RingKind::PolyOverRationals) {
      if (d.degree() != 1) {
        throw UnsupportedRingError(
            "splitting squarefree torsion over Q[x] needs irreducible "
            "factorization unless the invariant factors are already prime");
      }
      out.summands.emplace_back(StructureDescriptor::make(s.ring(), 0, {d}),
                                SummandTag::Simple);
      continue;
    }
    for (const auto& [p, e] : factor(d).factors) {
      out.summands.emplace_back(StructureDescriptor::make(s.ring(), 0, {p}),
                                SummandTag::Simple);
    }
  }
  std::sort(out.summands.begin(), out.summands.end(),
            [](const auto& a, const auto& b) {
              return compare_descriptors(a.first, b.first) < 0;
            });
  return out;
}

namespace {

struct VSMultisetProfile {
  std::size_t free_count = 0;
  std::map<Element, std::size_t, ElementLess> prime_counts;
};

VSMultisetProfile profile_of(const std::vector<StructureDescriptor>& ms,
                             char side) {
  VSMultisetProfile p;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!is_virtually_simple(ms[i])) {
      throw NotVirtuallySimpleEntryError(side, i);
    }
    if (ms[i].free_rank() == 1) {
      ++p.free_count;
    } else {
      ++p.prime_counts[ms[i].invariant_factors()[0]];
    }
  }
  return p;
}

bool profile_embeds(const VSMultisetProfile& a, const VSMultisetProfile& b) {
  if (a.free_count > b.free_count) return false;
  for (const auto& [p, n] : a.prime_counts) {
    auto it = b.prime_counts.find(p);
    if (it == b.prime_counts.end() || it->second < n) return false;
  }
  return true;
}

// Deterministic ordering of multiset indices: free summands first, then
// simples by their prime.
std::vector<std::size_t> sorted_indices(
    const std::vector<StructureDescriptor>& ms) {
  std::vector<std::size_t> idx(ms.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return compare_descriptors(ms[i], ms[j]) > 0;
  });
  return idx;
}

}  // namespace

KSCertificate ks_certify(const std::vector<StructureDescriptor>& a,
                         const std::vector<StructureDescriptor>& b) {
  if (!a.empty() && !b.empty() && !(a[0].ring() == b[0].ring())) {
    throw RingMismatchError();
  }
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!(a[i].ring() == a[0].ring())) throw RingMismatchError();
  for (std::size_t i = 1; i < b.size(); ++i)
    if (!(b[i].ring() == b[0].ring())) throw RingMismatchError();

  VSMultisetProfile pa = profile_of(a, 'a');
  VSMultisetProfile pb = profile_of(b, 'b');
  if (!profile_embeds(pa, pb))
    throw NotSubisomorphicError(EmbedDirection::ANotIntoB);
  if (!profile_embeds(pb, pa))
    throw NotSubisomorphicError(EmbedDirection::BNotIntoA);

  // Equal multisets now; sorting both sides the same way aligns them.
  std::vector<std::size_t> ia = sorted_indices(a);
  std::vector<std::size_t> ib = sorted_indices(b);
  KSCertificate cert;
  for (std::size_t k = 0; k < ia.size(); ++k) {
    cert.pairing.emplace_back(ia[k], ib[k]);
  }
  std::sort(cert.pairing.begin(), cert.pairing.end());
  return cert;
}

bool verify_ks(const std::vector<StructureDescriptor>& a,
               const std::vector<StructureDescriptor>& b,
               const KSCertificate& cert) {
  if (a.size() != b.size() || cert.pairing.size() != a.size()) return false;
  std::vector<bool> seen_a(a.size(), false), seen_b(b.size(), false);
  for (const auto& [i, j] : cert.pairing) {
    if (i >= a.size() || j >= b.size() || seen_a[i] || seen_b[j]) return false;
    seen_a[i] = true;
    seen_b[j] = true;
    if (!(a[i] == b[j])) return false;
  }
  return true;
}

}  // namespace virtmod
