#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "virtmod/modpid.hpp"

namespace virtmod {

// Raised by decompose_virtually_simple on inputs that are not virtually
// semisimple; carries a concrete witness: an invariant factor d and a
// repeated divisor p (prime whenever primality is decidable) with p^2 | d.
class NotDecomposableError : public Error {
 public:
  NotDecomposableError(Element witness_factor, Element witness_prime)
      : Error("not virtually semisimple: (" + witness_prime.to_string() +
              ")^2 divides the invariant factor " +
              witness_factor.to_string()),
        factor_(std::move(witness_factor)),
        prime_(std::move(witness_prime)) {}

  const Element& witness_factor() const { return factor_; }
  const Element& witness_prime() const { return prime_; }

 private:
  Element factor_;
  Element prime_;
};

enum class SummandTag { Simple, FreeOfRankOneOverBase };

// A direct sum decomposition into virtually simple summands.
struct VSDecomposition {
  RingTag ring;
  std::vector<std::pair<StructureDescriptor, SummandTag>> summands;  // sorted

  std::vector<StructureDescriptor> descriptors() const;
  StructureDescriptor reassemble() const;
};

// Krull-Schmidt pairing between two summand multisets: a bijection of index
// sets whose paired descriptors are equal.
struct KSCertificate {
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
};

// True iff s is the regular module (free of rank one, no torsion) or simple
// (single prime invariant factor).
bool is_virtually_simple(const StructureDescriptor& s);

// True iff the torsion part is semisimple, i.e. every invariant factor is
// squarefree. Decidable over every supported ring.
bool is_virtually_semisimple(const StructureDescriptor& s);

// Coincides with is_virtually_semisimple over the supported PIDs: submodules
// of (free) + (squarefree torsion) have the same shape again.
bool is_completely_virtually_semisimple(const StructureDescriptor& s);

// True iff s is semisimple: any free rank admits a quotient D/(p^2), which
// is not virtually semisimple.
bool is_fully_virtually_semisimple(const StructureDescriptor& s);

bool is_semisimple(const StructureDescriptor& s);

// True iff torsion with every primary component homocyclic (all exponents
// equal at each prime).
bool is_quasi_injective(const StructureDescriptor& s);

// Witness for a failed virtual-semisimplicity test: (invariant factor d,
// repeated divisor p). nullopt when s is virtually semisimple.
std::optional<std::pair<Element, Element>> non_vss_witness(
    const StructureDescriptor& s);

// Splits a virtually semisimple module into free-rank-one copies of the
// base ring plus one simple summand per socle component. Raises
// NotDecomposable (with witness) otherwise.
VSDecomposition decompose_virtually_simple(const StructureDescriptor& s);

// Krull-Schmidt certification: both multisets must consist of virtually
// simple descriptors over one ring. If the direct sums are subisomorphic
// the certificate pairs the entries up; otherwise NotSubisomorphic is
// raised with the failing direction.
KSCertificate ks_certify(const std::vector<StructureDescriptor>& a,
                         const std::vector<StructureDescriptor>& b);

// Checks a certificate: the pairing is a bijection and paired entries are
// isomorphic.
bool verify_ks(const std::vector<StructureDescriptor>& a,
               const std::vector<StructureDescriptor>& b,
               const KSCertificate& cert);

}  // namespace virtmod
