#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "virtmod/modpid.hpp"

// Brute-force ground truth on finite abelian groups (Z-modules): definitional
// checks for every derived criterion used by the descriptor-level predicates.
// Everything here works at element level and is deliberately independent of
// the fast implementations it validates.
namespace virtmod::oracle {

inline constexpr std::size_t kDefaultBound = 256;
inline constexpr std::size_t kDefaultComplementBound = 64;
// Above this order the quasi-injectivity oracle switches from literal
// extension search to exact homomorphism counting.
inline constexpr std::size_t kDefaultLiteralQiBound = 16;

// An explicit finite abelian group prod Z/o_i with element-level arithmetic.
// Elements are mixed-radix indices into the coordinate tuples.
class FiniteModule {
 public:
  // The zero group is the empty order list. Raises BoundExceeded when the
  // group order passes the bound.
  explicit FiniteModule(std::vector<int> orders,
                        std::size_t bound = kDefaultBound);

  std::size_t order() const { return order_; }
  const std::vector<int>& cyclic_orders() const { return orders_; }

  int add(int a, int b) const { return add_table_[static_cast<std::size_t>(a) * order_ + b]; }
  int neg(int a) const { return neg_table_[a]; }
  int mul(long long k, int a) const;
  // Mixed-radix coordinate views.
  std::vector<int> coords(int e) const;
  int from_coords(const std::vector<int>& c) const;
  int unit(std::size_t i) const;  // i-th coordinate generator
  int element_order(int e) const;

  // Canonical isomorphism type over Z (free rank always zero).
  StructureDescriptor descriptor() const;

 private:
  std::vector<int> orders_;
  std::vector<int> strides_;
  std::size_t order_;
  std::vector<int> add_table_;
  std::vector<int> neg_table_;
};

// A subgroup: closed element set plus a canonical generating set and the
// cached isomorphism type.
class Submodule {
 public:
  Submodule(std::vector<int> elements, std::vector<int> generators,
            StructureDescriptor descriptor)
      : elements_(std::move(elements)), generators_(std::move(generators)),
        descriptor_(std::move(descriptor)) {}

  const std::vector<int>& elements() const { return elements_; }
  const std::vector<int>& generators() const { return generators_; }
  const StructureDescriptor& descriptor() const { return descriptor_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(int e) const;

 private:
  std::vector<int> elements_;
  std::vector<int> generators_;
  StructureDescriptor descriptor_;
};

// Every subgroup exactly once, deterministically ordered by (size, element
// list).
std::vector<Submodule> enumerate_submodules(const FiniteModule& g);

// Isomorphism type of the subgroup spanned by an element subset.
StructureDescriptor descriptor_of_subset(const FiniteModule& g,
                                         const std::vector<int>& elements);
// Isomorphism type of g / (subgroup given by its element set).
StructureDescriptor descriptor_of_quotient(const FiniteModule& g,
                                           const std::vector<int>& subgroup);

// Independent generators realizing the subgroup's cyclic decomposition
// (orders descending), found by peeling maximal-order elements with a
// complement search.
std::vector<int> independent_basis(const FiniteModule& g,
                                   const std::vector<int>& elements);

// Iso-types of subgroups that admit a complement (A + B = G, A cap B = 0).
std::vector<StructureDescriptor> summand_types_by_complement(
    const FiniteModule& g);
// Same set through the purity criterion: A is a summand iff
// A cap p^k G = p^k A for every prime power.
std::vector<StructureDescriptor> summand_types_by_purity(const FiniteModule& g);
// Dispatch: complement search up to complement_bound, purity beyond.
std::vector<StructureDescriptor> summand_types(
    const FiniteModule& g,
    std::size_t complement_bound = kDefaultComplementBound);

// Every subgroup's type is a summand type.
bool is_vss_bruteforce(const FiniteModule& g);

// Every non-zero subgroup is isomorphic to the whole group.
bool is_virtually_simple_bruteforce(const FiniteModule& g);

// Injective homomorphism search, prime by prime with torsion-count pruning.
bool embeds_bruteforce(const FiniteModule& g, const FiniteModule& h);

// Literal check: every homomorphism from every subgroup extends to an
// endomorphism, by stepwise extension search over all homomorphisms.
// Raises BoundExceeded above the cap.
bool quasi_injective_by_extension_search(
    const FiniteModule& g, std::size_t cap = kDefaultLiteralQiBound);
// Exact counting form of the same condition: the restriction map
// End(G) -> Hom(A, G) is onto iff |Hom(A,G)| * |Hom(G/A,G)| = |End(G)|.
bool quasi_injective_by_hom_counting(const FiniteModule& g);
// Dispatch: literal search on small groups, counting beyond.
bool is_quasi_injective_bruteforce(const FiniteModule& g);

// N essential in K (both subgroups of g, N inside K): socle containment.
bool essential_in(const FiniteModule& g, const std::vector<int>& n,
                  const std::vector<int>& k);
// The same by literal intersection with every subgroup of K; used to
// cross-check the socle characterization.
bool essential_in_literal(const FiniteModule& g,
                          const std::vector<Submodule>& all_subgroups,
                          const std::vector<int>& n, const std::vector<int>& k);

// Socle of a subgroup: elements killed by the radical of |g|.
std::vector<int> socle_of(const FiniteModule& g, const std::vector<int>& k);

// First closed subgroup without a complement, if any.
std::optional<Submodule> extending_witness(const FiniteModule& g);
bool is_extending_bruteforce(const FiniteModule& g);

// Definitional quasi-prime search over Z: all divisor pairs (a, b) of d^2
// are checked against the ideal-containment definition.
bool quasi_prime_by_definition(long long d);

struct ValidationReport {
  std::string predicate;
  std::size_t bound = 0;
  std::size_t checked = 0;
  std::vector<std::string> mismatches;
};

// Runs a fast predicate against its oracle on every abelian group of order
// <= bound. Registered predicates: virtually_semisimple, virtually_simple,
// embeds, quasi_injective, summand_via_purity, fully_virtually_semisimple,
// completely_virtually_semisimple, quasi_prime.
ValidationReport validate(const std::string& predicate, std::size_t bound);

std::vector<std::string> registered_predicates();

// All abelian groups of order <= max_order (order 1 included as the empty
// group), deterministically ordered.
std::vector<FiniteModule> all_abelian_groups(std::size_t max_order);

// Rebuild an abstract finite module from a torsion descriptor over Z.
FiniteModule from_descriptor(const StructureDescriptor& s);

}  // namespace virtmod::oracle
