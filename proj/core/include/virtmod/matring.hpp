#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "virtmod/modpid.hpp"
#include "virtmod/vss.hpp"

namespace virtmod {

// The ring M_n(D) for a supported base domain D.
struct MatrixRingSpec {
  MatrixRingSpec(std::size_t n_, RingTag base_) : n(n_), base(base_) {
    if (n < 1) throw Error("matrix ring size must be at least 1");
  }

  std::size_t n;
  RingTag base;

  friend bool operator==(const MatrixRingSpec&, const MatrixRingSpec&) = default;
  std::string name() const;
};

// A finite product  prod_i M_{n_i}(D_i), kept order-canonical (sorted by
// (base, n)) so that equal products report equal Wedderburn data.
struct ProductRingSpec {
  static ProductRingSpec of(std::vector<MatrixRingSpec> components);

  const std::vector<MatrixRingSpec>& components() const { return components_; }
  std::string name() const;

  friend bool operator==(const ProductRingSpec&, const ProductRingSpec&) = default;

 private:
  std::vector<MatrixRingSpec> components_;
};

// A left module over M_n(D) presented by generators and relations whose
// entries are n x n blocks over D.
struct MatModPresentation {
  MatModPresentation(MatrixRingSpec spec_, std::size_t generators_,
                     std::vector<MatrixOverDomain> blocks_);

  MatrixRingSpec spec;
  std::size_t generators;
  std::size_t block_rows;                 // blocks laid out row-major:
  std::vector<MatrixOverDomain> blocks;   // block_rows x generators
};

// Flattens block relations into scalar relations over the base domain; the
// resulting module corresponds to the matrix-ring module under the column
// equivalence (n * generators base generators).
Presentation transport_to_base(const MatModPresentation& mp);

// Transported descriptor of the j-th column left ideal of M_n(D); free of
// rank one over the base, independently of j (1-based).
StructureDescriptor column_module(const MatrixRingSpec& spec, std::size_t j);

// Virtual simplicity of a matrix-ring module, decided through transport.
bool is_virtually_simple_matmod(const MatModPresentation& mp);

struct RegularDecomposition {
  VSDecomposition decomposition;
  KSCertificate certificate;  // pairing between two independent runs
};

// The regular module of M_n(D) as a direct sum of its n column modules.
RegularDecomposition decompose_regular(const MatrixRingSpec& spec);

enum class VDomainStatus { Field, NotVDomain };

struct RingReport {
  ProductRingSpec wedderburn_data;
  bool is_semisimple = false;
  bool is_left_completely_vss = false;
  // Regular module decomposed componentwise (product modules split along the
  // central idempotents, so the summand lists concatenate).
  std::vector<VSDecomposition> regular_decomposition;
  std::vector<VDomainStatus> v_domain_status;
  std::string v_domain_note;
};

// Ring-level analysis: canonical Wedderburn data, decomposition of the
// regular module, and the V-domain caveat (no supported base domain is a
// V-domain, so virtual semisimplicity of all finitely generated modules is
// not implied).
RingReport ring_analyze(const ProductRingSpec& spec);

}  // namespace virtmod
