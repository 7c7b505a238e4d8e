#include "virtmod/matring.hpp"

#include <algorithm>

namespace virtmod {

std::string MatrixRingSpec::name() const {
  return "M" + std::to_string(n) + "(" + base.name() + ")";
}

ProductRingSpec ProductRingSpec::of(std::vector<MatrixRingSpec> components) {
  if (components.empty())
    throw Error("a product ring needs at least one component");
  std::sort(components.begin(), components.end(),
            [](const MatrixRingSpec& a, const MatrixRingSpec& b) {
              if (a.base != b.base) return a.base < b.base;
              return a.n < b.n;
            });
  ProductRingSpec p;
  p.components_ = std::move(components);
  return p;
}

std::string ProductRingSpec::name() const {
  std::string out;
  for (const auto& c : components_) {
    if (!out.empty()) out += " x ";
    out += c.name();
  }
  return out;
}

MatModPresentation::MatModPresentation(MatrixRingSpec spec_,
                                       std::size_t generators_,
                                       std::vector<MatrixOverDomain> blocks_)
    : spec(spec_), generators(generators_), block_rows(0),
      blocks(std::move(blocks_)) {
  if (generators == 0 && !blocks.empty())
    throw ShapeMismatchError("relations without generators");
  if (generators > 0) {
    if (blocks.size() % generators != 0)
      throw ShapeMismatchError("block matrix is not rectangular");
    block_rows = blocks.size() / generators;
  }
  for (const auto& b : blocks) {
    if (!(b.ring() == spec.base)) throw RingMismatchError();
    if (b.rows() != spec.n || b.cols() != spec.n)
      throw ShapeMismatchError("relation blocks must be n x n over the base");
  }
}

Presentation transport_to_base(const MatModPresentation& mp) {
  const std::size_t n = mp.spec.n;
  MatrixOverDomain flat(mp.spec.base, mp.block_rows * n, mp.generators * n);
  for (std::size_t bi = 0; bi < mp.block_rows; ++bi) {
    for (std::size_t bj = 0; bj < mp.generators; ++bj) {
      const MatrixOverDomain& block = mp.blocks[bi * mp.generators + bj];
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          flat.at(bi * n + u, bj * n + v) = block.at(u, v);
    }
  }
  return Presentation(mp.spec.base, mp.generators * n, std::move(flat));
}

StructureDescriptor column_module(const MatrixRingSpec& spec, std::size_t j) {
  if (j < 1 || j > spec.n)
    throw IndexOutOfRangeError("column index " + std::to_string(j) +
                               " outside 1.." + std::to_string(spec.n));
  // The j-th column ideal is cyclic, generated by E_jj; its annihilator is
  // spanned by the block diagonal units E_kk, k != j.
  std::vector<MatrixOverDomain> blocks;
  for (std::size_t k = 0; k < spec.n; ++k) {
    if (k + 1 == j) continue;
    MatrixOverDomain unit_block(spec.base, spec.n, spec.n);
    unit_block.at(k, k) = Element::one(spec.base);
    blocks.push_back(std::move(unit_block));
  }
  MatModPresentation mp(spec, 1, std::move(blocks));
  return structure(transport_to_base(mp));
}

bool is_virtually_simple_matmod(const MatModPresentation& mp) {
  return is_virtually_simple(structure(transport_to_base(mp)));
}

RegularDecomposition decompose_regular(const MatrixRingSpec& spec) {
  VSDecomposition first{spec.base, {}};
  VSDecomposition second{spec.base, {}};
  for (std::size_t j = 1; j <= spec.n; ++j) {
    first.summands.emplace_back(column_module(spec, j),
                                SummandTag::FreeOfRankOneOverBase);
    second.summands.emplace_back(column_module(spec, spec.n + 1 - j),
                                 SummandTag::FreeOfRankOneOverBase);
  }
  KSCertificate cert = ks_certify(first.descriptors(), second.descriptors());
  return RegularDecomposition{std::move(first), std::move(cert)};
}

RingReport ring_analyze(const ProductRingSpec& spec) {
  RingReport report{ProductRingSpec::of(spec.components())};
  // Theorem-level facts about the supported bases: every one is a
  // commutative principal ideal domain and none of them is a field, hence
  // none is a V-domain (D/(p^2) is a quotient that is not virtually
  // semisimple).
  report.is_semisimple = false;
  report.is_left_completely_vss = true;
  for (const auto& c : report.wedderburn_data.components()) {
    report.regular_decomposition.push_back(
        decompose_regular(c).decomposition);
    report.v_domain_status.push_back(VDomainStatus::NotVDomain);
  }
  report.v_domain_note =
      "no supported base domain is a V-domain; the principal-ideal-V-domain "
      "conclusions (every finitely generated module virtually semisimple) do "
      "not apply, and a counterexample module of shape D/(p^2) exists over "
      "every component";
  return report;
}

}  // namespace virtmod
