#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "virtmod/arith.hpp"

namespace virtmod {

// Dense row-major matrix over one of the supported domains. Empty matrices
// (zero rows or columns) are legal everywhere.
class MatrixOverDomain {
 public:
  MatrixOverDomain(RingTag ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols),
        entries_(rows * cols, Element::zero(ring)) {}

  static MatrixOverDomain identity(const RingTag& ring, std::size_t n);
  // Convenience: build from nested integer literals (constants of the ring).
  static MatrixOverDomain from_ints(
      const RingTag& ring, const std::vector<std::vector<long long>>& rows);
  static MatrixOverDomain diagonal(const RingTag& ring,
                                   const std::vector<Element>& entries);

  const RingTag& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Element& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  MatrixOverDomain transposed() const;

  friend MatrixOverDomain operator*(const MatrixOverDomain& a,
                                    const MatrixOverDomain& b);
  friend bool operator==(const MatrixOverDomain& a, const MatrixOverDomain& b);

 private:
  RingTag ring_;
  std::size_t rows_, cols_;
  std::vector<Element> entries_;
};

// U * A * V = S with U, V unimodular and S diagonal with a canonical
// divisibility chain (zeros trailing). smith_normal_form additionally fills
// the inverse transforms, which verify_snf uses as cheap unimodularity
// certificates (it falls back to exact determinants when they are absent).
struct SNFResult {
  MatrixOverDomain U;
  MatrixOverDomain S;
  MatrixOverDomain V;
  std::optional<MatrixOverDomain> u_inverse;
  std::optional<MatrixOverDomain> v_inverse;
};

SNFResult smith_normal_form(const MatrixOverDomain& a);

// Diagonal of the Smith form, computed without transform tracking.
std::vector<Element> smith_diagonal(const MatrixOverDomain& a);

// The non-unit, non-zero Smith diagonal entries, in divisibility order.
std::vector<Element> invariant_factors(const MatrixOverDomain& a);

// Certificate check: exact reconstruction, unit determinants, diagonal
// shape, canonical entries and the divisibility chain.
bool verify_snf(const MatrixOverDomain& a, const SNFResult& r);

// Exact determinant (Bareiss fraction-free elimination); square input.
Element determinant(const MatrixOverDomain& a);

}  // namespace virtmod
