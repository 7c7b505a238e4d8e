#include "virtmod/smith.hpp"

#include <algorithm>

namespace virtmod {

MatrixOverDomain MatrixOverDomain::identity(const RingTag& ring,
                                            std::size_t n) {
  MatrixOverDomain m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Element::one(ring);
  return m;
}

MatrixOverDomain MatrixOverDomain::from_ints(
    const RingTag& ring, const std::vector<std::vector<long long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  MatrixOverDomain m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeMismatchError("ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = Element::from_int(ring, rows[i][j]);
  }
  return m;
}

MatrixOverDomain MatrixOverDomain::diagonal(const RingTag& ring,
                                            const std::vector<Element>& d) {
  MatrixOverDomain m(ring, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i].ring() == ring)) throw RingMismatchError();
    m.at(i, i) = d[i];
  }
  return m;
}

MatrixOverDomain MatrixOverDomain::transposed() const {
  MatrixOverDomain m(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

MatrixOverDomain operator*(const MatrixOverDomain& a,
                           const MatrixOverDomain& b) {
  if (!(a.ring() == b.ring())) throw RingMismatchError();
  if (a.cols() != b.rows())
    throw ShapeMismatchError("matrix product shape mismatch");
  MatrixOverDomain m(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        m.at(i, j) = addmul(m.at(i, j), a.at(i, k), b.at(k, j));
      }
    }
  }
  return m;
}

bool operator==(const MatrixOverDomain& a, const MatrixOverDomain& b) {
  if (!(a.ring() == b.ring()) || a.rows() != b.rows() || a.cols() != b.cols())
    return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a.at(i, j) == b.at(i, j))) return false;
  return true;
}

namespace {

// Mutable elimination state. When transforms are tracked, every row
// operation is mirrored on U (and inverted on Uinv), every column operation
// on V (inverted on Vinv), keeping U*A*V = S, U*Uinv = I and V*Vinv = I.
struct SnfWork {
  MatrixOverDomain S, U, V, Uinv, Vinv;
  bool track;

  SnfWork(const MatrixOverDomain& a, bool track_)
      : S(a),
        U(MatrixOverDomain::identity(a.ring(), track_ ? a.rows() : 0)),
        V(MatrixOverDomain::identity(a.ring(), track_ ? a.cols() : 0)),
        Uinv(U),
        Vinv(V),
        track(track_) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < S.cols(); ++c) std::swap(S.at(i, c), S.at(j, c));
    if (!track) return;
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
    for (std::size_t r = 0; r < Uinv.rows(); ++r)
      std::swap(Uinv.at(r, i), Uinv.at(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < S.rows(); ++r) std::swap(S.at(r, i), S.at(r, j));
    if (!track) return;
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
    for (std::size_t c = 0; c < Vinv.cols(); ++c)
      std::swap(Vinv.at(i, c), Vinv.at(j, c));
  }
  // row dst += c * row src
  void addmul_row(std::size_t dst, std::size_t src, const Element& c) {
    const Element neg_c = -c;
    for (std::size_t j = 0; j < S.cols(); ++j)
      S.at(dst, j) = addmul(S.at(dst, j), c, S.at(src, j));
    if (!track) return;
    for (std::size_t j = 0; j < U.cols(); ++j)
      U.at(dst, j) = addmul(U.at(dst, j), c, U.at(src, j));
    for (std::size_t r = 0; r < Uinv.rows(); ++r)
      Uinv.at(r, src) = addmul(Uinv.at(r, src), neg_c, Uinv.at(r, dst));
  }
  // col dst += c * col src
  void addmul_col(std::size_t dst, std::size_t src, const Element& c) {
    const Element neg_c = -c;
    for (std::size_t i = 0; i < S.rows(); ++i)
      S.at(i, dst) = addmul(S.at(i, dst), c, S.at(i, src));
    if (!track) return;
    for (std::size_t i = 0; i < V.rows(); ++i)
      V.at(i, dst) = addmul(V.at(i, dst), c, V.at(i, src));
    for (std::size_t c2 = 0; c2 < Vinv.cols(); ++c2)
      Vinv.at(src, c2) = addmul(Vinv.at(src, c2), neg_c, Vinv.at(dst, c2));
  }
  void scale_row(std::size_t i, const Element& u) {
    for (std::size_t j = 0; j < S.cols(); ++j) S.at(i, j) = u * S.at(i, j);
    if (!track) return;
    Element w = unit_inverse(u);
    for (std::size_t j = 0; j < U.cols(); ++j) U.at(i, j) = u * U.at(i, j);
    for (std::size_t r = 0; r < Uinv.rows(); ++r)
      Uinv.at(r, i) = w * Uinv.at(r, i);
  }
  void scale_col(std::size_t j, const Element& u) {
    for (std::size_t i = 0; i < S.rows(); ++i) S.at(i, j) = u * S.at(i, j);
    if (!track) return;
    Element w = unit_inverse(u);
    for (std::size_t i = 0; i < V.rows(); ++i) V.at(i, j) = u * V.at(i, j);
    for (std::size_t c = 0; c < Vinv.cols(); ++c)
      Vinv.at(j, c) = w * Vinv.at(j, c);
  }

  // Over Q[x] nonzero rationals are units, so rescaling a row or column by
  // the reciprocal of its coefficient content is an elementary unimodular
  // operation. Without it the rational coefficients explode during
  // elimination.
  Element content_unit(bool row, std::size_t idx) const {
    Int num_gcd = 0, den_lcm = 1;
    const std::size_t limit = row ? S.cols() : S.rows();
    for (std::size_t k = 0; k < limit; ++k) {
      const Element& e = row ? S.at(idx, k) : S.at(k, idx);
      for (const Rat& c : e.rat_coeffs()) {
        num_gcd = boost::multiprecision::gcd(
            num_gcd, boost::multiprecision::numerator(c));
        den_lcm = boost::multiprecision::lcm(
            den_lcm, boost::multiprecision::denominator(c));
      }
    }
    if (num_gcd == 0) return Element::one(S.ring());
    return Element::poly_rat({Rat(den_lcm, num_gcd)});
  }
  void reduce_row_content(std::size_t i) {
    if (S.ring().kind() != RingKind::PolyOverRationals) return;
    Element u = content_unit(true, i);
    if (!u.is_one()) scale_row(i, u);
  }
  void reduce_col_content(std::size_t j) {
    if (S.ring().kind() != RingKind::PolyOverRationals) return;
    Element u = content_unit(false, j);
    if (!u.is_one()) scale_col(j, u);
  }
};

void eliminate(SnfWork& w) {
  const std::size_t rows = w.S.rows();
  const std::size_t cols = w.S.cols();
  const RingTag ring = w.S.ring();
  const std::size_t limit = std::min(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) w.reduce_row_content(i);

  for (std::size_t t = 0; t < limit; ++t) {
    // Pivot: smallest Euclidean size in the working submatrix.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (w.S.at(i, j).is_zero()) continue;
        if (!found || smaller_size(w.S.at(i, j), w.S.at(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) break;  // remaining submatrix is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    // A monic pivot keeps euclidean divisions denominator-free over Q[x].
    if (ring.kind() == RingKind::PolyOverRationals) {
      auto [unit, canon] = normalize_unit(w.S.at(t, t));
      if (!unit.is_one()) w.scale_row(t, unit_inverse(unit));
    }

    for (bool settled = false; !settled;) {
      bool restart = false;
      for (std::size_t i = 0; i < rows && !restart; ++i) {
        if (i == t || w.S.at(i, t).is_zero()) continue;
        auto [q, r] = euclidean_divide(w.S.at(i, t), w.S.at(t, t));
        w.addmul_row(i, t, -q);
        w.reduce_row_content(i);
        if (!r.is_zero()) {
          w.swap_rows(i, t);  // strictly smaller pivot
          restart = true;
        }
      }
      if (restart) continue;
      for (std::size_t j = 0; j < cols && !restart; ++j) {
        if (j == t || w.S.at(t, j).is_zero()) continue;
        auto [q, r] = euclidean_divide(w.S.at(t, j), w.S.at(t, t));
        w.addmul_col(j, t, -q);
        w.reduce_col_content(j);
        if (!r.is_zero()) {
          w.swap_cols(j, t);
          restart = true;
        }
      }
      if (restart) continue;
      // Make the pivot divide the rest of the submatrix, so the diagonal
      // comes out as a divisibility chain without a separate pass.
      for (std::size_t i = t + 1; i < rows && !restart; ++i) {
        for (std::size_t j = t + 1; j < cols && !restart; ++j) {
          if (!divides(w.S.at(t, t), w.S.at(i, j))) {
            w.addmul_row(t, i, Element::one(ring));
            w.reduce_row_content(t);
            restart = true;
          }
        }
      }
      settled = !restart;
    }
  }

  // Canonical associates on the diagonal.
  for (std::size_t t = 0; t < limit; ++t) {
    if (w.S.at(t, t).is_zero()) continue;
    auto [unit, canon] = normalize_unit(w.S.at(t, t));
    if (!unit.is_one()) w.scale_row(t, unit_inverse(unit));
  }
}

}  // namespace

SNFResult smith_normal_form(const MatrixOverDomain& a) {
  SnfWork w(a, /*track=*/true);
  eliminate(w);
  SNFResult result{std::move(w.U), std::move(w.S), std::move(w.V)};
  result.u_inverse = std::move(w.Uinv);
  result.v_inverse = std::move(w.Vinv);
  return result;
}

std::vector<Element> smith_diagonal(const MatrixOverDomain& a) {
  SnfWork w(a, /*track=*/false);
  eliminate(w);
  std::vector<Element> out;
  const std::size_t limit = std::min(a.rows(), a.cols());
  out.reserve(limit);
  for (std::size_t t = 0; t < limit; ++t) out.push_back(w.S.at(t, t));
  return out;
}

std::vector<Element> invariant_factors(const MatrixOverDomain& a) {
  std::vector<Element> out;
  for (const Element& d : smith_diagonal(a)) {
    if (!d.is_zero() && !d.is_unit()) out.push_back(d);
  }
  return out;
}

Element determinant(const MatrixOverDomain& a) {
  if (a.rows() != a.cols())
    throw ShapeMismatchError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  const RingTag ring = a.ring();
  if (n == 0) return Element::one(ring);
  MatrixOverDomain m = a;
  bool negate = false;
  Element prev = Element::one(ring);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t swap_with = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (!m.at(i, k).is_zero()) {
          swap_with = i;
          break;
        }
      }
      if (swap_with == k) return Element::zero(ring);
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m.at(k, j), m.at(swap_with, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = exact_divide(
            m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
      }
    }
    prev = m.at(k, k);
  }
  Element det = m.at(n - 1, n - 1);
  return negate ? -det : det;
}

namespace {

bool is_identity(const MatrixOverDomain& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == j ? !m.at(i, j).is_one() : !m.at(i, j).is_zero()) return false;
    }
  }
  return true;
}

// Unit-determinant check: by inverse certificate when available (a two-sided
// inverse over a commutative ring pins the determinant to a unit), by exact
// Bareiss determinant otherwise.
bool unimodular(const MatrixOverDomain& m,
                const std::optional<MatrixOverDomain>& inverse) {
  if (inverse && inverse->rows() == m.rows() && inverse->cols() == m.cols() &&
      inverse->ring() == m.ring()) {
    return is_identity(m * *inverse);
  }
  return determinant(m).is_unit();
}

}  // namespace

bool verify_snf(const MatrixOverDomain& a, const SNFResult& r) {
  if (!(a.ring() == r.U.ring()) || !(a.ring() == r.S.ring()) ||
      !(a.ring() == r.V.ring())) {
    throw RingMismatchError();
  }
  if (r.U.rows() != a.rows() || r.U.cols() != a.rows() ||
      r.V.rows() != a.cols() || r.V.cols() != a.cols() ||
      r.S.rows() != a.rows() || r.S.cols() != a.cols()) {
    throw ShapeMismatchError("SNF certificate shapes do not match the input");
  }
  if (!(r.U * a * r.V == r.S)) return false;
  if (!unimodular(r.U, r.u_inverse)) return false;
  if (!unimodular(r.V, r.v_inverse)) return false;
  for (std::size_t i = 0; i < r.S.rows(); ++i) {
    for (std::size_t j = 0; j < r.S.cols(); ++j) {
      if (i != j && !r.S.at(i, j).is_zero()) return false;
    }
  }
  const std::size_t limit = std::min(a.rows(), a.cols());
  bool seen_zero = false;
  for (std::size_t t = 0; t < limit; ++t) {
    const Element& d = r.S.at(t, t);
    if (d.is_zero()) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;  // zeros must trail
    auto [unit, canon] = normalize_unit(d);
    if (!unit.is_one()) return false;
    if (t + 1 < limit && !r.S.at(t + 1, t + 1).is_zero() &&
        !divides(d, r.S.at(t + 1, t + 1))) {
      return false;
    }
  }
  return true;
}

}  // namespace virtmod
