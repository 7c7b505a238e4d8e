#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_support.hpp"
#include "virtmod/smith.hpp"

using namespace virtmod;

namespace {

Element zi(long long v) { return Element::integer(Int(v)); }

MatrixOverDomain zmat(const std::vector<std::vector<long long>>& rows) {
  return MatrixOverDomain::from_ints(RingTag::integers(), rows);
}

}  // namespace

TEST_CASE("snf of the 2x2 reference matrix") {
  MatrixOverDomain a = zmat({{2, 4}, {6, 8}});
  SNFResult r = smith_normal_form(a);

  // Independent derivation: d1 is the gcd of all entries, d1*d2 = |det|.
  Element g = a.at(0, 0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) g = gcd(g, a.at(i, j));
  CHECK(g == zi(2));
  Element det = determinant(a);
  CHECK(det == zi(-8));
  CHECK(r.S.at(0, 0) == g);
  CHECK(r.S.at(1, 1) == exact_divide(normalize_unit(det).second, g));
  CHECK(r.S.at(1, 1) == zi(4));
  CHECK(verify_snf(a, r));
}

TEST_CASE("snf trivial cases") {
  MatrixOverDomain id = MatrixOverDomain::identity(RingTag::integers(), 2);
  SNFResult r = smith_normal_form(id);
  CHECK(r.S == id);
  CHECK(verify_snf(id, r));

  MatrixOverDomain z = zmat({{0}});
  SNFResult rz = smith_normal_form(z);
  CHECK(rz.S.at(0, 0).is_zero());
  CHECK(verify_snf(z, rz));
}

TEST_CASE("snf of empty matrices") {
  for (auto [rows, cols] :
       std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 3}, {3, 0}}) {
    MatrixOverDomain a(RingTag::integers(), rows, cols);
    SNFResult r = smith_normal_form(a);
    CHECK(verify_snf(a, r));
    CHECK(invariant_factors(a).empty());
  }
}

TEST_CASE("invariant_factors reads off the non-unit diagonal") {
  CHECK(invariant_factors(zmat({{2, 4}, {6, 8}})) ==
        std::vector<Element>{zi(2), zi(4)});
  CHECK(invariant_factors(zmat({{1}})).empty());
  CHECK(invariant_factors(zmat({{3, 0}, {0, 0}})) ==
        std::vector<Element>{zi(3)});
}

TEST_CASE("verify_snf rejects corrupted certificates") {
  MatrixOverDomain a = zmat({{2, 4}, {6, 8}});
  SNFResult good = smith_normal_form(a);

  SNFResult bad_s = good;
  bad_s.S.at(0, 0) = bad_s.S.at(0, 0) + zi(1);
  CHECK(!verify_snf(a, bad_s));

  SNFResult bad_u = good;
  for (std::size_t j = 0; j < 2; ++j)
    bad_u.U.at(0, j) = zi(2) * bad_u.U.at(0, j);
  CHECK(!verify_snf(a, bad_u));  // det(U) is no longer a unit

  SNFResult bad_chain = good;
  // Swap the diagonal: 4 does not divide 2.
  std::swap(bad_chain.S.at(0, 0), bad_chain.S.at(1, 1));
  CHECK(!verify_snf(a, bad_chain));

  MatrixOverDomain wrong_shape(RingTag::integers(), 3, 3);
  CHECK_THROWS_AS(verify_snf(wrong_shape, good), ShapeMismatchError);
}

TEST_CASE("determinant agrees with cofactor expansion on small cases") {
  CHECK(determinant(zmat({{3}})) == zi(3));
  CHECK(determinant(zmat({{1, 2}, {3, 4}})) == zi(-2));
  CHECK(determinant(zmat({{2, 0, 1}, {1, 1, 0}, {0, 3, 1}})) == zi(5));
  CHECK(determinant(zmat({{0, 1}, {1, 0}})) == zi(-1));
  CHECK(determinant(zmat({{0, 0}, {0, 5}})).is_zero());
  CHECK(determinant(MatrixOverDomain(RingTag::integers(), 0, 0)) == zi(1));
  CHECK_THROWS_AS(determinant(zmat({{1, 2}})), ShapeMismatchError);
}

TEST_CASE("randomized snf certification across rings") {
  vtest::Rng rng(20240804);
  for (const RingTag& ring : vtest::all_rings()) {
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 6);
      std::size_t rows = dim(rng), cols = dim(rng);
      MatrixOverDomain a = vtest::random_matrix(rng, ring, rows, cols, 100, 3);
      SNFResult r = smith_normal_form(a);
      CHECK(verify_snf(a, r));
      if (rows == cols) {
        Element da = determinant(a);
        Element ds = determinant(r.S);
        if (da.is_zero()) {
          CHECK(ds.is_zero());
        } else {
          // det(S) is an associate of det(A)
          CHECK(normalize_unit(da).second == normalize_unit(ds).second);
        }
      }
    }
  }
}

TEST_CASE("invariant factors stable under unimodular change") {
  vtest::Rng rng(20240805);
  for (const RingTag& ring : vtest::all_rings()) {
    for (int trial = 0; trial < 15; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(2, 5);
      std::size_t rows = dim(rng), cols = dim(rng);
      MatrixOverDomain a = vtest::random_matrix(rng, ring, rows, cols, 50, 2);
      auto base = invariant_factors(a);
      for (int k = 0; k < 5; ++k) {
        MatrixOverDomain u = vtest::random_unimodular(rng, ring, rows);
        MatrixOverDomain v = vtest::random_unimodular(rng, ring, cols);
        CHECK(invariant_factors(u * a * v) == base);
      }
    }
  }
}

TEST_CASE("unimodular generator has unit determinant") {
  vtest::Rng rng(20240806);
  for (const RingTag& ring : vtest::all_rings()) {
    for (int trial = 0; trial < 20; ++trial) {
      MatrixOverDomain u = vtest::random_unimodular(rng, ring, 4);
      CHECK(determinant(u).is_unit());
    }
  }
}
