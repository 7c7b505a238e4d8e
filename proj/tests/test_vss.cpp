#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "test_support.hpp"
#include "virtmod/vss.hpp"

using namespace virtmod;

namespace {

Element zi(long long v) { return Element::integer(Int(v)); }

StructureDescriptor zdesc(std::size_t rank,
                          std::initializer_list<long long> factors) {
  std::vector<Element> fs;
  for (long long f : factors) fs.push_back(zi(f));
  return StructureDescriptor::make(RingTag::integers(), rank, std::move(fs));
}

// All descriptors with free rank <= 2 and at most three invariant factors
// drawn from a fixed prime-power pool (chains only).
std::vector<StructureDescriptor> descriptor_pool() {
  const std::vector<long long> pool{2, 3, 4, 5, 8, 9, 12};
  std::vector<std::vector<long long>> chains{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<long long>> next;
    for (const auto& c : chains) {
      if (c.size() != static_cast<std::size_t>(len) - 1) continue;
      for (long long d : pool) {
        if (!c.empty() && d % c.back() != 0) continue;
        auto cc = c;
        cc.push_back(d);
        next.push_back(cc);
      }
    }
    chains.insert(chains.end(), next.begin(), next.end());
  }
  std::vector<StructureDescriptor> out;
  for (std::size_t r = 0; r <= 2; ++r) {
    for (const auto& c : chains) {
      std::vector<Element> fs;
      for (long long d : c) fs.push_back(zi(d));
      out.push_back(StructureDescriptor::make(RingTag::integers(), r, fs));
    }
  }
  return out;
}

// Random virtually semisimple descriptor over Z: squarefree chains from the
// primes {2, 3, 5} plus a free part.
StructureDescriptor random_vss_descriptor(vtest::Rng& rng) {
  std::uniform_int_distribution<int> mult(0, 3);
  std::uniform_int_distribution<std::size_t> rank(0, 3);
  const long long primes[3] = {2, 3, 5};
  int m[3] = {mult(rng), mult(rng), mult(rng)};
  int k = std::max({m[0], m[1], m[2]});
  std::vector<Element> chain;
  for (int i = 0; i < k; ++i) {
    long long d = 1;
    for (int j = 0; j < 3; ++j)
      if (m[j] >= k - i) d *= primes[j];
    chain.push_back(zi(d));
  }
  return StructureDescriptor::make(RingTag::integers(), rank(rng),
                                   std::move(chain));
}

}  // namespace

TEST_CASE("virtually simple") {
  CHECK(is_virtually_simple(zdesc(1, {})));
  CHECK(is_virtually_simple(zdesc(0, {5})));
  CHECK(!is_virtually_simple(zdesc(0, {6})));
  CHECK(!is_virtually_simple(zdesc(0, {4})));
  CHECK(!is_virtually_simple(zdesc(2, {})));
  CHECK(!is_virtually_simple(zdesc(1, {2})));
  CHECK(!is_virtually_simple(zdesc(0, {})));
  CHECK(!is_virtually_simple(zdesc(0, {2, 2})));

  RingTag q = RingTag::poly_over_rationals();
  Element x = Element::monomial(q, 1);
  Element one = Element::one(q);
  CHECK(is_virtually_simple(StructureDescriptor::make(q, 1, {})));
  CHECK(is_virtually_simple(StructureDescriptor::make(q, 0, {x + one})));
  CHECK(!is_virtually_simple(
      StructureDescriptor::make(q, 0, {(x + one) * (x + one)})));
  Element x2p1 = Element::monomial(q, 2) + one;
  CHECK_THROWS_AS(
      is_virtually_simple(StructureDescriptor::make(q, 0, {x2p1})),
      UnsupportedRingError);
}

TEST_CASE("virtually semisimple") {
  CHECK(!is_virtually_semisimple(zdesc(0, {4})));
  CHECK(is_virtually_semisimple(zdesc(1, {})));
  CHECK(is_virtually_semisimple(zdesc(1, {2})));
  CHECK(is_virtually_semisimple(zdesc(0, {2, 6})));
  CHECK(is_virtually_semisimple(zdesc(0, {})));
  CHECK(!is_virtually_semisimple(zdesc(2, {2, 12})));

  RingTag q = RingTag::poly_over_rationals();
  Element x2p1 = Element::monomial(q, 2) + Element::one(q);
  CHECK(is_virtually_semisimple(StructureDescriptor::make(q, 1, {x2p1})));
  CHECK(!is_virtually_semisimple(
      StructureDescriptor::make(q, 0, {x2p1 * x2p1})));
}

TEST_CASE("completely virtually semisimple coincides over these PIDs") {
  for (const auto& s : descriptor_pool()) {
    CHECK(is_completely_virtually_semisimple(s) == is_virtually_semisimple(s));
  }
  CHECK(is_completely_virtually_semisimple(zdesc(1, {})));
  CHECK(!is_completely_virtually_semisimple(zdesc(0, {4})));
  CHECK(is_completely_virtually_semisimple(zdesc(0, {2, 2})));
}

TEST_CASE("fully virtually semisimple") {
  CHECK(!is_fully_virtually_semisimple(zdesc(1, {})));
  CHECK(is_fully_virtually_semisimple(zdesc(0, {6})));
  CHECK(!is_fully_virtually_semisimple(zdesc(0, {4})));
  CHECK(is_fully_virtually_semisimple(zdesc(0, {})));
}

TEST_CASE("semisimple") {
  CHECK(is_semisimple(zdesc(0, {2, 6})));
  CHECK(!is_semisimple(zdesc(0, {4})));
  CHECK(!is_semisimple(zdesc(1, {})));
  CHECK(is_semisimple(zdesc(0, {})));
}

TEST_CASE("quasi-injective") {
  CHECK(is_quasi_injective(zdesc(0, {2, 2})));
  CHECK(!is_quasi_injective(zdesc(0, {2, 4})));
  CHECK(is_quasi_injective(zdesc(0, {4})));
  CHECK(is_quasi_injective(zdesc(0, {12})));
  CHECK(is_quasi_injective(zdesc(0, {2, 6})));
  CHECK(!is_quasi_injective(zdesc(1, {})));
  CHECK(is_quasi_injective(zdesc(0, {})));
  RingTag q = RingTag::poly_over_rationals();
  Element x = Element::monomial(q, 1);
  CHECK_THROWS_AS(is_quasi_injective(StructureDescriptor::make(q, 0, {x})),
                  UnsupportedRingError);
  CHECK(!is_quasi_injective(StructureDescriptor::make(q, 2, {})));
}

TEST_CASE("hierarchy properties over the descriptor pool") {
  std::size_t fully_count = 0, completely_count = 0;
  for (const auto& s : descriptor_pool()) {
    if (is_fully_virtually_semisimple(s)) {
      CHECK(is_completely_virtually_semisimple(s));
      ++fully_count;
    }
    if (is_completely_virtually_semisimple(s)) {
      CHECK(is_virtually_semisimple(s));
      ++completely_count;
    }
    if (is_semisimple(s)) {
      CHECK(is_fully_virtually_semisimple(s));
      CHECK(is_completely_virtually_semisimple(s));
      CHECK(is_virtually_semisimple(s));
    }
    // quasi-injective + virtually semisimple => semisimple
    if (is_quasi_injective(s) && is_virtually_semisimple(s)) {
      CHECK(is_semisimple(s));
    }
  }
  CHECK(fully_count > 0);
  CHECK(completely_count > fully_count);  // free parts separate the two
}

TEST_CASE("virtually simple modules are uniform and cyclic") {
  for (const auto& s : descriptor_pool()) {
    if (!is_virtually_simple(s)) continue;
    CHECK(uniform_dimension(s) == 1);
    CHECK(s.free_rank() + s.invariant_factors().size() == 1);
  }
}

TEST_CASE("non-vss witness") {
  auto w = non_vss_witness(zdesc(0, {4}));
  REQUIRE(w.has_value());
  CHECK(w->first == zi(4));
  CHECK(w->second == zi(2));

  auto w2 = non_vss_witness(zdesc(0, {2, 12}));
  REQUIRE(w2.has_value());
  CHECK(w2->first == zi(12));
  CHECK(w2->second == zi(2));

  CHECK(!non_vss_witness(zdesc(2, {2, 6})).has_value());

  RingTag q = RingTag::poly_over_rationals();
  Element xp1 = Element::monomial(q, 1) + Element::one(q);
  auto w3 = non_vss_witness(StructureDescriptor::make(q, 0, {xp1 * xp1}));
  REQUIRE(w3.has_value());
  CHECK(w3->second == xp1);
}

TEST_CASE("decompose_virtually_simple") {
  // Z^2 (+) Z/2 (+) Z/3 has the canonical chain [6]; splitting the
  // squarefree factor 6 recovers the simple pieces.
  VSDecomposition d = decompose_virtually_simple(zdesc(2, {6}));
  REQUIRE(d.summands.size() == 4);
  // canonical order: simples ascending, then free summands
  CHECK(d.summands[0].first == zdesc(0, {2}));
  CHECK(d.summands[0].second == SummandTag::Simple);
  CHECK(d.summands[1].first == zdesc(0, {3}));
  CHECK(d.summands[2].first == zdesc(1, {}));
  CHECK(d.summands[2].second == SummandTag::FreeOfRankOneOverBase);
  CHECK(d.summands[3].first == zdesc(1, {}));
  CHECK(is_isomorphic(d.reassemble(), zdesc(2, {6})));

  VSDecomposition simple = decompose_virtually_simple(zdesc(0, {5}));
  REQUIRE(simple.summands.size() == 1);
  CHECK(simple.summands[0].first == zdesc(0, {5}));

  CHECK(decompose_virtually_simple(zdesc(0, {})).summands.empty());

  try {
    decompose_virtually_simple(zdesc(0, {4}));
    FAIL("expected NotDecomposableError");
  } catch (const NotDecomposableError& e) {
    CHECK(e.witness_factor() == zi(4));
    CHECK(e.witness_prime() == zi(2));
  }
}

TEST_CASE("decompose over Q[x]") {
  RingTag q = RingTag::poly_over_rationals();
  Element xp1 = Element::monomial(q, 1) + Element::one(q);
  VSDecomposition d = decompose_virtually_simple(
      StructureDescriptor::make(q, 1, {xp1}));
  REQUIRE(d.summands.size() == 2);
  CHECK(d.summands[0].first == StructureDescriptor::make(q, 0, {xp1}));
  CHECK(d.summands[1].first == StructureDescriptor::make(q, 1, {}));

  Element x2p1 = Element::monomial(q, 2) + Element::one(q);
  CHECK_THROWS_AS(
      decompose_virtually_simple(StructureDescriptor::make(q, 0, {x2p1})),
      UnsupportedRingError);
}

TEST_CASE("decomposition reassembles and is unique on random vss inputs") {
  vtest::Rng rng(20240816);
  for (int trial = 0; trial < 200; ++trial) {
    StructureDescriptor s = random_vss_descriptor(rng);
    VSDecomposition d = decompose_virtually_simple(s);
    for (const auto& [summand, tag] : d.summands)
      CHECK(is_virtually_simple(summand));
    CHECK(is_isomorphic(d.reassemble(), s));
    // re-presenting the module does not change the multiset
    Presentation p = to_presentation(s);
    MatrixOverDomain u =
        vtest::random_unimodular(rng, RingTag::integers(), p.relations.rows());
    MatrixOverDomain v =
        vtest::random_unimodular(rng, RingTag::integers(), p.relations.cols());
    StructureDescriptor s2 = structure(
        Presentation(RingTag::integers(), p.generators, u * p.relations * v));
    VSDecomposition d2 = decompose_virtually_simple(s2);
    REQUIRE(d.summands.size() == d2.summands.size());
    for (std::size_t i = 0; i < d.summands.size(); ++i)
      CHECK(d.summands[i].first == d2.summands[i].first);
  }
}

TEST_CASE("ks_certify pairs permuted multisets") {
  std::vector<StructureDescriptor> a{zdesc(1, {}), zdesc(0, {2})};
  std::vector<StructureDescriptor> b{zdesc(0, {2}), zdesc(1, {})};
  KSCertificate cert = ks_certify(a, b);
  REQUIRE(cert.pairing.size() == 2);
  CHECK(cert.pairing[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(cert.pairing[1] == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(verify_ks(a, b, cert));

  CHECK(ks_certify({}, {}).pairing.empty());
}

TEST_CASE("ks_certify failure directions") {
  std::vector<StructureDescriptor> two_free{zdesc(1, {}), zdesc(1, {})};
  std::vector<StructureDescriptor> one_free{zdesc(1, {})};
  try {
    ks_certify(two_free, one_free);
    FAIL("expected NotSubisomorphicError");
  } catch (const NotSubisomorphicError& e) {
    CHECK(e.direction() == EmbedDirection::ANotIntoB);
  }
  try {
    ks_certify(one_free, two_free);
    FAIL("expected NotSubisomorphicError");
  } catch (const NotSubisomorphicError& e) {
    CHECK(e.direction() == EmbedDirection::BNotIntoA);
  }

  std::vector<StructureDescriptor> a{zdesc(0, {2}), zdesc(0, {3})};
  std::vector<StructureDescriptor> b{zdesc(0, {2}), zdesc(0, {5})};
  CHECK_THROWS_AS(ks_certify(a, b), NotSubisomorphicError);
}

TEST_CASE("ks_certify validates entries") {
  std::vector<StructureDescriptor> bad{zdesc(0, {4})};
  std::vector<StructureDescriptor> good{zdesc(0, {2})};
  try {
    ks_certify(good, bad);
    FAIL("expected NotVirtuallySimpleEntryError");
  } catch (const NotVirtuallySimpleEntryError& e) {
    CHECK(e.side() == 'b');
    CHECK(e.index() == 0);
  }

  RingTag q = RingTag::poly_over_rationals();
  std::vector<StructureDescriptor> qlist{StructureDescriptor::make(q, 1, {})};
  CHECK_THROWS_AS(ks_certify(good, qlist), RingMismatchError);
}

TEST_CASE("ks_certify randomized against the embedding criterion") {
  vtest::Rng rng(20240817);
  const std::vector<StructureDescriptor> alphabet{
      zdesc(1, {}), zdesc(0, {2}), zdesc(0, {3}), zdesc(0, {5})};
  std::uniform_int_distribution<std::size_t> len(0, 5);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<StructureDescriptor> a;
    for (std::size_t i = len(rng); i > 0; --i) a.push_back(alphabet[pick(rng)]);
    std::vector<StructureDescriptor> b = a;
    if (coin(rng) == 0) {
      std::shuffle(b.begin(), b.end(), rng);
    } else if (!b.empty()) {
      b[pick(rng) % b.size()] = alphabet[pick(rng)];
    }
    StructureDescriptor sum_a = StructureDescriptor::zero_module(RingTag::integers());
    for (const auto& d : a) sum_a = direct_sum(sum_a, d);
    StructureDescriptor sum_b = StructureDescriptor::zero_module(RingTag::integers());
    for (const auto& d : b) sum_b = direct_sum(sum_b, d);
    bool sub = subisomorphic(sum_a, sum_b);
    try {
      KSCertificate cert = ks_certify(a, b);
      CHECK(sub);
      CHECK(verify_ks(a, b, cert));
    } catch (const NotSubisomorphicError& e) {
      CHECK(!sub);
      if (e.direction() == EmbedDirection::ANotIntoB) {
        CHECK(!embeds(sum_a, sum_b));
      } else {
        CHECK(!embeds(sum_b, sum_a));
      }
    }
  }
}
