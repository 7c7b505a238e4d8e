#include "virtmod/json_io.hpp"

#include <algorithm>

namespace virtmod {

namespace {

// Short anchor tags tying report fields to the classification results they
// instantiate; emitted verbatim in JSON output.
constexpr const char* kCiteVS = "Sec 1 def, Cor 3.4";
constexpr const char* kCiteVSS = "Sec 1 def, Lem 2.1";
constexpr const char* kCiteCVSS = "Sec 1 def, Thm 2.7";
constexpr const char* kCiteFully = "Def 3.7, Prop 3.8";
constexpr const char* kCiteSS = "Sec 1";
constexpr const char* kCiteQI = "Prop 2.2";
constexpr const char* kCiteDecomp = "Prop 3.1, Thm 3.10(3)";
constexpr const char* kCiteKS = "Thm 2.15";
constexpr const char* kCiteRing = "Thm 2.7, Thm 3.9, Cor 2.3";
constexpr const char* kCiteSNF = "Prop 2.9 proof";
constexpr const char* kCiteEmbeds = "Lem 2.14, Sec 2";

Int int_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError("bad integer literal: " + j.dump());
    }
  }
  throw ParseError("expected an integer (number or decimal string), got " +
                   j.dump());
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Rat(Int(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      auto slash = s.find('/');
      if (slash == std::string::npos) return Rat(Int(s));
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator: " + s);
      return Rat(num, den);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad rational literal: " + s);
    }
  }
  throw ParseError("expected a rational (number or \"num/den\"), got " +
                   j.dump());
}

std::string rat_to_text(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string tag_to_string(SummandTag tag) {
  return tag == SummandTag::Simple ? "Simple" : "FreeOfRankOneOverBase";
}

Json decomposition_to_json(const VSDecomposition& d) {
  Json out;
  out["ring"] = ring_to_json(d.ring);
  out["summands"] = Json::array();
  for (const auto& [desc, tag] : d.summands) {
    Json s;
    s["descriptor"] = descriptor_to_json(desc);
    s["pretty"] = desc.to_string();
    s["tag"] = tag_to_string(tag);
    out["summands"].push_back(s);
  }
  return out;
}

// The canonical smallest prime of each ring, used for witness quotients.
Element smallest_prime(const RingTag& ring) {
  if (ring.kind() == RingKind::Integers) return Element::integer(2);
  return Element::monomial(ring, 1);
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json ring_to_json(const RingTag& ring) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return Json("int");
    case RingKind::PolyOverRationals:
      return Json("qpoly");
    case RingKind::PolyOverPrimeField: {
      Json j;
      j["kind"] = "fp";
      j["p"] = ring.prime();
      return j;
    }
  }
  throw Error("bad ring");
}

RingTag ring_from_string(const std::string& s) {
  if (s == "int" || s == "Z") return RingTag::integers();
  if (s == "qpoly" || s == "Q[x]") return RingTag::poly_over_rationals();
  if (s.rfind("fp:", 0) == 0) {
    try {
      return RingTag::poly_over_fp(std::stoull(s.substr(3)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad ring tag: " + s);
    }
  }
  throw ParseError("unknown ring tag \"" + s +
                   "\" (expected int, fp:<p>, qpoly)");
}

RingTag ring_from_json(const Json& j) {
  if (j.is_string()) return ring_from_string(j.get<std::string>());
  if (j.is_object()) {
    if (j.contains("ring")) return ring_from_json(j.at("ring"));
    if (j.contains("kind")) {
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "int") return RingTag::integers();
      if (kind == "qpoly") return RingTag::poly_over_rationals();
      if (kind == "fp") {
        if (!j.contains("p")) throw ParseError("fp ring needs a prime p");
        return RingTag::poly_over_fp(j.at("p").get<std::uint64_t>());
      }
      throw ParseError("unknown ring kind: " + kind);
    }
  }
  throw ParseError("bad ring: " + j.dump());
}

Json element_to_json(const Element& e) {
  switch (e.ring().kind()) {
    case RingKind::Integers:
      return Json(e.int_value().str());
    case RingKind::PolyOverPrimeField: {
      Json arr = Json::array();
      for (const Int& c : e.fp_coeffs()) arr.push_back(c.convert_to<std::uint64_t>());
      return arr;
    }
    case RingKind::PolyOverRationals: {
      Json arr = Json::array();
      for (const Rat& c : e.rat_coeffs()) arr.push_back(rat_to_text(c));
      return arr;
    }
  }
  throw Error("bad ring");
}

Element element_from_json(const RingTag& ring, const Json& j) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return Element::integer(int_from_json(j));
    case RingKind::PolyOverPrimeField: {
      std::vector<Int> coeffs;
      if (j.is_array()) {
        for (const auto& c : j) coeffs.push_back(int_from_json(c));
      } else {
        coeffs.push_back(int_from_json(j));  // constant polynomial
      }
      return Element::poly_fp(ring.prime(), std::move(coeffs));
    }
    case RingKind::PolyOverRationals: {
      std::vector<Rat> coeffs;
      if (j.is_array()) {
        for (const auto& c : j) coeffs.push_back(rat_from_json(c));
      } else {
        coeffs.push_back(rat_from_json(j));
      }
      return Element::poly_rat(std::move(coeffs));
    }
  }
  throw Error("bad ring");
}

Json matrix_to_json(const MatrixOverDomain& m) {
  Json j;
  j["ring"] = ring_to_json(m.ring());
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(element_to_json(m.at(i, c)));
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j;
}

MatrixOverDomain matrix_from_json(const Json& j,
                                  std::optional<RingTag> default_ring) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  RingTag ring = j.contains("ring") ? ring_from_json(j.at("ring"))
                 : default_ring     ? *default_ring
                                    : throw ParseError("matrix without ring");
  if (!j.contains("entries") || !j.at("entries").is_array())
    throw ParseError("matrix needs an entries array");
  const Json& rows_json = j.at("entries");
  std::size_t rows =
      j.contains("rows") ? j.at("rows").get<std::size_t>() : rows_json.size();
  if (rows_json.size() != rows)
    throw ParseError("matrix rows field disagrees with the entries array");
  std::size_t cols = 0;
  if (j.contains("cols")) {
    cols = j.at("cols").get<std::size_t>();
  } else if (!rows_json.empty()) {
    cols = rows_json.at(0).size();
  }
  MatrixOverDomain m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = rows_json.at(i);
    if (!row.is_array() || row.size() != cols)
      throw ParseError("matrix row " + std::to_string(i) +
                       " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(i, c) = element_from_json(ring, row.at(c));
  }
  return m;
}

Json presentation_to_json(const Presentation& p) {
  Json j;
  j["ring"] = ring_to_json(p.ring);
  j["generators"] = p.generators;
  j["relations"] = matrix_to_json(p.relations);
  return j;
}

Presentation presentation_from_json(const Json& j,
                                    std::optional<RingTag> default_ring) {
  if (!j.is_object() || !j.contains("generators"))
    throw ParseError("presentation needs a generators field");
  RingTag ring = j.contains("ring") ? ring_from_json(j.at("ring"))
                 : default_ring     ? *default_ring
                                    : throw ParseError("presentation without ring");
  std::size_t g = j.at("generators").get<std::size_t>();
  MatrixOverDomain rel =
      j.contains("relations")
          ? matrix_from_json(j.at("relations"), ring)
          : MatrixOverDomain(ring, 0, g);
  try {
    return Presentation(ring, g, std::move(rel));
  } catch (const Error& e) {
    throw ParseError(std::string("bad presentation: ") + e.what());
  }
}

Json descriptor_to_json(const StructureDescriptor& s) {
  Json j;
  j["ring"] = ring_to_json(s.ring());
  j["free_rank"] = s.free_rank();
  Json fs = Json::array();
  for (const Element& d : s.invariant_factors()) fs.push_back(element_to_json(d));
  j["invariant_factors"] = fs;
  return j;
}

StructureDescriptor descriptor_from_json(const Json& j,
                                         std::optional<RingTag> default_ring) {
  if (!j.is_object()) throw ParseError("descriptor must be a JSON object");
  RingTag ring = j.contains("ring") ? ring_from_json(j.at("ring"))
                 : default_ring     ? *default_ring
                                    : throw ParseError("descriptor without ring");
  std::size_t r =
      j.contains("free_rank") ? j.at("free_rank").get<std::size_t>() : 0;
  std::vector<Element> factors;
  if (j.contains("invariant_factors")) {
    for (const auto& f : j.at("invariant_factors"))
      factors.push_back(element_from_json(ring, f));
  }
  try {
    return StructureDescriptor::make(ring, r, std::move(factors));
  } catch (const Error& e) {
    throw ParseError(std::string("bad descriptor: ") + e.what());
  }
}

Json matmod_to_json(const MatModPresentation& mp) {
  Json j;
  Json spec;
  spec["n"] = mp.spec.n;
  spec["base"] = Json{{"ring", ring_to_json(mp.spec.base)}};
  j["spec"] = spec;
  j["generators"] = mp.generators;
  Json rows = Json::array();
  for (std::size_t bi = 0; bi < mp.block_rows; ++bi) {
    Json row = Json::array();
    for (std::size_t bj = 0; bj < mp.generators; ++bj) {
      const MatrixOverDomain& b = mp.blocks[bi * mp.generators + bj];
      Json block = Json::array();
      for (std::size_t u = 0; u < b.rows(); ++u) {
        Json brow = Json::array();
        for (std::size_t v = 0; v < b.cols(); ++v)
          brow.push_back(element_to_json(b.at(u, v)));
        block.push_back(brow);
      }
      row.push_back(block);
    }
    rows.push_back(row);
  }
  j["relations"] = rows;
  return j;
}

MatModPresentation matmod_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("spec"))
    throw ParseError("matrix-ring module needs a spec field");
  const Json& spec_json = j.at("spec");
  if (!spec_json.contains("n") || !spec_json.contains("base"))
    throw ParseError("spec needs n and base");
  std::size_t n = spec_json.at("n").get<std::size_t>();
  RingTag base = ring_from_json(spec_json.at("base"));
  std::size_t g = j.contains("generators")
                      ? j.at("generators").get<std::size_t>()
                      : 0;
  std::vector<MatrixOverDomain> blocks;
  if (j.contains("relations")) {
    for (const auto& row : j.at("relations")) {
      if (!row.is_array() || row.size() != g)
        throw ParseError("each block row needs one block per generator");
      for (const auto& block : row) {
        if (!block.is_array() || block.size() != n)
          throw ParseError("relation blocks must be n x n arrays");
        MatrixOverDomain b(base, n, n);
        for (std::size_t u = 0; u < n; ++u) {
          const auto& brow = block.at(u);
          if (!brow.is_array() || brow.size() != n)
            throw ParseError("relation blocks must be n x n arrays");
          for (std::size_t v = 0; v < n; ++v)
            b.at(u, v) = element_from_json(base, brow.at(v));
        }
        blocks.push_back(std::move(b));
      }
    }
  }
  try {
    return MatModPresentation(MatrixRingSpec(n, base), g, std::move(blocks));
  } catch (const Error& e) {
    throw ParseError(std::string("bad matrix-ring module: ") + e.what());
  }
}

Json product_spec_to_json(const ProductRingSpec& spec) {
  Json comps = Json::array();
  for (const auto& c : spec.components()) {
    Json cj;
    cj["n"] = c.n;
    cj["base"] = Json{{"ring", ring_to_json(c.base)}};
    comps.push_back(cj);
  }
  return Json{{"components", comps}};
}

ProductRingSpec product_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components") ||
      !j.at("components").is_array() || j.at("components").empty()) {
    throw ParseError("ring spec needs a non-empty components array");
  }
  std::vector<MatrixRingSpec> comps;
  for (const auto& cj : j.at("components")) {
    if (!cj.contains("n") || !cj.contains("base"))
      throw ParseError("each component needs n and base");
    comps.emplace_back(cj.at("n").get<std::size_t>(),
                       ring_from_json(cj.at("base")));
  }
  return ProductRingSpec::of(std::move(comps));
}

std::vector<StructureDescriptor> descriptor_list_from_json(
    const Json& j, std::optional<RingTag> default_ring) {
  std::optional<RingTag> ring = default_ring;
  const Json* arr = nullptr;
  if (j.is_array()) {
    arr = &j;
  } else if (j.is_object() && j.contains("summands")) {
    if (j.contains("ring")) ring = ring_from_json(j.at("ring"));
    arr = &j.at("summands");
  } else {
    throw ParseError("expected a descriptor array or a summands object");
  }
  std::vector<StructureDescriptor> out;
  for (const auto& d : *arr) out.push_back(descriptor_from_json(d, ring));
  return out;
}

Json validation_report_to_json(const oracle::ValidationReport& report) {
  Json j;
  j["predicate"] = report.predicate;
  j["bound"] = report.bound;
  j["checked"] = report.checked;
  j["mismatches"] = report.mismatches;
  return j;
}

namespace {

template <class Fn>
Json verdict_of(const std::string& name, const char* citation, Fn&& compute) {
  Json v;
  v["predicate"] = name;
  try {
    auto [value, witness] = compute();
    v["value"] = value;
    if (!witness.is_null()) v["witness"] = witness;
  } catch (const UnsupportedRingError& e) {
    v["value"] = nullptr;
    v["error"] = e.what();
  }
  v["citation"] = citation;
  return v;
}

}  // namespace

Json analysis_report(const Json& input_echo, const StructureDescriptor& s) {
  Json r;
  r["input"] = input_echo;
  r["ring"] = ring_to_json(s.ring());
  r["descriptor"] = descriptor_to_json(s);
  r["pretty"] = s.to_string();

  Json inv;
  try {
    inv["uniform_dimension"] = uniform_dimension(s);
  } catch (const UnsupportedRingError&) {
    inv["uniform_dimension"] = nullptr;
  }
  auto kd = krull_dimension(s);
  inv["krull_dimension"] = kd ? Json(*kd) : Json(nullptr);
  try {
    inv["socle"] = descriptor_to_json(socle(s));
  } catch (const UnsupportedRingError&) {
    inv["socle"] = nullptr;
  }
  auto [torsion, rank] = torsion_free_split(s);
  inv["torsion_free_split"] =
      Json{{"torsion", descriptor_to_json(torsion)}, {"free_rank", rank}};
  r["invariants"] = inv;

  Json verdicts = Json::array();
  verdicts.push_back(verdict_of(
      "virtually_simple", kCiteVS, [&]() -> std::pair<bool, Json> {
        bool v = is_virtually_simple(s);
        Json w;
        if (!v) {
          if (s.free_rank() + s.invariant_factors().size() > 1) {
            w = "decomposes into more than one summand";
          } else if (s.is_zero_module()) {
            w = "the zero module is excluded";
          } else {
            w = "the single invariant factor is not prime";
          }
        }
        return {v, w};
      }));
  verdicts.push_back(verdict_of(
      "virtually_semisimple", kCiteVSS, [&]() -> std::pair<bool, Json> {
        auto witness = non_vss_witness(s);
        Json w;
        if (witness) {
          w = Json{{"invariant_factor", element_to_json(witness->first)},
                   {"repeated_divisor", element_to_json(witness->second)}};
        }
        return {!witness.has_value(), w};
      }));
  verdicts.push_back(verdict_of(
      "completely_virtually_semisimple", kCiteCVSS,
      [&]() -> std::pair<bool, Json> {
        auto witness = non_vss_witness(s);
        Json w;
        if (witness) {
          w = Json{{"invariant_factor", element_to_json(witness->first)},
                   {"repeated_divisor", element_to_json(witness->second)}};
        }
        return {is_completely_virtually_semisimple(s), w};
      }));
  verdicts.push_back(verdict_of(
      "fully_virtually_semisimple", kCiteFully,
      [&]() -> std::pair<bool, Json> {
        bool v = is_fully_virtually_semisimple(s);
        Json w;
        if (!v) {
          if (s.free_rank() > 0) {
            Element p = smallest_prime(s.ring());
            StructureDescriptor quotient =
                StructureDescriptor::make(s.ring(), 0, {p * p});
            w = Json{{"non_vss_quotient", descriptor_to_json(quotient)},
                     {"text", quotient.to_string() +
                                  " is a quotient and is not virtually "
                                  "semisimple"}};
          } else if (auto witness = non_vss_witness(s)) {
            w = Json{{"invariant_factor", element_to_json(witness->first)},
                     {"repeated_divisor", element_to_json(witness->second)}};
          }
        }
        return {v, w};
      }));
  verdicts.push_back(verdict_of(
      "semisimple", kCiteSS, [&]() -> std::pair<bool, Json> {
        bool v = is_semisimple(s);
        Json w;
        if (!v && s.free_rank() > 0) w = "free summands are not semisimple";
        return {v, w};
      }));
  verdicts.push_back(verdict_of(
      "quasi_injective", kCiteQI, [&]() -> std::pair<bool, Json> {
        bool v = is_quasi_injective(s);
        Json w;
        if (!v && s.free_rank() == 0) {
          for (const auto& c : primary_decomposition(s).components) {
            if (!std::all_of(c.exponents.begin(), c.exponents.end(),
                             [&](int e) { return e == c.exponents[0]; })) {
              w = Json{{"prime", element_to_json(c.prime)},
                       {"exponents", c.exponents}};
              break;
            }
          }
        }
        return {v, w};
      }));
  r["verdicts"] = verdicts;

  try {
    VSDecomposition d = decompose_virtually_simple(s);
    Json dj = decomposition_to_json(d);
    dj["citation"] = kCiteDecomp;
    r["decomposition"] = dj;
  } catch (const NotDecomposableError& e) {
    r["decomposition"] =
        Json{{"error", "NotDecomposable"},
             {"witness",
              Json{{"invariant_factor", element_to_json(e.witness_factor())},
                   {"repeated_divisor", element_to_json(e.witness_prime())}}},
             {"message", e.what()},
             {"citation", kCiteDecomp}};
  } catch (const UnsupportedRingError& e) {
    r["decomposition"] = Json{{"error", "UnsupportedRing"},
                              {"message", e.what()},
                              {"citation", kCiteDecomp}};
  }

  r["citations"] = Json::array({kCiteVS, kCiteVSS, kCiteCVSS, kCiteFully,
                                kCiteSS, kCiteQI, kCiteDecomp});
  return r;
}

Json snf_report(const MatrixOverDomain& m) {
  Json r;
  r["input"] = matrix_to_json(m);
  SNFResult snf = smith_normal_form(m);
  r["U"] = matrix_to_json(snf.U);
  r["S"] = matrix_to_json(snf.S);
  r["V"] = matrix_to_json(snf.V);
  Json diag = Json::array();
  for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t)
    diag.push_back(element_to_json(snf.S.at(t, t)));
  r["diagonal"] = diag;
  Json factors = Json::array();
  for (const Element& d : invariant_factors(m))
    factors.push_back(element_to_json(d));
  r["invariant_factors"] = factors;
  r["cokernel"] = descriptor_to_json(
      structure(Presentation(m.ring(), m.cols(), m)));
  r["verified"] = verify_snf(m, snf);
  r["citation"] = kCiteSNF;
  return r;
}

Json embeds_report(const StructureDescriptor& a, const StructureDescriptor& b) {
  Json r;
  r["a"] = descriptor_to_json(a);
  r["b"] = descriptor_to_json(b);
  bool ab = embeds(a, b);
  bool ba = embeds(b, a);
  r["embeds"] = ab;
  r["reverse"] = ba;
  r["subisomorphic"] = ab && ba;
  r["citation"] = kCiteEmbeds;
  return r;
}

Json ks_report(const std::vector<StructureDescriptor>& a,
               const std::vector<StructureDescriptor>& b) {
  KSCertificate cert = ks_certify(a, b);
  Json r;
  Json ja = Json::array(), jb = Json::array();
  for (const auto& d : a) ja.push_back(descriptor_to_json(d));
  for (const auto& d : b) jb.push_back(descriptor_to_json(d));
  r["a"] = ja;
  r["b"] = jb;
  Json pairing = Json::array();
  for (const auto& [i, j] : cert.pairing)
    pairing.push_back(Json::array({i, j}));
  r["pairing"] = pairing;
  r["citation"] = kCiteKS;
  return r;
}

Json ring_report_to_json(const RingReport& report) {
  Json r;
  r["wedderburn_data"] = product_spec_to_json(report.wedderburn_data);
  r["is_semisimple"] = report.is_semisimple;
  r["is_left_completely_vss"] = report.is_left_completely_vss;
  Json status = Json::array();
  for (VDomainStatus s : report.v_domain_status)
    status.push_back(s == VDomainStatus::Field ? "Field" : "NotVDomain");
  r["v_domain_status"] = status;
  r["v_domain_note"] = report.v_domain_note;
  Json decomp = Json::array();
  for (std::size_t i = 0; i < report.regular_decomposition.size(); ++i) {
    Json cj;
    cj["component"] = report.wedderburn_data.components()[i].name();
    cj["regular_module"] = decomposition_to_json(report.regular_decomposition[i]);
    decomp.push_back(cj);
  }
  r["regular_decomposition"] = decomp;
  r["citation"] = kCiteRing;
  return r;
}

}  // namespace virtmod
