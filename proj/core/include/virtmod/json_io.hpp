#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "virtmod/matring.hpp"
#include "virtmod/modpid.hpp"
#include "virtmod/oracle.hpp"
#include "virtmod/vss.hpp"

// Wire formats: ring tags, elements, matrices, presentations, descriptors,
// ring specs, and the report payloads emitted by the command line tool.
// Serialization is schema-stable (ordered keys, canonical element text).
namespace virtmod {

using Json = nlohmann::ordered_json;

Json ring_to_json(const RingTag& ring);
RingTag ring_from_json(const Json& j);
// Accepts "int", "fp:<p>", "qpoly".
RingTag ring_from_string(const std::string& s);

// Integers serialize as decimal strings, polynomials as coefficient arrays
// in ascending degree (rational coefficients as "num/den" strings).
Json element_to_json(const Element& e);
Element element_from_json(const RingTag& ring, const Json& j);

Json matrix_to_json(const MatrixOverDomain& m);
MatrixOverDomain matrix_from_json(const Json& j,
                                  std::optional<RingTag> default_ring = {});

Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j,
                                    std::optional<RingTag> default_ring = {});

Json descriptor_to_json(const StructureDescriptor& s);
StructureDescriptor descriptor_from_json(const Json& j,
                                         std::optional<RingTag> default_ring = {});

Json matmod_to_json(const MatModPresentation& mp);
MatModPresentation matmod_from_json(const Json& j);

Json product_spec_to_json(const ProductRingSpec& spec);
ProductRingSpec product_spec_from_json(const Json& j);

// A summand multiset: {"summands": [descriptor...]} or a bare array.
std::vector<StructureDescriptor> descriptor_list_from_json(
    const Json& j, std::optional<RingTag> default_ring = {});

Json validation_report_to_json(const oracle::ValidationReport& report);

// Full analysis of a module: descriptor, predicate verdicts with witnesses,
// decomposition (or the NotDecomposable witness), citations.
Json analysis_report(const Json& input_echo, const StructureDescriptor& s);

// SNF certificate report for a matrix.
Json snf_report(const MatrixOverDomain& m);

Json embeds_report(const StructureDescriptor& a, const StructureDescriptor& b);

// Krull-Schmidt certification report; raises NotSubisomorphicError (with
// direction) when the premise fails.
Json ks_report(const std::vector<StructureDescriptor>& a,
               const std::vector<StructureDescriptor>& b);

Json ring_report_to_json(const RingReport& report);

// Parse helper: wraps nlohmann parse errors into ParseError.
Json parse_json_text(const std::string& text);

}  // namespace virtmod
