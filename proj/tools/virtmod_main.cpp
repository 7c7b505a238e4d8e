#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "virtmod/json_io.hpp"

namespace {

using virtmod::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw virtmod::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) {
  return virtmod::parse_json_text(read_file(path));
}

struct Options {
  bool json = false;
  std::optional<std::string> ring;
  std::optional<std::size_t> bound;

  std::optional<virtmod::RingTag> default_ring() const {
    if (!ring) return std::nullopt;
    return virtmod::ring_from_string(*ring);
  }
};

// Descriptor from a file holding either a descriptor, a presentation, or a
// matrix-ring module presentation (analyzed through transport).
virtmod::StructureDescriptor load_module(const Json& j,
                                         const Options& opt) {
  if (j.is_object() && j.contains("spec")) {
    return structure(transport_to_base(virtmod::matmod_from_json(j)));
  }
  if (j.is_object() && (j.contains("free_rank") || j.contains("invariant_factors"))) {
    return virtmod::descriptor_from_json(j, opt.default_ring());
  }
  return structure(virtmod::presentation_from_json(j, opt.default_ring()));
}

void emit(const Json& report, const Options& opt,
          const std::string& human) {
  if (opt.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

std::string human_analysis(const Json& r) {
  std::ostringstream out;
  out << "module: " << r["pretty"].get<std::string>() << "\n";
  const Json& inv = r["invariants"];
  out << "uniform dimension: "
      << (inv["uniform_dimension"].is_null()
              ? std::string("unsupported over this ring")
              : std::to_string(inv["uniform_dimension"].get<std::size_t>()))
      << "\n";
  out << "Krull dimension: "
      << (inv["krull_dimension"].is_null()
              ? std::string("none (zero module)")
              : std::to_string(inv["krull_dimension"].get<int>()))
      << "\n";
  for (const Json& v : r["verdicts"]) {
    out << v["predicate"].get<std::string>() << ": ";
    if (v["value"].is_null()) {
      out << "undecidable (" << v["error"].get<std::string>() << ")";
    } else {
      out << (v["value"].get<bool>() ? "true" : "false");
    }
    out << "  [" << v["citation"].get<std::string>() << "]\n";
  }
  const Json& d = r["decomposition"];
  if (d.contains("error")) {
    out << "decomposition: " << d["error"].get<std::string>();
    if (d.contains("message")) out << " - " << d["message"].get<std::string>();
    out << "\n";
  } else {
    out << "virtually simple summands:";
    for (const Json& s : d["summands"])
      out << " " << s["pretty"].get<std::string>();
    out << "\n";
  }
  return out.str();
}

int cmd_analyze(const std::string& file, const Options& opt) {
  Json input = load_json(file);
  Json echo = input;
  if (input.is_object() && input.contains("spec")) {
    virtmod::MatModPresentation mp = virtmod::matmod_from_json(input);
    echo = Json{{"matrix_ring_module", input},
                {"transported", presentation_to_json(transport_to_base(mp))}};
  }
  virtmod::StructureDescriptor s = load_module(input, opt);
  Json report = virtmod::analysis_report(echo, s);
  emit(report, opt, human_analysis(report));
  return 0;
}

int cmd_snf(const std::string& file, const Options& opt) {
  virtmod::MatrixOverDomain m =
      virtmod::matrix_from_json(load_json(file), opt.default_ring());
  Json report = virtmod::snf_report(m);
  std::ostringstream human;
  human << "diagonal:";
  for (const Json& d : report["diagonal"]) human << " " << d.dump();
  human << "\ninvariant factors:";
  for (const Json& d : report["invariant_factors"]) human << " " << d.dump();
  human << "\nverified: "
        << (report["verified"].get<bool>() ? "true" : "false") << "\n";
  emit(report, opt, human.str());
  return 0;
}

int cmd_embeds(const std::string& file_a, const std::string& file_b,
               const Options& opt) {
  virtmod::StructureDescriptor a = load_module(load_json(file_a), opt);
  virtmod::StructureDescriptor b = load_module(load_json(file_b), opt);
  Json report = virtmod::embeds_report(a, b);
  std::ostringstream human;
  human << "A = " << a.to_string() << "\nB = " << b.to_string() << "\n"
        << "A embeds in B: "
        << (report["embeds"].get<bool>() ? "true" : "false") << "\n"
        << "B embeds in A: "
        << (report["reverse"].get<bool>() ? "true" : "false") << "\n"
        << "subisomorphic: "
        << (report["subisomorphic"].get<bool>() ? "true" : "false") << "\n";
  emit(report, opt, human.str());
  return 0;
}

int cmd_ks(const std::string& file_a, const std::string& file_b,
           const Options& opt) {
  auto a = virtmod::descriptor_list_from_json(load_json(file_a),
                                              opt.default_ring());
  auto b = virtmod::descriptor_list_from_json(load_json(file_b),
                                              opt.default_ring());
  Json report = virtmod::ks_report(a, b);
  std::ostringstream human;
  human << "Krull-Schmidt pairing:\n";
  for (const Json& p : report["pairing"]) {
    std::size_t i = p[0].get<std::size_t>();
    std::size_t j = p[1].get<std::size_t>();
    human << "  a[" << i << "] = " << a[i].to_string() << "  <->  b[" << j
          << "] = " << b[j].to_string() << "\n";
  }
  emit(report, opt, human.str());
  return 0;
}

int cmd_ring(const std::string& file, const Options& opt) {
  virtmod::ProductRingSpec spec =
      virtmod::product_spec_from_json(load_json(file));
  virtmod::RingReport report = virtmod::ring_analyze(spec);
  Json j = virtmod::ring_report_to_json(report);
  std::ostringstream human;
  human << "ring: " << report.wedderburn_data.name() << "\n"
        << "semisimple: " << (report.is_semisimple ? "true" : "false") << "\n"
        << "left completely virtually semisimple: "
        << (report.is_left_completely_vss ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < report.regular_decomposition.size(); ++i) {
    human << report.wedderburn_data.components()[i].name()
          << " regular module summands:";
    for (const auto& [d, tag] : report.regular_decomposition[i].summands)
      human << " " << d.to_string();
    human << "\n";
  }
  human << "note: " << report.v_domain_note << "\n";
  emit(j, opt, human.str());
  return 0;
}

int cmd_validate(const std::string& predicate, std::optional<std::size_t> bound,
                 const Options& opt) {
  std::size_t effective = 64;
  if (const char* env = std::getenv("VIRTMOD_ORACLE_BOUND")) {
    effective = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  if (opt.bound) effective = *opt.bound;
  if (bound) effective = *bound;
  virtmod::oracle::ValidationReport report =
      virtmod::oracle::validate(predicate, effective);
  Json j = virtmod::validation_report_to_json(report);
  std::ostringstream human;
  human << "predicate: " << report.predicate << "\nbound: " << report.bound
        << "\nchecked: " << report.checked
        << "\nmismatches: " << report.mismatches.size() << "\n";
  for (const auto& m : report.mismatches) human << "  " << m << "\n";
  emit(j, opt, human.str());
  return report.mismatches.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "virtmod: structure, virtual semisimplicity and Krull-Schmidt "
      "certification for finitely generated modules over principal ideal "
      "domains"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "emit machine-readable JSON reports");
  std::string ring_flag;
  auto* ring_opt = app.add_option(
      "--ring", ring_flag, "default ring tag for inputs (int, fp:<p>, qpoly)");
  std::size_t bound_flag = 0;
  auto* bound_opt = app.add_option(
      "--bound", bound_flag, "oracle bound for validate (overrides env)");

  std::string file_a, file_b, predicate;
  std::size_t bound_pos = 0;

  auto* analyze = app.add_subcommand(
      "analyze", "analyze a module presentation (plain or matrix-ring)");
  analyze->add_option("file", file_a, "input JSON file")->required();

  auto* snf = app.add_subcommand("snf", "Smith normal form with certificates");
  snf->add_option("file", file_a, "matrix JSON file")->required();

  auto* embeds_cmd = app.add_subcommand("embeds", "embedding test");
  embeds_cmd->add_option("fileA", file_a, "first module")->required();
  embeds_cmd->add_option("fileB", file_b, "second module")->required();

  auto* ks = app.add_subcommand("ks", "Krull-Schmidt certification");
  ks->add_option("fileA", file_a, "first summand multiset")->required();
  ks->add_option("fileB", file_b, "second summand multiset")->required();

  auto* ring_cmd = app.add_subcommand("ring", "analyze a product of matrix rings");
  ring_cmd->add_option("file", file_a, "ring spec JSON file")->required();

  auto* validate = app.add_subcommand(
      "validate", "run a fast predicate against the brute-force oracle");
  validate->add_option("predicate", predicate, "registered predicate name")
      ->required();
  auto* bound_positional =
      validate->add_option("bound", bound_pos, "group-order bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (ring_opt->count() > 0) opt.ring = ring_flag;
  if (bound_opt->count() > 0) opt.bound = bound_flag;

  try {
    if (analyze->parsed()) return cmd_analyze(file_a, opt);
    if (snf->parsed()) return cmd_snf(file_a, opt);
    if (embeds_cmd->parsed()) return cmd_embeds(file_a, file_b, opt);
    if (ks->parsed()) return cmd_ks(file_a, file_b, opt);
    if (ring_cmd->parsed()) return cmd_ring(file_a, opt);
    if (validate->parsed()) {
      std::optional<std::size_t> b;
      if (bound_positional->count() > 0) b = bound_pos;
      return cmd_validate(predicate, b, opt);
    }
  } catch (const virtmod::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const virtmod::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
