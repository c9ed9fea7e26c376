#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "probkb/classical.hpp"
#include "probkb/coherence.hpp"
#include "probkb/errors.hpp"
#include "probkb/harness.hpp"
#include "probkb/kb_text.hpp"
#include "probkb/preferential.hpp"
#include "probkb/semantics.hpp"

namespace {

using probkb::Rational;
using json = nlohmann::ordered_json;

enum ExitCode {
  kOk = 0,
  kHarnessFailure = 1,
  kParseError = 2,
  kInvalidKb = 3,
  kResourceLimit = 4,
  kPrecondition = 5,
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw probkb::ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

probkb::KnowledgeBase load_kb(const std::string& path) {
  probkb::KnowledgeBase kb = probkb::parse_kb(read_file(path));
  probkb::ValidationReport rep = probkb::validate_kb(kb);
  if (!rep.ok()) {
    for (const auto& v : rep.violations) std::cerr << "invalid KB: " << v.message << "\n";
    std::exit(kInvalidKb);
  }
  return kb;
}

Rational parse_tolerance(const std::string& text) {
  auto r = probkb::parse_rational(text);
  if (!r || *r <= 0 || *r >= 1)
    throw probkb::ParseError("bad tolerance: " + text);
  return *r;
}

std::string constraint_str(const probkb::KnowledgeBase& kb, const probkb::ConditionalConstraint& c) {
  return probkb::query_to_string(c.cond, kb.atoms) + " [" + probkb::to_fraction(c.lower) +
         ", " + probkb::to_fraction(c.upper) + "]";
}

json witness_json(const probkb::DistributionVector& d) {
  json out = json::object();
  for (size_t i = 0; i < d.masses.size(); ++i)
    if (d.masses[i] != 0) out[std::to_string(i)] = probkb::to_fraction(d.masses[i]);
  return out;
}

void print_witness(const std::string& label, const probkb::DistributionVector& d) {
  std::cout << label << ":";
  for (size_t i = 0; i < d.masses.size(); ++i)
    if (d.masses[i] != 0)
      std::cout << " w" << i << "=" << probkb::to_fraction(d.masses[i]);
  std::cout << "\n";
}

struct TightOutput {
  probkb::TightInterval interval;
  bool exact = true;
  std::optional<probkb::DistributionVector> lower_witness, upper_witness;
};

TightOutput compute_tight(const probkb::KnowledgeBase& kb, const std::string& semantics,
                          const probkb::ConditionalEvent& q, const Rational& tolerance,
                          bool witness) {
  TightOutput out;
  if (semantics == "logical") {
    auto ws = probkb::enumerate_worlds(kb.atoms);
    if (!probkb::satisfiable(kb.logical, kb.conditional, ws))
      throw probkb::PreconditionError("KB is unsatisfiable");
    auto t = probkb::tight_logical(kb.logical, kb.conditional, ws, q, witness);
    out.interval = t.interval;
    out.lower_witness = std::move(t.lower_witness);
    out.upper_witness = std::move(t.upper_witness);
  } else if (semantics == "z") {
    auto t = probkb::z_tight(kb, q, witness);
    out.interval = t.interval;
    out.lower_witness = std::move(t.lower_witness);
    out.upper_witness = std::move(t.upper_witness);
  } else if (semantics == "lex") {
    auto t = probkb::lex_tight(kb, q, witness);
    out.interval = t.interval;
    out.lower_witness = std::move(t.lower_witness);
    out.upper_witness = std::move(t.upper_witness);
  } else {  // g
    probkb::GTightOptions go;
    go.tolerance = tolerance;
    auto t = probkb::gcoherent_tight(kb, q, go);
    out.interval = t.interval;
    out.exact = t.exact();
  }
  return out;
}

void emit_tight(const TightOutput& t, const std::string& format, bool witness) {
  bool empty = t.interval.is_empty();
  if (format == "json") {
    json j;
    j["empty"] = empty;
    if (!empty) {
      j["lower"] = probkb::to_fraction(t.interval.lower);
      j["lower_decimal"] = probkb::to_decimal(t.interval.lower);
      j["upper"] = probkb::to_fraction(t.interval.upper);
      j["upper_decimal"] = probkb::to_decimal(t.interval.upper);
    }
    j["exact"] = t.exact;
    if (witness && t.lower_witness) j["witness_lower"] = witness_json(*t.lower_witness);
    if (witness && t.upper_witness) j["witness_upper"] = witness_json(*t.upper_witness);
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (empty) {
    std::cout << "empty: yes\n";
  } else {
    std::cout << "lower: " << probkb::to_fraction(t.interval.lower) << " ("
              << probkb::to_decimal(t.interval.lower) << ")\n";
    std::cout << "upper: " << probkb::to_fraction(t.interval.upper) << " ("
              << probkb::to_decimal(t.interval.upper) << ")\n";
    std::cout << "empty: no\n";
  }
  std::cout << "exact: " << (t.exact ? "yes" : "no") << "\n";
  if (witness && t.lower_witness) print_witness("witness lower", *t.lower_witness);
  if (witness && t.upper_witness) print_witness("witness upper", *t.upper_witness);
}

void warn_tolerance_noop(const std::string& semantics, bool tolerance_given) {
  if (tolerance_given && semantics != "g")
    std::cerr << "warning: --tolerance only applies to g semantics; ignored\n";
}

int cmd_check(const std::string& file, const std::string& format) {
  probkb::KnowledgeBase kb = load_kb(file);
  bool sat = probkb::satisfiable(kb);
  probkb::ZPartitionResult zp = probkb::z_partition(kb);
  if (format == "json") {
    json j;
    j["valid"] = true;
    j["satisfiable"] = sat;
    j["g_coherent"] = zp.gcoherent();
    if (zp.gcoherent()) {
      json levels = json::array();
      for (const auto& level : zp.partition->levels) {
        json row = json::array();
        for (int i : level) row.push_back(constraint_str(kb, kb.conditional[i]));
        levels.push_back(row);
      }
      j["z_partition"] = levels;
    } else {
      json stuck = json::array();
      for (int i : zp.stuck_residue) stuck.push_back(constraint_str(kb, kb.conditional[i]));
      j["stuck_residue"] = stuck;
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "valid: yes\n";
  std::cout << "satisfiable: " << (sat ? "yes" : "no") << "\n";
  std::cout << "g-coherent: " << (zp.gcoherent() ? "yes" : "no") << "\n";
  if (zp.gcoherent()) {
    std::cout << "z-partition:\n";
    for (size_t l = 0; l < zp.partition->levels.size(); ++l) {
      std::cout << "  level " << l << ":";
      for (int i : zp.partition->levels[l]) std::cout << " " << constraint_str(kb, kb.conditional[i]) << ";";
      std::cout << "\n";
    }
  } else {
    std::cout << "stuck residue:";
    for (int i : zp.stuck_residue) std::cout << " " << constraint_str(kb, kb.conditional[i]) << ";";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_tight(const std::string& file, const std::string& semantics, const std::string& query,
              const std::string& tolerance, bool tolerance_given, bool witness,
              const std::string& format) {
  probkb::KnowledgeBase kb = load_kb(file);
  probkb::Query q = probkb::parse_query(query, kb.atoms);
  if (q.lower || q.upper)
    throw probkb::ParseError("tight queries take no interval; use the entail command");
  warn_tolerance_noop(semantics, tolerance_given);
  TightOutput t = compute_tight(kb, semantics, q.cond, parse_tolerance(tolerance), witness);
  emit_tight(t, format, witness);
  return kOk;
}

int cmd_entail(const std::string& file, const std::string& semantics, const std::string& query,
               const std::string& tolerance, bool tolerance_given, const std::string& format) {
  probkb::KnowledgeBase kb = load_kb(file);
  probkb::Query q = probkb::parse_query(query, kb.atoms);
  if (!q.lower || !q.upper)
    throw probkb::ParseError("entail queries need an interval: (psi | phi) [l, u]");
  warn_tolerance_noop(semantics, tolerance_given);
  TightOutput t = compute_tight(kb, semantics, q.cond, parse_tolerance(tolerance), false);
  bool yes = probkb::TightInterval{*q.lower, *q.upper}.contains(t.interval);
  if (format == "json") {
    json j;
    j["entailed"] = yes;
    j["empty"] = t.interval.is_empty();
    if (!t.interval.is_empty()) {
      j["lower"] = probkb::to_fraction(t.interval.lower);
      j["upper"] = probkb::to_fraction(t.interval.upper);
    }
    j["exact"] = t.exact;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "entailed: " << (yes ? "yes" : "no") << "\n";
    emit_tight(t, format, false);
  }
  return kOk;
}

int cmd_classical(const std::string& file, const std::string& semantics,
                  const std::string& query, const std::string& format) {
  probkb::KnowledgeBase kb = load_kb(file);
  probkb::ClassicalKB ckb;
  try {
    ckb = probkb::gamma(kb);
  } catch (const probkb::StructuralError& e) {
    std::cerr << "invalid KB for classical reasoning: " << e.what() << "\n";
    return kInvalidKb;
  }
  probkb::DefaultQuery dq = probkb::parse_default_query(query, kb.atoms);
  probkb::Default d{dq.consequent, dq.antecedent};
  bool yes;
  if (semantics == "z")
    yes = probkb::classical_z_entails(ckb, d);
  else if (semantics == "lex")
    yes = probkb::classical_lex_entails(ckb, d);
  else
    yes = probkb::classical_logical_entails(ckb, d);
  if (format == "json") {
    json j;
    j["entailed"] = yes;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "entailed: " << (yes ? "yes" : "no") << "\n";
  }
  return kOk;
}

int cmd_harness(uint64_t seed, int kbs, int max_atoms, bool only_unit, bool no_fixtures,
                const std::string& format) {
  probkb::HarnessParams hp;
  hp.seed = seed;
  hp.kbs = kbs;
  hp.max_atoms = max_atoms;
  hp.only_unit_intervals = only_unit;
  hp.include_fixtures = !no_fixtures;
  probkb::PropertyReport report = probkb::run_harness(hp);
  if (format == "json") {
    json j;
    j["rng"] = report.rng_id;
    json rows = json::object();
    for (const auto& [key, row] : report.rows) {
      json r;
      r["pass"] = row.passes;
      r["fail"] = row.failures;
      r["required"] = row.required;
      r["counterexamples"] = row.counterexamples;
      rows[key] = r;
    }
    j["rows"] = rows;
    j["result"] = report.required_pass() ? "pass" : "fail";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report.serialize();
  }
  return report.required_pass() ? kOk : kHarnessFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reasoner for interval-probabilistic knowledge bases"};
  app.require_subcommand(1);

  std::string file, semantics = "logical", query, format = "text", tolerance = "1/1000000";
  bool witness = false;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  };

  auto* check = app.add_subcommand("check", "Validate a KB and show its coherence status");
  check->add_option("file", file)->required();
  add_format(check);

  auto* tight = app.add_subcommand("tight", "Tight probability bounds for a conditional event");
  tight->add_option("file", file)->required();
  tight->add_option("--semantics", semantics)
      ->check(CLI::IsMember({"logical", "g", "z", "lex"}));
  tight->add_option("--query", query)->required();
  auto* tight_tol = tight->add_option("--tolerance", tolerance);
  tight->add_flag("--witness", witness);
  add_format(tight);

  auto* entail = app.add_subcommand("entail", "Decide entailment of an interval constraint");
  entail->add_option("file", file)->required();
  entail->add_option("--semantics", semantics)
      ->check(CLI::IsMember({"logical", "g", "z", "lex"}));
  entail->add_option("--query", query)->required();
  auto* entail_tol = entail->add_option("--tolerance", tolerance);
  add_format(entail);

  std::string classical_sem = "z";
  auto* classical = app.add_subcommand("classical", "Classical default entailment over the translated KB");
  classical->add_option("file", file)->required();
  classical->add_option("--semantics", classical_sem)
      ->check(CLI::IsMember({"z", "lex", "logical"}));
  classical->add_option("--query", query)->required();
  add_format(classical);

  uint64_t seed = 7;
  int kbs = 20, max_atoms = 4;
  bool only_unit = false, no_fixtures = false;
  auto* harness = app.add_subcommand("harness", "Property suite over a generated corpus");
  harness->add_option("--seed", seed);
  harness->add_option("--kbs", kbs)->check(CLI::PositiveNumber);
  harness->add_option("--max-atoms", max_atoms)->check(CLI::Range(2, 5));
  harness->add_flag("--only-unit-intervals", only_unit);
  harness->add_flag("--no-fixtures", no_fixtures);
  add_format(harness);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(file, format);
    if (tight->parsed())
      return cmd_tight(file, semantics, query, tolerance, !tight_tol->empty(), witness, format);
    if (entail->parsed())
      return cmd_entail(file, semantics, query, tolerance, !entail_tol->empty(), format);
    if (classical->parsed()) return cmd_classical(file, classical_sem, query, format);
    if (harness->parsed())
      return cmd_harness(seed, kbs, max_atoms, only_unit, no_fixtures, format);
  } catch (const probkb::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const probkb::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const probkb::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const probkb::InconsistencyError& e) {
    std::cerr << "semantics failure: " << e.what() << "\n";
    return kPrecondition;
  } catch (const probkb::StructuralError& e) {
    std::cerr << "invalid KB: " << e.what() << "\n";
    return kInvalidKb;
  }
  return kOk;
}
