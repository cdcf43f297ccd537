#ifndef WSCAN_RENDER_HPP
#define WSCAN_RENDER_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "wscan/derivation.hpp"
#include "wscan/formula.hpp"
#include "wscan/parser.hpp"
#include "wscan/verifier.hpp"
#include "wscan/witness.hpp"

namespace wscan {

using Json = nlohmann::json;

std::string formula_to_text(const Formula& f);
std::string predicate_expression_to_text(const PredicateExpression& e);
std::string witness_to_text(const Witness& w);
std::string clause_set_to_text(const ClauseSet& n);
std::string derivation_to_text(const Derivation& d);

Json term_to_json(const Term& t);
Expected<Term> term_from_json(const Json& j);
Json formula_to_json(const Formula& f);
Expected<Formula> formula_from_json(const Json& j);
Json literal_to_json(const Literal& l);
Expected<Literal> literal_from_json(const Json& j);
Json clause_to_json(const Clause& c);
Expected<Clause> clause_from_json(const Json& j);
Json clause_set_to_json(const ClauseSet& n);
Expected<ClauseSet> clause_set_from_json(const Json& j);
Json step_to_json(const DerivationStep& s);
Expected<DerivationStep> step_from_json(const Json& j);

// {"witness":[{"var":..., "params":[...], "body":<formula>}...],
//  "first_order":bool, "truncated":bool}
Json witness_to_json(const Witness& w, const PredVars& xs);
Expected<Witness> witness_from_json(const Json& j);

Json report_to_json(const CheckReport& r);

// Clause-set size per the implementation-section convention: occurrences of
// non-logical symbols (predicate, function and constant symbols; variables
// and the equality sign do not count).
std::uint64_t input_size(const Clause& c);
std::uint64_t input_size(const ClauseSet& n);

struct RunResult {
  ProblemFile problem;
  std::string status;  // eliminated | limit | stuck
  std::string detail;
  Derivation derivation;
  bool has_witness = false;
  Witness witness;
  bool derivation_one_sided = false;
  std::optional<CheckReport> wsoqe_report;
  std::uint64_t input_size_metric = 0;
  Size witness_size_metric;
  double elapsed_seconds = 0.0;

  Json to_json() const;
  static Expected<RunResult> from_json(const Json& j);
  std::string to_text() const;
};

}  // namespace wscan

#endif
