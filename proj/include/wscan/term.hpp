#ifndef WSCAN_TERM_HPP
#define WSCAN_TERM_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wscan/expected.hpp"

namespace wscan {

enum class TermKind { Variable, Constant, Application };

struct Term {
  TermKind kind = TermKind::Variable;
  std::string name;
  std::vector<Term> args;  // Application only

  static Term var(std::string n) { return {TermKind::Variable, std::move(n), {}}; }
  static Term constant(std::string n) { return {TermKind::Constant, std::move(n), {}}; }
  static Term app(std::string n, std::vector<Term> a) {
    return {TermKind::Application, std::move(n), std::move(a)};
  }

  bool is_var() const { return kind == TermKind::Variable; }
  bool is_const() const { return kind == TermKind::Constant; }

  bool operator==(const Term& o) const {
    return kind == o.kind && name == o.name && args == o.args;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }
};

void collect_vars(const Term& t, std::set<std::string>& out);
void collect_constants(const Term& t, std::set<std::string>& out);
bool occurs_in(const std::string& var, const Term& t);
int term_depth(const Term& t);
std::string term_to_string(const Term& t);

// Names reserved for generated symbols. Renamed variables end in "_rN";
// unit-closure constants start with "@c"; witness parameters match W<digits>.
bool is_variable_token(const std::string& name);
bool is_reserved_name(const std::string& name);
bool is_witness_param_name(const std::string& name);

// The declared symbols of a problem: the tuple of predicate variables to
// eliminate (in declared order), base predicates, constants and functions.
class Signature {
 public:
  Expected<void> declare_constant(const std::string& name);
  Expected<void> declare_function(const std::string& name, int arity);
  Expected<void> declare_base_predicate(const std::string& name, int arity);
  Expected<void> declare_predicate_variable(const std::string& name, int arity);

  bool is_constant(const std::string& name) const { return constants_.count(name) > 0; }
  bool is_function(const std::string& name) const { return functions_.count(name) > 0; }
  bool is_base_predicate(const std::string& name) const { return base_preds_.count(name) > 0; }
  bool is_predicate_variable(const std::string& name) const;

  int function_arity(const std::string& name) const { return functions_.at(name); }
  int base_predicate_arity(const std::string& name) const { return base_preds_.at(name); }
  int predicate_variable_arity(const std::string& name) const;
  // Position of a predicate variable in the elimination tuple, -1 if absent.
  int predicate_variable_index(const std::string& name) const;

  const std::vector<std::string>& constants() const { return constant_order_; }
  const std::map<std::string, int>& functions() const { return functions_; }
  const std::map<std::string, int>& base_predicates() const { return base_preds_; }
  const std::vector<std::pair<std::string, int>>& predicate_variables() const {
    return pred_vars_;
  }

  // Fresh constants for unit closures ("@c1", "@c2", ...). The reserved
  // prefix keeps them disjoint from declared names.
  std::string fresh_constant();

  int fresh_counter() const { return fresh_counter_; }

 private:
  Expected<void> check_new_name(const std::string& name) const;

  std::set<std::string> constants_;
  std::vector<std::string> constant_order_;
  std::map<std::string, int> functions_;
  std::map<std::string, int> base_preds_;
  std::vector<std::pair<std::string, int>> pred_vars_;
  int fresh_counter_ = 0;
};

}  // namespace wscan

#endif
