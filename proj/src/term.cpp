#include "wscan/term.hpp"

#include <algorithm>
#include <cctype>

namespace wscan {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == TermKind::Variable) {
    out.insert(t.name);
  } else {
    for (const Term& a : t.args) collect_vars(a, out);
  }
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.kind == TermKind::Constant) {
    out.insert(t.name);
  } else {
    for (const Term& a : t.args) collect_constants(a, out);
  }
}

bool occurs_in(const std::string& var, const Term& t) {
  if (t.kind == TermKind::Variable) return t.name == var;
  for (const Term& a : t.args)
    if (occurs_in(var, a)) return true;
  return false;
}

int term_depth(const Term& t) {
  int d = 1;
  for (const Term& a : t.args) d = std::max(d, 1 + term_depth(a));
  return d;
}

std::string term_to_string(const Term& t) {
  if (t.kind != TermKind::Application) return t.name;
  std::string s = t.name + "(";
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += term_to_string(t.args[i]);
  }
  return s + ")";
}

namespace {

// "u12" / "v" style, optionally with a rename suffix "_rN".
bool matches_variable_shape(const std::string& name) {
  if (name.empty()) return false;
  char c = name[0];
  if (c < 'u' || c > 'z') return false;
  size_t i = 1;
  while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
  if (i == name.size()) return true;
  if (name[i] != '_') return false;
  ++i;
  if (i >= name.size() || name[i] != 'r') return false;
  ++i;
  if (i >= name.size()) return false;
  while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
  return i == name.size();
}

}  // namespace

bool is_variable_token(const std::string& name) { return matches_variable_shape(name); }

bool is_witness_param_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'W') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool is_reserved_name(const std::string& name) {
  if (!name.empty() && name[0] == '@') return true;
  if (is_witness_param_name(name)) return true;
  auto pos = name.rfind("_r");
  if (pos != std::string::npos && pos + 2 < name.size()) {
    bool digits = true;
    for (size_t i = pos + 2; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
    if (digits) return true;
  }
  return false;
}

Expected<void> Signature::check_new_name(const std::string& name) const {
  if (name.empty()) return Expected<void>::fail("empty symbol name");
  if (is_reserved_name(name))
    return Expected<void>::fail("name '" + name + "' is reserved for generated symbols");
  if (constants_.count(name) || functions_.count(name) || base_preds_.count(name) ||
      is_predicate_variable(name))
    return Expected<void>::fail("name '" + name + "' declared twice");
  return Ok{};
}

Expected<void> Signature::declare_constant(const std::string& name) {
  if (auto r = check_new_name(name); !r) return r;
  constants_.insert(name);
  constant_order_.push_back(name);
  return Ok{};
}

Expected<void> Signature::declare_function(const std::string& name, int arity) {
  if (arity < 1) return Expected<void>::fail("function arity must be >= 1");
  if (auto r = check_new_name(name); !r) return r;
  functions_[name] = arity;
  return Ok{};
}

Expected<void> Signature::declare_base_predicate(const std::string& name, int arity) {
  if (arity < 0) return Expected<void>::fail("negative arity");
  if (auto r = check_new_name(name); !r) return r;
  base_preds_[name] = arity;
  return Ok{};
}

Expected<void> Signature::declare_predicate_variable(const std::string& name, int arity) {
  if (arity < 0) return Expected<void>::fail("negative arity");
  if (auto r = check_new_name(name); !r) return r;
  pred_vars_.emplace_back(name, arity);
  return Ok{};
}

bool Signature::is_predicate_variable(const std::string& name) const {
  return predicate_variable_index(name) >= 0;
}

int Signature::predicate_variable_arity(const std::string& name) const {
  int i = predicate_variable_index(name);
  return pred_vars_[static_cast<size_t>(i)].second;
}

int Signature::predicate_variable_index(const std::string& name) const {
  for (size_t i = 0; i < pred_vars_.size(); ++i)
    if (pred_vars_[i].first == name) return static_cast<int>(i);
  return -1;
}

std::string Signature::fresh_constant() {
  return "@c" + std::to_string(++fresh_counter_);
}

}  // namespace wscan
