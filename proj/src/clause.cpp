#include "wscan/clause.hpp"

#include <algorithm>
#include <map>

namespace wscan {

bool Literal::same_atom(const Literal& o) const {
  if (atom != o.atom) return false;
  if (atom == AtomKind::Equality) {
    return (args[0] == o.args[0] && args[1] == o.args[1]) ||
           (args[0] == o.args[1] && args[1] == o.args[0]);
  }
  return pred == o.pred && args == o.args;
}

std::set<std::string> Clause::variables() const {
  std::set<std::string> vs;
  for (const Literal& l : literals)
    for (const Term& t : l.args) collect_vars(t, vs);
  return vs;
}

std::set<std::string> Clause::constants() const {
  std::set<std::string> cs;
  for (const Literal& l : literals)
    for (const Term& t : l.args) collect_constants(t, cs);
  return cs;
}

bool Clause::contains_pred_var(const std::string& name) const {
  for (const Literal& l : literals)
    if (l.is_pred_var() && l.pred == name) return true;
  return false;
}

void Clause::pred_var_polarities(const std::string& name, bool& pos, bool& neg) const {
  pos = neg = false;
  for (const Literal& l : literals) {
    if (l.is_pred_var() && l.pred == name) (l.positive ? pos : neg) = true;
  }
}

std::vector<int> Clause::pred_var_literal_indices() const {
  std::vector<int> out;
  for (size_t i = 0; i < literals.size(); ++i)
    if (literals[i].is_pred_var()) out.push_back(static_cast<int>(i));
  return out;
}

std::string literal_to_string(const Literal& l) {
  if (l.is_equality()) {
    return term_to_string(l.args[0]) + (l.positive ? " = " : " != ") +
           term_to_string(l.args[1]);
  }
  std::string s = l.positive ? "" : "-";
  s += l.pred;
  if (!l.args.empty()) {
    s += "(";
    for (size_t i = 0; i < l.args.size(); ++i) {
      if (i) s += ",";
      s += term_to_string(l.args[i]);
    }
    s += ")";
  }
  return s;
}

std::string clause_to_string(const Clause& c) {
  if (c.empty()) return "⊥";
  std::string s;
  for (size_t i = 0; i < c.literals.size(); ++i) {
    if (i) s += " | ";
    s += literal_to_string(c.literals[i]);
  }
  return s;
}

bool one_sided(const PointedClause& p) {
  const Literal& l = p.literal();
  bool pos, neg;
  p.clause.pred_var_polarities(l.pred, pos, neg);
  return !(pos && neg);
}

namespace {

bool variant_terms(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                   std::map<std::string, std::string>& bwd) {
  if (a.kind != b.kind) return false;
  if (a.kind == TermKind::Variable) {
    auto f = fwd.find(a.name);
    auto g = bwd.find(b.name);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a.name] = b.name;
      bwd[b.name] = a.name;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.name && g->second == a.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!variant_terms(a.args[i], b.args[i], fwd, bwd)) return false;
  return true;
}

}  // namespace

bool variant_clauses(const Clause& a, const Clause& b) {
  if (a.literals.size() != b.literals.size()) return false;
  std::map<std::string, std::string> fwd, bwd;
  for (size_t i = 0; i < a.literals.size(); ++i) {
    const Literal& x = a.literals[i];
    const Literal& y = b.literals[i];
    if (x.positive != y.positive || x.atom != y.atom || x.pred != y.pred ||
        x.args.size() != y.args.size())
      return false;
    for (size_t j = 0; j < x.args.size(); ++j)
      if (!variant_terms(x.args[j], y.args[j], fwd, bwd)) return false;
  }
  return true;
}

}  // namespace wscan
