#ifndef WSCAN_CLAUSE_SET_HPP
#define WSCAN_CLAUSE_SET_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wscan/clause.hpp"

namespace wscan {

// Id-indexed clause set with a polarity-aware occurrence index over
// predicate symbols (base and variable alike). Value semantics: copies are
// independent, id assignment is deterministic and carried along.
class ClauseSet {
 public:
  // Assigns the next id when c.id == 0; fails loudly on id reuse.
  int add(Clause c);
  void remove(int id);

  bool contains(int id) const { return by_id_.count(id) > 0; }
  const Clause* find(int id) const;
  const Clause& at(int id) const { return by_id_.at(id); }

  const std::map<int, Clause>& clauses() const { return by_id_; }
  size_t size() const { return by_id_.size(); }
  bool empty() const { return by_id_.empty(); }

  int next_id() const { return next_id_; }

  // Clause ids with at least one occurrence of pred with the given polarity.
  std::vector<int> occurrences(const std::string& pred, bool positive) const;
  // Clause ids containing pred at all.
  std::vector<int> clauses_with(const std::string& pred) const;

  bool contains_pred_var(const std::string& name) const;
  bool contains_any_pred_var(const std::vector<std::pair<std::string, int>>& xs) const;

  std::set<std::string> all_variables() const;

  bool operator==(const ClauseSet& o) const { return by_id_ == o.by_id_; }

 private:
  void index_add(const Clause& c);
  void index_remove(const Clause& c);

  std::map<int, Clause> by_id_;
  std::map<std::string, std::pair<std::set<int>, std::set<int>>> index_;  // pos, neg
  int next_id_ = 1;
};

inline bool operator==(const Clause& a, const Clause& b) {
  return a.id == b.id && a.literals == b.literals;
}

}  // namespace wscan

#endif
