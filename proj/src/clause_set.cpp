#include "wscan/clause_set.hpp"

#include <cassert>

namespace wscan {

int ClauseSet::add(Clause c) {
  if (c.id == 0) c.id = next_id_;
  assert(!by_id_.count(c.id) && "clause id reused");
  if (c.id >= next_id_) next_id_ = c.id + 1;
  index_add(c);
  int id = c.id;
  by_id_.emplace(id, std::move(c));
  return id;
}

void ClauseSet::remove(int id) {
  auto it = by_id_.find(id);
  assert(it != by_id_.end() && "removing unknown clause id");
  index_remove(it->second);
  by_id_.erase(it);
}

const Clause* ClauseSet::find(int id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &it->second;
}

void ClauseSet::index_add(const Clause& c) {
  for (const Literal& l : c.literals) {
    if (l.is_equality()) continue;
    auto& entry = index_[l.pred];
    (l.positive ? entry.first : entry.second).insert(c.id);
  }
}

void ClauseSet::index_remove(const Clause& c) {
  for (const Literal& l : c.literals) {
    if (l.is_equality()) continue;
    auto it = index_.find(l.pred);
    if (it == index_.end()) continue;
    it->second.first.erase(c.id);
    it->second.second.erase(c.id);
    if (it->second.first.empty() && it->second.second.empty()) index_.erase(it);
  }
}

std::vector<int> ClauseSet::occurrences(const std::string& pred, bool positive) const {
  auto it = index_.find(pred);
  if (it == index_.end()) return {};
  const auto& s = positive ? it->second.first : it->second.second;
  return {s.begin(), s.end()};
}

std::vector<int> ClauseSet::clauses_with(const std::string& pred) const {
  auto it = index_.find(pred);
  if (it == index_.end()) return {};
  std::set<int> all = it->second.first;
  all.insert(it->second.second.begin(), it->second.second.end());
  return {all.begin(), all.end()};
}

bool ClauseSet::contains_pred_var(const std::string& name) const {
  return index_.count(name) > 0;
}

bool ClauseSet::contains_any_pred_var(
    const std::vector<std::pair<std::string, int>>& xs) const {
  for (const auto& [name, arity] : xs) {
    (void)arity;
    if (contains_pred_var(name)) return true;
  }
  return false;
}

std::set<std::string> ClauseSet::all_variables() const {
  std::set<std::string> vs;
  for (const auto& [id, c] : by_id_) {
    (void)id;
    auto cv = c.variables();
    vs.insert(cv.begin(), cv.end());
  }
  return vs;
}

}  // namespace wscan
