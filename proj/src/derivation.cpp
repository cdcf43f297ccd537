#include "wscan/derivation.hpp"

namespace wscan {

Derivation::Derivation(ClauseSet initial) { states_.push_back(std::move(initial)); }

Expected<void> Derivation::push(const DerivationStep& s) {
  auto next = apply_step(states_.back(), s);
  if (!next) return Expected<void>::fail(next.error());
  steps_.push_back(s);
  states_.push_back(std::move(*next));
  return Ok{};
}

void Derivation::pop() {
  if (steps_.empty()) return;
  steps_.pop_back();
  states_.pop_back();
}

Expected<Derivation> Derivation::replay(ClauseSet initial, std::vector<DerivationStep> steps) {
  Derivation d(std::move(initial));
  for (size_t i = 0; i < steps.size(); ++i) {
    if (auto r = d.push(steps[i]); !r)
      return Expected<Derivation>::fail("step " + std::to_string(i + 1) + ": " + r.error());
  }
  return d;
}

bool Derivation::is_one_sided() const {
  for (size_t i = 0; i < steps_.size(); ++i) {
    const DerivationStep& s = steps_[i];
    if (s.kind != StepKind::PurDel) continue;
    const Clause* c = states_[i].find(s.p1.clause_id);
    if (!c) return false;
    if (!one_sided(PointedClause{*c, s.p1.lit_index})) return false;
  }
  return true;
}

}  // namespace wscan
