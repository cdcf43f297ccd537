#ifndef WSCAN_DERIVATION_HPP
#define WSCAN_DERIVATION_HPP

#include <vector>

#include "wscan/calculus.hpp"

namespace wscan {

// A recorded derivation: the initial clause set plus the step list, with all
// intermediate clause sets cached. Replaying the steps from the initial set
// reproduces the intermediates exactly.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(ClauseSet initial);

  // Validates and applies; on success the new conclusion is cached.
  Expected<void> push(const DerivationStep& s);
  void pop();

  static Expected<Derivation> replay(ClauseSet initial, std::vector<DerivationStep> steps);

  const ClauseSet& initial() const { return states_.front(); }
  const ClauseSet& conclusion() const { return states_.back(); }
  const std::vector<DerivationStep>& steps() const { return steps_; }
  // states()[i] is the conclusion of the first i steps; states()[0] is the
  // initial set.
  const std::vector<ClauseSet>& states() const { return states_; }
  size_t length() const { return steps_.size(); }

  bool eliminating(const std::vector<std::pair<std::string, int>>& xs) const {
    return !conclusion().contains_any_pred_var(xs);
  }

  // All purified pointed clauses are one-sided.
  bool is_one_sided() const;

 private:
  std::vector<DerivationStep> steps_;
  std::vector<ClauseSet> states_;
};

}  // namespace wscan

#endif
