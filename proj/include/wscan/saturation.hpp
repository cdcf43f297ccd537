#ifndef WSCAN_SATURATION_HPP
#define WSCAN_SATURATION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wscan/derivation.hpp"
#include "wscan/term.hpp"

namespace wscan {

enum class Selection { PreferOneSided, FewestXLiterals, PreferUnit, InputOrder };

struct SaturationConfig {
  int max_steps = 400;
  int max_purification_resolvents = 64;
  int depth_limit = 32;  // unit-closure resolution rounds
  bool one_sided_only = false;
  Selection selection = Selection::PreferOneSided;
  int enumerate_limit = 64;
  // Backtracking explores at most this many nodes; diverging regions of the
  // search tree would otherwise dominate the stream.
  int enumerate_node_budget = 5000;
  std::uint64_t seed = 0;
};

// Polarity p when every clause of n containing x has at least one occurrence
// of x with polarity p (the ExtPurDel side condition); nullopt when x is
// absent or neither polarity qualifies. When both qualify, '+' is preferred.
std::optional<char> detect_extended_purity(const ClauseSet& n, const std::string& x);
bool extended_purity_applicable(const ClauseSet& n, const std::string& x, char polarity);

struct PurifyResult {
  bool ok = false;
  bool limit_exceeded = false;
  std::vector<DerivationStep> steps;
  std::string error;
};

// Adds the non-redundant resolvents of the pointed clause against the rest
// of the set, eagerly constraint-eliminating, condensing, deleting redundant
// clauses and factoring the newly added clauses, until every resolvent is
// redundant; ends with PurDel of the pointed clause.
PurifyResult purify(const ClauseSet& n, const ClauseLitRef& p, const SaturationConfig& cfg);

// All designated-literal choices for purification in strategy order.
std::vector<ClauseLitRef> candidate_pointed(const ClauseSet& n, const SaturationConfig& cfg);

struct SaturateResult {
  enum class Status { Eliminated, Limit, Stuck };
  Status status = Status::Limit;
  Derivation derivation;
  std::string detail;
};

// The SCAN loop: extended purity deletion when available, otherwise
// purification of the best pointed clause, until no predicate variable of
// the elimination tuple remains.
SaturateResult saturate(const ClauseSet& n, const Signature& sig, const SaturationConfig& cfg);

// Backtracking over pointed-clause choices and over taking an available
// ExtPurDel versus purifying; yields every X-eliminating derivation reachable
// within the limits, deterministically. fn returns false to stop.
void enumerate_derivations(const ClauseSet& n, const Signature& sig,
                           const SaturationConfig& cfg,
                           const std::function<bool(const Derivation&)>& fn);

std::vector<Derivation> enumerate_derivations_collect(const ClauseSet& n, const Signature& sig,
                                                      const SaturationConfig& cfg);

}  // namespace wscan

#endif
