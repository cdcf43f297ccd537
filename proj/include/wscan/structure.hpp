#ifndef WSCAN_STRUCTURE_HPP
#define WSCAN_STRUCTURE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wscan {

// An explicit interpretation over the domain {0, ..., domain_size-1}.
// Equality is the identity relation and is never reinterpreted.
struct FiniteStructure {
  int domain_size = 1;
  std::map<std::string, int> constants;
  // Function tables flattened row-major: f(e1,...,ek) at index
  // e1*n^(k-1) + ... + ek.
  std::map<std::string, std::vector<int>> functions;
  // Relation tables flattened the same way; arity 0 tables have one entry.
  std::map<std::string, std::vector<char>> predicates;

  std::string to_string() const;
};

// The symbols a structure interprets, in a fixed order so enumeration is
// deterministic: constant maps vary fastest after domain size, then function
// tables, then predicate tables, each lexicographically.
struct SymbolTable {
  std::vector<std::string> constants;
  std::vector<std::pair<std::string, int>> functions;
  std::vector<std::pair<std::string, int>> predicates;

  // Structures with the given domain size (0 if it overflows the cap frame).
  std::uint64_t count(int domain_size) const;
};

class StructureEnumerator {
 public:
  // Enumerates all structures of domain sizes 1..max_size in the fixed
  // order; next() returns false when exhausted.
  StructureEnumerator(SymbolTable symbols, int max_size);

  bool next(FiniteStructure& out);

 private:
  bool start_size(int n);
  SymbolTable symbols_;
  int max_size_;
  int size_ = 0;
  std::vector<int> const_vals_;
  std::vector<std::vector<int>> func_tables_;
  std::vector<std::vector<char>> pred_tables_;
  bool fresh_ = true;
  bool done_ = false;
};

std::uint64_t ipow(std::uint64_t base, int exp);

}  // namespace wscan

#endif
