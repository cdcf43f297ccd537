#include "wscan/structure.hpp"

#include <limits>

namespace wscan {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return 0;
    r *= base;
  }
  return r;
}

std::string FiniteStructure::to_string() const {
  std::string s = "domain {0..";
  s += std::to_string(domain_size - 1);
  s += "}";
  for (const auto& [c, v] : constants) s += " " + c + "=" + std::to_string(v);
  for (const auto& [f, tab] : functions) {
    s += " " + f + "=[";
    for (size_t i = 0; i < tab.size(); ++i) s += (i ? "," : "") + std::to_string(tab[i]);
    s += "]";
  }
  for (const auto& [p, tab] : predicates) {
    s += " " + p + "={";
    bool first = true;
    for (size_t i = 0; i < tab.size(); ++i)
      if (tab[i]) {
        s += (first ? "" : ",") + std::to_string(i);
        first = false;
      }
    s += "}";
  }
  return s;
}

std::uint64_t SymbolTable::count(int n) const {
  std::uint64_t total = 1;
  auto mul = [&total](std::uint64_t x) {
    if (x == 0 || total == 0) {
      total = 0;
      return;
    }
    if (total > std::numeric_limits<std::uint64_t>::max() / x)
      total = 0;
    else
      total *= x;
  };
  for (size_t i = 0; i < constants.size(); ++i) mul(static_cast<std::uint64_t>(n));
  for (const auto& [f, k] : functions) {
    (void)f;
    mul(ipow(static_cast<std::uint64_t>(n), static_cast<int>(ipow(n, k))));
  }
  for (const auto& [p, k] : predicates) {
    (void)p;
    mul(ipow(2, static_cast<int>(ipow(n, k))));
  }
  return total;
}

StructureEnumerator::StructureEnumerator(SymbolTable symbols, int max_size)
    : symbols_(std::move(symbols)), max_size_(max_size) {}

bool StructureEnumerator::start_size(int n) {
  size_ = n;
  const_vals_.assign(symbols_.constants.size(), 0);
  func_tables_.clear();
  for (const auto& [f, k] : symbols_.functions) {
    (void)f;
    func_tables_.emplace_back(ipow(n, k), 0);
  }
  pred_tables_.clear();
  for (const auto& [p, k] : symbols_.predicates) {
    (void)p;
    pred_tables_.emplace_back(ipow(n, k), 0);
  }
  return true;
}

bool StructureEnumerator::next(FiniteStructure& out) {
  if (done_) return false;
  if (fresh_) {
    fresh_ = false;
    if (max_size_ < 1) {
      done_ = true;
      return false;
    }
    start_size(1);
  } else {
    // Advance: predicate tables fastest, then function tables, then
    // constants, then domain size.
    bool carried = true;
    for (auto it = pred_tables_.rbegin(); carried && it != pred_tables_.rend(); ++it) {
      for (auto v = it->rbegin(); v != it->rend(); ++v) {
        if (*v == 0) {
          *v = 1;
          carried = false;
          break;
        }
        *v = 0;
      }
    }
    for (auto it = func_tables_.rbegin(); carried && it != func_tables_.rend(); ++it) {
      for (auto v = it->rbegin(); v != it->rend(); ++v) {
        if (*v + 1 < size_) {
          ++*v;
          carried = false;
          break;
        }
        *v = 0;
      }
    }
    if (carried) {
      for (auto v = const_vals_.rbegin(); v != const_vals_.rend(); ++v) {
        if (*v + 1 < size_) {
          ++*v;
          carried = false;
          break;
        }
        *v = 0;
      }
    }
    if (carried) {
      if (size_ >= max_size_) {
        done_ = true;
        return false;
      }
      start_size(size_ + 1);
    }
  }

  out.domain_size = size_;
  out.constants.clear();
  for (size_t i = 0; i < symbols_.constants.size(); ++i)
    out.constants[symbols_.constants[i]] = const_vals_[i];
  out.functions.clear();
  for (size_t i = 0; i < symbols_.functions.size(); ++i)
    out.functions[symbols_.functions[i].first] = func_tables_[i];
  out.predicates.clear();
  for (size_t i = 0; i < symbols_.predicates.size(); ++i)
    out.predicates[symbols_.predicates[i].first] = pred_tables_[i];
  return true;
}

}  // namespace wscan
