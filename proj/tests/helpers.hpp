#ifndef WSCAN_TESTS_HELPERS_HPP
#define WSCAN_TESTS_HELPERS_HPP

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "wscan/parser.hpp"
#include "wscan/render.hpp"

namespace wscan::test {

inline Term V(const std::string& n) { return Term::var(n); }
inline Term K(const std::string& n) { return Term::constant(n); }
inline Term F(const std::string& n, std::vector<Term> args) {
  return Term::app(n, std::move(args));
}

inline ProblemFile prob(const std::string& text) {
  auto p = parse_problem(text);
  REQUIRE_MESSAGE(p.ok(), p.error());
  return *p;
}

inline ProblemFile load_problem(const std::string& name) {
  std::ifstream in(std::string(WSCAN_PROBLEM_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return prob(ss.str());
}

// Random term over constants a,b, variables u,v and unary f, bounded depth.
inline Term random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 1 ? 4 : 3);
  switch (pick(rng)) {
    case 0: return V("u");
    case 1: return V("v");
    case 2: return K("a");
    case 3: return K("b");
    default: return F("f", {random_term(rng, depth - 1)});
  }
}

inline Literal random_literal(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  bool pos = sign(rng) == 0;
  switch (pick(rng)) {
    case 0: return Literal::base(pos, "B", {random_term(rng, depth)});
    case 1: return Literal::pred_var(pos, "X", {random_term(rng, depth)});
    default: return Literal::equality(pos, random_term(rng, depth), random_term(rng, depth));
  }
}

}  // namespace wscan::test

#endif
