#ifndef WSCAN_PARSER_HPP
#define WSCAN_PARSER_HPP

#include <map>
#include <string>
#include <vector>

#include "wscan/clause_set.hpp"
#include "wscan/expected.hpp"
#include "wscan/term.hpp"

namespace wscan {

// A parsed problem: the elimination tuple (declared order), the clause set,
// and option overrides.
struct ProblemFile {
  Signature signature;
  ClauseSet clauses;
  std::map<std::string, std::string> options;
};

struct ParseError {
  int line = 0;
  int column = 0;
  std::string expected;
  std::string message() const {
    return "parse error at " + std::to_string(line) + ":" + std::to_string(column) +
           ": expected " + expected;
  }
};

// Grammar:
//   problem := header (consts | option | clause)*
//   header  := "vars:" var_decl ("," var_decl)*
//   var_decl:= NAME "/" ARITY
//   consts  := "consts:" NAME ("," NAME)*
//   option  := "option:" NAME "=" VALUE
//   clause  := "clause:" literal ("|" literal)*
//   literal := "-"? atom
//   atom    := NAME "(" term ("," term)* ")" | NAME
//            | term ("=" | "!=") term
// Tokens u..z with an optional digit suffix are variables; any other 0-ary
// token is a constant. "#" starts a line comment.
Expected<ProblemFile> parse_problem(const std::string& text);

// parse(render(p)) == p on every corpus problem.
std::string render_problem(const ProblemFile& p);

}  // namespace wscan

#endif
