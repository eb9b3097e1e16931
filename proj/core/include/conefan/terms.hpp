#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "conefan/errors.hpp"
#include "conefan/numbers.hpp"

namespace conefan {

// Lattice-group term over variables x1..xm: 0, xi, -t, t+t, t-t,
// t v t (join/max), t ^ t (meet/min). Nodes are immutable and shared.
struct TermNode;
using TermRef = std::shared_ptr<const TermNode>;

enum class TermKind { Var, Zero, Neg, Add, Sub, Join, Meet };

struct TermNode {
  TermKind kind;
  std::size_t var = 0;  // 1-based, Var only
  TermRef lhs, rhs;     // Neg uses lhs only
};

struct Term {
  TermRef root;
  std::size_t arity = 0;  // number of variables m
};

Term term_var(std::size_t i, std::size_t arity);
Term term_zero(std::size_t arity);
Term term_neg(const Term& t);
Term term_add(const Term& a, const Term& b);
Term term_sub(const Term& a, const Term& b);
Term term_join(const Term& a, const Term& b);
Term term_meet(const Term& a, const Term& b);

bool term_equal(const Term& a, const Term& b);

// Grammar (whitespace-insensitive, case-insensitive):
//   term  = join ;
//   join  = meet  , { "v" , meet } ;
//   meet  = add   , { "^" , add } ;
//   add   = unary , { ("+" | "-") , unary } ;
//   unary = "-" , unary | atom ;
//   atom  = "0" | variable | "(" , term , ")" ;
//   variable = "x" , nonzero-digit , { digit } ;
// Throws ParseError with character position; variable indexes above m are
// rejected.
Term parse_term(const std::string& text, std::size_t m);

// canonical fully parenthesized rendering; parse_term(print_term(t), m)
// is structurally equal to t
std::string print_term(const Term& t);

// value of the associated piecewise linear function at x (|x| = arity)
Rat eval_term(const Term& t, const RatVec& x);

// Integer linear forms covering the term: for every x some returned form l
// has eval_term(t, x) = l.x. Computed inductively (Var -> unit vector,
// Neg -> negations, Add/Sub -> pairwise sums/differences, Join/Meet ->
// union); deduplicated and lexicographically sorted.
std::vector<IntVec> linear_pieces(const Term& t);

}  // namespace conefan
