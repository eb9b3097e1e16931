#include <doctest.h>

#include "conefan/terms.hpp"
#include "support.hpp"

using namespace conefan;

TEST_CASE("parser: precedence and variables") {
  Term t = parse_term("(x1 + x2) v 0", 2);
  CHECK(t.root->kind == TermKind::Join);
  CHECK(t.root->lhs->kind == TermKind::Add);
  CHECK(t.root->rhs->kind == TermKind::Zero);

  // meet binds tighter than join
  Term u = parse_term("x1 ^ x2 v x3", 3);
  CHECK(u.root->kind == TermKind::Join);
  CHECK(u.root->lhs->kind == TermKind::Meet);
  CHECK(u.root->rhs->kind == TermKind::Var);
  CHECK(u.root->rhs->var == 3);

  CHECK_THROWS_AS(parse_term("x9", 2), ParseError);
  CHECK_THROWS_AS(parse_term("x1 +", 2), ParseError);
  CHECK_THROWS_AS(parse_term("(x1", 2), ParseError);
  CHECK_THROWS_AS(parse_term("x0", 2), ParseError);

  // case-insensitive, whitespace-insensitive
  CHECK(term_equal(parse_term("X1 V X2", 2), parse_term("x1vx2", 2)));
}

TEST_CASE("parser: additive is left-associative, unary minus binds tightest") {
  Term t = parse_term("x1 - x2 + x1", 2);
  CHECK(t.root->kind == TermKind::Add);
  CHECK(t.root->lhs->kind == TermKind::Sub);

  Term u = parse_term("- x1 + x2", 2);
  CHECK(u.root->kind == TermKind::Add);
  CHECK(u.root->lhs->kind == TermKind::Neg);
}

TEST_CASE("print_term is canonical and round-trips") {
  CHECK(print_term(term_join(term_var(1, 2), term_zero(2))) == "(x1 v 0)");
  CHECK(print_term(term_neg(term_var(2, 2))) == "(- x2)");
  CHECK(print_term(term_meet(term_var(1, 2), term_var(1, 2))) == "(x1 ^ x1)");

  testsup::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    Term t = testsup::random_term(rng, 1 + i % 4, 1 + i % 6, 64);
    Term back = parse_term(print_term(t), t.arity);
    CHECK(term_equal(t, back));
  }
}

TEST_CASE("eval_term on the pinned points") {
  CHECK(eval_term(parse_term("(x1+x2) v 0", 2), {Rat(3), Rat(-5)}) == Rat(0));
  CHECK(eval_term(parse_term("x1 v - x1", 1), {make_rat(-7, 2)}) ==
        make_rat(7, 2));
  CHECK(eval_term(parse_term("x1 ^ x2", 2), {Rat(0), Rat(0)}) == Rat(0));
}

TEST_CASE("linear_pieces on the pinned terms") {
  CHECK(linear_pieces(parse_term("x1 v x2", 2)) ==
        std::vector<IntVec>{{0, 1}, {1, 0}});
  CHECK(linear_pieces(parse_term("x1 + x2", 2)) ==
        std::vector<IntVec>{{1, 1}});
  CHECK(linear_pieces(parse_term("(x1 v 0) - x2", 2)) ==
        std::vector<IntVec>{{0, -1}, {1, -1}});
}

TEST_CASE("evaluation agrees with some linear piece") {
  testsup::Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    std::size_t m = 1 + rng.next() % 4;
    Term t = testsup::random_term(rng, m, 1 + rng.next() % 6, 64);
    RatVec x = testsup::random_rat_vec(rng, m, 8, 5);
    Rat v = eval_term(t, x);
    bool hit = false;
    for (const auto& l : linear_pieces(t))
      if (dot(l, x) == v) {
        hit = true;
        break;
      }
    CHECK(hit);
  }
}

TEST_CASE("positive homogeneity") {
  testsup::Rng rng(23);
  const Rat lambdas[] = {Rat(0), Rat(1), Rat(2), make_rat(7, 3)};
  for (int i = 0; i < 250; ++i) {
    std::size_t m = 1 + rng.next() % 4;
    Term t = testsup::random_term(rng, m, 1 + rng.next() % 5, 64);
    RatVec x = testsup::random_rat_vec(rng, m, 8, 5);
    Rat v = eval_term(t, x);
    for (const Rat& lam : lambdas) {
      RatVec lx(m);
      for (std::size_t k = 0; k < m; ++k) lx[k] = lam * x[k];
      CHECK(eval_term(t, lx) == lam * v);
    }
  }
}

TEST_CASE("linear_pieces has no duplicates") {
  testsup::Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    Term t = testsup::random_term(rng, 1 + i % 3, 1 + i % 6, 64);
    auto ps = linear_pieces(t);
    for (std::size_t a = 0; a + 1 < ps.size(); ++a)
      CHECK(lex_less(ps[a], ps[a + 1]));
  }
}
