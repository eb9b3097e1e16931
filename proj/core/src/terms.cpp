#include "conefan/terms.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace conefan {

namespace {

TermRef node(TermKind k, TermRef l = nullptr, TermRef r = nullptr,
             std::size_t var = 0) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->var = var;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

std::size_t common_arity(const Term& a, const Term& b) {
  if (a.arity != b.arity) throw Error("term arity mismatch");
  return a.arity;
}

}  // namespace

Term term_var(std::size_t i, std::size_t arity) {
  if (i < 1 || i > arity) throw Error("variable out of range");
  return {node(TermKind::Var, nullptr, nullptr, i), arity};
}

Term term_zero(std::size_t arity) { return {node(TermKind::Zero), arity}; }

Term term_neg(const Term& t) {
  return {node(TermKind::Neg, t.root), t.arity};
}

Term term_add(const Term& a, const Term& b) {
  return {node(TermKind::Add, a.root, b.root), common_arity(a, b)};
}

Term term_sub(const Term& a, const Term& b) {
  return {node(TermKind::Sub, a.root, b.root), common_arity(a, b)};
}

Term term_join(const Term& a, const Term& b) {
  return {node(TermKind::Join, a.root, b.root), common_arity(a, b)};
}

Term term_meet(const Term& a, const Term& b) {
  return {node(TermKind::Meet, a.root, b.root), common_arity(a, b)};
}

namespace {

bool node_equal(const TermRef& a, const TermRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->var != b->var) return false;
  return node_equal(a->lhs, b->lhs) && node_equal(a->rhs, b->rhs);
}

}  // namespace

bool term_equal(const Term& a, const Term& b) {
  return a.arity == b.arity && node_equal(a.root, b.root);
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
 public:
  Parser(const std::string& text, std::size_t m) : s_(text), m_(m) {}

  Term parse() {
    Term t = parse_join();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected character", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    char lo = static_cast<char>(
        std::tolower(static_cast<unsigned char>(pos_ < s_.size() ? s_[pos_] : '\0')));
    if (pos_ < s_.size() && lo == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Term parse_join() {
    Term t = parse_meet();
    while (eat('v')) t = term_join(t, parse_meet());
    return t;
  }

  Term parse_meet() {
    Term t = parse_add();
    while (eat('^')) t = term_meet(t, parse_add());
    return t;
  }

  Term parse_add() {
    Term t = parse_unary();
    for (;;) {
      if (eat('+'))
        t = term_add(t, parse_unary());
      else if (eat('-'))
        t = term_sub(t, parse_unary());
      else
        return t;
    }
  }

  Term parse_unary() {
    if (eat('-')) return term_neg(parse_unary());
    return parse_atom();
  }

  Term parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of term", pos_);
    char c = s_[pos_];
    if (c == '0') {
      ++pos_;
      return term_zero(m_);
    }
    if (c == '(') {
      ++pos_;
      Term t = parse_join();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return t;
    }
    if (std::tolower(static_cast<unsigned char>(c)) == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
          s_[pos_] == '0')
        throw ParseError("expected variable index", pos_);
      std::size_t idx = 0;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        idx = idx * 10 + static_cast<std::size_t>(s_[pos_] - '0');
        ++pos_;
      }
      if (idx < 1 || idx > m_) throw ParseError("variable out of range", at);
      return term_var(idx, m_);
    }
    throw ParseError("unexpected character", pos_);
  }

  const std::string& s_;
  std::size_t m_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(const std::string& text, std::size_t m) {
  return Parser(text, m).parse();
}

namespace {

void print_node(const TermRef& n, std::ostringstream& os) {
  switch (n->kind) {
    case TermKind::Var:
      os << 'x' << n->var;
      return;
    case TermKind::Zero:
      os << '0';
      return;
    case TermKind::Neg:
      os << "(- ";
      print_node(n->lhs, os);
      os << ')';
      return;
    case TermKind::Add:
    case TermKind::Sub:
    case TermKind::Join:
    case TermKind::Meet: {
      const char* op = n->kind == TermKind::Add    ? " + "
                       : n->kind == TermKind::Sub  ? " - "
                       : n->kind == TermKind::Join ? " v "
                                                   : " ^ ";
      os << '(';
      print_node(n->lhs, os);
      os << op;
      print_node(n->rhs, os);
      os << ')';
      return;
    }
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::ostringstream os;
  print_node(t.root, os);
  return os.str();
}

namespace {

Rat eval_node(const TermRef& n, const RatVec& x) {
  switch (n->kind) {
    case TermKind::Var:
      return x[n->var - 1];
    case TermKind::Zero:
      return Rat(0);
    case TermKind::Neg:
      return -eval_node(n->lhs, x);
    case TermKind::Add:
      return eval_node(n->lhs, x) + eval_node(n->rhs, x);
    case TermKind::Sub:
      return eval_node(n->lhs, x) - eval_node(n->rhs, x);
    case TermKind::Join:
      return std::max(eval_node(n->lhs, x), eval_node(n->rhs, x));
    case TermKind::Meet:
      return std::min(eval_node(n->lhs, x), eval_node(n->rhs, x));
  }
  throw Error("corrupt term");
}

}  // namespace

Rat eval_term(const Term& t, const RatVec& x) {
  if (x.size() != t.arity) throw Error("evaluation point arity mismatch");
  return eval_node(t.root, x);
}

namespace {

std::vector<IntVec> dedupe_sorted(std::vector<IntVec> v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<IntVec> pieces_node(const TermRef& n, std::size_t m) {
  switch (n->kind) {
    case TermKind::Var: {
      IntVec e(m, Int(0));
      e[n->var - 1] = 1;
      return {e};
    }
    case TermKind::Zero:
      return {IntVec(m, Int(0))};
    case TermKind::Neg: {
      std::vector<IntVec> ls = pieces_node(n->lhs, m);
      for (auto& l : ls) l = vec_neg(l);
      return dedupe_sorted(std::move(ls));
    }
    case TermKind::Add:
    case TermKind::Sub: {
      std::vector<IntVec> a = pieces_node(n->lhs, m);
      std::vector<IntVec> b = pieces_node(n->rhs, m);
      std::vector<IntVec> out;
      out.reserve(a.size() * b.size());
      for (const auto& la : a)
        for (const auto& lb : b)
          out.push_back(n->kind == TermKind::Add ? vec_add(la, lb)
                                                 : vec_sub(la, lb));
      return dedupe_sorted(std::move(out));
    }
    case TermKind::Join:
    case TermKind::Meet: {
      std::vector<IntVec> a = pieces_node(n->lhs, m);
      std::vector<IntVec> b = pieces_node(n->rhs, m);
      a.insert(a.end(), b.begin(), b.end());
      return dedupe_sorted(std::move(a));
    }
  }
  throw Error("corrupt term");
}

}  // namespace

std::vector<IntVec> linear_pieces(const Term& t) {
  return pieces_node(t.root, t.arity);
}

}  // namespace conefan
