#include "conefan/numbers.hpp"

#include <cstddef>
#include <sstream>

#include "conefan/errors.hpp"

namespace conefan {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error("zero denominator");
  Rat r(num);
  r /= Rat(den);
  return r;
}

bool is_zero_vec(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero_vec(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec vec_neg(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RatVec to_rat_vec(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

IntVec clear_denominators(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, rat_den(x));
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = rat_num(v[i]) * (l / rat_den(v[i]));
  return r;
}

std::string vec_to_string(const IntVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

std::string vec_to_string(const RatVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

namespace {

Int parse_int_at(const std::string& s, std::size_t& i) {
  std::size_t start = i;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw ParseError("expected integer", start);
  Int value = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    value = value * 10 + (s[i] - '0');
    ++i;
  }
  return neg ? Int(-value) : value;
}

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

}  // namespace

Rat parse_rat(const std::string& text) {
  std::size_t i = 0;
  skip_ws(text, i);
  Int num = parse_int_at(text, i);
  Int den = 1;
  skip_ws(text, i);
  if (i < text.size() && text[i] == '/') {
    ++i;
    skip_ws(text, i);
    den = parse_int_at(text, i);
    if (den == 0) throw ParseError("zero denominator", i);
  }
  skip_ws(text, i);
  if (i != text.size()) throw ParseError("trailing characters", i);
  return make_rat(num, den);
}

RatVec parse_rat_vec(const std::string& text) {
  RatVec out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string part = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(parse_rat(part));
    } catch (const ParseError& e) {
      throw ParseError("bad rational component", start + e.position);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

IntVec parse_int_vec(const std::string& text) {
  RatVec r = parse_rat_vec(text);
  IntVec out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (rat_den(r[i]) != 1) throw ParseError("expected integer entries", 0);
    out[i] = rat_num(r[i]);
  }
  return out;
}

}  // namespace conefan
