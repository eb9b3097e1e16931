#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace conefan {

// Exact scalars. Every computation in this library is exact; there is no
// floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// num/den with any sign of den (den != 0); result is canonical.
Rat make_rat(const Int& num, const Int& den);

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

bool is_zero_vec(const IntVec& v);
bool is_zero_vec(const RatVec& v);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const IntVec& a, const RatVec& b);

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_neg(const IntVec& a);

// strict lexicographic order on equal-length integer vectors
bool lex_less(const IntVec& a, const IntVec& b);

RatVec to_rat_vec(const IntVec& v);

// smallest positive scaling of a rational vector that is integral
IntVec clear_denominators(const RatVec& v);

std::string vec_to_string(const IntVec& v);  // "1,-2,0"
std::string vec_to_string(const RatVec& v);  // "1/2,-3"

// parses "-7/2" or "3"; pos receives the offset of the first bad character
Rat parse_rat(const std::string& text);
RatVec parse_rat_vec(const std::string& text);  // comma separated
IntVec parse_int_vec(const std::string& text);

}  // namespace conefan
