#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "conefan/numbers.hpp"

namespace conefan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// primitive() of the zero vector
struct ZeroVectorError : Error {
  ZeroVectorError() : Error("not a ray direction") {}
};

// cone_new with rationally dependent generators; carries one dependency,
// expressed against the primitivized, sorted generator list
struct DependentGeneratorsError : Error {
  explicit DependentGeneratorsError(RatVec dep)
      : Error("dependent generators"), dependency(std::move(dep)) {}
  RatVec dependency;
};

// extreme_rays on a cone containing a line; carries one line direction
struct LinealityError : Error {
  explicit LinealityError(IntVec dir)
      : Error("lineality detected"), direction(std::move(dir)) {}
  IntVec direction;
};

// syntax errors in terms, rationals, fan files; position is 0-based offset
// (for files: line number is also formatted into the message)
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct RayOutsideSupportError : Error {
  explicit RayOutsideSupportError(IntVec r)
      : Error("ray outside fan support"), ray(std::move(r)) {}
  IntVec ray;
};

struct OutsideDomainError : Error {
  explicit OutsideDomainError(RatVec p)
      : Error("point outside domain fan support"), point(std::move(p)) {}
  RatVec point;
};

// compose() when range(b1) is not contained in the domain support of b2
struct RangeContainmentError : Error {
  explicit RangeContainmentError(RatVec w)
      : Error("range not contained in domain of outer map"),
        witness(std::move(w)) {}
  RatVec witness;
};

// synthesize_bhomeo with a vertex map that is not a complex isomorphism
struct InconsistentIsoError : Error {
  using Error::Error;
};

}  // namespace conefan
