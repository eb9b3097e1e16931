#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "conefan/arith.hpp"
#include "conefan/fan.hpp"
#include "conefan/terms.hpp"

namespace conefan {

/// Piecewise homogeneous linear map with integer coefficients: a fan on the
/// source side plus one target_dim x source_dim matrix per maximal cone.
/// Matrices of cones sharing a face agree on that face, so evaluation is
/// continuous on the support.
class BMap {
 public:
  /// cones_and_matrices pairs each maximal cone with its matrix; the fan is
  /// canonicalized internally. Throws Error if two matrices disagree on a
  /// shared generator.
  BMap(std::size_t source_dim, std::size_t target_dim,
       std::vector<std::pair<Cone, IntMat>> cones_and_matrices);

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return target_dim_; }
  const Fan& domain_fan() const { return domain_fan_; }

  /// matrices()[i] belongs to domain_fan().max_cones()[i]
  const std::vector<IntMat>& matrices() const { return matrices_; }

 private:
  std::size_t source_dim_ = 0, target_dim_ = 0;
  Fan domain_fan_;
  std::vector<IntMat> matrices_;
};

/// M_C x for any maximal cone C containing x (well defined by the face
/// compatibility invariant). Throws OutsideDomainError.
RatVec bmap_eval(const BMap& b, const RatVec& x);

/// The BMap of a term tuple: a regular fan covering R^m on whose every
/// maximal cone each term equals one fixed linear piece. Built from the
/// central arrangement of all pairwise differences of the terms' linear
/// pieces (zero form included), triangulated and desingularized; matrix rows
/// are matched by evaluating at a relative interior point of each cone.
BMap linearizing_fan(const std::vector<Term>& terms, std::size_t m);

struct ZerosetFan {
  Fan fan;  // regular; support = {x : t(x) = 0}
};
ZerosetFan zeroset_fan(const Term& t);

struct ImageFan {
  Fan fan;  // regular; support = range of the map
};
ImageFan image_fan(const BMap& b);

/// b2 after b1. Requires target_dim(b1) == source_dim(b2) and
/// range(b1) inside |domain(b2)| (throws RangeContainmentError with a
/// witness point otherwise). The domain fan of b1 is refined through the
/// pulled-back hyperplanes of b2's fan, re-triangulated and desingularized;
/// matrices multiply.
BMap compose(const BMap& b2, const BMap& b1);

// --- serialization: fan format plus one `matrix r1;r2;...` line (rows
// comma-separated) immediately after each cone line ---------------------

void write_bmap(std::ostream& out, const BMap& b);
std::string bmap_to_string(const BMap& b);
BMap read_bmap(std::istream& in);

}  // namespace conefan
