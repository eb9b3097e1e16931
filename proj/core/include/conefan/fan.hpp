#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conefan/arith.hpp"
#include "conefan/errors.hpp"
#include "conefan/numbers.hpp"

namespace conefan {

/// Rational simplicial cone pos(w_1, ..., w_t): generators are primitive,
/// pairwise distinct, linearly independent, stored lexicographically sorted.
/// An empty generator list encodes the cone {0}.
class Cone {
 public:
  Cone() = default;

  /// Canonicalizes raw generators (primitivize, sort, dedupe-check).
  /// Throws ZeroVectorError for a zero generator and
  /// DependentGeneratorsError (carrying a rational dependency) otherwise.
  Cone(std::size_t ambient_dim, std::vector<IntVec> raw_generators);

  static Cone zero(std::size_t ambient_dim) { return Cone(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return gens_.size(); }
  const std::vector<IntVec>& generators() const { return gens_; }

  bool operator==(const Cone&) const = default;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<IntVec> gens_;
};

bool cone_less(const Cone& a, const Cone& b);

/// Exact halfspace description of a simplicial cone:
///   C = {x : ineq.x >= 0 for all ineq} ∩ {x : eq.x = 0 for all eq}.
/// inequalities[i] pairs with generators()[i] (positive exactly on it).
struct Halfspaces {
  std::vector<IntVec> inequalities;
  std::vector<IntVec> equalities;
};
Halfspaces cone_halfspaces(const Cone& c);

/// All 2^t faces, including {0} and c itself, sorted by (dim, generators).
std::vector<Cone> faces(const Cone& c);

/// Exact membership x in pos(generators).
bool membership(const Cone& c, const RatVec& x);

/// The unique nonnegative coordinates of x in the generators, if x lies in
/// the cone.
std::optional<RatVec> cone_coordinates(const Cone& c, const RatVec& x);

struct Regular {};
struct Singular {
  IntVec point;   // nonzero lattice point of the half-open parallelepiped
  RatVec lambda;  // coordinates, 0 <= lambda_i < 1
};
using RegularityWitness = std::variant<Regular, Singular>;

/// Smith-normal-form regularity test. A singular result carries the witness
/// minimizing the coordinate sum (ties: lexicographically least point),
/// found by bounded enumeration of the parallelepiped's lattice points.
RegularityWitness is_regular(const Cone& c);

/// Regularity verdict only (Smith normal form, no witness search).
bool cone_is_regular(const Cone& c);

/// Index of the generator lattice in span(c) ∩ Z^n (product of invariant
/// factors); 1 iff regular.
Int multiplicity(const Cone& c);

/// Finite fan stored as its maximal cones, canonically sorted. Faces are
/// derived on demand.
class Fan {
 public:
  Fan() = default;

  /// Canonicalizes and validates (throws Error on a violation).
  static Fan from_max_cones(std::size_t ambient_dim, std::vector<Cone> cones);

  /// Canonicalizes only: sorts, dedupes, drops cones that are faces of
  /// others; for outputs that are fans by construction.
  static Fan unchecked(std::size_t ambient_dim, std::vector<Cone> cones);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Cone>& max_cones() const { return cones_; }

  bool operator==(const Fan&) const = default;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Cone> cones_;  // maximal cones only; at least the cone {0}
};

struct FanViolation {
  std::size_t cone_a = 0, cone_b = 0;  // indexes into max_cones()
  RatVec witness;                      // a point in the bad overlap
  std::string what;
};

/// ok (nullopt) iff every pairwise intersection of cones is a common face,
/// computed exactly via extreme rays of the halfspace intersection.
std::optional<FanViolation> fan_validate(const Fan& f);

/// x in |f|?
bool fan_membership(const Fan& f, const RatVec& x);

/// Standard stellar subdivision at a primitive ray in |f|; cones not
/// containing the ray are kept, each cone containing it is replaced by the
/// cones through the ray. Throws RayOutsideSupportError.
Fan stellar_subdivide(const Fan& f, const IntVec& ray);

/// Iterated stellar subdivision at parallelepiped witnesses until every
/// cone is regular. Support and refinement are preserved; the witness rule
/// (largest multiplicity first, minimal coordinate sum, lexicographic ties)
/// makes runs reproducible.
Fan desingularize(const Fan& f);

/// Valid simplicial fan whose support is the union of the input cones.
/// Input cones are arbitrary finite generator lists (dependent generators
/// and non-pointed cones allowed). Non-pointed inputs are split by the
/// closed coordinate orthants; the arrangement of all facet hyperplanes
/// partitions the union into cells, which are triangulated by pulling from
/// their lexicographically least ray.
Fan triangulate_union(std::size_t ambient_dim,
                      const std::vector<std::vector<IntVec>>& generator_lists);

/// |f| = R^n, decided combinatorially: n = 1 needs both rays; n >= 2 needs
/// every maximal cone full-dimensional and every ridge in exactly two of
/// them.
bool support_covers_space(const Fan& f);

/// nullopt iff support_covers_space(f); otherwise the first integer point
/// outside |f| in max-norm shells, lexicographic within a shell.
std::optional<RatVec> witness_outside_support(const Fan& f);

// --- text format ---------------------------------------------------------
// line 1:  dim <n>
// others:  cone <v1> <v2> ...   with <vi> comma-separated integers
// '#' starts a comment; only maximal cones are listed; output is sorted.

Fan read_fan(std::istream& in);
Fan read_fan_file(const std::string& path);
void write_fan(std::ostream& out, const Fan& f);
std::string fan_to_string(const Fan& f);

}  // namespace conefan
