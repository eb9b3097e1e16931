#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conefan/bmap.hpp"
#include "conefan/fan.hpp"
#include "conefan/terms.hpp"

namespace conefan {

/// Combinatorial shadow of a fan: vertices are the primitive generators,
/// simplices are the generator sets of all cones (faces included, empty set
/// included).
struct AbstractComplex {
  std::vector<IntVec> vertices;  // sorted lexicographically
  std::vector<std::vector<std::size_t>> simplices;  // sorted index sets
};

AbstractComplex abstract_complex(const Fan& f);

/// Vertex bijection preserving simplices both ways.
struct ComplexIso {
  std::vector<std::pair<IntVec, IntVec>> pairs;  // sorted by source label
};

/// Backtracking search over vertex assignments, pruned by per-vertex
/// simplex-count and maximal-simplex-size profiles. Deterministic: returns
/// the lexicographically least isomorphism (by image sequence over the
/// sorted source vertices), or nullopt.
std::optional<ComplexIso> complex_isomorphic(const AbstractComplex& a,
                                             const AbstractComplex& b);

ComplexIso invert_iso(const ComplexIso& iso);

/// The piecewise linear map determined by a complex isomorphism between two
/// regular fans: on each cone the unique integer matrix sending generators
/// to their images, completed on a lattice basis complement (identity when
/// the dimensions agree, zero otherwise). Throws InconsistentIsoError.
BMap synthesize_bhomeo(const Fan& delta, const Fan& nabla,
                       const ComplexIso& iso);

struct BhomeoReport {
  bool ok = false;
  char clause = ' ';   // failed clause: 'a', 'b', 'c' or 'd'
  std::string detail;  // witness description
};

/// Checks that h is a B-homeomorphism of |phi| onto |psi|:
///  (a) h's fan, desingularized, refines phi and carries all of |phi|;
///  (b) generators map to primitive vectors spanning regular image cones of
///      the same dimension;
///  (c) the image cones subdivide psi and their union is |psi|;
///  (d) the image cones have pairwise disjoint relative interiors.
BhomeoReport verify_bhomeo(const BMap& h, const Fan& phi, const Fan& psi);

/// Outcome of the freeness decision, with machine-checkable evidence.
struct Verdict {
  bool yes = false;
  std::optional<Fan> covering;    // yes: regular image fan covering R^n
  std::optional<RatVec> witness;  // no: rational point outside the range
  // no: term count n exceeds variable count m
  std::optional<std::pair<std::size_t, std::size_t>> dimension_reason;
};

/// Is the lattice group generated by the given n terms in m variables free
/// of rank n? Yes iff the image fan of the term tuple covers R^n; n > m is
/// an immediate no. Evidence is re-verified before being returned.
Verdict decide_free(const std::vector<Term>& terms);

/// For n terms in n variables: do they freely generate? Same decision as
/// decide_free (hopficity upgrades "free of rank n" to "this set is free").
/// Throws Error when the term count differs from the variable count.
Verdict check_free_basis(const std::vector<Term>& terms);

struct Certificate {
  Fan delta;  // regular subdivision of the first fan
  Fan nabla;  // regular subdivision of the second fan
  ComplexIso iso;
};

enum class SearchStatus { Found, BudgetExhausted, Obstructed };

struct SearchResult {
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::optional<Certificate> certificate;
  std::string note;
};

/// Budgeted enumeration of pairs of regular subdivisions (iterated stellar
/// subdivisions at primitive rays in max-norm/lexicographic order,
/// desingularized), testing complex isomorphism on each pair. budget counts
/// isomorphism tests. Obstructed is returned only for the provable
/// support-dimension mismatch. A found certificate has passed verify_bhomeo
/// after synthesize_bhomeo.
SearchResult search_certificate(const Fan& phi, const Fan& psi,
                                std::size_t budget);

// --- certificate serialization: two fan blocks and a bijection block -----

void write_certificate(std::ostream& out, const Certificate& c);
std::string certificate_to_string(const Certificate& c);
Certificate read_certificate(std::istream& in);

}  // namespace conefan
