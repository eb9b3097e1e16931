#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conefan/errors.hpp"
#include "conefan/numbers.hpp"

namespace conefan {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMat identity(std::size_t n);
  static IntMat from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  static IntMat from_cols(const std::vector<IntVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  IntVec row(std::size_t r) const;
  IntVec col(std::size_t c) const;
  std::vector<IntVec> row_list() const;
  IntMat transposed() const;

  IntMat operator*(const IntMat& rhs) const;
  IntVec operator*(const IntVec& x) const;
  RatVec apply(const RatVec& x) const;

  bool operator==(const IntMat&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// v divided by the (positive) gcd of its entries; direction is preserved.
/// Throws ZeroVectorError on the zero vector.
IntVec primitive(const IntVec& v);

struct SmithResult {
  IntMat u;  // rows x rows, unimodular
  IntMat s;  // diagonal, d_1 | d_2 | ..., d_i >= 0
  IntMat v;  // cols x cols, unimodular
};

/// U * M * V = S with U, V unimodular and S in Smith normal form.
SmithResult smith_normal_form(const IntMat& m);

/// The nonzero diagonal entries of the Smith form of m.
std::vector<Int> invariant_factors(const IntMat& m);

/// Primitive extreme-ray generators of {x : a.x >= 0 for all a in
/// halfspaces}, sorted lexicographically. Empty result encodes the cone {0}.
/// Throws LinealityError (with a line direction) if the cone is not pointed.
/// Double description method; constraints are inserted in lexicographic
/// order so the result is canonical.
std::vector<IntVec> extreme_rays(std::vector<IntVec> halfspaces,
                                 std::size_t dim);

/// Some exact solution of A x = b, or nullopt when the system is
/// inconsistent. Free variables are set to zero.
std::optional<RatVec> solve_linear(const IntMat& a, const RatVec& b);

std::size_t rank_of_rows(const std::vector<IntVec>& rows);

/// Primitive integer basis of {x : r.x = 0 for every r in rows},
/// canonically ordered.
std::vector<IntVec> kernel_basis(const std::vector<IntVec>& rows,
                                 std::size_t dim);

Int determinant(const IntMat& m);

/// primitive + sign normalization (first nonzero entry positive); used to
/// identify unoriented hyperplane normals.
IntVec canonical_hyperplane(const IntVec& normal);

}  // namespace conefan
