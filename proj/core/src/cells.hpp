#pragma once

// Internal machinery: exact hyperplane-arrangement cells over unions of
// finitely generated cones, and their pulling triangulations. Everything is
// carried in the coordinates of each piece's linear span, where the piece is
// full-dimensional and pointed.

#include <cstddef>
#include <vector>

#include "conefan/fan.hpp"
#include "conefan/numbers.hpp"

namespace conefan::detail {

// Closed full-dimensional cell, in the coordinates of its flat.
struct Cell {
  std::vector<IntVec> rays;     // extreme rays
  std::vector<IntVec> normals;  // complete (possibly redundant) H-rep
};

// H-representation of pos(generators); generators may be dependent and the
// cone may be non-pointed or lower-dimensional.
struct GenConeHRep {
  std::vector<IntVec> ineqs;  // a.x >= 0
  std::vector<IntVec> eqs;    // span = {x : eqs.x = 0}
};
GenConeHRep generated_cone_hrep(std::size_t n, std::vector<IntVec> gens);

// Splits the region by each hyperplane in turn (one double-description step
// per proper cut) and returns the resulting closed cells.
std::vector<Cell> split_cells(std::size_t dim, const Cell& region,
                              const std::vector<IntVec>& hyperplanes);

// Pulling triangulation from the lexicographically least ray of every face;
// returns simplicial subcones as ray lists. Face-consistent: the result on a
// shared face depends only on that face's rays.
std::vector<std::vector<IntVec>> pull_triangulate(const Cell& cell);

// Fan structure on union(pos(L) : L in gen_lists), refined by
// extra_hyperplanes: orthant slicing, arrangement cells of all facet
// hyperplanes plus the extras, pulling triangulation of each cell.
Fan triangulated_cells(std::size_t ambient_dim,
                       std::vector<std::vector<IntVec>> gen_lists,
                       std::vector<IntVec> extra_hyperplanes);

}  // namespace conefan::detail
