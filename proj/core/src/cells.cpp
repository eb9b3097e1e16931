#include "cells.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "conefan/arith.hpp"
#include "conefan/errors.hpp"

namespace conefan::detail {

namespace {

std::vector<IntVec> canonical_gens(std::size_t n, std::vector<IntVec> gens) {
  std::vector<IntVec> out;
  for (auto& g : gens) {
    if (g.size() != n) throw Error("generator dimension mismatch");
    if (is_zero_vec(g)) continue;
    out.push_back(primitive(g));
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// greedy independent subset, in list order
std::vector<IntVec> independent_subset(const std::vector<IntVec>& vecs) {
  std::vector<IntVec> basis;
  for (const auto& v : vecs) {
    basis.push_back(v);
    if (rank_of_rows(basis) != basis.size()) basis.pop_back();
  }
  return basis;
}

// functional restricted to the flat spanned by basis rows; primitivized
// (sign preserved) to keep entries small
IntVec restrict_functional(const IntVec& a, const std::vector<IntVec>& basis) {
  IntVec r(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) r[j] = dot(a, basis[j]);
  if (!is_zero_vec(r)) r = primitive(r);
  return r;
}

// coordinates of p (in span of basis) with respect to the basis rows
IntVec restrict_point(const IntVec& p, const std::vector<IntVec>& basis) {
  IntMat a = IntMat::from_cols(basis, p.size());
  auto z = solve_linear(a, to_rat_vec(p));
  if (!z) throw Error("point outside flat");
  return primitive(clear_denominators(*z));
}

IntVec unrestrict_point(const IntVec& z, const std::vector<IntVec>& basis,
                        std::size_t n) {
  IntVec p(n, Int(0));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < n; ++k) p[k] += z[j] * basis[j][k];
  return primitive(p);
}

}  // namespace

GenConeHRep generated_cone_hrep(std::size_t n, std::vector<IntVec> gens) {
  gens = canonical_gens(n, std::move(gens));
  GenConeHRep h;
  if (gens.empty()) {
    for (std::size_t k = 0; k < n; ++k) {
      IntVec e(n, Int(0));
      e[k] = 1;
      h.eqs.push_back(e);
    }
    return h;
  }
  h.eqs = kernel_basis(gens, n);
  std::vector<IntVec> basis = independent_subset(gens);

  // dual cone within the span, in basis coordinates; pointed there
  std::vector<IntVec> dual_sys;
  dual_sys.reserve(gens.size());
  for (const auto& g : gens) dual_sys.push_back(restrict_functional(g, basis));
  std::vector<IntVec> dual_rays = extreme_rays(dual_sys, basis.size());
  for (const auto& y : dual_rays)
    h.ineqs.push_back(unrestrict_point(y, basis, n));
  return h;
}

std::vector<Cell> split_cells(std::size_t dim, const Cell& region,
                              const std::vector<IntVec>& hyperplanes) {
  std::vector<Cell> cells{region};
  for (const auto& h : hyperplanes) {
    std::vector<Cell> next;
    for (auto& cell : cells) {
      std::vector<IntVec> pos, zero, neg;
      for (const auto& r : cell.rays) {
        Int d = dot(h, r);
        if (d > 0)
          pos.push_back(r);
        else if (d == 0)
          zero.push_back(r);
        else
          neg.push_back(r);
      }
      if (pos.empty() || neg.empty()) {
        next.push_back(std::move(cell));
        continue;
      }
      std::vector<IntVec> fresh;
      if (dim >= 2) {
        for (const auto& u : pos)
          for (const auto& v : neg) {
            std::vector<IntVec> tight;
            for (const auto& a : cell.normals)
              if (dot(a, u) == 0 && dot(a, v) == 0) tight.push_back(a);
            if (tight.size() + 2 < dim) continue;
            if (rank_of_rows(tight) != dim - 2) continue;
            Int cu = dot(h, u), cv = dot(h, v);
            IntVec w(dim);
            for (std::size_t k = 0; k < dim; ++k)
              w[k] = cu * v[k] - cv * u[k];
            fresh.push_back(primitive(w));
          }
        std::sort(fresh.begin(), fresh.end(), lex_less);
        fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
      }
      Cell upper, lower;
      upper.rays = pos;
      upper.rays.insert(upper.rays.end(), zero.begin(), zero.end());
      upper.rays.insert(upper.rays.end(), fresh.begin(), fresh.end());
      upper.normals = cell.normals;
      upper.normals.push_back(h);
      lower.rays = neg;
      lower.rays.insert(lower.rays.end(), zero.begin(), zero.end());
      lower.rays.insert(lower.rays.end(), fresh.begin(), fresh.end());
      lower.normals = std::move(cell.normals);
      lower.normals.push_back(vec_neg(h));
      next.push_back(std::move(upper));
      next.push_back(std::move(lower));
    }
    cells = std::move(next);
  }
  for (auto& cell : cells) std::sort(cell.rays.begin(), cell.rays.end(), lex_less);
  return cells;
}

namespace {

using RaySet = std::vector<std::size_t>;  // sorted indices

struct PullContext {
  const Cell* cell;
  std::map<RaySet, std::vector<RaySet>> memo;
};

std::vector<IntVec> rays_of(const PullContext& ctx, const RaySet& f) {
  std::vector<IntVec> out;
  out.reserve(f.size());
  for (std::size_t i : f) out.push_back(ctx.cell->rays[i]);
  return out;
}

std::vector<RaySet> facets_of(const PullContext& ctx, const RaySet& f) {
  std::set<RaySet> cand;
  for (const auto& a : ctx.cell->normals) {
    RaySet z;
    for (std::size_t i : f)
      if (dot(a, ctx.cell->rays[i]) == 0) z.push_back(i);
    if (!z.empty() && z.size() < f.size()) cand.insert(std::move(z));
  }
  std::vector<RaySet> facets;
  for (const auto& z : cand) {
    bool maximal = true;
    for (const auto& other : cand) {
      if (other.size() <= z.size() || other == z) continue;
      if (std::includes(other.begin(), other.end(), z.begin(), z.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) facets.push_back(z);
  }
  return facets;
}

const std::vector<RaySet>& pull(PullContext& ctx, const RaySet& f) {
  if (auto it = ctx.memo.find(f); it != ctx.memo.end()) return it->second;
  std::vector<RaySet> out;
  if (rank_of_rows(rays_of(ctx, f)) == f.size()) {
    out.push_back(f);
  } else {
    // pulling vertex: index of the lexicographically least ray of the face
    std::size_t r0 = f.front();
    for (std::size_t i : f)
      if (lex_less(ctx.cell->rays[i], ctx.cell->rays[r0])) r0 = i;
    for (const auto& g : facets_of(ctx, f)) {
      if (std::binary_search(g.begin(), g.end(), r0)) continue;
      for (const auto& simplex : pull(ctx, g)) {
        RaySet s = simplex;
        s.insert(std::lower_bound(s.begin(), s.end(), r0), r0);
        out.push_back(std::move(s));
      }
    }
  }
  return ctx.memo.emplace(f, std::move(out)).first->second;
}

}  // namespace

std::vector<std::vector<IntVec>> pull_triangulate(const Cell& cell) {
  PullContext ctx{&cell, {}};
  RaySet all(cell.rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::vector<IntVec>> out;
  for (const auto& s : pull(ctx, all)) out.push_back(rays_of(ctx, s));
  return out;
}

Fan triangulated_cells(std::size_t n,
                       std::vector<std::vector<IntVec>> gen_lists,
                       std::vector<IntVec> extra_hyperplanes) {
  for (auto& l : gen_lists) l = canonical_gens(n, std::move(l));
  std::sort(gen_lists.begin(), gen_lists.end());
  gen_lists.erase(std::unique(gen_lists.begin(), gen_lists.end()),
                  gen_lists.end());

  std::vector<GenConeHRep> hreps;
  hreps.reserve(gen_lists.size());
  for (const auto& l : gen_lists) hreps.push_back(generated_cone_hrep(n, l));

  // global hyperplane pool: all facet and span hyperplanes of every piece,
  // the coordinate hyperplanes, and the caller's extras
  std::vector<IntVec> pool;
  for (const auto& h : hreps) {
    for (const auto& a : h.ineqs) pool.push_back(canonical_hyperplane(a));
    for (const auto& e : h.eqs) pool.push_back(canonical_hyperplane(e));
  }
  for (std::size_t k = 0; k < n; ++k) {
    IntVec e(n, Int(0));
    e[k] = 1;
    pool.push_back(e);
  }
  for (const auto& h : extra_hyperplanes) {
    if (is_zero_vec(h)) continue;
    pool.push_back(canonical_hyperplane(h));
  }
  std::sort(pool.begin(), pool.end(), lex_less);
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::set<std::vector<IntVec>> seen_pieces;
  std::vector<Cone> simplices;

  for (std::size_t pi = 0; pi < gen_lists.size(); ++pi) {
    if (gen_lists[pi].empty()) continue;  // pos() = {0}
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      // ambient H-rep of piece = cone ∩ orthant
      std::vector<IntVec> sys = hreps[pi].ineqs;
      for (std::size_t k = 0; k < n; ++k) {
        IntVec e(n, Int(0));
        e[k] = (mask >> k) & 1 ? Int(-1) : Int(1);
        sys.push_back(std::move(e));
      }
      std::vector<IntVec> orthant_part(sys.begin() + hreps[pi].ineqs.size(),
                                       sys.end());
      for (const auto& e : hreps[pi].eqs) {
        sys.push_back(e);
        sys.push_back(vec_neg(e));
      }
      std::vector<IntVec> piece_rays = extreme_rays(sys, n);
      if (piece_rays.empty()) continue;  // piece is {0}
      if (!seen_pieces.insert(piece_rays).second) continue;

      std::vector<IntVec> basis = independent_subset(piece_rays);
      const std::size_t d = basis.size();

      Cell region;
      for (const auto& r : piece_rays)
        region.rays.push_back(restrict_point(r, basis));
      for (const auto& a : hreps[pi].ineqs) {
        IntVec ra = restrict_functional(a, basis);
        if (!is_zero_vec(ra)) region.normals.push_back(std::move(ra));
      }
      for (const auto& a : orthant_part) {
        IntVec ra = restrict_functional(a, basis);
        if (!is_zero_vec(ra)) region.normals.push_back(std::move(ra));
      }

      std::vector<IntVec> hyps;
      for (const auto& h : pool) {
        IntVec rh = restrict_functional(h, basis);
        if (is_zero_vec(rh)) continue;
        hyps.push_back(canonical_hyperplane(rh));
      }
      std::sort(hyps.begin(), hyps.end(), lex_less);
      hyps.erase(std::unique(hyps.begin(), hyps.end()), hyps.end());

      for (const auto& cell : split_cells(d, region, hyps)) {
        for (const auto& simplex : pull_triangulate(cell)) {
          std::vector<IntVec> gens;
          gens.reserve(simplex.size());
          for (const auto& z : simplex)
            gens.push_back(unrestrict_point(z, basis, n));
          simplices.emplace_back(n, std::move(gens));
        }
      }
    }
  }
  return Fan::unchecked(n, std::move(simplices));
}

}  // namespace conefan::detail
