#include "conefan/bmap.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cells.hpp"
#include "conefan/errors.hpp"

namespace conefan {

namespace {

struct ConeLess {
  bool operator()(const Cone& a, const Cone& b) const {
    return cone_less(a, b);
  }
};

// row vector a composed with M: (a . M)(x) = a . (M x)
IntVec vec_times_mat(const IntVec& a, const IntMat& m) {
  IntVec r(m.cols(), Int(0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) r[j] += a[i] * m(i, j);
  return r;
}

IntVec interior_point(const Cone& c) {
  IntVec p(c.ambient_dim(), Int(0));
  for (const auto& g : c.generators()) p = vec_add(p, g);
  return p;
}

}  // namespace

BMap::BMap(std::size_t source_dim, std::size_t target_dim,
           std::vector<std::pair<Cone, IntMat>> cones_and_matrices)
    : source_dim_(source_dim), target_dim_(target_dim) {
  std::map<Cone, IntMat, ConeLess> by_cone;
  std::vector<Cone> cones;
  for (auto& [cone, mat] : cones_and_matrices) {
    if (mat.rows() != target_dim || mat.cols() != source_dim)
      throw Error("matrix shape mismatch");
    auto [it, inserted] = by_cone.emplace(cone, mat);
    if (!inserted && !(it->second == mat))
      throw Error("conflicting matrices for one cone");
    cones.push_back(std::move(cone));
  }
  domain_fan_ = Fan::unchecked(source_dim, std::move(cones));
  matrices_.reserve(domain_fan_.max_cones().size());
  for (const auto& c : domain_fan_.max_cones())
    matrices_.push_back(by_cone.at(c));
  // face compatibility: matrices agree on every shared generator
  const auto& mc = domain_fan_.max_cones();
  for (std::size_t i = 0; i < mc.size(); ++i)
    for (std::size_t j = i + 1; j < mc.size(); ++j)
      for (const auto& g : mc[i].generators()) {
        if (!std::binary_search(mc[j].generators().begin(),
                                mc[j].generators().end(), g, lex_less))
          continue;
        if (!(matrices_[i] * g == matrices_[j] * g))
          throw Error("matrices disagree on a shared face");
      }
}

RatVec bmap_eval(const BMap& b, const RatVec& x) {
  if (x.size() != b.source_dim()) throw Error("evaluation point dimension");
  const auto& mc = b.domain_fan().max_cones();
  for (std::size_t i = 0; i < mc.size(); ++i)
    if (membership(mc[i], x)) return b.matrices()[i].apply(x);
  throw OutsideDomainError(x);
}

BMap linearizing_fan(const std::vector<Term>& terms, std::size_t m) {
  if (terms.empty()) throw Error("no terms");
  for (const auto& t : terms)
    if (t.arity != m) throw Error("term arity mismatch");

  std::vector<std::vector<IntVec>> pieces;
  pieces.reserve(terms.size());
  for (const auto& t : terms) pieces.push_back(linear_pieces(t));

  // hyperplanes: pairwise differences of all pieces of all terms, with the
  // zero form included so every piece's own zero set is a union of faces
  std::vector<IntVec> pool;
  for (const auto& ps : pieces) pool.insert(pool.end(), ps.begin(), ps.end());
  pool.push_back(IntVec(m, Int(0)));
  std::sort(pool.begin(), pool.end(), lex_less);
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<IntVec> hyperplanes;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      IntVec d = vec_sub(pool[i], pool[j]);
      if (!is_zero_vec(d)) hyperplanes.push_back(canonical_hyperplane(d));
    }

  std::vector<IntVec> all_space;
  for (std::size_t k = 0; k < m; ++k) {
    IntVec e(m, Int(0));
    e[k] = 1;
    all_space.push_back(e);
    all_space.push_back(vec_neg(e));
  }
  Fan fan = desingularize(
      detail::triangulated_cells(m, {all_space}, std::move(hyperplanes)));

  std::vector<std::pair<Cone, IntMat>> pairs;
  for (const auto& c : fan.max_cones()) {
    RatVec p = to_rat_vec(interior_point(c));
    IntMat mat(terms.size(), m);
    for (std::size_t j = 0; j < terms.size(); ++j) {
      Rat val = eval_term(terms[j], p);
      bool found = false;
      for (const auto& l : pieces[j]) {
        if (dot(l, p) == val) {
          for (std::size_t k = 0; k < m; ++k) mat(j, k) = l[k];
          found = true;
          break;
        }
      }
      if (!found) throw Error("no linear piece matches on a cone");
    }
    pairs.emplace_back(c, std::move(mat));
  }
  return BMap(m, terms.size(), std::move(pairs));
}

ZerosetFan zeroset_fan(const Term& t) {
  BMap b = linearizing_fan({t}, t.arity);
  std::vector<Cone> vanishing;
  const auto& mc = b.domain_fan().max_cones();
  for (std::size_t i = 0; i < mc.size(); ++i) {
    IntVec row = b.matrices()[i].row(0);
    std::vector<IntVec> gens;
    for (const auto& g : mc[i].generators())
      if (dot(row, g) == 0) gens.push_back(g);
    vanishing.emplace_back(t.arity, std::move(gens));
  }
  return ZerosetFan{
      desingularize(Fan::unchecked(t.arity, std::move(vanishing)))};
}

ImageFan image_fan(const BMap& b) {
  std::vector<std::vector<IntVec>> images;
  const auto& mc = b.domain_fan().max_cones();
  for (std::size_t i = 0; i < mc.size(); ++i) {
    std::vector<IntVec> img;
    for (const auto& g : mc[i].generators())
      img.push_back(b.matrices()[i] * g);
    images.push_back(std::move(img));
  }
  return ImageFan{
      desingularize(triangulate_union(b.target_dim(), images))};
}

BMap compose(const BMap& b2, const BMap& b1) {
  if (b1.target_dim() != b2.source_dim())
    throw Error("composition dimension mismatch");
  const std::size_t m = b1.source_dim();

  // pull the halfspace hyperplanes of b2's fan back through each piece of b1
  std::vector<IntVec> outer_normals;
  for (const auto& c : b2.domain_fan().max_cones()) {
    Halfspaces hs = cone_halfspaces(c);
    for (auto& a : hs.inequalities) outer_normals.push_back(std::move(a));
    for (auto& e : hs.equalities) outer_normals.push_back(std::move(e));
  }
  std::vector<IntVec> pulled;
  std::vector<std::vector<IntVec>> domain_lists;
  for (std::size_t i = 0; i < b1.domain_fan().max_cones().size(); ++i) {
    const auto& c = b1.domain_fan().max_cones()[i];
    domain_lists.push_back(c.generators());
    for (const auto& a : outer_normals) {
      IntVec p = vec_times_mat(a, b1.matrices()[i]);
      if (!is_zero_vec(p)) pulled.push_back(canonical_hyperplane(p));
    }
  }
  Fan refined = desingularize(
      detail::triangulated_cells(m, std::move(domain_lists), std::move(pulled)));

  const auto& inner = b1.domain_fan().max_cones();
  const auto& outer = b2.domain_fan().max_cones();
  std::vector<std::pair<Cone, IntMat>> pairs;
  for (const auto& d : refined.max_cones()) {
    // the b1 cone containing d
    std::size_t src = inner.size();
    for (std::size_t i = 0; i < inner.size() && src == inner.size(); ++i) {
      bool inside = true;
      for (const auto& g : d.generators())
        if (!membership(inner[i], to_rat_vec(g))) {
          inside = false;
          break;
        }
      if (inside) src = i;
    }
    if (src == inner.size()) throw Error("refinement escaped the domain fan");
    const IntMat& m1 = b1.matrices()[src];
    // the b2 cone receiving d's image
    IntVec probe = m1 * interior_point(d);
    std::size_t dst = outer.size();
    for (std::size_t j = 0; j < outer.size() && dst == outer.size(); ++j)
      if (membership(outer[j], to_rat_vec(probe))) dst = j;
    if (dst == outer.size())
      throw RangeContainmentError(to_rat_vec(probe));
    for (const auto& g : d.generators())
      if (!membership(outer[dst], to_rat_vec(m1 * g)))
        throw RangeContainmentError(to_rat_vec(m1 * g));
    pairs.emplace_back(d, b2.matrices()[dst] * m1);
  }
  return BMap(m, b2.target_dim(), std::move(pairs));
}

// ---------------------------------------------------------------------------
// serialization

void write_bmap(std::ostream& out, const BMap& b) {
  out << "dim " << b.source_dim() << "\n";
  const auto& mc = b.domain_fan().max_cones();
  for (std::size_t i = 0; i < mc.size(); ++i) {
    out << "cone";
    for (const auto& g : mc[i].generators()) out << ' ' << vec_to_string(g);
    out << "\n";
    out << "matrix ";
    const IntMat& m = b.matrices()[i];
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r) out << ';';
      out << vec_to_string(m.row(r));
    }
    out << "\n";
  }
}

std::string bmap_to_string(const BMap& b) {
  std::ostringstream os;
  write_bmap(os, b);
  return os.str();
}

BMap read_bmap(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> dim;
  std::vector<std::pair<Cone, IntMat>> pairs;
  std::optional<Cone> pending;
  std::optional<std::size_t> target;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!dim) {
      std::size_t n = 0;
      if (word != "dim" || !(ls >> n) || n == 0)
        throw ParseError("expected 'dim <n>' on line " + std::to_string(lineno),
                         lineno);
      dim = n;
      continue;
    }
    if (word == "cone") {
      if (pending)
        throw ParseError("cone without matrix on line " + std::to_string(lineno),
                         lineno);
      std::vector<IntVec> gens;
      std::string tok;
      while (ls >> tok) {
        IntVec v = parse_int_vec(tok);
        if (v.size() != *dim)
          throw ParseError(
              "generator has wrong dimension on line " + std::to_string(lineno),
              lineno);
        gens.push_back(std::move(v));
      }
      pending = Cone(*dim, std::move(gens));
      continue;
    }
    if (word == "matrix") {
      if (!pending)
        throw ParseError("matrix without cone on line " + std::to_string(lineno),
                         lineno);
      std::string rest;
      std::getline(ls, rest);
      std::vector<IntVec> rows;
      std::size_t start = 0;
      while (start <= rest.size()) {
        std::size_t semi = rest.find(';', start);
        std::string part = rest.substr(
            start,
            semi == std::string::npos ? std::string::npos : semi - start);
        rows.push_back(parse_int_vec(part));
        if (rows.back().size() != *dim)
          throw ParseError(
              "matrix row has wrong width on line " + std::to_string(lineno),
              lineno);
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      if (!target) target = rows.size();
      if (rows.size() != *target)
        throw ParseError(
            "matrix row count mismatch on line " + std::to_string(lineno),
            lineno);
      pairs.emplace_back(std::move(*pending),
                         IntMat::from_rows(rows, *dim));
      pending.reset();
      continue;
    }
    throw ParseError("unexpected line " + std::to_string(lineno), lineno);
  }
  if (!dim) throw ParseError("missing 'dim' line", 0);
  if (pending) throw ParseError("cone without matrix at end of file", lineno);
  if (pairs.empty()) throw ParseError("no cones", lineno);
  return BMap(*dim, *target, std::move(pairs));
}

}  // namespace conefan
