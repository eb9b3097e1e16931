#include "conefan/fan.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cells.hpp"

namespace conefan {

namespace {

bool gens_list_less(const std::vector<IntVec>& a,
                    const std::vector<IntVec>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      lex_less);
}

}  // namespace

Cone::Cone(std::size_t ambient_dim, std::vector<IntVec> raw_generators)
    : ambient_dim_(ambient_dim) {
  for (auto& g : raw_generators) {
    if (g.size() != ambient_dim) throw Error("generator dimension mismatch");
    g = primitive(g);  // throws ZeroVectorError on 0
  }
  std::sort(raw_generators.begin(), raw_generators.end(), lex_less);
  // parallel raw generators collapse to equal primitives and fail the rank
  // check below along with every other dependency
  if (rank_of_rows(raw_generators) != raw_generators.size()) {
    // one rational dependency among the generators: kernel of the matrix
    // whose columns are the generators
    IntMat cols = IntMat::from_cols(raw_generators, ambient_dim);
    std::vector<IntVec> dep =
        kernel_basis(cols.row_list(), raw_generators.size());
    RatVec dependency = dep.empty() ? RatVec{} : to_rat_vec(dep.front());
    throw DependentGeneratorsError(std::move(dependency));
  }
  gens_ = std::move(raw_generators);
}

bool cone_less(const Cone& a, const Cone& b) {
  return gens_list_less(a.generators(), b.generators());
}

Halfspaces cone_halfspaces(const Cone& c) {
  const std::size_t n = c.ambient_dim(), t = c.dim();
  Halfspaces hs;
  hs.equalities = kernel_basis(c.generators(), n);
  if (t == 0) return hs;
  // c_i with c_i . w_j = delta_ij (up to positive scale), c_i in span(w):
  // solve Gram * y = e_i and take sum y_j w_j.
  const auto& w = c.generators();
  IntMat gram(t, t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) gram(i, j) = dot(w[i], w[j]);
  for (std::size_t i = 0; i < t; ++i) {
    RatVec e(t, Rat(0));
    e[i] = 1;
    RatVec y = *solve_linear(gram, e);  // Gram is invertible
    RatVec ci(n, Rat(0));
    for (std::size_t j = 0; j < t; ++j)
      for (std::size_t k = 0; k < n; ++k) ci[k] += y[j] * Rat(w[j][k]);
    hs.inequalities.push_back(primitive(clear_denominators(ci)));
  }
  return hs;
}

std::vector<Cone> faces(const Cone& c) {
  const std::size_t t = c.dim();
  std::vector<Cone> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << t); ++mask) {
    std::vector<IntVec> sub;
    for (std::size_t i = 0; i < t; ++i)
      if (mask & (std::size_t(1) << i)) sub.push_back(c.generators()[i]);
    out.emplace_back(c.ambient_dim(), std::move(sub));
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return cone_less(a, b);
  });
  return out;
}

std::optional<RatVec> cone_coordinates(const Cone& c, const RatVec& x) {
  IntMat a = IntMat::from_cols(c.generators(), c.ambient_dim());
  auto lambda = solve_linear(a, x);
  if (!lambda) return std::nullopt;
  for (const auto& l : *lambda)
    if (l < 0) return std::nullopt;
  return lambda;
}

bool membership(const Cone& c, const RatVec& x) {
  return cone_coordinates(c, x).has_value();
}

bool cone_is_regular(const Cone& c) {
  if (c.dim() == 0) return true;
  for (const auto& d :
       invariant_factors(IntMat::from_rows(c.generators(), c.ambient_dim())))
    if (d != 1) return false;
  return true;
}

Int multiplicity(const Cone& c) {
  if (c.dim() == 0) return 1;
  Int m = 1;
  for (const auto& d :
       invariant_factors(IntMat::from_rows(c.generators(), c.ambient_dim())))
    m *= d;
  return m;
}

RegularityWitness is_regular(const Cone& c) {
  if (cone_is_regular(c)) return Regular{};

  // The nonzero lattice points of the half-open parallelepiped are in
  // bijection with the nontrivial cosets of the generator lattice inside
  // span ∩ Z^n: with U W V = S = diag(d_i), the rows c_i = (U W)_i / d_i
  // form a basis of the saturated lattice, and reducing the coordinates of
  // sum k_i c_i into [0, 1) lands each coset's unique representative in the
  // parallelepiped. Enumerating all k with 0 <= k_i < d_i therefore visits
  // every witness exactly once, in O(multiplicity).
  const std::size_t n = c.ambient_dim(), t = c.dim();
  const auto& w = c.generators();
  IntMat wm = IntMat::from_rows(w, n);
  SmithResult snf = smith_normal_form(wm);
  std::vector<Int> d(t);
  Int big_d = 1;
  for (std::size_t i = 0; i < t; ++i) {
    d[i] = snf.s(i, i);
    big_d = lcm(big_d, d[i]);
  }

  auto euclid_mod = [](const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
  };

  bool have_best = false;
  Int best_sum = 0;
  IntVec best_x, best_r;
  IntVec k(t, Int(0));
  for (;;) {
    // advance the odometer first so the all-zero tuple is skipped
    std::size_t pos = t;
    bool done = false;
    while (pos > 0) {
      --pos;
      if (k[pos] + 1 < d[pos]) {
        ++k[pos];
        for (std::size_t j = pos + 1; j < t; ++j) k[j] = 0;
        break;
      }
      if (pos == 0) done = true;
    }
    if (done) break;

    // lambda_j = sum_i k_i U(i, j) / d_i, reduced into [0, 1)
    IntVec r(t);
    Int sum = 0;
    for (std::size_t j = 0; j < t; ++j) {
      Int num = 0;
      for (std::size_t i = 0; i < t; ++i)
        num += k[i] * snf.u(i, j) * (big_d / d[i]);
      r[j] = euclid_mod(num, big_d);
      sum += r[j];
    }
    IntVec x(n, Int(0));
    for (std::size_t j = 0; j < t; ++j)
      for (std::size_t col = 0; col < n; ++col) x[col] += r[j] * w[j][col];
    for (auto& v : x) v /= big_d;  // exact: x is a lattice point

    if (!have_best || sum < best_sum ||
        (sum == best_sum && lex_less(x, best_x))) {
      have_best = true;
      best_sum = sum;
      best_x = x;
      best_r = r;
    }
  }
  if (!have_best) throw Error("singular cone without lattice witness");
  RatVec lambda(t);
  for (std::size_t i = 0; i < t; ++i) lambda[i] = make_rat(best_r[i], big_d);
  return Singular{best_x, lambda};
}

// --------------------------------------------------------------------------
// Fan

Fan Fan::unchecked(std::size_t ambient_dim, std::vector<Cone> cones) {
  for (const auto& c : cones)
    if (c.ambient_dim() != ambient_dim)
      throw Error("cone ambient dimension mismatch");
  std::sort(cones.begin(), cones.end(), cone_less);
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  // keep maximal cones only: drop generator-subset cones
  std::vector<Cone> kept;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool face = false;
    for (std::size_t j = 0; j < cones.size() && !face; ++j) {
      if (i == j || cones[i].dim() >= cones[j].dim()) continue;
      face = std::includes(cones[j].generators().begin(),
                           cones[j].generators().end(),
                           cones[i].generators().begin(),
                           cones[i].generators().end(), lex_less);
    }
    if (!face) kept.push_back(cones[i]);
  }
  if (kept.empty()) kept.push_back(Cone::zero(ambient_dim));
  Fan f;
  f.ambient_dim_ = ambient_dim;
  f.cones_ = std::move(kept);
  return f;
}

Fan Fan::from_max_cones(std::size_t ambient_dim, std::vector<Cone> cones) {
  Fan f = unchecked(ambient_dim, std::move(cones));
  if (auto v = fan_validate(f))
    throw Error("not a fan: " + v->what + " (cones " +
                std::to_string(v->cone_a) + ", " + std::to_string(v->cone_b) +
                ")");
  return f;
}

namespace {

// some valid inequality of one cone is strictly negative on every
// generator of the other; then the intersection is {0}, a common face
bool strictly_separated(const Halfspaces& ha, const Cone& b) {
  for (const auto& normal : ha.inequalities) {
    bool all_neg = true;
    for (const auto& g : b.generators())
      if (dot(normal, g) >= 0) {
        all_neg = false;
        break;
      }
    if (all_neg && !b.generators().empty()) return true;
  }
  return false;
}

}  // namespace

std::optional<FanViolation> fan_validate(const Fan& f) {
  const auto& cones = f.max_cones();
  std::vector<Halfspaces> hs(cones.size());
  for (std::size_t i = 0; i < cones.size(); ++i)
    hs[i] = cone_halfspaces(cones[i]);
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      if (strictly_separated(hs[i], cones[j]) ||
          strictly_separated(hs[j], cones[i]))
        continue;
      std::vector<IntVec> sys;
      for (std::size_t k : {i, j}) {
        sys.insert(sys.end(), hs[k].inequalities.begin(),
                   hs[k].inequalities.end());
        for (const auto& e : hs[k].equalities) {
          sys.push_back(e);
          sys.push_back(vec_neg(e));
        }
      }
      std::vector<IntVec> rays = extreme_rays(sys, f.ambient_dim());
      bool ok = true;
      for (const auto& r : rays) {
        if (!std::binary_search(cones[i].generators().begin(),
                                cones[i].generators().end(), r, lex_less) ||
            !std::binary_search(cones[j].generators().begin(),
                                cones[j].generators().end(), r, lex_less)) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        IntVec sum(f.ambient_dim(), Int(0));
        for (const auto& r : rays) sum = vec_add(sum, r);
        return FanViolation{i, j, to_rat_vec(sum),
                            "intersection is not a common face"};
      }
    }
  return std::nullopt;
}

bool fan_membership(const Fan& f, const RatVec& x) {
  for (const auto& c : f.max_cones())
    if (membership(c, x)) return true;
  return false;
}

Fan stellar_subdivide(const Fan& f, const IntVec& ray) {
  IntVec p = primitive(ray);
  RatVec pr = to_rat_vec(p);
  bool inside = false;
  std::vector<Cone> out;
  for (const auto& c : f.max_cones()) {
    auto lambda = cone_coordinates(c, pr);
    if (!lambda) {
      out.push_back(c);
      continue;
    }
    inside = true;
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < lambda->size(); ++i)
      if ((*lambda)[i] > 0) positive.push_back(i);
    if (positive.size() == 1 && c.generators()[positive[0]] == p) {
      out.push_back(c);  // starring at an existing ray
      continue;
    }
    for (std::size_t i : positive) {
      std::vector<IntVec> gens;
      for (std::size_t k = 0; k < c.generators().size(); ++k)
        if (k != i) gens.push_back(c.generators()[k]);
      gens.push_back(p);
      out.emplace_back(f.ambient_dim(), std::move(gens));
    }
  }
  if (!inside) throw RayOutsideSupportError(p);
  return Fan::unchecked(f.ambient_dim(), std::move(out));
}

Fan desingularize(const Fan& f) {
  Fan cur = f;
  for (;;) {
    std::optional<std::size_t> worst;
    Int worst_mult = 0;
    for (std::size_t i = 0; i < cur.max_cones().size(); ++i) {
      Int m = multiplicity(cur.max_cones()[i]);
      if (m > 1 && (!worst || m > worst_mult)) {
        worst = i;  // cones are sorted, so the first is the lex-least on ties
        worst_mult = m;
      }
    }
    if (!worst) return cur;
    RegularityWitness w = is_regular(cur.max_cones()[*worst]);
    const auto& s = std::get<Singular>(w);
    cur = stellar_subdivide(cur, primitive(s.point));
  }
}

Fan triangulate_union(
    std::size_t ambient_dim,
    const std::vector<std::vector<IntVec>>& generator_lists) {
  return detail::triangulated_cells(ambient_dim, generator_lists, {});
}

bool support_covers_space(const Fan& f) {
  const std::size_t n = f.ambient_dim();
  const auto& cones = f.max_cones();
  if (n == 0) return true;
  if (n == 1) {
    bool plus = false, minus = false;
    for (const auto& c : cones)
      for (const auto& g : c.generators()) {
        if (g[0] > 0) plus = true;
        if (g[0] < 0) minus = true;
      }
    return plus && minus;
  }
  std::map<std::vector<IntVec>, int,
           bool (*)(const std::vector<IntVec>&, const std::vector<IntVec>&)>
      ridge_count(gens_list_less);
  for (const auto& c : cones) {
    if (c.dim() != n) return false;
    for (std::size_t skip = 0; skip < n; ++skip) {
      std::vector<IntVec> facet;
      for (std::size_t i = 0; i < n; ++i)
        if (i != skip) facet.push_back(c.generators()[i]);
      ++ridge_count[facet];
    }
  }
  for (const auto& [facet, count] : ridge_count)
    if (count != 2) return false;
  return true;
}

std::optional<RatVec> witness_outside_support(const Fan& f) {
  if (support_covers_space(f)) return std::nullopt;
  const std::size_t n = f.ambient_dim();
  std::vector<Halfspaces> hs;
  for (const auto& c : f.max_cones()) hs.push_back(cone_halfspaces(c));
  auto covered = [&](const IntVec& x) {
    for (const auto& h : hs) {
      bool in = true;
      for (const auto& a : h.inequalities)
        if (dot(a, x) < 0) {
          in = false;
          break;
        }
      for (const auto& e : h.equalities) {
        if (!in) break;
        if (dot(e, x) != 0) in = false;
      }
      if (in) return true;
    }
    return false;
  };
  for (Int r = 1;; ++r) {
    IntVec x(n, Int(-r));
    for (;;) {
      Int norm = 0;
      for (const auto& v : x) norm = std::max(norm, Int(abs(v)));
      if (norm == r && !covered(x)) return to_rat_vec(x);
      std::size_t k = n;
      while (k > 0) {
        --k;
        if (x[k] < r) {
          ++x[k];
          for (std::size_t j = k + 1; j < n; ++j) x[j] = Int(-r);
          break;
        }
        if (k == 0) {
          k = n + 1;
          break;
        }
      }
      if (k == n + 1) break;
    }
  }
}

// --------------------------------------------------------------------------
// text format

Fan read_fan(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> dim;
  std::vector<Cone> cones;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!dim) {
      std::size_t n = 0;
      if (word != "dim" || !(ls >> n))
        throw ParseError("expected 'dim <n>' on line " + std::to_string(lineno),
                         lineno);
      if (n == 0)
        throw ParseError("ambient dimension must be positive (line " +
                             std::to_string(lineno) + ")",
                         lineno);
      dim = n;
      continue;
    }
    if (word != "cone")
      throw ParseError("expected 'cone' on line " + std::to_string(lineno),
                       lineno);
    std::vector<IntVec> gens;
    std::string tok;
    while (ls >> tok) {
      IntVec v = parse_int_vec(tok);
      if (v.size() != *dim)
        throw ParseError("generator has wrong dimension on line " +
                             std::to_string(lineno),
                         lineno);
      gens.push_back(std::move(v));
    }
    cones.emplace_back(*dim, std::move(gens));
  }
  if (!dim) throw ParseError("missing 'dim' line", 0);
  return Fan::unchecked(*dim, std::move(cones));
}

Fan read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fan file: " + path);
  return read_fan(in);
}

void write_fan(std::ostream& out, const Fan& f) {
  out << "dim " << f.ambient_dim() << "\n";
  for (const auto& c : f.max_cones()) {
    out << "cone";
    for (const auto& g : c.generators()) out << ' ' << vec_to_string(g);
    out << "\n";
  }
}

std::string fan_to_string(const Fan& f) {
  std::ostringstream os;
  write_fan(os, f);
  return os.str();
}

}  // namespace conefan
