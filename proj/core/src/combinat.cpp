#include "conefan/combinat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "conefan/errors.hpp"

namespace conefan {

AbstractComplex abstract_complex(const Fan& f) {
  AbstractComplex ac;
  std::set<IntVec, bool (*)(const IntVec&, const IntVec&)> verts(lex_less);
  for (const auto& c : f.max_cones())
    for (const auto& g : c.generators()) verts.insert(g);
  ac.vertices.assign(verts.begin(), verts.end());
  auto index_of = [&](const IntVec& v) {
    return static_cast<std::size_t>(
        std::lower_bound(ac.vertices.begin(), ac.vertices.end(), v, lex_less) -
        ac.vertices.begin());
  };
  std::set<std::vector<std::size_t>> simps;
  for (const auto& c : f.max_cones()) {
    std::vector<std::size_t> idx;
    for (const auto& g : c.generators()) idx.push_back(index_of(g));
    std::sort(idx.begin(), idx.end());
    const std::size_t t = idx.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << t); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < t; ++i)
        if (mask & (std::size_t(1) << i)) s.push_back(idx[i]);
      simps.insert(std::move(s));
    }
  }
  ac.simplices.assign(simps.begin(), simps.end());
  return ac;
}

namespace {

struct VertexProfile {
  std::vector<std::size_t> count_by_size;      // simplices of each size at v
  std::vector<std::size_t> max_simplex_sizes;  // sizes of maximal simplices
  bool operator==(const VertexProfile&) const = default;
};

struct ComplexView {
  const AbstractComplex* ac;
  std::set<std::vector<std::size_t>> simplex_set;
  std::vector<std::vector<std::size_t>> at_vertex;  // simplex ids per vertex
  std::vector<VertexProfile> profiles;
  std::vector<std::size_t> f_vector;
};

ComplexView make_view(const AbstractComplex& ac) {
  ComplexView v;
  v.ac = &ac;
  v.simplex_set.insert(ac.simplices.begin(), ac.simplices.end());
  v.at_vertex.resize(ac.vertices.size());
  std::size_t max_size = 0;
  for (const auto& s : ac.simplices) max_size = std::max(max_size, s.size());
  v.f_vector.assign(max_size + 1, 0);
  std::vector<bool> is_max(ac.simplices.size(), true);
  for (std::size_t i = 0; i < ac.simplices.size(); ++i) {
    const auto& s = ac.simplices[i];
    ++v.f_vector[s.size()];
    for (std::size_t vert : s) v.at_vertex[vert].push_back(i);
    // closed under subsets, so maximality only needs one-vertex extensions
    for (std::size_t vert = 0; vert < ac.vertices.size() && is_max[i];
         ++vert) {
      if (std::binary_search(s.begin(), s.end(), vert)) continue;
      std::vector<std::size_t> ext = s;
      ext.insert(std::lower_bound(ext.begin(), ext.end(), vert), vert);
      if (v.simplex_set.count(ext)) is_max[i] = false;
    }
  }
  v.profiles.resize(ac.vertices.size());
  for (std::size_t vert = 0; vert < ac.vertices.size(); ++vert) {
    auto& p = v.profiles[vert];
    p.count_by_size.assign(max_size + 1, 0);
    for (std::size_t i : v.at_vertex[vert]) {
      ++p.count_by_size[ac.simplices[i].size()];
      if (is_max[i]) p.max_simplex_sizes.push_back(ac.simplices[i].size());
    }
    std::sort(p.max_simplex_sizes.begin(), p.max_simplex_sizes.end());
  }
  return v;
}

struct IsoSearch {
  const ComplexView *a, *b;
  std::vector<std::size_t> assign;  // a-vertex -> b-vertex
  std::vector<bool> used;

  bool consistent(std::size_t v) {
    // every a-simplex through v whose vertices are all assigned must map
    // to a b-simplex
    for (std::size_t i : a->at_vertex[v]) {
      const auto& s = a->ac->simplices[i];
      std::vector<std::size_t> image;
      image.reserve(s.size());
      bool complete = true;
      for (std::size_t w : s) {
        if (w <= v) {
          image.push_back(assign[w]);
        } else {
          complete = false;
          break;
        }
      }
      if (!complete) continue;
      std::sort(image.begin(), image.end());
      if (!b->simplex_set.count(image)) return false;
    }
    return true;
  }

  bool search(std::size_t v) {
    if (v == assign.size()) return true;
    for (std::size_t cand = 0; cand < used.size(); ++cand) {
      if (used[cand] || !(a->profiles[v] == b->profiles[cand])) continue;
      assign[v] = cand;
      used[cand] = true;
      if (consistent(v) && search(v + 1)) return true;
      used[cand] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<ComplexIso> complex_isomorphic(const AbstractComplex& a,
                                             const AbstractComplex& b) {
  if (a.vertices.size() != b.vertices.size() ||
      a.simplices.size() != b.simplices.size())
    return std::nullopt;
  ComplexView va = make_view(a), vb = make_view(b);
  if (va.f_vector != vb.f_vector) return std::nullopt;
  IsoSearch s{&va, &vb, std::vector<std::size_t>(a.vertices.size(), 0),
              std::vector<bool>(b.vertices.size(), false)};
  // vertices are assigned in label order against candidates in label order,
  // so the first complete assignment is the lexicographically least one
  if (!s.search(0)) return std::nullopt;
  ComplexIso iso;
  for (std::size_t v = 0; v < a.vertices.size(); ++v)
    iso.pairs.emplace_back(a.vertices[v], b.vertices[s.assign[v]]);
  return iso;
}

ComplexIso invert_iso(const ComplexIso& iso) {
  ComplexIso inv;
  for (const auto& [from, to] : iso.pairs) inv.pairs.emplace_back(to, from);
  std::sort(inv.pairs.begin(), inv.pairs.end(),
            [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });
  return inv;
}

BMap synthesize_bhomeo(const Fan& delta, const Fan& nabla,
                       const ComplexIso& iso) {
  const std::size_t n = delta.ambient_dim();
  const std::size_t nt = nabla.ambient_dim();
  std::map<IntVec, IntVec, bool (*)(const IntVec&, const IntVec&)> to(
      lex_less);
  for (const auto& [from, dest] : iso.pairs) to.emplace(from, dest);

  std::vector<std::pair<Cone, IntMat>> pairs;
  for (const auto& c : delta.max_cones()) {
    const std::size_t t = c.dim();
    if (!cone_is_regular(c)) throw Error("source fan is not regular");
    std::vector<IntVec> images;
    for (const auto& g : c.generators()) {
      auto it = to.find(g);
      if (it == to.end())
        throw InconsistentIsoError("generator missing from the bijection");
      images.push_back(it->second);
    }
    if (rank_of_rows(images) != t)
      throw InconsistentIsoError("dependent images");
    // the image set must be a cone of the target fan
    bool found = false;
    for (const auto& d : nabla.max_cones()) {
      bool all = true;
      for (const auto& u : images)
        if (!std::binary_search(d.generators().begin(), d.generators().end(),
                                u, lex_less)) {
          all = false;
          break;
        }
      if (all) {
        found = true;
        break;
      }
    }
    if (!found)
      throw InconsistentIsoError("image set is not a simplex of the target");

    // complete the generators to a lattice basis via the Smith form
    IntMat w = IntMat::from_cols(c.generators(), n);  // n x t
    SmithResult snf = smith_normal_form(w);
    for (std::size_t k = 0; k < t; ++k)
      if (snf.s(k, k) != 1) throw Error("source cone is not regular");
    Int du = determinant(snf.u);  // +-1
    IntMat b(n, n);               // inverse of U
    {
      IntMat id = IntMat::identity(n);
      for (std::size_t j = 0; j < n; ++j) {
        auto col = solve_linear(snf.u, to_rat_vec(id.col(j)));
        for (std::size_t i = 0; i < n; ++i) {
          Rat e = (*col)[i];
          if (rat_den(e) != 1) throw Error("unimodular inverse not integral");
          b(i, j) = rat_num(e);
        }
      }
    }
    (void)du;
    IntMat mb(nt, n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j < t) {
        for (std::size_t i = 0; i < t; ++i)
          for (std::size_t k = 0; k < nt; ++k)
            mb(k, j) += snf.v(i, j) * images[i][k];
      } else if (nt == n) {
        for (std::size_t k = 0; k < n; ++k) mb(k, j) = b(k, j);
      }
    }
    IntMat m = mb * snf.u;
    for (std::size_t i = 0; i < t; ++i)
      if (!(m * c.generators()[i] == images[i]))
        throw Error("synthesized matrix fails on a generator");
    pairs.emplace_back(c, std::move(m));
  }
  return BMap(n, nt, std::move(pairs));
}

namespace {

// is the simplicial cone p exactly covered by the given cones inside it?
// Relative ridge counting: every facet of a top-dimensional subcone is
// either shared by exactly two of them or lies in a facet of p.
bool subfan_covers_cone(const Cone& p, const std::vector<Cone>& inside) {
  const std::size_t k = p.dim();
  if (k == 0) return !inside.empty();
  std::vector<const Cone*> top;
  for (const auto& c : inside)
    if (c.dim() == k) top.push_back(&c);
  if (top.empty()) return false;
  std::map<std::vector<IntVec>, int> ridges;
  for (const Cone* c : top) {
    for (std::size_t skip = 0; skip < k; ++skip) {
      std::vector<IntVec> facet;
      for (std::size_t i = 0; i < k; ++i)
        if (i != skip) facet.push_back(c->generators()[i]);
      ++ridges[facet];
    }
  }
  for (const auto& [facet, count] : ridges) {
    if (count == 2) continue;
    if (count != 1) return false;  // overlap
    // boundary ridge: all rays must share a vanishing coordinate in p
    std::vector<RatVec> coords;
    for (const auto& r : facet) {
      auto l = cone_coordinates(p, to_rat_vec(r));
      if (!l) return false;
      coords.push_back(*l);
    }
    bool on_boundary = false;
    for (std::size_t i = 0; i < k && !on_boundary; ++i) {
      bool all_zero = true;
      for (const auto& l : coords)
        if (l[i] != 0) {
          all_zero = false;
          break;
        }
      on_boundary = all_zero;
    }
    if (!on_boundary) return false;
  }
  return true;
}

bool cone_inside(const Cone& inner, const Cone& outer) {
  for (const auto& g : inner.generators())
    if (!membership(outer, to_rat_vec(g))) return false;
  return true;
}

}  // namespace

BhomeoReport verify_bhomeo(const BMap& h, const Fan& phi, const Fan& psi) {
  // (a) regular linearizing refinement of phi within h's fan
  Fan dh = h.domain_fan();
  std::vector<IntMat> mats = h.matrices();
  bool regular = true;
  for (const auto& c : dh.max_cones())
    if (!cone_is_regular(c)) {
      regular = false;
      break;
    }
  if (!regular) {
    Fan refined = desingularize(dh);
    std::vector<IntMat> rmats;
    for (const auto& d : refined.max_cones()) {
      std::size_t src = dh.max_cones().size();
      for (std::size_t i = 0; i < dh.max_cones().size(); ++i)
        if (cone_inside(d, dh.max_cones()[i])) {
          src = i;
          break;
        }
      if (src == dh.max_cones().size())
        return {false, 'a', "desingularization escaped the domain fan"};
      rmats.push_back(mats[src]);
    }
    dh = refined;
    mats = std::move(rmats);
  }
  for (const auto& c : dh.max_cones()) {
    bool in_phi = false;
    for (const auto& p : phi.max_cones())
      if (cone_inside(c, p)) {
        in_phi = true;
        break;
      }
    if (!in_phi)
      return {false, 'a',
              "cone " + fan_to_string(Fan::unchecked(dh.ambient_dim(), {c})) +
                  "is not inside the source fan"};
  }
  for (const auto& p : phi.max_cones()) {
    std::vector<Cone> inside;
    for (const auto& c : dh.max_cones())
      if (cone_inside(c, p)) inside.push_back(c);
    if (!subfan_covers_cone(p, inside))
      return {false, 'a', "source cone not covered by the refinement"};
  }

  // (b) lattice primitivity and regular same-dimension images
  std::vector<std::pair<Cone, std::size_t>> image_cones;
  for (std::size_t i = 0; i < dh.max_cones().size(); ++i) {
    const Cone& c = dh.max_cones()[i];
    std::vector<IntVec> imgs;
    for (const auto& g : c.generators()) {
      IntVec img = mats[i] * g;
      if (is_zero_vec(img))
        return {false, 'b', "generator " + vec_to_string(g) + " maps to 0"};
      if (!(primitive(img) == img))
        return {false, 'b',
                "generator " + vec_to_string(g) + " maps to non-primitive " +
                    vec_to_string(img)};
      imgs.push_back(std::move(img));
    }
    if (rank_of_rows(imgs) != c.dim())
      return {false, 'b', "image cone drops dimension"};
    Cone img_cone(psi.ambient_dim(), imgs);
    if (!cone_is_regular(img_cone))
      return {false, 'b', "image cone is not regular"};
    image_cones.emplace_back(std::move(img_cone), i);
  }

  // (c) image cones land inside psi's cones
  for (const auto& [img, src] : image_cones) {
    bool inside = false;
    for (const auto& q : psi.max_cones())
      if (cone_inside(img, q)) {
        inside = true;
        break;
      }
    if (!inside) return {false, 'c', "an image cone leaves the target fan"};
  }

  // (d) image cones form a fan: pairwise disjoint relative interiors
  for (std::size_t i = 0; i < image_cones.size(); ++i)
    for (std::size_t j = i + 1; j < image_cones.size(); ++j) {
      const Cone &a = image_cones[i].first, &b = image_cones[j].first;
      if (a == b) return {false, 'd', "two cones share their image"};
      if ((a.dim() < b.dim() && cone_inside(a, b)) ||
          (b.dim() < a.dim() && cone_inside(b, a)))
        return {false, 'd', "one image cone swallows another"};
    }
  {
    std::vector<Cone> imgs;
    for (const auto& [img, src] : image_cones) imgs.push_back(img);
    Fan image_fan_struct = Fan::unchecked(psi.ambient_dim(), imgs);
    if (auto v = fan_validate(image_fan_struct))
      return {false, 'd', "image cones overlap: " + v->what};
  }

  // (c) every psi cone is exactly covered
  for (const auto& q : psi.max_cones()) {
    std::vector<Cone> inside;
    for (const auto& [img, src] : image_cones)
      if (cone_inside(img, q)) inside.push_back(img);
    if (!subfan_covers_cone(q, inside))
      return {false, 'c', "target cone not covered by image cones"};
  }
  return {true, ' ', ""};
}

Verdict decide_free(const std::vector<Term>& terms) {
  if (terms.empty()) throw Error("no terms");
  const std::size_t m = terms.front().arity;
  for (const auto& t : terms)
    if (t.arity != m) throw Error("term arity mismatch");
  const std::size_t n = terms.size();

  Verdict v;
  if (n > m) {
    v.yes = false;
    v.dimension_reason = {n, m};
    return v;
  }
  BMap b = linearizing_fan(terms, m);
  ImageFan theta = image_fan(b);
  if (support_covers_space(theta.fan)) {
    if (witness_outside_support(theta.fan))
      throw Error("coverage evidence failed re-verification");
    v.yes = true;
    v.covering = theta.fan;
    return v;
  }
  auto w = witness_outside_support(theta.fan);
  if (!w) throw Error("missing witness for non-covering range");
  for (const auto& c : theta.fan.max_cones())
    if (membership(c, *w)) throw Error("witness failed re-verification");
  v.yes = false;
  v.witness = *w;
  return v;
}

Verdict check_free_basis(const std::vector<Term>& terms) {
  if (terms.empty()) throw Error("no terms");
  if (terms.front().arity != terms.size())
    throw Error("term count must equal variable count");
  return decide_free(terms);
}

// ---------------------------------------------------------------------------
// certificate search

namespace {

std::size_t support_dim(const Fan& f) {
  std::size_t d = 0;
  for (const auto& c : f.max_cones()) d = std::max(d, c.dim());
  return d;
}

// primitive integer vectors in |f|, by max-norm shell then lexicographic
class RayPool {
 public:
  explicit RayPool(const Fan& f) : n_(f.ambient_dim()) {
    for (const auto& c : f.max_cones()) hs_.push_back(cone_halfspaces(c));
  }

  // grows to at least k entries if possible within the shell cap
  void extend(std::size_t k, const Int& shell_cap) {
    while (rays_.size() < k && shell_ <= shell_cap) advance_shell();
  }

  const std::vector<IntVec>& rays() const { return rays_; }

 private:
  void advance_shell() {
    IntVec x(n_, Int(-shell_));
    for (;;) {
      Int norm = 0;
      for (const auto& v : x) norm = std::max(norm, Int(abs(v)));
      if (norm == shell_ && !is_zero_vec(x)) {
        Int g = 0;
        for (const auto& v : x) g = gcd(g, v);
        if (g == 1 && covered(x)) rays_.push_back(x);
      }
      std::size_t k = n_;
      while (k > 0) {
        --k;
        if (x[k] < shell_) {
          ++x[k];
          for (std::size_t j = k + 1; j < n_; ++j) x[j] = Int(-shell_);
          break;
        }
        if (k == 0) {
          k = n_ + 1;
          break;
        }
      }
      if (k == n_ + 1) break;
    }
    ++shell_;
  }

  bool covered(const IntVec& x) const {
    for (const auto& h : hs_) {
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
  }

  std::size_t n_;
  std::vector<Halfspaces> hs_;
  std::vector<IntVec> rays_;
  Int shell_ = 1;
};

// applies stellar subdivisions; nullopt when some star is a no-op (the
// sequence duplicates a shorter one)
std::optional<Fan> apply_sequence(const Fan& f, const std::vector<IntVec>& seq) {
  Fan cur = f;
  for (const auto& ray : seq) {
    bool exists = false;
    for (const auto& c : cur.max_cones())
      if (std::binary_search(c.generators().begin(), c.generators().end(), ray,
                             lex_less)) {
        exists = true;
        break;
      }
    if (exists) return std::nullopt;
    cur = stellar_subdivide(cur, ray);
  }
  return cur;
}

// all index tuples of the given length with entries < bound, lexicographic
std::vector<std::vector<std::size_t>> index_tuples(std::size_t length,
                                                   std::size_t bound) {
  std::vector<std::vector<std::size_t>> out;
  if (length == 0) {
    out.push_back({});
    return out;
  }
  if (bound == 0) return out;
  std::vector<std::size_t> t(length, 0);
  for (;;) {
    out.push_back(t);
    std::size_t k = length;
    while (k > 0) {
      --k;
      if (t[k] + 1 < bound) {
        ++t[k];
        for (std::size_t j = k + 1; j < length; ++j) t[j] = 0;
        break;
      }
      if (k == 0) return out;
    }
  }
}

}  // namespace

SearchResult search_certificate(const Fan& phi, const Fan& psi,
                                std::size_t budget) {
  const std::size_t da = support_dim(phi), db = support_dim(psi);
  if (da != db)
    return {SearchStatus::Obstructed, std::nullopt,
            "support dimensions differ: " + std::to_string(da) + " vs " +
                std::to_string(db)};

  RayPool pool_a(phi), pool_b(psi);
  std::set<std::pair<std::string, std::string>> tested;
  std::size_t tests = 0;

  const std::size_t max_total_len = 4;
  for (std::size_t phase = 1;; ++phase) {
    const std::size_t bound = 8 * phase;
    const Int shell_cap = Int(2 * phase + 2);
    std::size_t before_a = pool_a.rays().size(), before_b = pool_b.rays().size();
    pool_a.extend(bound, shell_cap);
    pool_b.extend(bound, shell_cap);
    const std::size_t ba = std::min(bound, pool_a.rays().size());
    const std::size_t bb = std::min(bound, pool_b.rays().size());
    bool progressed = false;

    for (std::size_t total = 0; total <= std::min(phase, max_total_len);
         ++total) {
      for (std::size_t la = 0; la <= total; ++la) {
        const std::size_t lb = total - la;
        for (const auto& ta : index_tuples(la, ba)) {
          std::vector<IntVec> seq_a;
          for (std::size_t i : ta) seq_a.push_back(pool_a.rays()[i]);
          auto fan_a = apply_sequence(phi, seq_a);
          if (!fan_a) continue;
          Fan delta = desingularize(*fan_a);
          std::string key_a = fan_to_string(delta);
          for (const auto& tb : index_tuples(lb, bb)) {
            std::vector<IntVec> seq_b;
            for (std::size_t i : tb) seq_b.push_back(pool_b.rays()[i]);
            auto fan_b = apply_sequence(psi, seq_b);
            if (!fan_b) continue;
            Fan nabla = desingularize(*fan_b);
            if (!tested.emplace(key_a, fan_to_string(nabla)).second) continue;
            progressed = true;
            if (tests == budget)
              return {SearchStatus::BudgetExhausted, std::nullopt,
                      "budget exhausted after " + std::to_string(tests) +
                          " pair tests"};
            ++tests;
            auto iso = complex_isomorphic(abstract_complex(delta),
                                          abstract_complex(nabla));
            if (!iso) continue;
            BMap h = synthesize_bhomeo(delta, nabla, *iso);
            BhomeoReport rep = verify_bhomeo(h, phi, psi);
            if (!rep.ok) continue;
            return {SearchStatus::Found, Certificate{delta, nabla, *iso}, ""};
          }
        }
      }
    }
    if (!progressed && pool_a.rays().size() == before_a &&
        pool_b.rays().size() == before_b)
      return {SearchStatus::BudgetExhausted, std::nullopt,
              "subdivision space saturated after " + std::to_string(tests) +
                  " pair tests"};
    if (phase > budget + 8)
      return {SearchStatus::BudgetExhausted, std::nullopt,
              "budget exhausted after " + std::to_string(tests) +
                  " pair tests"};
  }
}

// ---------------------------------------------------------------------------
// certificate serialization

void write_certificate(std::ostream& out, const Certificate& c) {
  out << "fan-a\n";
  write_fan(out, c.delta);
  out << "fan-b\n";
  write_fan(out, c.nabla);
  for (const auto& [from, to] : c.iso.pairs)
    out << "map " << vec_to_string(from) << " -> " << vec_to_string(to)
        << "\n";
}

std::string certificate_to_string(const Certificate& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

Certificate read_certificate(std::istream& in) {
  std::string line;
  std::vector<std::string> fan_a, fan_b, maps;
  int section = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "fan-a") {
      section = 1;
      continue;
    }
    if (word == "fan-b") {
      section = 2;
      continue;
    }
    if (word == "map") {
      std::string from, arrow, to;
      if (!(ls >> from >> arrow >> to) || arrow != "->")
        throw ParseError("bad map line", 0);
      maps.push_back(from + " " + to);
      continue;
    }
    (section == 1 ? fan_a : fan_b).push_back(line);
  }
  auto parse_fan_lines = [](const std::vector<std::string>& lines) {
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    std::istringstream is(text);
    return read_fan(is);
  };
  Certificate c{parse_fan_lines(fan_a), parse_fan_lines(fan_b), {}};
  for (const auto& m : maps) {
    std::istringstream ms(m);
    std::string from, to;
    ms >> from >> to;
    c.iso.pairs.emplace_back(parse_int_vec(from), parse_int_vec(to));
  }
  std::sort(c.iso.pairs.begin(), c.iso.pairs.end(),
            [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });
  return c;
}

}  // namespace conefan
