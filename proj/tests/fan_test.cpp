#include <doctest.h>

#include <sstream>

#include "conefan/fan.hpp"
#include "support.hpp"

using namespace conefan;

namespace {

// independent regularity oracle: exhaustive lattice-point enumeration of the
// half-open parallelepiped, with plain rational solving
bool oracle_regular(const Cone& c) {
  const std::size_t n = c.ambient_dim(), t = c.dim();
  if (t == 0) return true;
  const auto& w = c.generators();
  IntVec lo(n, Int(0)), hi(n, Int(0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < t; ++i) {
      if (w[i][k] < 0) lo[k] += w[i][k];
      if (w[i][k] > 0) hi[k] += w[i][k];
    }
  IntMat a = IntMat::from_cols(w, n);
  IntVec x = lo;
  for (;;) {
    if (!is_zero_vec(x)) {
      auto lambda = solve_linear(a, to_rat_vec(x));
      if (lambda) {
        bool inside = true;
        for (const auto& l : *lambda)
          if (l < 0 || l >= 1) {
            inside = false;
            break;
          }
        if (inside) return false;
      }
    }
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (x[k] < hi[k]) {
        ++x[k];
        for (std::size_t j = k + 1; j < n; ++j) x[j] = lo[j];
        break;
      }
      if (k == 0) return true;
    }
  }
}

Fan quadrant_fan() {
  return Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}}),
                            Cone(2, {{0, 1}, {-1, 0}}),
                            Cone(2, {{-1, 0}, {0, -1}}),
                            Cone(2, {{0, -1}, {1, 0}})});
}

}  // namespace

TEST_CASE("cone construction canonicalizes") {
  Cone c(2, {{1, 0}, {2, 4}});
  CHECK(c.generators() == std::vector<IntVec>{{1, 0}, {1, 2}});
  CHECK_THROWS_AS(Cone(2, {{1, 1}, {2, 2}}), DependentGeneratorsError);
  try {
    Cone(2, {{2, 0}, {0, 3}, {1, 1}});
  } catch (const DependentGeneratorsError& e) {
    // the dependency annihilates the primitivized sorted generators
    // (0,1), (1,0), (1,1)
    REQUIRE(e.dependency.size() == 3);
    CHECK(!is_zero_vec(e.dependency));
    CHECK(e.dependency[0] * 0 + e.dependency[1] * 1 + e.dependency[2] * 1 == 0);
    CHECK(e.dependency[0] * 1 + e.dependency[1] * 0 + e.dependency[2] * 1 == 0);
  }
  CHECK(Cone(2, {}).dim() == 0);
  CHECK_THROWS_AS(Cone(2, {{0, 0}}), ZeroVectorError);
}

TEST_CASE("faces") {
  Cone q(2, {{1, 0}, {0, 1}});
  auto fs = faces(q);
  REQUIRE(fs.size() == 4);
  CHECK(fs[0].dim() == 0);
  CHECK(fs[1] == Cone(2, {{0, 1}}));
  CHECK(fs[2] == Cone(2, {{1, 0}}));
  CHECK(fs[3] == q);

  CHECK(faces(Cone::zero(2)).size() == 1);
  CHECK(faces(Cone(2, {{1, 2}})).size() == 2);
}

TEST_CASE("membership") {
  Cone c(2, {{1, 0}, {1, 2}});
  CHECK(membership(c, {Rat(1), Rat(1)}));
  CHECK_FALSE(membership(c, {Rat(-1), Rat(0)}));
  CHECK(membership(Cone::zero(2), {Rat(0), Rat(0)}));
  CHECK_FALSE(membership(Cone::zero(2), {Rat(1), Rat(0)}));
  auto lambda = cone_coordinates(c, {Rat(1), Rat(1)});
  REQUIRE(lambda.has_value());
  CHECK((*lambda)[0] == make_rat(1, 2));
  CHECK((*lambda)[1] == make_rat(1, 2));
}

TEST_CASE("fan_validate accepts fans and reports bad overlaps") {
  CHECK_FALSE(fan_validate(quadrant_fan()).has_value());

  Fan bad = Fan::unchecked(
      2, {Cone(2, {{1, 0}, {0, 1}}), Cone(2, {{1, 1}, {-1, 1}})});
  auto v = fan_validate(bad);
  REQUIRE(v.has_value());
  CHECK(v->witness == RatVec{Rat(1), Rat(2)});
  // the witness lies in both cones
  CHECK(membership(bad.max_cones()[v->cone_a], v->witness));
  CHECK(membership(bad.max_cones()[v->cone_b], v->witness));

  // a single cone with its faces is a fan (faces are dropped as non-maximal)
  Cone q(2, {{1, 0}, {0, 1}});
  std::vector<Cone> with_faces = faces(q);
  Fan single = Fan::unchecked(2, with_faces);
  CHECK(single.max_cones().size() == 1);
  CHECK_FALSE(fan_validate(single).has_value());

  CHECK_THROWS_AS(
      Fan::from_max_cones(
          2, {Cone(2, {{1, 0}, {0, 1}}), Cone(2, {{1, 1}, {-1, 1}})}),
      Error);
}

TEST_CASE("is_regular on the pinned cones") {
  CHECK(std::holds_alternative<Regular>(is_regular(Cone(2, {{1, 0}, {0, 1}}))));
  CHECK(std::holds_alternative<Regular>(is_regular(Cone(3, {{1, 1, 1}}))));

  auto w = is_regular(Cone(2, {{1, 0}, {1, 2}}));
  auto* s = std::get_if<Singular>(&w);
  REQUIRE(s != nullptr);
  CHECK(s->point == IntVec{1, 1});
  CHECK(s->lambda == RatVec{make_rat(1, 2), make_rat(1, 2)});
}

TEST_CASE("regularity: smith verdict matches parallelepiped enumeration") {
  testsup::Rng rng(31);
  for (int i = 0; i < 120; ++i) {
    Cone c = testsup::random_cone(rng, 3, 6);
    bool smith = cone_is_regular(c);
    CHECK(smith == oracle_regular(c));
    auto w = is_regular(c);
    CHECK(std::holds_alternative<Regular>(w) == smith);
    if (auto* s = std::get_if<Singular>(&w)) {
      // witness is a nonzero lattice point of the parallelepiped
      CHECK(!is_zero_vec(s->point));
      RatVec rebuilt(c.ambient_dim(), Rat(0));
      for (std::size_t k = 0; k < c.dim(); ++k) {
        CHECK(s->lambda[k] >= 0);
        CHECK(s->lambda[k] < 1);
        for (std::size_t j = 0; j < c.ambient_dim(); ++j)
          rebuilt[j] += s->lambda[k] * Rat(c.generators()[k][j]);
      }
      CHECK(rebuilt == to_rat_vec(s->point));
    }
  }
}

TEST_CASE("stellar subdivision") {
  Fan quad = Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}})});
  Fan starred = stellar_subdivide(quad, {1, 1});
  CHECK(starred == Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 1}}),
                                      Cone(2, {{1, 1}, {0, 1}})}));

  // starring at an existing generator leaves the fan unchanged
  CHECK(stellar_subdivide(starred, {1, 1}) == starred);

  Fan sing = Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 2}})});
  Fan split = stellar_subdivide(sing, {1, 1});
  CHECK(split == Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 1}}),
                                    Cone(2, {{1, 1}, {1, 2}})}));
  for (const auto& c : split.max_cones()) CHECK(cone_is_regular(c));

  CHECK_THROWS_AS(stellar_subdivide(quad, {-1, -1}), RayOutsideSupportError);
}

TEST_CASE("stellar subdivision through a shared face") {
  // two 3-cones sharing the face pos(e1, e2); starring inside that face
  // must split both coherently
  Fan f = Fan::unchecked(3, {Cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                             Cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})});
  Fan s = stellar_subdivide(f, {1, 1, 0});
  CHECK(s.max_cones().size() == 4);
  CHECK_FALSE(fan_validate(s).has_value());
  testsup::Rng rng(36);
  for (int i = 0; i < 100; ++i) {
    RatVec x = testsup::random_rat_vec(rng, 3, 5, 3);
    CHECK(fan_membership(f, x) == fan_membership(s, x));
  }
  for (const auto& c : s.max_cones()) CHECK(cone_is_regular(c));
}

TEST_CASE("desingularize the pinned fans") {
  Fan quad = quadrant_fan();
  CHECK(desingularize(quad) == quad);

  Fan sing = Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 2}})});
  CHECK(desingularize(sing) == Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 1}}),
                                                  Cone(2, {{1, 1}, {1, 2}})}));

  Fan chain = desingularize(Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 5}})}));
  for (const auto& c : chain.max_cones()) CHECK(cone_is_regular(c));
  CHECK_FALSE(fan_validate(chain).has_value());
  // support is preserved
  testsup::Rng rng(32);
  Fan orig = Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 5}})});
  for (int i = 0; i < 200; ++i) {
    RatVec x = testsup::random_rat_vec(rng, 2, 8, 5);
    CHECK(fan_membership(orig, x) == fan_membership(chain, x));
  }
}

TEST_CASE("desingularize: random fans stay fans with the same support") {
  testsup::Rng rng(33);
  for (int i = 0; i < 12; ++i) {
    std::size_t dim = 2 + i % 2;
    Fan f = testsup::random_fan(rng, dim, 1 + rng.next() % 3,
                                dim == 3 ? 2 : 5);
    Fan d = desingularize(f);
    CHECK_FALSE(fan_validate(d).has_value());
    for (const auto& c : d.max_cones()) {
      CHECK(cone_is_regular(c));
      // refinement: every output cone sits inside some input cone
      bool inside_some = false;
      for (const auto& p : f.max_cones()) {
        bool all = true;
        for (const auto& g : c.generators())
          if (!membership(p, to_rat_vec(g))) {
            all = false;
            break;
          }
        if (all) {
          inside_some = true;
          break;
        }
      }
      CHECK(inside_some);
    }
    for (int s = 0; s < 60; ++s) {
      RatVec x = testsup::random_rat_vec(rng, dim, 6, 4);
      CHECK(fan_membership(f, x) == fan_membership(d, x));
    }
  }
}

TEST_CASE("triangulate_union on the pinned inputs") {
  // disjoint quadrants pass through unchanged
  Fan disjoint = triangulate_union(2, {{{1, 0}, {0, 1}}, {{-1, 0}, {0, -1}}});
  CHECK(disjoint == Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}}),
                                       Cone(2, {{-1, 0}, {0, -1}})}));

  // overlapping cones are carved along the common ray
  Fan overlap = triangulate_union(2, {{{1, 0}, {1, 1}}, {{1, 0}, {0, 1}}});
  CHECK(overlap == Fan::unchecked(2, {Cone(2, {{1, 0}, {1, 1}}),
                                      Cone(2, {{1, 1}, {0, 1}})}));

  // non-pointed input: the upper half-plane
  Fan half = triangulate_union(2, {{{1, 0}, {-1, 0}, {0, 1}}});
  CHECK(half == Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}}),
                                   Cone(2, {{0, 1}, {-1, 0}})}));
}

TEST_CASE("triangulate_union on degenerate inputs") {
  // a line through the origin
  Fan line = triangulate_union(2, {{{1, 0}, {-1, 0}}});
  CHECK(line == Fan::unchecked(2, {Cone(2, {{1, 0}}), Cone(2, {{-1, 0}})}));

  // duplicates and faces of other inputs are absorbed
  Fan dup = triangulate_union(
      2, {{{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}, {{1, 0}}, {}});
  CHECK(dup == Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}})}));

  // a cone inside the full plane disappears into the covering
  Fan full = triangulate_union(2, {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                   {{1, 2}, {2, 1}}});
  CHECK(support_covers_space(full));
  CHECK_FALSE(fan_validate(full).has_value());

  // mixed dimensions: a 2-cone plus a ray sticking out of it
  Fan mixed = triangulate_union(2, {{{1, 0}, {0, 1}}, {{-1, -2}}});
  CHECK_FALSE(fan_validate(mixed).has_value());
  CHECK(fan_membership(mixed, {Rat(1), Rat(1)}));
  CHECK(fan_membership(mixed, {Rat(-1), Rat(-2)}));
  CHECK_FALSE(fan_membership(mixed, {Rat(-1), Rat(-1)}));
  CHECK_FALSE(fan_membership(mixed, {Rat(-2), Rat(-1)}));

  // the union of nothing is the origin
  Fan empty = triangulate_union(3, {});
  CHECK(empty.max_cones().size() == 1);
  CHECK(empty.max_cones()[0].dim() == 0);
}

TEST_CASE("triangulate_union: membership oracle on random unions") {
  testsup::Rng rng(34);
  for (int i = 0; i < 10; ++i) {
    std::size_t dim = 2 + i % 2;
    std::vector<std::vector<IntVec>> lists;
    std::size_t n_lists = 1 + rng.next() % 3;
    for (std::size_t l = 0; l < n_lists; ++l) {
      std::vector<IntVec> gens;
      std::size_t k = 1 + rng.next() % (dim + 1);
      for (std::size_t j = 0; j < k; ++j)
        gens.push_back(testsup::random_nonzero_vec(rng, dim, -3, 3));
      lists.push_back(std::move(gens));
    }
    Fan f = triangulate_union(dim, lists);
    CHECK_FALSE(fan_validate(f).has_value());
    for (int s = 0; s < 100; ++s) {
      RatVec x = testsup::random_rat_vec(rng, dim, 5, 3);
      bool in_inputs = false;
      for (const auto& gens : lists) {
        // Caratheodory membership in pos(gens)
        const std::size_t k = gens.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << k) && !in_inputs;
             ++mask) {
          std::vector<IntVec> sub;
          for (std::size_t b = 0; b < k; ++b)
            if (mask & (std::size_t(1) << b)) sub.push_back(gens[b]);
          if (rank_of_rows(sub) != sub.size()) continue;
          auto lam = solve_linear(IntMat::from_cols(sub, dim), x);
          if (!lam) continue;
          bool nonneg = true;
          for (const auto& v : *lam)
            if (v < 0) {
              nonneg = false;
              break;
            }
          in_inputs = nonneg;
        }
        if (in_inputs) break;
      }
      CHECK(in_inputs == fan_membership(f, x));
    }
  }
}

TEST_CASE("support coverage and outside witnesses") {
  CHECK(support_covers_space(quadrant_fan()));

  Fan three = Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}}),
                                 Cone(2, {{0, 1}, {-1, 0}}),
                                 Cone(2, {{-1, 0}, {0, -1}})});
  CHECK_FALSE(support_covers_space(three));

  Fan axes = Fan::unchecked(2, {Cone(2, {{1, 0}}), Cone(2, {{0, 1}})});
  CHECK_FALSE(support_covers_space(axes));

  CHECK_FALSE(witness_outside_support(quadrant_fan()).has_value());

  Fan quad_only = Fan::unchecked(2, {Cone(2, {{1, 0}, {0, 1}})});
  auto w = witness_outside_support(quad_only);
  REQUIRE(w.has_value());
  CHECK(*w == RatVec{Rat(-1), Rat(-1)});
  for (const auto& c : quad_only.max_cones())
    CHECK_FALSE(membership(c, *w));

  auto wa = witness_outside_support(axes);
  REQUIRE(wa.has_value());
  CHECK(*wa == RatVec{Rat(-1), Rat(-1)});  // first point of the first shell
  for (const auto& c : axes.max_cones()) CHECK_FALSE(membership(c, *wa));

  // R^1: both rays or a witness
  Fan line = Fan::unchecked(1, {Cone(1, {{1}}), Cone(1, {{-1}})});
  CHECK(support_covers_space(line));
  Fan ray = Fan::unchecked(1, {Cone(1, {{1}})});
  auto wr = witness_outside_support(ray);
  REQUIRE(wr.has_value());
  CHECK(*wr == RatVec{Rat(-1)});
}

TEST_CASE("coverage equivalence with witness production on random fans") {
  testsup::Rng rng(35);
  for (int i = 0; i < 12; ++i) {
    std::size_t dim = 2 + i % 2;
    Fan f = testsup::random_fan(rng, dim, 1 + rng.next() % 4, 3);
    bool covers = support_covers_space(f);
    auto w = witness_outside_support(f);
    CHECK(covers == !w.has_value());
    if (w)
      for (const auto& c : f.max_cones()) CHECK_FALSE(membership(c, *w));
    // cross-check the combinatorial test by rational-point sampling
    if (covers)
      for (int s = 0; s < 50; ++s)
        CHECK(fan_membership(f, testsup::random_rat_vec(rng, dim, 6, 4)));
  }
}

TEST_CASE("fan text format round-trips and is canonical") {
  Fan f = quadrant_fan();
  std::string text = fan_to_string(f);
  std::istringstream in(text);
  CHECK(read_fan(in) == f);

  std::istringstream weird(
      "# a comment\n dim 2 \ncone 0,-1 1,0 # trailing\ncone 1,0 0,1\n"
      "cone 0,1 -1,0\ncone -1,0 0,-1\ncone 1,0\n");
  Fan g = read_fan(weird);
  CHECK(g == f);  // the lone ray is a face, dropped; order is canonical

  std::istringstream zero("dim 3\ncone\n");
  Fan z = read_fan(zero);
  CHECK(z.max_cones().size() == 1);
  CHECK(z.max_cones()[0].dim() == 0);
  CHECK(fan_to_string(z) == "dim 3\ncone\n");

  std::istringstream bad("dim 2\ncone 1,2,3\n");
  CHECK_THROWS_AS(read_fan(bad), ParseError);
  std::istringstream nodim("cone 1,0\n");
  CHECK_THROWS_AS(read_fan(nodim), ParseError);
}
