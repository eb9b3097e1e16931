#pragma once

// Shared test utilities: a bit-stable RNG (no std distributions, so results
// are identical across platforms) and random generators for the domain
// objects. Seeds are fixed in the tests that use them.

#include <cstdint>
#include <vector>

#include "conefan/fan.hpp"
#include "conefan/numbers.hpp"
#include "conefan/terms.hpp"

namespace testsup {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {  // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi]
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline conefan::IntVec random_int_vec(Rng& rng, std::size_t n, long long lo,
                                      long long hi) {
  conefan::IntVec v(n);
  for (auto& x : v) x = rng.range(lo, hi);
  return v;
}

inline conefan::IntVec random_nonzero_vec(Rng& rng, std::size_t n,
                                          long long lo, long long hi) {
  for (;;) {
    conefan::IntVec v = random_int_vec(rng, n, lo, hi);
    if (!conefan::is_zero_vec(v)) return v;
  }
}

inline conefan::Rat random_rat(Rng& rng, long long num_bound,
                               long long den_bound) {
  return conefan::make_rat(conefan::Int(rng.range(-num_bound, num_bound)),
                           conefan::Int(rng.range(1, den_bound)));
}

inline conefan::RatVec random_rat_vec(Rng& rng, std::size_t n,
                                      long long num_bound,
                                      long long den_bound) {
  conefan::RatVec v(n);
  for (auto& x : v) x = random_rat(rng, num_bound, den_bound);
  return v;
}

// random simplicial cone: dim in [1, max_dim], up to dim generators
inline conefan::Cone random_cone(Rng& rng, std::size_t max_dim,
                                 long long entry_bound) {
  for (;;) {
    std::size_t n = static_cast<std::size_t>(rng.range(1, static_cast<long long>(max_dim)));
    std::size_t t = static_cast<std::size_t>(rng.range(1, static_cast<long long>(n)));
    std::vector<conefan::IntVec> gens;
    for (std::size_t i = 0; i < t; ++i)
      gens.push_back(random_nonzero_vec(rng, n, -entry_bound, entry_bound));
    try {
      return conefan::Cone(n, gens);
    } catch (const conefan::Error&) {
      // dependent; retry
    }
  }
}

// random valid fan: a triangulated union of a few random generator lists
inline conefan::Fan random_fan(Rng& rng, std::size_t dim, std::size_t n_cones,
                               long long entry_bound) {
  std::vector<std::vector<conefan::IntVec>> lists;
  for (std::size_t i = 0; i < n_cones; ++i) {
    std::vector<conefan::IntVec> gens;
    std::size_t k = static_cast<std::size_t>(rng.range(1, static_cast<long long>(dim)));
    for (std::size_t j = 0; j < k; ++j)
      gens.push_back(random_nonzero_vec(rng, dim, -entry_bound, entry_bound));
    lists.push_back(std::move(gens));
  }
  return conefan::triangulate_union(dim, lists);
}

// random unimodular matrix with bounded entries, from elementary operations
inline conefan::IntMat random_unimodular(Rng& rng, std::size_t n,
                                         long long bound) {
  for (;;) {
    conefan::IntMat u = conefan::IntMat::identity(n);
    for (int step = 0; step < 6; ++step) {
      std::size_t i = rng.next() % n, j = rng.next() % n;
      long long c = rng.range(-1, 1);
      if (i == j || c == 0) continue;
      for (std::size_t k = 0; k < n; ++k)
        u(i, k) += conefan::Int(c) * u(j, k);
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (abs(u(i, j)) > bound) ok = false;
    if (ok) return u;
  }
}

inline conefan::Fan apply_unimodular(const conefan::Fan& f,
                                     const conefan::IntMat& u) {
  std::vector<conefan::Cone> cones;
  for (const auto& c : f.max_cones()) {
    std::vector<conefan::IntVec> gens;
    for (const auto& g : c.generators()) gens.push_back(u * g);
    cones.emplace_back(f.ambient_dim(), std::move(gens));
  }
  return conefan::Fan::unchecked(f.ambient_dim(), std::move(cones));
}

// random point of |f|: nonnegative rational combination in a random cone
inline conefan::RatVec random_support_point(Rng& rng, const conefan::Fan& f) {
  using namespace conefan;
  const auto& mc = f.max_cones();
  const Cone& c = mc[rng.next() % mc.size()];
  RatVec x(f.ambient_dim(), Rat(0));
  for (const auto& g : c.generators()) {
    Rat coeff = make_rat(Int(rng.range(0, 9)), Int(rng.range(1, 3)));
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += coeff * Rat(g[k]);
  }
  return x;
}

// random term; piece_cap bounds the number of linear pieces so arrangement
// sizes stay at desk scale
inline conefan::Term random_term(Rng& rng, std::size_t m, std::size_t depth,
                                 std::size_t piece_cap = 12) {
  using namespace conefan;
  auto gen = [&](auto&& self, std::size_t d) -> Term {
    long long pick = rng.range(0, d == 0 ? 1 : 9);
    if (pick <= 1) {
      if (pick == 0 && m >= 1)
        return term_var(
            static_cast<std::size_t>(rng.range(1, static_cast<long long>(m))),
            m);
      return term_zero(m);
    }
    if (pick <= 3) return term_neg(self(self, d - 1));
    Term a = self(self, d - 1), b = self(self, d - 1);
    switch (pick) {
      case 4:
      case 5:
        return term_add(a, b);
      case 6:
        return term_sub(a, b);
      case 7:
      case 8:
        return term_join(a, b);
      default:
        return term_meet(a, b);
    }
  };
  for (;;) {
    Term t = gen(gen, depth);
    if (linear_pieces(t).size() <= piece_cap) return t;
  }
}

}  // namespace testsup
