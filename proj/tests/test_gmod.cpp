#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "gmod.hpp"

using namespace glattice;

namespace {

Integer trace(const IntMatrix& a) {
  Integer t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

Subgroup gen(const GroupPtr& g, const std::vector<std::string>& names) {
  std::vector<int> idx;
  for (const auto& n : names) idx.push_back(*g->find(n));
  return generated_subgroup(g, idx);
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    e(i, j) = static_cast<long>(rng() % 3) - 1;
    u = u * e;
  }
  return u;
}

}  // namespace

TEST_CASE("permutation lattices") {
  auto s3 = semidirect(3, 2, 2);
  auto t = trivial(s3);
  CHECK(t.rank() == 1);
  for (int g = 0; g < 6; ++g) CHECK(t.action(g) == IntMatrix{{1}});

  auto c = coset_lattice(gen(s3, {"t"}));
  CHECK(c.rank() == 3);
  for (const auto& a : c.actions()) CHECK(a.is_permutation());

  auto r = regular(s3);
  CHECK(r.rank() == 6);
  for (int g = 0; g < 6; ++g) CHECK(trace(r.action(g)) == (g == s3->identity() ? 6 : 0));
  CHECK(r.invariant_failure().empty());
  CHECK_THROWS_AS(GSet(s3, std::vector<std::vector<int>>(6, {1, 0})), Error);
}

TEST_CASE("dual, sum, tensor") {
  auto s3 = semidirect(3, 2, 2);
  auto m = augmentation_lattice(coset_gset(gen(s3, {"t"})));
  CHECK(m.invariant_failure().empty());
  CHECK(dual(trivial(s3)) == trivial(s3));
  CHECK(dual(dual(m)) == m);
  auto r = regular(s3);
  CHECK(dual(r) == r);
  CHECK(tensor(trivial(s3), m) == m);
  CHECK(direct_sum(m, r).rank() == m.rank() + r.rank());
  CHECK(tensor(m, r).invariant_failure().empty());
  CHECK(direct_sum(m, r).invariant_failure().empty());

  // ZG (x) ZG for C_2: orbits of basis pairs (i, j) under the diagonal action.
  auto c2 = cyclic(2);
  auto rr = tensor(regular(c2), regular(c2));
  std::vector<std::vector<int>> orbits;
  std::set<int> seen;
  for (int p = 0; p < 4; ++p) {
    if (seen.count(p)) continue;
    std::vector<int> o;
    for (int g = 0; g < 2; ++g) {
      int q = c2->mul(g, p / 2) * 2 + c2->mul(g, p % 2);
      if (seen.insert(q).second) o.push_back(q);
    }
    orbits.push_back(o);
  }
  REQUIRE(orbits.size() == 2);
  // Map the i-th copy of ZG onto orbit i: g -> g.(orbit representative).
  IntMatrix phi(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int g = 0; g < 2; ++g) {
      const int p = orbits[i][0];
      const int q = c2->mul(g, p / 2) * 2 + c2->mul(g, p % 2);
      phi(q, i * 2 + g) = 1;
    }
  EquivariantMap iso(direct_sum(regular(c2), regular(c2)), rr, phi);
  CHECK(iso.is_isomorphism());
  CHECK_THROWS_AS(direct_sum(regular(c2), regular(s3)), Error);
}

TEST_CASE("restriction, induction, fixed points, norms") {
  auto s3 = semidirect(3, 2, 2);
  auto h = gen(s3, {"t"});
  auto rh = restrict(regular(s3), h);
  REQUIRE(rh.permutation_structure());
  CHECK(rh.permutation_structure()->is_free());
  CHECK(static_cast<int>(rh.permutation_structure()->orbits().size()) == h.index());

  auto fix = fixed_sublattice(regular(s3), whole_group(s3));
  REQUIRE(fix.cols() == 1);
  CHECK(fix.column(0) == IntVector(6, 1));
  CHECK(norm_matrix(regular(s3), whole_group(s3)) == [] {
    IntMatrix ones(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) ones(i, j) = 1;
    return ones;
  }());

  for (auto g : {s3, dihedral(4), cyclic(5)}) {
    auto one = trivial_subgroup(g);
    CHECK(induce(one, trivial(one.as_group())) == regular(g));
  }

  // N is a direct summand of the restriction of its induction.
  auto n = sign_lattice(trivial_subgroup(h.as_group()));
  auto ind = induce(h, n);
  CHECK(ind.invariant_failure().empty());
  auto res = restrict(ind, h);
  IntMatrix inc(res.rank(), n.rank()), ret(n.rank(), res.rank());
  for (std::size_t j = 0; j < n.rank(); ++j) inc(j, j) = ret(j, j) = 1;
  EquivariantMap i(n, res, inc), r(res, n, ret);
  CHECK(i.is_equivariant());
  CHECK(r.is_equivariant());
  CHECK((ret * inc).is_identity());
}

TEST_CASE("move to subgroup") {
  auto s3 = semidirect(3, 2, 2);
  auto whole = whole_group(s3);
  auto m = augmentation_lattice(regular_gset(s3));
  auto f = move_to_subgroup_iso(whole, m);
  CHECK(f.is_isomorphism());
  CHECK(f.matrix().is_permutation());

  auto g = move_to_subgroup_iso(gen(s3, {"t"}), regular(s3));
  CHECK(g.source().rank() == 18);
  CHECK(g.target().rank() == 18);
  CHECK(abs(determinant(g.matrix())) == 1);
  CHECK(g.equivariance_failure().empty());

  auto c4 = cyclic(4);
  auto k = move_to_subgroup_iso(gen(c4, {"s2"}), trivial(c4));
  CHECK(k.is_isomorphism());
  CHECK(k.source() == coset_lattice(gen(c4, {"s2"})));
  CHECK(k.target() == coset_lattice(gen(c4, {"s2"})));
}

TEST_CASE("exact sequences") {
  auto s3 = semidirect(3, 2, 2);
  auto m = augmentation_lattice(regular_gset(s3));
  auto p = coset_lattice(gen(s3, {"s1"}));
  auto seq = split_sequence(m, p);
  CHECK(check_exact(seq).exact);

  auto x = coset_gset(gen(s3, {"t"}));
  auto zv = permutation_lattice(x);
  IntMatrix eps(1, 3);
  for (std::size_t j = 0; j < 3; ++j) eps(0, j) = 1;
  auto ib = augmentation_basis(3);
  ShortExactSequence aug{EquivariantMap(sublattice(zv, ib), zv, ib), EquivariantMap(zv, trivial(s3), eps)};
  CHECK(check_exact(aug).exact);

  ShortExactSequence broken{seq.left, EquivariantMap(seq.right.source(), p, IntMatrix(p.rank(), seq.right.source().rank()))};
  auto rep = check_exact(broken);
  CHECK_FALSE(rep.exact);
  CHECK(rep.diagnostic.find("surjective") != std::string::npos);
}

TEST_CASE("conjugated lattices satisfy the lattice laws") {
  std::mt19937 rng(3);
  for (auto g : {cyclic(4), semidirect(3, 2, 2), dihedral(4)}) {
    auto r = regular(g);
    IntMatrix u = random_unimodular(rng, r.rank());
    IntMatrix ui = *inverse_unimodular(u);
    std::vector<IntMatrix> act;
    for (const auto& a : r.actions()) act.push_back(ui * a * u);
    GLattice c(g, r.rank(), act);
    CHECK(c.invariant_failure().empty());
    CHECK(EquivariantMap(c, r, u).is_isomorphism());
  }
}
