#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cohom.hpp"
#include "gflows.hpp"

using namespace glattice;

namespace {

Subgroup gen(const GroupPtr& g, const std::vector<std::string>& names) {
  std::vector<int> idx;
  for (const auto& n : names) idx.push_back(*g->find(n));
  return generated_subgroup(g, idx);
}

TateGroup z_mod(long n) {
  if (n == 1) return {};
  return TateGroup{{Integer(n)}};
}

// The lattice in the basis given by the columns of u: actions u^-1 rho u.
GLattice change_basis(const GLattice& m, const IntMatrix& u) {
  const IntMatrix ui = *inverse_unimodular(u);
  std::vector<IntMatrix> act;
  for (const auto& a : m.actions()) act.push_back(ui * a * u);
  return GLattice(m.group(), m.rank(), act);
}

IntMatrix sparse_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i < j) u(i, j) = (rng() % 2) ? 1 : -1;
  }
  return u;
}

std::vector<GroupPtr> small_groups() {
  return {cyclic(2), cyclic(3), cyclic(4), cyclic(6), semidirect(3, 2, 2), direct_product(cyclic(2), cyclic(2)),
          dihedral(4)};
}

}  // namespace

TEST_CASE("tate groups of standard lattices") {
  // Values from the standard dimension-shifting identities:
  // H^0(H, Z) = Z/|H|, H^{+-1}(H, Z) = 0, H^{-1}(H, I_G) = H^{ab} for H = G,
  // H^1(H, I_G) = Z/|G| for H = G, induced lattices are acyclic.
  for (int n : {2, 3, 4, 5, 6}) {
    auto g = cyclic(n);
    auto whole = whole_group(g);
    CHECK(tate(trivial(g), whole, 0) == z_mod(n));
    CHECK(tate(trivial(g), whole, -1).trivial());
    CHECK(tate(trivial(g), whole, 1).trivial());
    for (int d : {-1, 0, 1}) CHECK(tate(regular(g), whole, d).trivial());
    auto i = augmentation_lattice(regular_gset(g));
    CHECK(tate(i, whole, -1) == z_mod(n));
    CHECK(tate(i, whole, 0).trivial());
    CHECK(tate(i, whole, 1) == z_mod(n));
  }
  auto s3 = semidirect(3, 2, 2);
  auto i = augmentation_lattice(regular_gset(s3));
  CHECK(tate(i, whole_group(s3), -1) == z_mod(2));
  CHECK(tate(i, whole_group(s3), 1) == z_mod(6));
  auto v4 = direct_product(cyclic(2), cyclic(2));
  auto iv = augmentation_lattice(regular_gset(v4));
  CHECK(tate(iv, whole_group(v4), -1) == TateGroup{{Integer(2), Integer(2)}});
  CHECK(tate(trivial(v4), whole_group(v4), 0) == z_mod(4));

  // Sign lattice of C2: ker N = Z, (t - 1) Z = 2Z; dual is itself.
  auto c2 = cyclic(2);
  auto sgn = sign_lattice(trivial_subgroup(c2));
  CHECK(tate(sgn, whole_group(c2), -1) == z_mod(2));
  CHECK(tate(sgn, whole_group(c2), 0).trivial());
  CHECK(tate(sgn, whole_group(c2), 1) == z_mod(2));
  CHECK_THROWS_AS(tate(sgn, whole_group(c2), 2), Error);
}

TEST_CASE("direct degree-one formula agrees on cyclic subgroups") {
  std::mt19937 rng(7);
  for (const auto& g : small_groups()) {
    std::vector<GLattice> ms{trivial(g), regular(g), augmentation_lattice(regular_gset(g)),
                             dual(augmentation_lattice(regular_gset(g)))};
    for (const auto& h : all_subgroups(g))
      if (h.order() > 1) ms.push_back(augmentation_lattice(coset_gset(h)));
    for (const auto& m : ms) {
      const GLattice mc = change_basis(m, sparse_unimodular(rng, m.rank()));
      for (const auto& h : all_subgroups(g)) {
        if (!h.is_cyclic()) continue;
        CHECK(tate1_cyclic_direct(m, h) == tate(m, h, 1));
        CHECK(tate(mc, h, 1) == tate(m, h, 1));
        CHECK(tate(mc, h, -1) == tate(m, h, -1));
        CHECK(tate(mc, h, 0) == tate(m, h, 0));
      }
    }
  }
  auto v4 = direct_product(cyclic(2), cyclic(2));
  CHECK_THROWS_AS(tate1_cyclic_direct(trivial(v4), whole_group(v4)), Error);
}

TEST_CASE("flasque and coflasque") {
  for (const auto& g : small_groups()) {
    CHECK(is_flasque(trivial(g)));
    CHECK(is_coflasque(trivial(g)));
    CHECK(is_flasque(regular(g)));
    for (const auto& h : all_subgroups(g)) {
      CHECK(is_flasque(coset_lattice(h)));
      CHECK(is_coflasque(coset_lattice(h)));
    }
    auto i = augmentation_lattice(regular_gset(g));
    auto v = flasque_verdict(i);
    CHECK_FALSE(v.holds);
    REQUIRE(v.failing);
    CHECK(v.failing->order() > 1);
    CHECK_FALSE(tate(i, *v.failing, -1).trivial());
    CHECK_FALSE(is_coflasque(i));
  }
}

TEST_CASE("resolutions") {
  std::vector<GLattice> ms;
  for (const auto& g : small_groups()) {
    ms.push_back(augmentation_lattice(regular_gset(g)));
    ms.push_back(dual(augmentation_lattice(regular_gset(g))));
    ms.push_back(trivial(g));
  }
  auto s3 = semidirect(3, 2, 2);
  ms.push_back(flow_lattice(cayley_graph(s3, {*s3->find("s1"), *s3->find("t")})).lattice);
  ms.push_back(sign_lattice(gen(s3, {"s1"})));
  for (const auto& m : ms) {
    auto co = coflasque_resolution(m);
    CHECK(certificate_failure(co).empty());
    CHECK(co.sequence.right.target() == m);
    CHECK(co.sequence.left.source().rank() + m.rank() == co.sequence.left.target().rank());
    auto rev = coflasque_resolution(m, ResolutionOrder{true, true});
    CHECK(certificate_failure(rev).empty());
    auto fl = flasque_resolution(m);
    CHECK(certificate_failure(fl).empty());
    CHECK(fl.sequence.left.source() == m);
  }
  // A tampered certificate is rejected.
  auto co = coflasque_resolution(augmentation_lattice(regular_gset(s3)));
  co.kind = ResolutionKind::flasque;
  CHECK_FALSE(certificate_failure(co).empty());
}

TEST_CASE("sections") {
  auto s3 = semidirect(3, 2, 2);
  std::mt19937 rng(11);
  for (const auto& g : small_groups()) {
    // Augmentation ZG -> Z: fixed vectors of ZG are multiples of the norm,
    // which augment to multiples of |G|, so no section exists.
    auto x = regular_gset(g);
    auto zg = permutation_lattice(x);
    IntMatrix eps(1, g->order());
    for (int k = 0; k < g->order(); ++k) eps(0, k) = 1;
    EquivariantMap aug(zg, trivial(g), eps);
    ShortExactSequence seq{kernel_inclusion(aug), aug};
    CHECK_FALSE(find_section(seq).has_value());
    // The dual sequence 0 -> Z -> ZG -> J -> 0 would make Z a summand of ZG,
    // contradicting H^0(G, Z) != 0 = H^0(G, ZG).
    auto inc = kernel_inclusion(aug);
    EquivariantMap jmap(trivial(g), dual(zg), eps.transpose());
    EquivariantMap proj(dual(zg), dual(inc.source()), inc.matrix().transpose());
    ShortExactSequence dseq{jmap, proj};
    REQUIRE(check_exact(dseq).exact);
    CHECK_FALSE(find_section(dseq).has_value());
  }
  // Split sequences with a non-permutation quotient, after a change of basis of the middle.
  for (const auto& c : {sign_lattice(gen(s3, {"s1"})), augmentation_lattice(regular_gset(s3))}) {
    auto a = augmentation_lattice(coset_gset(gen(s3, {"t"})));
    auto sp = split_sequence(a, c);
    const auto& b = sp.left.target();
    IntMatrix u = sparse_unimodular(rng, b.rank());
    IntMatrix ui = *inverse_unimodular(u);
    GLattice bc = change_basis(b, u);
    ShortExactSequence seq{EquivariantMap(a, bc, ui * sp.left.matrix()), EquivariantMap(bc, c, sp.right.matrix() * u)};
    REQUIRE(check_exact(seq).exact);
    auto s = find_section(seq);
    REQUIRE(s.has_value());
    CHECK((seq.right.matrix() * s->matrix()).is_identity());
    CHECK(s->is_equivariant());
  }
  CHECK_THROWS_AS(find_section(ShortExactSequence{identity_map(trivial(s3)), identity_map(trivial(s3))}), Error);
}

TEST_CASE("bounded permutation search") {
  std::mt19937 rng(3);
  for (const auto& g : {cyclic(3), semidirect(3, 2, 2), direct_product(cyclic(2), cyclic(2))}) {
    auto r = regular(g);
    IntMatrix u = sparse_unimodular(rng, r.rank());
    REQUIRE(inverse_unimodular(u)->max_abs() <= 3);
    GLattice rc = change_basis(GLattice(g, r.rank(), r.actions()), u);
    auto res = is_permutation_bounded(rc, 3);
    REQUIRE(res.found());
    CHECK(is_stable_basis(rc, *res.basis));
    CHECK_FALSE(is_stable_basis(rc, IntMatrix::identity(rc.rank() + 1)));
  }
  auto s3 = semidirect(3, 2, 2);
  auto mixed = direct_sum(coset_lattice(gen(s3, {"t"})), trivial(s3));
  auto mixed_plain = GLattice(s3, mixed.rank(), mixed.actions());
  auto res = is_permutation_bounded(change_basis(mixed_plain, sparse_unimodular(rng, 4)), 2);
  CHECK(res.found());

  auto sgn = is_permutation_bounded(sign_lattice(gen(s3, {"s1"})), 3);
  CHECK_FALSE(sgn.found());
  CHECK(sgn.reason.rfind("not permutation", 0) == 0);
  CHECK_THROWS_AS(is_permutation_bounded(trivial(s3), 0), Error);
}

TEST_CASE("invertibility certificates") {
  auto s3 = semidirect(3, 2, 2);
  auto perm = invertibility_certificate(coset_lattice(gen(s3, {"t"})));
  REQUIRE(perm.has_value());
  CHECK(perm->subgroups.size() == 1);
  CHECK(perm->subgroups[0].is_whole());
  CHECK(certificate_failure(*perm).empty());

  auto fl = flow_lattice(cayley_graph(s3, {*s3->find("s1"), *s3->find("t")})).lattice;
  auto cert = invertibility_certificate(fl);
  REQUIRE(cert.has_value());
  CHECK(cert->subgroups.size() == 2);
  CHECK(certificate_failure(*cert).empty());

  auto c6 = cyclic(6);
  auto f6 = flow_lattice(cayley_graph(c6, {1, 2})).lattice;
  auto c6cert = invertibility_certificate(f6);
  REQUIRE(c6cert.has_value());
  CHECK(certificate_failure(*c6cert).empty());

  CHECK_FALSE(invertibility_certificate(augmentation_lattice(regular_gset(s3))).has_value());

  cert->coefficients[0] += 1;
  CHECK_FALSE(certificate_failure(*cert).empty());
}
