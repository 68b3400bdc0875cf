#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gflows.hpp"

using namespace glattice;

namespace {

int el(const GroupPtr& g, const std::string& name) { return *g->find(name); }

std::vector<int> els(const GroupPtr& g, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(el(g, n));
  return out;
}

std::vector<int> nonidentity(const GroupPtr& g) {
  std::vector<int> out;
  for (int x = 0; x < g->order(); ++x)
    if (x != g->identity()) out.push_back(x);
  return out;
}

// Orbits of edges by direct enumeration.
int count_edge_orbits(const GGraph& x) {
  std::set<std::set<int>> orbits;
  for (int e = 0; e < x.num_edges(); ++e) {
    std::set<int> o;
    for (int g = 0; g < x.group()->order(); ++g) o.insert(x.edge_image(g, e));
    orbits.insert(o);
  }
  return static_cast<int>(orbits.size());
}

void check_flow_invariants(const FlowLattice& fl) {
  const GGraph& x = fl.graph;
  const IntMatrix d = boundary_matrix(x).matrix();
  // Flow condition at every vertex, written out directly.
  for (std::size_t j = 0; j < fl.basis.cols(); ++j)
    for (int v = 0; v < x.num_vertices(); ++v) {
      Integer in = 0, out = 0;
      for (int e = 0; e < x.num_edges(); ++e) {
        if (x.edge(e).target == v) in += fl.basis(e, j);
        if (x.edge(e).source == v) out += fl.basis(e, j);
      }
      CHECK(in == out);
    }
  CHECK(static_cast<int>(fl.basis.cols()) == x.num_edges() - x.num_vertices() + 1);
  CHECK(is_saturated(fl.basis));
  CHECK(same_column_lattice(fl.basis, kernel_basis(d)));
  auto edges = permutation_lattice(x.edge_set());
  for (int g = 0; g < x.group()->order(); ++g) CHECK(edges.action(g) * fl.basis == fl.basis * fl.lattice.action(g));
  CHECK(fl.lattice.invariant_failure().empty());
}

}  // namespace

TEST_CASE("complete graphs") {
  auto c1 = cyclic(1);
  CHECK(complete_edges(trivial_gset(c1), true).num_edges() == 1);
  CHECK(complete_edges(trivial_gset(c1, 3), false).num_edges() == 6);
  auto s3 = semidirect(3, 2, 2);
  auto x = complete_edges(regular_gset(s3), false);
  CHECK(x.num_edges() == 30);
  CHECK(count_edge_orbits(x) == 5);
  for (int e = 0; e < x.num_edges(); ++e)
    for (int g = 0; g < 6; ++g) {
      const auto& ed = x.edge(e);
      const auto& im = x.edge(x.edge_image(g, e));
      CHECK(im.source == x.vertices()(g, ed.source));
      CHECK(im.target == x.vertices()(g, ed.target));
    }
}

TEST_CASE("cayley graphs and boundaries") {
  for (int n = 2; n <= 7; ++n) {
    auto g = cyclic(n);
    auto x = cayley_graph(g, {el(g, "s1")});
    CHECK(x.num_edges() == n);
    CHECK(x.is_connected());
    auto fl = flow_lattice(x);
    CHECK(fl.basis.cols() == 1);
    CHECK(fl.basis.column(0) == IntVector(n, 1));
    for (const auto& a : fl.lattice.actions()) CHECK(a == IntMatrix{{1}});
  }
  auto s3 = semidirect(3, 2, 2);
  auto x = cayley_graph(s3, els(s3, {"s1", "t"}));
  CHECK(x.num_vertices() == 6);
  CHECK(x.num_edges() == 12);
  CHECK(x.is_connected());
  CHECK(flow_lattice(x).basis.cols() == 7);

  auto c4 = cyclic(4);
  auto dis = cayley_graph(c4, {el(c4, "s2")});
  CHECK_FALSE(dis.is_connected());
  CHECK(dis.components().size() == 2);
  CHECK_THROWS_AS(flow_lattice(dis), Error);

  auto loop = complete_edges(trivial_gset(cyclic(1)), true);
  CHECK(boundary_matrix(loop).matrix().is_zero());
  auto cyc = cayley_graph(cyclic(3), {1});
  auto d = boundary_matrix(cyc);
  CHECK(d.is_equivariant());
  for (std::size_t j = 0; j < 3; ++j) {
    int plus = 0, minus = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      plus += d.matrix()(i, j) == 1;
      minus += d.matrix()(i, j) == -1;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);
  }
  CHECK(same_column_lattice(boundary_matrix(x).matrix(), augmentation_basis(6)));
  auto two = flow_lattice(complete_edges(trivial_gset(cyclic(1), 2), false));
  CHECK(two.basis.cols() == 1);
  CHECK(two.basis.column(0) == IntVector{1, 1});
}

TEST_CASE("flow lattice invariants across graphs") {
  auto s3 = semidirect(3, 2, 2);
  std::vector<GGraph> graphs{
      cayley_graph(s3, els(s3, {"s1", "t"})),
      cayley_graph(s3, nonidentity(s3)),
      complete_edges(regular_gset(s3), true),
      cayley_graph(dihedral(4), {1, 4}),
      cayley_graph(semidirect(5, 4, 2), {1, 5}),
      complete_edges(natural_gset(symmetric(4)), false),
      complete_edges(coset_gset(generated_subgroup(s3, {el(s3, "t")})), true),
  };
  for (const auto& x : graphs) check_flow_invariants(flow_lattice(x));
}

TEST_CASE("spanning tree basis") {
  auto c5 = cyclic(5);
  auto x = cayley_graph(c5, {1});
  IntMatrix cyc(5, 1);
  for (std::size_t i = 0; i < 5; ++i) cyc(i, 0) = 1;
  auto ok = spanning_tree_basis(x, {0, 1, 2, 3}, cyc);
  REQUIRE(ok.lattice);
  CHECK(ok.lattice->basis == cyc);
  auto bad = spanning_tree_basis(x, {0, 1, 2, 3}, cyc + cyc);
  CHECK_FALSE(bad.lattice);
  CHECK(bad.diagnostic.find("2") != std::string::npos);
  CHECK_THROWS_AS(spanning_tree_basis(x, {0, 1, 2}, cyc), Error);
  IntMatrix notflow(5, 1);
  notflow(0, 0) = 1;
  CHECK_THROWS_AS(spanning_tree_basis(x, {0, 1, 2, 3}, notflow), Error);
}

TEST_CASE("loop split") {
  auto c1 = cyclic(1);
  for (const auto& v : {trivial_gset(c1, 1), trivial_gset(c1, 3), regular_gset(semidirect(3, 2, 2))}) {
    auto pair = loop_split(v);
    const int n = v.size();
    CHECK(static_cast<int>(pair.forward.source().rank()) == n * n - n + 1);
    CHECK(static_cast<int>(pair.forward.target().rank()) == (n * n - n - n + 1) + n);
    CHECK(pair.forward.is_isomorphism());
    CHECK(pair.backward.is_isomorphism());
    CHECK((pair.backward.matrix() * pair.forward.matrix()).is_identity());
  }
  CHECK(loop_split(regular_gset(semidirect(3, 2, 2))).forward.source().rank() == 31);
}

TEST_CASE("remove edges") {
  auto c6 = cyclic(6);
  auto fx = flow_lattice(cayley_graph(c6, {1, 2}));
  auto same = remove_edges_decomposition(fx, fx);
  CHECK(same.matrix().is_identity());
  auto fs = flow_lattice(cayley_graph(c6, {1}));
  auto f = remove_edges_decomposition(fx, fs);
  CHECK(f.is_isomorphism());
  CHECK(f.source().rank() == 1 + 6);

  auto s3 = semidirect(3, 2, 2);
  auto big = cayley_graph(s3, nonidentity(s3));
  auto small = cayley_graph(s3, els(s3, {"s1", "t"}));
  CHECK(removed_orbit_count(big, small) == 3);
  auto fb = flow_lattice(big), fsm = flow_lattice(small);
  auto g = remove_edges_decomposition(fb, fsm);
  CHECK(g.is_isomorphism());
  // Restriction to the subgraph flows is the natural embedding.
  IntMatrix embedded(big.num_edges(), fsm.basis.cols());
  for (int e = 0; e < small.num_edges(); ++e) {
    int idx = *big.find_edge(small.edge(e).source, small.edge(e).target);
    for (std::size_t j = 0; j < fsm.basis.cols(); ++j) embedded(idx, j) = fsm.basis(e, j);
  }
  CHECK(fb.basis * g.matrix().block(0, 0, g.matrix().rows(), fsm.basis.cols()) == embedded);
  CHECK_THROWS_AS(remove_edges_decomposition(flow_lattice(complete_edges(trivial_gset(s3, 3), false)),
                                             flow_lattice(complete_edges(trivial_gset(s3, 3), false))),
                  Error);
}

TEST_CASE("restrict to subgroup") {
  auto s3 = semidirect(3, 2, 2);
  auto s = els(s3, {"s1", "t"});
  auto whole = restrict_to_subgroup_decomposition(s3, whole_group(s3), s, s);
  CHECK(whole.is_isomorphism());
  CHECK(whole.matrix().is_identity());
  for (const auto& name : {std::string("s1"), std::string("t")}) {
    auto h = generated_subgroup(s3, {el(s3, name)});
    auto f = restrict_to_subgroup_decomposition(s3, h, s, {el(s3, name)});
    CHECK(f.is_isomorphism());
    CHECK(f.source().rank() == 7);
    // First summand is Z with trivial action (a single cycle), the rest a free H-lattice.
    for (int k = 0; k < h.order(); ++k) {
      const auto& a = f.source().action(k);
      CHECK(a(0, 0) == 1);
      CHECK(a.block(1, 1, 6, 6).is_permutation());
      if (k != h.as_group()->identity())
        for (std::size_t i = 1; i < 7; ++i) CHECK(a(i, i) == 0);
    }
  }
  CHECK_THROWS_AS(restrict_to_subgroup_decomposition(s3, whole_group(s3), {el(s3, "s1")}, {el(s3, "s1")}), Error);
}

TEST_CASE("remove an orbit along an equivariant map") {
  auto c2 = cyclic(2);
  // V = {a, b} (swapped) + {c} (fixed).
  GSet v(c2, {{0, 1, 2}, {1, 0, 2}});
  auto r = remove_orbit_with_map(v, {0, 1}, {2, 2});
  CHECK(r.pendant_edges_flow_free);
  CHECK(r.embedding.source().rank() == 0);
  CHECK(r.embedding.target().rank() == 0);
  auto rl = remove_orbit_with_map(v, {0, 1}, {2, 2}, true);
  CHECK(rl.pendant_edges_flow_free);
  CHECK(rl.embedding.is_isomorphism());
  CHECK(rl.embedding.source().rank() == 1);

  auto s3 = semidirect(3, 2, 2);
  auto h = generated_subgroup(s3, {el(s3, "t")});
  // Two copies of G/<t>, psi the identification of the first with the second.
  auto vv = disjoint_union(coset_gset(h), disjoint_union(coset_gset(h), trivial_gset(s3)));
  auto b = remove_orbit_with_map(vv, {0, 1, 2}, {3, 4, 5});
  CHECK(b.pendant_edges_flow_free);
  CHECK(b.embedding.is_isomorphism());
  auto c = remove_orbit_with_map(vv, {0, 1, 2}, {6, 6, 6});
  CHECK(c.embedding.is_isomorphism());
  CHECK_THROWS_AS(remove_orbit_with_map(vv, {0, 1, 2}, {3, 5, 4}), Error);
}

TEST_CASE("gcd splitting") {
  auto c1 = cyclic(1);
  auto one = gcd_splitting(trivial_gset(c1));
  CHECK(one.coefficients == std::vector<Integer>{1});

  auto s3 = semidirect(3, 2, 2);
  auto v = disjoint_union(coset_gset(generated_subgroup(s3, {el(s3, "s1")})), coset_gset(generated_subgroup(s3, {el(s3, "t")})));
  auto sp = gcd_splitting(v);
  CHECK(sp.coefficients == std::vector<Integer>{-1, 1});
  CHECK(sp.section.is_equivariant());
  CHECK(check_exact(sp.augmentation).exact);
  CHECK((sp.augmentation.right.matrix() * sp.section.matrix()).is_identity());
  auto fl = flow_lattice(complete_edges(v, false));
  auto seq = quasi_permutation_sequence(fl, sp);
  CHECK(check_exact(seq).exact);

  // Orbit sizes 4 and 9 under C_36 acting through quotients.
  auto c36 = cyclic(36);
  std::vector<std::vector<int>> act(36);
  for (int g = 0; g < 36; ++g) {
    for (int x = 0; x < 4; ++x) act[g].push_back((x + g) % 4);
    for (int x = 0; x < 9; ++x) act[g].push_back(4 + (x + g) % 9);
  }
  auto s49 = gcd_splitting(GSet(c36, act));
  // Bezout oracle: the pair found by the extended Euclidean recursion on (4, 9).
  CHECK(s49.coefficients[0] * 4 + s49.coefficients[1] * 9 == 1);
  CHECK(s49.coefficients == std::vector<Integer>{-2, 1});
  CHECK_THROWS_AS(gcd_splitting(coset_gset(generated_subgroup(s3, {el(s3, "t")}))), Error);
}

TEST_CASE("walks") {
  auto c4 = cyclic(4);
  auto cyc = cayley_graph(c4, {1});
  CHECK(is_zero_vector(walk_to_flow(cyc, {})));
  CHECK(walk_to_flow(cyc, {0, 1, 2, 3, 0}) == IntVector(4, 1));
  CHECK_THROWS_AS(walk_to_flow(cyc, {0, 1}), Error);
  CHECK_THROWS_AS(walk_to_flow(cyc, {0, 2, 0}), Error);
  auto s3 = semidirect(3, 2, 2);
  auto x = cayley_graph(s3, nonidentity(s3));
  const int e = s3->identity(), s = el(s3, "s1"), st = s3->mul(s, el(s3, "t"));
  auto f = walk_to_flow(x, {e, s, st, e});
  int units = 0;
  for (const auto& v : f) units += v == 1;
  CHECK(units == 3);
  CHECK(is_zero_vector(boundary_matrix(x).matrix() * f));
}
