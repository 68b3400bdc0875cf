#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "specs.hpp"

using namespace glattice;

namespace {

Error::Kind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return Error::Kind::internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("group specs") {
  CHECK(parse_group("C:6")->order() == 6);
  CHECK(parse_group("C:1")->order() == 1);
  CHECK(parse_group("D:4")->order() == 8);
  CHECK(parse_group("SD:3,2,2")->order() == 6);
  CHECK(parse_group("SD:7,3,2")->order() == 21);
  CHECK(parse_group("S:3")->order() == 6);
  CHECK(parse_group("S:4")->order() == 24);
  CHECK(parse_group("X(C:2,C:3)")->order() == 6);
  CHECK(parse_group("X(C:2,X(C:2,C:2))")->order() == 8);

  for (const char* bad : {"", "C:", "Q:3", "C:3x", "X(C:2,C:2", "X(C:2 C:2)", "SD:3,2", "C:-1", "C:1234567"})
    CHECK(kind_of([&] { parse_group(bad); }) == Error::Kind::parse);
  CHECK(message_of([] { parse_group("C:3x"); }).find("position 3") != std::string::npos);
  CHECK_THROWS_AS(parse_group("C:0"), Error);
  CHECK_THROWS_AS(parse_group("SD:4,2,2"), Error);  // 2^2 = 4 != 1 mod 4
}

TEST_CASE("element specs") {
  auto c6 = parse_group("C:6");
  CHECK(parse_element(c6, "s1") == *c6->sigma());
  CHECK(parse_element(c6, "s3") == c6->power(*c6->sigma(), 3));
  CHECK(parse_element(c6, "s6") == c6->identity());
  CHECK(parse_element(c6, "e") == c6->identity());
  auto s3 = parse_group("SD:3,2,2");
  CHECK(parse_element(s3, "s2t") == s3->mul(s3->power(*s3->sigma(), 2), *s3->tau()));
  CHECK(parse_element(s3, "t") == *s3->tau());
  CHECK(parse_elements(s3, "s1,t").size() == 2);
  CHECK_THROWS_AS(parse_element(c6, "t"), Error);
  CHECK_THROWS_AS(parse_element(c6, "x1"), Error);
  CHECK(kind_of([&] { parse_elements(s3, "s1,,t"); }) == Error::Kind::parse);
  CHECK(message_of([&] { parse_elements(s3, "s1,q"); }).find("position 3") != std::string::npos);
}

TEST_CASE("subgroup specs") {
  auto s3 = parse_group("SD:3,2,2");
  CHECK(parse_subgroup(s3, "whole").order() == 6);
  CHECK(parse_subgroup(s3, "trivial").order() == 1);
  CHECK(parse_subgroup(s3, "sylow2").order() == 2);
  CHECK(parse_subgroup(s3, "sylow3").order() == 3);
  CHECK_THROWS_AS(parse_subgroup(s3, "sylow5"), Error);
  CHECK(parse_subgroup(s3, "s1").order() == 3);
  CHECK(parse_subgroup(s3, "s1,t").order() == 6);
  CHECK(kind_of([&] { parse_subgroup(s3, "sylow4"); }) == Error::Kind::parse);
  CHECK(kind_of([&] { parse_subgroup(s3, "sylow"); }) == Error::Kind::parse);
}

TEST_CASE("lattice specs") {
  auto s3 = parse_group("SD:3,2,2");
  CHECK(parse_lattice(s3, "trivial").rank() == 1);
  CHECK(parse_lattice(s3, "regular").rank() == 6);
  CHECK(parse_lattice(s3, "aug").rank() == 5);
  CHECK(parse_lattice(s3, "aug-dual").rank() == 5);
  CHECK(parse_lattice(s3, "free:2").rank() == 12);
  CHECK(parse_lattice(s3, "cosets:t").rank() == 3);
  auto sgn = parse_lattice(s3, "sign:s1");
  CHECK(sgn.rank() == 1);
  CHECK(sgn.action(*s3->tau())(0, 0) == -1);
  CHECK(sgn.action(*s3->sigma())(0, 0) == 1);
  // |E| - |V| + 1 counted by hand.
  CHECK(parse_lattice(s3, "flows:cayley").rank() == 12 - 6 + 1);
  CHECK(parse_lattice(s3, "flows:cayley:s1,s2t").rank() == 12 - 6 + 1);
  CHECK_THROWS_AS(parse_lattice(s3, "flows:cayley:s1"), Error);  // two 3-cycles, disconnected
  auto c3 = parse_group("C:3");
  CHECK(parse_lattice(c3, "flows:complete").rank() == 6 - 3 + 1);
  CHECK(parse_lattice(c3, "flows:complete:loops").rank() == 9 - 3 + 1);
  CHECK(parse_lattice(s3, "flows:cosets:t").rank() == 6 - 3 + 1);
  for (const char* bad : {"bogus", "free:", "free:x", "sign:q", "flows:cayley:"})
    CHECK(kind_of([&] { parse_lattice(s3, bad); }) == Error::Kind::parse);
}

TEST_CASE("graph specs") {
  auto x = parse_graph("cayley(SD:3,2,2;s1,t)");
  CHECK(x.num_vertices() == 6);
  CHECK(x.num_edges() == 12);
  auto k3 = parse_graph("complete(S:3/natural;loops=0)");
  CHECK(k3.num_vertices() == 3);
  CHECK(k3.num_edges() == 6);
  auto kl = parse_graph("complete(C:3;loops=1)");
  CHECK(kl.num_vertices() == 3);
  CHECK(kl.num_edges() == 9);
  auto co = parse_graph("cosets(SD:3,2,2;t)");
  CHECK(co.num_vertices() == 3);
  CHECK(co.num_edges() == 6);
  auto kc = parse_graph("complete(X(C:2,C:2)/e|e;loops=0)");
  CHECK(kc.num_vertices() == 4);
  CHECK(kc.num_edges() == 12);
  for (const char* bad : {"cayley(C:3,s1)", "cayley(C:3;s1", "complete(C:3;loops=2)", "complete(C:3)", "star(C:3)",
                          "cayley(Q:3;s1)"})
    CHECK(kind_of([&] { parse_graph(bad); }) == Error::Kind::parse);
}

TEST_CASE("default connection set generates") {
  for (const char* spec : {"C:1", "C:5", "D:4", "SD:5,4,2", "S:4", "X(C:2,C:2)"}) {
    auto g = parse_group(spec);
    const auto s = default_connection_set(g);
    CHECK(closure(*g, s) == whole_group(g).mask());
  }
}
