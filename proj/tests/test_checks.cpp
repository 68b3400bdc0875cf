#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "checks.hpp"
#include "specs.hpp"

using namespace glattice;
using nlohmann::json;

namespace {

std::string detail(const CheckReport& r, const std::string& name) {
  for (const auto& a : r.assertions)
    if (a.name == name) return a.detail;
  return "<missing " + name + ">";
}

void require_pass(const CheckReport& r) {
  INFO(r.to_json());
  REQUIRE(r.status == CheckStatus::pass);
  for (const auto& a : r.assertions) CHECK(a.passed);
}

}  // namespace

TEST_CASE("cyclic flows") {
  require_pass(check_cyclic_flows(2, {1}));
  require_pass(check_cyclic_flows(6, {1, 2}));
  require_pass(check_cyclic_flows(5, {1, 2, 3, 4}));
  // sigma missing from S.
  CHECK_THROWS_AS(check_cyclic_flows(6, {2, 3}), Error);
  CHECK_THROWS_AS(check_cyclic_flows(0, {1}), Error);
}

TEST_CASE("kernel generators and transfer on the smallest triples") {
  for (auto [n, m, r] : {std::tuple{3, 2, 2}, std::tuple{5, 2, 4}}) {
    auto k = check_kernel_generators(n, m, r);
    require_pass(k);
    CHECK(k.group == "SD:" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r));
    require_pass(check_faithful_transfer(n, m, r));
  }
  // r^m != 1 mod n.
  CHECK_THROWS_AS(check_kernel_generators(5, 2, 2), Error);
}

TEST_CASE("flow lattices of Cayley graphs are coflasque") {
  for (const char* spec : {"C:4", "SD:3,2,2", "D:4", "X(C:2,C:2)"}) {
    auto g = parse_group(spec);
    require_pass(check_flow_coflasque(g, default_connection_set(g)));
  }
  auto c4 = cyclic(4);
  require_pass(check_flow_coflasque(c4, {1, 2, 3}));
}

TEST_CASE("bar cocycle") {
  // |G|^3 triples.
  auto c2 = check_bar_cocycle(cyclic(2));
  require_pass(c2);
  auto s3 = check_bar_cocycle(semidirect(3, 2, 2));
  require_pass(s3);
  bool saw8 = false, saw216 = false;
  for (const auto& a : c2.assertions) saw8 = saw8 || a.detail.rfind("8 triples", 0) == 0;
  for (const auto& a : s3.assertions) saw216 = saw216 || a.detail.rfind("216 triples", 0) == 0;
  CHECK(saw8);
  CHECK(saw216);
}

TEST_CASE("center walks") {
  // Flow rank of the complete graph with loops: |G|^2 - |G| + 1.
  auto c2 = check_center_walks(cyclic(2), 3);
  require_pass(c2);
  CHECK(detail(c2, "saturated span equals the flow lattice") == "span rank 3, flow rank 3");
  auto c3 = check_center_walks(cyclic(3), 4);
  require_pass(c3);
  CHECK(detail(c3, "saturated span equals the flow lattice") == "span rank 7, flow rank 7");
  CHECK_THROWS_AS(check_center_walks(cyclic(3), 1), Error);
}

TEST_CASE("symmetric group restrictions") {
  require_pass(check_sn_restrictions(3));
  CHECK_THROWS_AS(check_sn_restrictions(6), Error);
}

TEST_CASE("schanuel") {
  auto c2 = cyclic(2);
  require_pass(check_schanuel(c2, "trivial"));
  require_pass(check_schanuel(c2, "sign:e"));
  require_pass(check_schanuel(cyclic(3), "aug"));
  CHECK_THROWS_AS(check_schanuel(c2, "nonsense"), Error);
}

TEST_CASE("run_check parameter handling") {
  auto r = run_check("cyclic-flows", {{"n", "6"}, {"gens", "s1,s2"}});
  require_pass(r);
  CHECK(r.group == "C:6");
  CHECK(r.parameters.at("gens") == "s1,s2");
  CHECK_THROWS_AS(run_check("no-such-check", {}), Error);
  CHECK_THROWS_AS(run_check("cyclic-flows", {{"n", "6"}}), Error);
  CHECK_THROWS_AS(run_check("cyclic-flows", {{"n", "6"}, {"gens", "s1"}, {"extra", "1"}}), Error);
  CHECK_THROWS_AS(run_check("cyclic-flows", {{"n", "six"}, {"gens", "s1"}}), Error);
  CHECK_THROWS_AS(run_check("bar-cocycle", {{"group", "C:"}}), Error);
  for (const auto& id : check_ids()) CHECK_THROWS_AS(run_check(id, {{"bogus", "1"}}), Error);
}

TEST_CASE("report json") {
  auto r = check_cyclic_flows(4, {1, 2});
  auto j = json::parse(r.to_json());
  CHECK(j["check_id"] == "cyclic-flows");
  CHECK(j["group"] == "C:4");
  CHECK(j["status"] == "pass");
  CHECK(j["parameters"]["gens"] == "s1,s2");
  CHECK(j.contains("elapsed_ms"));
  CHECK(j["assertions"].is_array());
  for (const auto& a : j["assertions"]) {
    CHECK(a.contains("name"));
    CHECK(a.contains("detail"));
    CHECK(a["status"] == "pass");
  }
  const std::string text = r.to_json();
  const auto p1 = text.find("\"check_id\""), p2 = text.find("\"group\""), p3 = text.find("\"parameters\""),
             p4 = text.find("\"status\""), p5 = text.find("\"assertions\""), p6 = text.find("\"elapsed_ms\"");
  CHECK(p1 < p2);
  CHECK(p2 < p3);
  CHECK(p3 < p4);
  CHECK(p4 < p5);
  CHECK(p5 < p6);
  CHECK(json::parse(r.to_json(false)).contains("elapsed_ms") == false);
}

TEST_CASE("quick suite") {
  auto reps = run_suite("quick");
  REQUIRE(reps.size() >= 20);
  for (const auto& r : reps) {
    INFO(r.to_json());
    CHECK(r.passed());
  }
  for (std::size_t i = 1; i < reps.size(); ++i) {
    const auto& a = reps[i - 1];
    const auto& b = reps[i];
    CHECK(std::tie(a.check_id, a.group, a.parameters) <= std::tie(b.check_id, b.group, b.parameters));
  }
  auto j = json::parse(suite_json(reps, false));
  CHECK(j["status"] == "pass");
  CHECK(j["passed"] == reps.size());
  CHECK(j["failed"] == 0);
  CHECK(suite_json(reps, false) == suite_json(run_suite("quick"), false));
  CHECK_THROWS_AS(run_suite("medium"), Error);
  CHECK_FALSE(quick_suite_lattices().empty());
}
