// Command-line front end over the C API.

#include <glattice/glattice.h>

#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct ApiError {
  glat_status status;
  std::string message;
};

void check(glat_status s) {
  if (s != GLAT_OK) throw ApiError{s, glat_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  glat_string_free(s);
  return out;
}

using GroupHandle = std::unique_ptr<glat_group, decltype(&glat_group_free)>;
using LatticeHandle = std::unique_ptr<glat_lattice, decltype(&glat_lattice_free)>;

GroupHandle load_group(const std::string& spec) {
  glat_group* g = nullptr;
  check(glat_group_parse(spec.c_str(), &g));
  return GroupHandle(g, glat_group_free);
}

LatticeHandle load_lattice(const glat_group* g, const std::string& spec) {
  glat_lattice* m = nullptr;
  check(glat_lattice_parse(g, spec.c_str(), &m));
  return LatticeHandle(m, glat_lattice_free);
}

std::string join(const json& arr, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += sep;
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return out;
}

std::string verdict_text(const json& v) {
  if (v["holds"].get<bool>()) return "yes";
  return "no (subgroup of order " + v["failing_subgroup"]["order"].dump() + " {" +
         join(v["failing_subgroup"]["elements"], ",") + "}, obstruction " + v["obstruction"].get<std::string>() + ")";
}

void print_matrix(const json& rows, const std::string& indent) {
  for (const auto& r : rows) std::cout << indent << "[" << join(r, " ") << "]\n";
}

void print_report_text(const json& r) {
  std::cout << r["status"].get<std::string>() << "  " << r["check_id"].get<std::string>() << "  "
            << r["group"].get<std::string>();
  for (auto it = r["parameters"].begin(); it != r["parameters"].end(); ++it)
    std::cout << "  " << it.key() << "=" << it.value().get<std::string>();
  if (r.contains("elapsed_ms")) std::cout << "  (" << r["elapsed_ms"].dump() << " ms)";
  std::cout << "\n";
  if (r.contains("reason")) std::cout << "    reason: " << r["reason"].get<std::string>() << "\n";
  for (const auto& a : r["assertions"]) {
    const bool ok = a["status"] == "pass";
    if (ok && r["status"] == "pass") continue;
    std::cout << "    " << (ok ? "ok  " : "FAIL") << " " << a["name"].get<std::string>();
    if (!a["detail"].get<std::string>().empty()) std::cout << ": " << a["detail"].get<std::string>();
    std::cout << "\n";
  }
}

struct Options {
  std::string output;  // empty: the command's default
  std::string group;
  std::string lattice;
  std::string graph;
  std::string subgroup = "whole";
  int degree = 1;
  std::string kind = "coflasque";
  std::string check_id;
  std::optional<int> n, m, r, max_len;
  std::optional<std::string> gens, check_group, check_lattice;
  std::string suite;
  bool with_s5 = false;
  bool no_elapsed = false;
};

void add_output(CLI::App* app, Options& o, const std::string& def) {
  app->add_option("--output", o.output, "Output format: text | json (default " + def + ")")
      ->check(CLI::IsMember({"text", "json"}));
}

bool json_output(const Options& o, const std::string& def = "text") { return (o.output.empty() ? def : o.output) == "json"; }

int run_group_info(const Options& o) {
  auto g = load_group(o.group);
  char* out = nullptr;
  check(glat_group_info_json(g.get(), &out));
  const std::string text = take(out);
  if (json_output(o)) {
    std::cout << text << "\n";
    return kExitOk;
  }
  const json j = json::parse(text);
  std::cout << "group       " << j["label"].get<std::string>() << "\n"
            << "order       " << j["order"] << "\n"
            << "elements    " << join(j["elements"], " ") << "\n"
            << "generators  " << join(j["generators"], " ") << "\n";
  if (j.contains("sigma")) std::cout << "sigma       " << j["sigma"].get<std::string>() << "\n";
  if (j.contains("tau")) std::cout << "tau         " << j["tau"].get<std::string>() << "\n";
  std::cout << "abelian     " << (j["is_abelian"].get<bool>() ? "yes" : "no") << "\n"
            << "Z-group     " << (j["is_z_group"].get<bool>() ? "yes" : "no") << "\n"
            << "subgroups   " << j["subgroup_count"] << " (" << j["conjugacy_classes_of_subgroups"]
            << " conjugacy classes)\n";
  for (const auto& s : j["sylow"])
    std::cout << "sylow" << s["p"] << "      order " << s["order"] << (s["cyclic"].get<bool>() ? ", cyclic" : ", not cyclic")
              << "\n";
  return kExitOk;
}

int run_flows(const Options& o) {
  char* out = nullptr;
  check(glat_flows_json(o.graph.c_str(), &out));
  const std::string text = take(out);
  if (json_output(o)) {
    std::cout << text << "\n";
    return kExitOk;
  }
  const json j = json::parse(text);
  std::cout << "graph       " << j["graph"].get<std::string>() << " over " << j["group"].get<std::string>() << "\n"
            << "vertices    " << j["vertices"] << "\n"
            << "edges       " << j["edges"] << "\n"
            << "components  " << j["components"] << "\n";
  if (j["rank"].is_null()) {
    std::cout << "note        " << j["note"].get<std::string>() << "\n";
    return kExitOk;
  }
  std::cout << "rank        " << j["rank"] << " (|E|-|V|+1 = " << j["rank_formula"] << ")\n"
            << "coflasque   " << verdict_text(j["coflasque"]) << "\n"
            << "basis (one flow per row, edges in order):\n";
  print_matrix(j["basis"], "  ");
  return kExitOk;
}

int run_tate(const Options& o) {
  auto g = load_group(o.group);
  auto m = load_lattice(g.get(), o.lattice);
  char* out = nullptr;
  check(glat_tate_json(m.get(), o.subgroup.c_str(), o.degree, &out));
  const std::string text = take(out);
  if (json_output(o)) {
    std::cout << text << "\n";
    return kExitOk;
  }
  const json j = json::parse(text);
  std::cout << "H^" << o.degree << "(" << o.subgroup << ", " << o.lattice << ") = " << j["group"].get<std::string>()
            << "\n"
            << "invariant factors: [" << join(j["invariant_factors"], ", ") << "]\n";
  return kExitOk;
}

int run_resolve(const Options& o) {
  auto g = load_group(o.group);
  auto m = load_lattice(g.get(), o.lattice);
  char* out = nullptr;
  check(glat_resolve_json(m.get(), o.kind.c_str(), &out));
  const std::string text = take(out);
  const json j = json::parse(text);
  if (json_output(o)) {
    std::cout << text << "\n";
  } else {
    const bool co = o.kind == "coflasque";
    std::cout << o.kind << " resolution of " << o.lattice << " (rank " << j["lattice_rank"] << ")\n"
              << "  0 -> " << (co ? "C" : "M") << " (rank " << j["left_rank"] << ") -> P (rank " << j["middle_rank"]
              << ") -> " << (co ? "M" : "F") << " (rank " << j["right_rank"] << ") -> 0\n"
              << "  P has " << j["permutation_witness"]["orbits"].size() << " orbit(s):";
    for (const auto& orb : j["permutation_witness"]["orbits"])
      std::cout << " Z[G/H], |H| = " << orb["stabilizer"]["order"] << ";";
    std::cout << "\n  verified: " << (j["verified"].get<bool>() ? "yes" : "no") << "\n";
    if (j.contains("failure")) std::cout << "  failure: " << j["failure"].get<std::string>() << "\n";
  }
  return j["verified"].get<bool>() ? kExitOk : kExitFailed;
}

int run_certify(const Options& o) {
  auto g = load_group(o.group);
  auto m = load_lattice(g.get(), o.lattice);
  char* out = nullptr;
  check(glat_certify_json(m.get(), &out));
  const std::string text = take(out);
  if (json_output(o)) {
    std::cout << text << "\n";
    return kExitOk;
  }
  const json j = json::parse(text);
  const auto& p = j["permutation"];
  std::cout << "permutation basis: ";
  if (p["found"].get<bool>()) {
    std::cout << "found (one basis vector per row)\n";
    print_matrix(p["basis"], "  ");
  } else {
    std::cout << "none (" << p["reason"].get<std::string>() << ")\n";
  }
  const auto& iv = j["invertible"];
  std::cout << "invertibility certificate: ";
  if (iv["found"].get<bool>()) {
    std::cout << (iv["verified"].get<bool>() ? "verified" : "FAILED verification") << "\n";
    for (std::size_t i = 0; i < iv["subgroups"].size(); ++i)
      std::cout << "  H" << i << " order " << iv["subgroups"][i]["order"] << ", coefficient " << iv["coefficients"][i].dump()
                << "\n";
  } else {
    std::cout << "none (" << iv["reason"].get<std::string>() << ")\n";
  }
  return kExitOk;
}

int run_check(const Options& o) {
  json params = json::object();
  if (o.n) params["n"] = std::to_string(*o.n);
  if (o.m) params["m"] = std::to_string(*o.m);
  if (o.r) params["r"] = std::to_string(*o.r);
  if (o.max_len) params["max_len"] = std::to_string(*o.max_len);
  if (o.gens) params["gens"] = *o.gens;
  if (o.check_group) params["group"] = *o.check_group;
  if (o.check_lattice) params["lattice"] = *o.check_lattice;
  char* out = nullptr;
  int passed = 0;
  check(glat_check_run(o.check_id.c_str(), params.dump().c_str(), o.no_elapsed ? 0 : 1, &out, &passed));
  const std::string text = take(out);
  if (json_output(o, "json")) std::cout << text << "\n";
  else print_report_text(json::parse(text));
  return passed ? kExitOk : kExitFailed;
}

int run_suite(const Options& o) {
  char* out = nullptr;
  int passed = 0;
  check(glat_suite_run(o.suite.c_str(), o.with_s5 ? 1 : 0, o.no_elapsed ? 0 : 1, &out, &passed));
  const std::string text = take(out);
  if (json_output(o)) {
    std::cout << text << "\n";
  } else {
    const json j = json::parse(text);
    for (const auto& r : j["reports"]) print_report_text(r);
    std::cout << "\nsuite " << o.suite << ": " << j["passed"] << " passed, " << j["failed"] << " failed\n";
  }
  return passed ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral G-lattices, flow lattices of G-graphs and their verification checks"};
  app.set_version_flag("--version", std::string(glat_version()));
  app.require_subcommand(1);
  Options o;

  auto* group = app.add_subcommand("group", "Group commands");
  group->require_subcommand(1);
  auto* info = group->add_subcommand("info", "Elements, generators, subgroups and Sylow data of a group");
  info->add_option("--group", o.group, "Group spec: C:<n> | D:<n> | SD:<n>,<m>,<r> | S:<n> | X(<g>,<h>)")->required();
  add_output(info, o, "text");

  auto* flows = app.add_subcommand("flows", "Flow lattice of a G-graph");
  flows->add_option("--graph", o.graph, "Graph spec: cayley(<g>;<els>) | complete(<g>[/<els>|/natural];loops=0|1) | cosets(<g>;<els>)")
      ->required();
  add_output(flows, o, "text");

  auto* tate = app.add_subcommand("tate", "Tate cohomology of a lattice");
  tate->add_option("--group", o.group, "Group spec")->required();
  tate->add_option("--lattice", o.lattice, "Lattice spec")->required();
  tate->add_option("--subgroup", o.subgroup, "whole | trivial | sylow<p> | <elements>")->capture_default_str();
  tate->add_option("--degree", o.degree, "Degree: -1, 0 or 1")->check(CLI::IsMember({-1, 0, 1}))->capture_default_str();
  add_output(tate, o, "text");

  auto* resolve = app.add_subcommand("resolve", "Coflasque or flasque resolution of a lattice");
  resolve->add_option("--group", o.group, "Group spec")->required();
  resolve->add_option("--lattice", o.lattice, "Lattice spec")->required();
  resolve->add_option("--kind", o.kind, "coflasque | flasque")->check(CLI::IsMember({"coflasque", "flasque"}))->capture_default_str();
  add_output(resolve, o, "text");

  auto* certify = app.add_subcommand("certify", "Permutation basis search and invertibility certificate");
  certify->add_option("--group", o.group, "Group spec")->required();
  certify->add_option("--lattice", o.lattice, "Lattice spec")->required();
  add_output(certify, o, "text");

  auto* chk = app.add_subcommand("check", "Run one verification check");
  chk->add_option("id", o.check_id, "Check id")->required();
  chk->add_option("--n", o.n, "n");
  chk->add_option("--m", o.m, "m");
  chk->add_option("--r", o.r, "r");
  chk->add_option("--gens", o.gens, "Connection set, e.g. s1,s2");
  chk->add_option("--group", o.check_group, "Group spec");
  chk->add_option("--lattice", o.check_lattice, "Lattice spec");
  chk->add_option("--max-len", o.max_len, "Maximal closed-walk length");
  chk->add_flag("--no-elapsed", o.no_elapsed, "Omit elapsed_ms");
  add_output(chk, o, "json");

  auto* suite = app.add_subcommand("suite", "Run a check suite");
  suite->add_option("name", o.suite, "quick | full")->required()->check(CLI::IsMember({"quick", "full"}));
  suite->add_flag("--with-s5", o.with_s5, "Include the S_5 restriction check (full suite)");
  suite->add_flag("--no-elapsed", o.no_elapsed, "Omit elapsed_ms");
  add_output(suite, o, "text");

  auto* list = app.add_subcommand("list-checks", "Print the available check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (info->parsed()) return run_group_info(o);
    if (flows->parsed()) return run_flows(o);
    if (tate->parsed()) return run_tate(o);
    if (resolve->parsed()) return run_resolve(o);
    if (certify->parsed()) return run_certify(o);
    if (chk->parsed()) return run_check(o);
    if (suite->parsed()) return run_suite(o);
    if (list->parsed()) {
      char* out = nullptr;
      check(glat_check_ids_json(&out));
      for (const auto& id : json::parse(take(out))) std::cout << id.get<std::string>() << "\n";
      return kExitOk;
    }
  } catch (const ApiError& e) {
    std::cerr << "error (" << glat_status_name(e.status) << "): " << e.message << "\n";
    return e.status == GLAT_ERR_INTERNAL ? kExitFailed : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
