#pragma once

// Executable verification of the lattice-theoretic statements about flow
// lattices, each producing a machine-readable report.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cohom.hpp"
#include "gflows.hpp"

namespace glattice {

enum class CheckStatus { pass, fail, skipped };

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::string check_id;
  std::string group;
  std::map<std::string, std::string> parameters;
  CheckStatus status = CheckStatus::pass;
  std::string skip_reason;
  std::vector<Assertion> assertions;
  double elapsed_ms = 0;

  bool passed() const { return status == CheckStatus::pass; }
  // Canonical serialization; elapsed_ms is omitted unless requested.
  std::string to_json(bool with_elapsed = true, int indent = 2) const;
};

std::string status_name(CheckStatus s);

// Fl(Cay(C_n, S)) = Z + ZC_n^{|S|-1}; S must contain sigma.
CheckReport check_cyclic_flows(int n, const std::vector<int>& s);
// Generators of ker(D -> Fl(Cay(G, {sigma, tau}))) for G = SD:n,m,r.
CheckReport check_kernel_generators(int n, int m, int r);
// Fl(Cay(G, S)) is coflasque and resolves I_G.
CheckReport check_flow_coflasque(const GroupPtr& g, const std::vector<int>& s);
// The d(g,h) basis of Fl(Cay(G, G - e)) and its cocycle identity.
CheckReport check_bar_cocycle(const GroupPtr& g);
// Closed walks from e on the complete graph with loops span its flows.
CheckReport check_center_walks(const GroupPtr& g, int max_len);
// Restrictions of Fl(K_n) to the n-cycle and to the stabilizer of a point.
CheckReport check_sn_restrictions(int n);
// The pullback diagram identifying the flasque class of Fl(Cay(G,{sigma,tau})).
CheckReport check_faithful_transfer(int n, int m, int r);
// Two coflasque resolutions of M give C1 + P2 = C2 + P1 explicitly.
CheckReport check_schanuel(const GroupPtr& g, const std::string& lattice_spec);

// Check ids accepted by run_check.
std::vector<std::string> check_ids();
// Runs one check from string parameters (group, gens, n, m, r, max_len, lattice).
// Throws Error on unknown ids, missing parameters or bad specs.
CheckReport run_check(const std::string& id, const std::map<std::string, std::string>& params);

struct SuiteOptions {
  bool with_s5 = false;
};

// Names: quick, full. Reports sorted by (check_id, group, parameters).
std::vector<CheckReport> run_suite(const std::string& name, SuiteOptions opts = {});
std::string suite_json(const std::vector<CheckReport>& reports, bool with_elapsed = true);

// Lattices built by the quick suite, labelled, for cross-checks.
std::vector<std::pair<std::string, GLattice>> quick_suite_lattices();

}  // namespace glattice
