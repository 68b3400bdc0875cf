#pragma once

// Text specifications of groups, elements, subgroups, lattices and graphs.
//
//   group    := C:<n> | D:<n> | SD:<n>,<m>,<r> | S:<n> | X(<group>,<group>)
//   elements := <name>[,<name>...]   names as printed by the group, or s<k>
//               for sigma^k, t<k> for tau^k, s<k>t<j> for sigma^k tau^j
//   subgroup := whole | trivial | sylow<p> | <elements>
//   lattice  := trivial | regular | aug | aug-dual | free:<k> | sign:<elements>
//               | cosets:<elements> | flows:cayley[:<elements>]
//               | flows:complete[:loops] | flows:cosets:<elements>
//   graph    := cayley(<group>;<elements>)
//               | complete(<group>[/<elements>|/natural];loops=0|1)
//               | cosets(<group>;<elements>)
//
// Malformed input throws Error of kind parse naming the token and position.

#include <string>
#include <vector>

#include "gflows.hpp"

namespace glattice {

GroupPtr parse_group(const std::string& spec);
int parse_element(const GroupPtr& g, const std::string& token);
std::vector<int> parse_elements(const GroupPtr& g, const std::string& list);
Subgroup parse_subgroup(const GroupPtr& g, const std::string& spec);
GLattice parse_lattice(const GroupPtr& g, const std::string& spec);
GGraph parse_graph(const std::string& spec);

// sigma and tau when the group has them, otherwise its generators.
std::vector<int> default_connection_set(const GroupPtr& g);

}  // namespace glattice
