#pragma once

// Tate cohomology in degrees -1, 0, 1, flasque and coflasque lattices,
// resolutions, splittings and permutation/invertibility certificates.

#include <optional>
#include <string>
#include <vector>

#include "gmod.hpp"

namespace glattice {

struct TateGroup {
  std::vector<Integer> invariant_factors;  // each > 1, divisibility chain; empty means 0
  bool trivial() const { return invariant_factors.empty(); }
  std::string to_string() const;
  friend bool operator==(const TateGroup& a, const TateGroup& b) { return a.invariant_factors == b.invariant_factors; }
};

// degree 0: M^H / N_H M; degree -1: ker N_H / I_H M; degree 1: degree -1 of the dual.
TateGroup tate(const GLattice& m, const Subgroup& h, int degree);
// ker N_H / (h - 1) M for a cyclic H generated by h.
TateGroup tate1_cyclic_direct(const GLattice& m, const Subgroup& h);

struct SubgroupVerdict {
  bool holds = true;
  std::optional<Subgroup> failing;  // first conjugacy representative with nonzero cohomology
  TateGroup obstruction;
};

SubgroupVerdict flasque_verdict(const GLattice& m);
SubgroupVerdict coflasque_verdict(const GLattice& m);
bool is_flasque(const GLattice& m);
bool is_coflasque(const GLattice& m);

enum class ResolutionKind { coflasque, flasque };

struct ResolutionCertificate {
  ShortExactSequence sequence;
  ResolutionKind kind;
  GSet permutation_witness;  // G-set permuting the basis of the middle term
};

// Empty when every certificate invariant holds.
std::string certificate_failure(const ResolutionCertificate& c);

struct ResolutionOrder {
  bool reverse_subgroups = false;
  bool reverse_fixed_basis = false;
};

// 0 -> C -> P -> M -> 0 with P the sum over subgroup conjugacy representatives
// H of one Z[G/H] per basis vector x of M^H, gH -> g x.
ResolutionCertificate coflasque_resolution(const GLattice& m, ResolutionOrder order = {});
// 0 -> M -> P -> F -> 0, the dual of a coflasque resolution of the dual.
ResolutionCertificate flasque_resolution(const GLattice& m);

// An equivariant s with right * s = identity, or nullopt when none exists.
// Throws Error if the sequence is not exact.
std::optional<EquivariantMap> find_section(const ShortExactSequence& seq);

// Basis matrix (columns) permuted by every group element.
bool is_stable_basis(const GLattice& m, const IntMatrix& basis);

struct PermutationSearch {
  std::optional<IntMatrix> basis;  // a G-stable basis, as columns
  int bound = 0;
  std::string reason;              // why no basis was produced
  bool found() const { return basis.has_value(); }
};

// Looks for a G-stable basis made of orbits of vectors with entries in
// [-bound, bound]. Never concludes that M is not permutation.
PermutationSearch is_permutation_bounded(const GLattice& m, int bound);
// bound 2, then 3.
PermutationSearch find_permutation_basis(const GLattice& m);

struct InvertibilityCertificate {
  std::vector<Subgroup> subgroups;
  std::vector<Integer> coefficients;        // sum a_i [G:H_i] = 1
  std::vector<IntMatrix> witnesses;         // stable basis of each restriction
  EquivariantMap embedding;                 // M -> sum tensor(Z[G/H_i], M)
  EquivariantMap retraction;                // back to M
  std::vector<EquivariantMap> moves;        // tensor(Z[G/H_i], M) -> induced lattices
};

std::optional<InvertibilityCertificate> invertibility_certificate(const GLattice& m);
std::string certificate_failure(const InvertibilityCertificate& c);

}  // namespace glattice
