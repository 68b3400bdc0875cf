#pragma once

// G-sets, G-lattices and equivariant maps between them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groups.hpp"
#include "intlinalg.hpp"

namespace glattice {

// A left action of a group on the points {0..size-1}; act[g][x] = g.x.
class GSet {
 public:
  // Validates the identity and compatibility laws; throws Error otherwise.
  GSet(GroupPtr group, std::vector<std::vector<int>> act);

  const GroupPtr& group() const { return group_; }
  int size() const { return size_; }
  int operator()(int g, int x) const { return act_[g][x]; }
  const std::vector<std::vector<int>>& table() const { return act_; }

  // Orbits ordered by smallest point, each listed in increasing order.
  std::vector<std::vector<int>> orbits() const;
  Subgroup stabilizer(int x) const;
  bool is_free() const;

 private:
  GroupPtr group_;
  int size_ = 0;
  std::vector<std::vector<int>> act_;
};

GSet regular_gset(const GroupPtr& g);
// Points are left cosets in the order of H.left_coset_representatives().
GSet coset_gset(const Subgroup& h);
GSet trivial_gset(const GroupPtr& g, int points = 1);
// Natural action of a permutation group on {0..degree-1}.
GSet natural_gset(const GroupPtr& g);
GSet disjoint_union(const GSet& a, const GSet& b);
GSet restrict_gset(const GSet& x, const Subgroup& h);

class GLattice {
 public:
  // action[g] is the matrix of g acting on column vectors. With validate the
  // identity, homomorphism and invertibility laws are checked exhaustively.
  GLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> action, bool validate = true);

  const GroupPtr& group() const { return data_->group; }
  std::size_t rank() const { return data_->rank; }
  const IntMatrix& action(int g) const { return data_->action[g]; }
  const std::vector<IntMatrix>& actions() const { return data_->action; }

  // Present when the standard basis is permuted by the group.
  const std::optional<GSet>& permutation_structure() const { return data_->perm; }
  GLattice with_permutation_structure(GSet x) const;

  // Empty string when all lattice laws hold, else a description of the first failure.
  std::string invariant_failure() const;

  friend bool operator==(const GLattice& a, const GLattice& b);

 private:
  struct Data {
    GroupPtr group;
    std::size_t rank = 0;
    std::vector<IntMatrix> action;
    std::optional<GSet> perm;
  };
  std::shared_ptr<const Data> data_;
};

void require_same_group(const FiniteGroup& a, const FiniteGroup& b, const char* where);

GLattice permutation_lattice(const GSet& x);
GLattice regular(const GroupPtr& g);
GLattice coset_lattice(const Subgroup& h);
GLattice trivial(const GroupPtr& g);
GLattice zero_lattice(const GroupPtr& g);
// ZG^copies.
GLattice free_lattice(const GroupPtr& g, int copies);
// Z with the elements outside the index-two subgroup h acting by -1.
GLattice sign_lattice(const Subgroup& h);
// I_V, the kernel of the augmentation ZV -> Z, with basis v_i - v_{i+1}.
GLattice augmentation_lattice(const GSet& x);
IntMatrix augmentation_basis(int points);

GLattice dual(const GLattice& m);
GLattice direct_sum(const GLattice& m, const GLattice& n);
GLattice tensor(const GLattice& m, const GLattice& n);
GLattice restrict(const GLattice& m, const Subgroup& h);
// Z[G] tensored over Z[H] with the H-lattice n; basis t_i (x) n_j at index
// i*rank(n)+j with t_i the left coset representatives of h.
GLattice induce(const Subgroup& h, const GLattice& n);

// Saturated basis of the H-fixed vectors, as columns.
IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& h);
IntMatrix norm_matrix(const GLattice& m, const Subgroup& h);

// The G-stable sublattice spanned by the saturated columns of basis, with
// its action in that basis. Throws if the span is not stable or not saturated.
GLattice sublattice(const GLattice& m, const IntMatrix& basis);

class EquivariantMap {
 public:
  EquivariantMap(GLattice source, GLattice target, IntMatrix matrix);

  const GLattice& source() const { return source_; }
  const GLattice& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  // Empty string when the map commutes with every group element.
  std::string equivariance_failure() const;
  bool is_equivariant() const { return equivariance_failure().empty(); }
  bool is_isomorphism() const;  // equivariant and unimodular

 private:
  GLattice source_;
  GLattice target_;
  IntMatrix matrix_;
};

EquivariantMap identity_map(const GLattice& m);
EquivariantMap compose(const EquivariantMap& second, const EquivariantMap& first);
// Inverse of a unimodular map; throws Error if not invertible.
EquivariantMap inverse(const EquivariantMap& f);
EquivariantMap direct_sum(const EquivariantMap& f, const EquivariantMap& g);

// Inclusion of a saturated G-stable kernel: the lattice ker f and the map into the source.
EquivariantMap kernel_inclusion(const EquivariantMap& f);

// Unimodular equivariant map from tensor(coset_lattice(h), m) to
// induce(h, restrict(m, h)) sending gH (x) a to g (x) g^-1 a.
EquivariantMap move_to_subgroup_iso(const Subgroup& h, const GLattice& m);

struct ShortExactSequence {
  EquivariantMap left;   // A -> B
  EquivariantMap right;  // B -> C
};

struct ExactnessReport {
  bool exact = false;
  std::string diagnostic;  // names the first failing condition
};

ExactnessReport check_exact(const ShortExactSequence& seq);

// A -> A+C -> C with the canonical inclusion and projection.
ShortExactSequence split_sequence(const GLattice& a, const GLattice& c);

}  // namespace glattice
