#pragma once

// Finite groups of order at most 64 stored as multiplication tables, the
// group families used throughout the toolkit, and subgroup machinery.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace glattice {

class Error : public std::runtime_error {
 public:
  enum class Kind { invalid_parameter, precondition, mismatch, parse, internal };
  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr int kMaxGroupOrder = 64;

enum class GroupFamily { cyclic, dihedral, semidirect, symmetric, product, subgroup, other };

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  // Validates closure, identity, inverses and associativity exhaustively.
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names);

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverses_[a]; }
  int identity() const { return identity_; }
  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  int power(int g, long k) const;
  int element_order(int g) const;
  const std::string& name(int g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  std::optional<int> find(const std::string& name) const;

  // A small generating set, chosen greedily in index order.
  const std::vector<int>& generators() const { return generators_; }

  // Family metadata set by the constructors below.
  GroupFamily family() const { return family_; }
  const std::vector<int>& parameters() const { return parameters_; }
  const std::string& label() const { return label_; }
  // For semidirect/dihedral/cyclic groups: the elements sigma and tau.
  std::optional<int> sigma() const { return sigma_; }
  std::optional<int> tau() const { return tau_; }
  // For symmetric groups: the permutation of {0..degree-1} each element is.
  const std::vector<std::vector<int>>& permutations() const { return perms_; }
  // Factors of a direct product.
  const std::vector<GroupPtr>& factors() const { return factors_; }

  bool same_as(const FiniteGroup& other) const;

  // Mutators used only while a constructor assembles the group.
  void set_family(GroupFamily f, std::vector<int> params, std::string label);
  void set_sigma_tau(std::optional<int> s, std::optional<int> t);
  void set_permutations(std::vector<std::vector<int>> p);
  void set_factors(std::vector<GroupPtr> f);

 private:
  std::vector<std::vector<int>> table_;
  std::vector<std::string> names_;
  std::vector<int> inverses_;
  int identity_ = 0;
  std::vector<int> generators_;
  GroupFamily family_ = GroupFamily::other;
  std::vector<int> parameters_;
  std::string label_;
  std::optional<int> sigma_;
  std::optional<int> tau_;
  std::vector<std::vector<int>> perms_;
  std::vector<GroupPtr> factors_;
};

GroupPtr cyclic(int n);
GroupPtr dihedral(int n);  // order 2n
// <sigma, tau | sigma^n = tau^m = e, tau^-1 sigma tau = sigma^r>, element
// sigma^i tau^j stored at index j*n + i.
GroupPtr semidirect(int n, int m, int r);
// Symmetric group as permutations of {0..n-1}; S_5 exceeds the order cap.
GroupPtr symmetric(int n);
// The group generated by the given permutations of {0..degree-1}, elements
// ordered lexicographically as permutations (identity first).
GroupPtr permutation_group(int degree, const std::vector<std::vector<int>>& gens);
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h);

using ElementMask = std::uint64_t;

// Generated subgroup as a bit mask over element indices.
ElementMask closure(const FiniteGroup& g, const std::vector<int>& gens);
ElementMask closure(const FiniteGroup& g, ElementMask gens);

class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<int> elements);
  Subgroup(GroupPtr parent, ElementMask mask);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int index() const { return parent_->order() / order(); }
  ElementMask mask() const { return mask_; }
  bool contains(int g) const { return (mask_ >> g) & 1U; }
  bool is_whole() const { return order() == parent_->order(); }
  bool is_cyclic() const;
  // Some element generating the subgroup, if cyclic.
  std::optional<int> cyclic_generator() const;
  // Generators given as parent indices.
  std::vector<int> generators() const;

  // The subgroup as a group in its own right; element k of it is the parent
  // element elements()[k].
  const GroupPtr& as_group() const { return group_; }
  int to_local(int parent_element) const;
  int to_parent(int local_element) const { return elements_[local_element]; }

  // Left coset representatives (minimal index in each coset), ordered by representative.
  std::vector<int> left_coset_representatives() const;

  Subgroup conjugate(int g) const;  // g H g^-1
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask_ == b.mask_; }

 private:
  GroupPtr parent_;
  std::vector<int> elements_;
  ElementMask mask_ = 0;
  GroupPtr group_;
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_group(const GroupPtr& g);
Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens);

// All subgroups, sorted by (order, mask).
std::vector<Subgroup> all_subgroups(const GroupPtr& g);
// One subgroup per conjugacy class, the first of each class in all_subgroups order.
std::vector<Subgroup> subgroup_conjugacy_reps(const GroupPtr& g);

Subgroup sylow(const GroupPtr& g, int p);
bool is_z_group(const GroupPtr& g);

std::vector<int> prime_divisors(int n);
bool is_prime(int n);

}  // namespace glattice
