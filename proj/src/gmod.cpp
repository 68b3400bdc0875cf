#include "gmod.hpp"

#include <algorithm>
#include <numeric>

namespace glattice {

namespace {

std::vector<int> coset_index(const Subgroup& h, const std::vector<int>& reps) {
  const auto& g = *h.parent();
  std::vector<int> idx(g.order(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (int x : h.elements()) idx[g.mul(reps[i], x)] = static_cast<int>(i);
  return idx;
}

IntMatrix permutation_matrix(const std::vector<int>& p) {
  IntMatrix m(p.size(), p.size());
  for (std::size_t x = 0; x < p.size(); ++x) m(p[x], x) = 1;
  return m;
}

}  // namespace

void require_same_group(const FiniteGroup& a, const FiniteGroup& b, const char* where) {
  if (!a.same_as(b)) throw Error(Error::Kind::mismatch, std::string(where) + ": lattices over different groups");
}

// ---------------------------------------------------------------------------
// G-sets

GSet::GSet(GroupPtr group, std::vector<std::vector<int>> act) : group_(std::move(group)), act_(std::move(act)) {
  const int n = group_->order();
  if (static_cast<int>(act_.size()) != n) throw Error(Error::Kind::invalid_parameter, "invalid G-set: one row per group element required");
  size_ = static_cast<int>(act_.front().size());
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(act_[g].size()) != size_) throw Error(Error::Kind::invalid_parameter, "invalid G-set: ragged action table");
    std::vector<int> sorted = act_[g];
    std::sort(sorted.begin(), sorted.end());
    for (int x = 0; x < size_; ++x)
      if (sorted[x] != x)
        throw Error(Error::Kind::invalid_parameter, "invalid G-set: element " + group_->name(g) + " does not act as a permutation");
  }
  for (int x = 0; x < size_; ++x)
    if (act_[group_->identity()][x] != x) throw Error(Error::Kind::invalid_parameter, "invalid G-set: identity moves a point");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < size_; ++x)
        if (act_[group_->mul(g, h)][x] != act_[g][act_[h][x]])
          throw Error(Error::Kind::invalid_parameter,
                      "invalid G-set: (gh).x != g.(h.x) for g = " + group_->name(g) + ", h = " + group_->name(h));
}

std::vector<std::vector<int>> GSet::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(size_, false);
  for (int x = 0; x < size_; ++x) {
    if (seen[x]) continue;
    std::vector<int> orbit;
    for (int g = 0; g < group_->order(); ++g) {
      const int y = act_[g][x];
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

Subgroup GSet::stabilizer(int x) const {
  ElementMask m = 0;
  for (int g = 0; g < group_->order(); ++g)
    if (act_[g][x] == x) m |= ElementMask{1} << g;
  return Subgroup(group_, m);
}

bool GSet::is_free() const {
  for (int g = 0; g < group_->order(); ++g) {
    if (g == group_->identity()) continue;
    for (int x = 0; x < size_; ++x)
      if (act_[g][x] == x) return false;
  }
  return true;
}

GSet regular_gset(const GroupPtr& g) { return GSet(g, g->table()); }

GSet coset_gset(const Subgroup& h) {
  const auto& g = *h.parent();
  const auto reps = h.left_coset_representatives();
  const auto idx = coset_index(h, reps);
  std::vector<std::vector<int>> act(g.order(), std::vector<int>(reps.size()));
  for (int x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < reps.size(); ++i) act[x][i] = idx[g.mul(x, reps[i])];
  return GSet(h.parent(), std::move(act));
}

GSet trivial_gset(const GroupPtr& g, int points) {
  std::vector<int> id(points);
  std::iota(id.begin(), id.end(), 0);
  return GSet(g, std::vector<std::vector<int>>(g->order(), id));
}

GSet natural_gset(const GroupPtr& g) {
  if (g->permutations().empty()) throw Error(Error::Kind::invalid_parameter, "natural_gset: group carries no permutation data");
  return GSet(g, g->permutations());
}

GSet disjoint_union(const GSet& a, const GSet& b) {
  require_same_group(*a.group(), *b.group(), "disjoint_union");
  std::vector<std::vector<int>> act(a.group()->order());
  for (int g = 0; g < a.group()->order(); ++g) {
    act[g] = a.table()[g];
    for (int x : b.table()[g]) act[g].push_back(x + a.size());
  }
  return GSet(a.group(), std::move(act));
}

GSet restrict_gset(const GSet& x, const Subgroup& h) {
  require_same_group(*x.group(), *h.parent(), "restrict_gset");
  std::vector<std::vector<int>> act;
  for (int k = 0; k < h.order(); ++k) act.push_back(x.table()[h.to_parent(k)]);
  return GSet(h.as_group(), std::move(act));
}

// ---------------------------------------------------------------------------
// Lattices

GLattice::GLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> action, bool validate) {
  auto d = std::make_shared<Data>();
  d->group = std::move(group);
  d->rank = rank;
  d->action = std::move(action);
  data_ = std::move(d);
  if (static_cast<int>(actions().size()) != this->group()->order())
    throw Error(Error::Kind::invalid_parameter, "GLattice: one action matrix per group element required");
  for (const auto& a : actions())
    if (a.rows() != rank || a.cols() != rank) throw Error(Error::Kind::invalid_parameter, "GLattice: action matrix has wrong size");
  if (validate) {
    auto failure = invariant_failure();
    if (!failure.empty()) throw Error(Error::Kind::invalid_parameter, "GLattice: " + failure);
  }
}

GLattice GLattice::with_permutation_structure(GSet x) const {
  if (x.size() != static_cast<int>(rank())) throw Error(Error::Kind::mismatch, "permutation structure has wrong size");
  for (int g = 0; g < group()->order(); ++g)
    if (!(permutation_matrix(x.table()[g]) == action(g)))
      throw Error(Error::Kind::mismatch, "permutation structure does not match the action");
  GLattice out = *this;
  auto d = std::make_shared<Data>(*data_);
  d->perm = std::move(x);
  out.data_ = std::move(d);
  return out;
}

std::string GLattice::invariant_failure() const {
  const auto& g = *group();
  if (!action(g.identity()).is_identity()) return "identity does not act trivially";
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (!(action(a) * action(b) == action(g.mul(a, b))))
        return "action(" + g.name(a) + ") * action(" + g.name(b) + ") != action(" + g.name(g.mul(a, b)) + ")";
  // With the homomorphism law every action(g) has inverse action(g^-1), so all are unimodular.
  return "";
}

bool operator==(const GLattice& a, const GLattice& b) {
  return a.rank() == b.rank() && a.group()->same_as(*b.group()) && a.actions() == b.actions();
}

GLattice permutation_lattice(const GSet& x) {
  std::vector<IntMatrix> act;
  for (const auto& row : x.table()) act.push_back(permutation_matrix(row));
  GLattice m(x.group(), x.size(), std::move(act), false);
  return m.with_permutation_structure(x);
}

GLattice regular(const GroupPtr& g) { return permutation_lattice(regular_gset(g)); }
GLattice coset_lattice(const Subgroup& h) { return permutation_lattice(coset_gset(h)); }
GLattice trivial(const GroupPtr& g) { return permutation_lattice(trivial_gset(g)); }

GLattice zero_lattice(const GroupPtr& g) { return GLattice(g, 0, std::vector<IntMatrix>(g->order(), IntMatrix(0, 0)), false); }

GLattice free_lattice(const GroupPtr& g, int copies) {
  std::vector<std::vector<int>> act(g->order());
  for (int x = 0; x < g->order(); ++x)
    for (int c = 0; c < copies; ++c)
      for (int y = 0; y < g->order(); ++y) act[x].push_back(c * g->order() + g->mul(x, y));
  return permutation_lattice(GSet(g, std::move(act)));
}

GLattice sign_lattice(const Subgroup& h) {
  if (h.index() != 2) throw Error(Error::Kind::invalid_parameter, "sign_lattice: subgroup must have index 2");
  std::vector<IntMatrix> act;
  for (int g = 0; g < h.parent()->order(); ++g) act.push_back(IntMatrix{{h.contains(g) ? 1L : -1L}});
  return GLattice(h.parent(), 1, std::move(act));
}

IntMatrix augmentation_basis(int points) {
  IntMatrix b(points, points > 0 ? points - 1 : 0);
  for (int i = 0; i + 1 < points; ++i) {
    b(i, i) = 1;
    b(i + 1, i) = -1;
  }
  return b;
}

GLattice augmentation_lattice(const GSet& x) { return sublattice(permutation_lattice(x), augmentation_basis(x.size())); }

GLattice dual(const GLattice& m) {
  const auto& g = *m.group();
  std::vector<IntMatrix> act;
  for (int x = 0; x < g.order(); ++x) act.push_back(m.action(g.inv(x)).transpose());
  GLattice d(m.group(), m.rank(), std::move(act), false);
  if (m.permutation_structure()) return d.with_permutation_structure(*m.permutation_structure());
  return d;
}

GLattice direct_sum(const GLattice& m, const GLattice& n) {
  require_same_group(*m.group(), *n.group(), "direct_sum");
  std::vector<IntMatrix> act;
  for (int g = 0; g < m.group()->order(); ++g) act.push_back(block_diagonal(m.action(g), n.action(g)));
  GLattice s(m.group(), m.rank() + n.rank(), std::move(act), false);
  if (m.permutation_structure() && n.permutation_structure())
    return s.with_permutation_structure(disjoint_union(*m.permutation_structure(), *n.permutation_structure()));
  return s;
}

GLattice tensor(const GLattice& m, const GLattice& n) {
  require_same_group(*m.group(), *n.group(), "tensor");
  std::vector<IntMatrix> act;
  for (int g = 0; g < m.group()->order(); ++g) act.push_back(kronecker(m.action(g), n.action(g)));
  GLattice t(m.group(), m.rank() * n.rank(), std::move(act), false);
  if (m.permutation_structure() && n.permutation_structure()) {
    const auto& a = *m.permutation_structure();
    const auto& b = *n.permutation_structure();
    std::vector<std::vector<int>> table(m.group()->order(), std::vector<int>(a.size() * b.size()));
    for (int g = 0; g < m.group()->order(); ++g)
      for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) table[g][i * b.size() + j] = a(g, i) * b.size() + b(g, j);
    return t.with_permutation_structure(GSet(m.group(), std::move(table)));
  }
  return t;
}

GLattice restrict(const GLattice& m, const Subgroup& h) {
  require_same_group(*m.group(), *h.parent(), "restrict");
  std::vector<IntMatrix> act;
  for (int k = 0; k < h.order(); ++k) act.push_back(m.action(h.to_parent(k)));
  GLattice r(h.as_group(), m.rank(), std::move(act), false);
  if (m.permutation_structure()) return r.with_permutation_structure(restrict_gset(*m.permutation_structure(), h));
  return r;
}

GLattice induce(const Subgroup& h, const GLattice& n) {
  require_same_group(*h.as_group(), *n.group(), "induce");
  const auto& g = *h.parent();
  const auto reps = h.left_coset_representatives();
  const auto idx = coset_index(h, reps);
  const std::size_t r = n.rank();
  std::vector<IntMatrix> act;
  for (int x = 0; x < g.order(); ++x) {
    IntMatrix a(reps.size() * r, reps.size() * r);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const int gt = g.mul(x, reps[i]);
      const int i2 = idx[gt];
      const int hloc = h.to_local(g.mul(g.inv(reps[i2]), gt));
      a.set_block(i2 * r, i * r, n.action(hloc));
    }
    act.push_back(std::move(a));
  }
  return GLattice(h.parent(), reps.size() * r, std::move(act), false);
}

IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& h) {
  require_same_group(*m.group(), *h.parent(), "fixed_sublattice");
  const auto gens = h.generators();
  if (gens.empty()) return IntMatrix::identity(m.rank());
  IntMatrix stacked(0, m.rank());
  for (int g : gens) stacked = vstack(stacked, m.action(g) - IntMatrix::identity(m.rank()));
  return kernel_basis(stacked);
}

IntMatrix norm_matrix(const GLattice& m, const Subgroup& h) {
  require_same_group(*m.group(), *h.parent(), "norm_matrix");
  IntMatrix n(m.rank(), m.rank());
  for (int g : h.elements()) n = n + m.action(g);
  return n;
}

GLattice sublattice(const GLattice& m, const IntMatrix& basis) {
  if (basis.rows() != m.rank()) throw Error(Error::Kind::mismatch, "sublattice: basis has wrong length");
  const std::size_t k = basis.cols();
  std::vector<IntMatrix> act;
  if (k == 0) {
    act.assign(m.group()->order(), IntMatrix(0, 0));
    return GLattice(m.group(), 0, std::move(act), false);
  }
  auto l = left_inverse(basis);
  if (!l) throw Error(Error::Kind::precondition, "sublattice: basis is not saturated of full column rank");
  for (int g = 0; g < m.group()->order(); ++g) {
    IntMatrix image = m.action(g) * basis;
    IntMatrix a = *l * image;
    if (!(basis * a == image))
      throw Error(Error::Kind::precondition, "sublattice: span is not stable under " + m.group()->name(g));
    act.push_back(std::move(a));
  }
  return GLattice(m.group(), k, std::move(act), false);
}

// ---------------------------------------------------------------------------
// Maps

EquivariantMap::EquivariantMap(GLattice source, GLattice target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  require_same_group(*source_.group(), *target_.group(), "EquivariantMap");
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
    throw Error(Error::Kind::mismatch, "EquivariantMap: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                           std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_.rank()) +
                                           "x" + std::to_string(source_.rank()));
}

std::string EquivariantMap::equivariance_failure() const {
  const auto& g = *source_.group();
  for (int x = 0; x < g.order(); ++x)
    if (!(target_.action(x) * matrix_ == matrix_ * source_.action(x))) return "map does not commute with " + g.name(x);
  return "";
}

bool EquivariantMap::is_isomorphism() const {
  return source_.rank() == target_.rank() && is_unimodular(matrix_) && is_equivariant();
}

EquivariantMap identity_map(const GLattice& m) { return EquivariantMap(m, m, IntMatrix::identity(m.rank())); }

EquivariantMap compose(const EquivariantMap& second, const EquivariantMap& first) {
  if (!(first.target() == second.source())) throw Error(Error::Kind::mismatch, "compose: target and source differ");
  return EquivariantMap(first.source(), second.target(), second.matrix() * first.matrix());
}

EquivariantMap inverse(const EquivariantMap& f) {
  auto inv = inverse_unimodular(f.matrix());
  if (!inv) throw Error(Error::Kind::precondition, "inverse: matrix is not unimodular");
  return EquivariantMap(f.target(), f.source(), *inv);
}

EquivariantMap direct_sum(const EquivariantMap& f, const EquivariantMap& g) {
  return EquivariantMap(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                        block_diagonal(f.matrix(), g.matrix()));
}

EquivariantMap kernel_inclusion(const EquivariantMap& f) {
  IntMatrix k = kernel_basis(f.matrix());
  if (k.cols() == 0) k = IntMatrix(f.source().rank(), 0);
  return EquivariantMap(sublattice(f.source(), k), f.source(), k);
}

EquivariantMap move_to_subgroup_iso(const Subgroup& h, const GLattice& m) {
  const auto& g = *h.parent();
  const auto reps = h.left_coset_representatives();
  const std::size_t r = m.rank();
  IntMatrix phi(reps.size() * r, reps.size() * r);
  for (std::size_t i = 0; i < reps.size(); ++i) phi.set_block(i * r, i * r, m.action(g.inv(reps[i])));
  return EquivariantMap(tensor(coset_lattice(h), m), induce(h, restrict(m, h)), std::move(phi));
}

// ---------------------------------------------------------------------------
// Exact sequences

ExactnessReport check_exact(const ShortExactSequence& seq) {
  const auto& f = seq.left;
  const auto& g = seq.right;
  if (!(f.target() == g.source())) return {false, "middle terms of the two maps differ"};
  if (auto e = f.equivariance_failure(); !e.empty()) return {false, "left " + e};
  if (auto e = g.equivariance_failure(); !e.empty()) return {false, "right " + e};
  const std::size_t a = f.source().rank(), b = f.target().rank(), c = g.target().rank();
  if (a > 0 && kernel_basis(f.matrix()).cols() != 0) return {false, "left map is not injective"};
  if (c > 0) {
    LinearSolver solver(g.matrix());
    for (std::size_t i = 0; i < c; ++i) {
      IntVector e(c);
      e[i] = 1;
      if (!solver.solve(e)) return {false, "right map is not surjective (basis vector " + std::to_string(i) + " not hit)"};
    }
  }
  if (a + c != b) return {false, "ranks do not add up"};
  if (b > 0 && !(g.matrix() * f.matrix()).is_zero()) return {false, "composite of the two maps is nonzero"};
  if (a > 0 && !same_column_lattice(f.matrix(), kernel_basis(g.matrix())))
    return {false, "image of the left map differs from the kernel of the right map"};
  return {true, ""};
}

ShortExactSequence split_sequence(const GLattice& a, const GLattice& c) {
  auto b = direct_sum(a, c);
  IntMatrix inc(b.rank(), a.rank()), proj(c.rank(), b.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) inc(i, i) = 1;
  for (std::size_t i = 0; i < c.rank(); ++i) proj(i, a.rank() + i) = 1;
  return {EquivariantMap(a, b, inc), EquivariantMap(b, c, proj)};
}

}  // namespace glattice
