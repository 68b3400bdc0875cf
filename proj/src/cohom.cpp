#include "cohom.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace glattice {

namespace {

TateGroup from_cokernel(const IntMatrix& relations, std::size_t rows, const char* where) {
  if (rows == 0) return {};
  IntMatrix rel = relations.cols() == 0 ? IntMatrix(rows, 0) : relations;
  auto inv = cokernel_invariants(rel);
  if (inv.free_rank != 0) throw Error(Error::Kind::internal, std::string(where) + ": quotient is not finite");
  return TateGroup{inv.torsion};
}

// Columns of b expressed in the basis given by the columns of a.
IntMatrix coordinates(const IntMatrix& a, const IntMatrix& b, const char* where) {
  if (b.cols() == 0) return IntMatrix(a.cols(), 0);
  auto c = solve_columns(a, b);
  if (!c) throw Error(Error::Kind::internal, std::string(where) + ": vectors outside the expected sublattice");
  return *c;
}

TateGroup tate_minus_one(const GLattice& m, const Subgroup& h) {
  const std::size_t r = m.rank();
  if (r == 0) return {};
  const IntMatrix k = kernel_basis(norm_matrix(m, h));
  if (k.cols() == 0) return {};
  IntMatrix aug(r, 0);
  const auto id = IntMatrix::identity(r);
  for (int g : h.generators()) aug = hstack(aug, m.action(g) - id);
  return from_cokernel(coordinates(k, aug, "tate"), k.cols(), "tate");
}

TateGroup tate_zero(const GLattice& m, const Subgroup& h) {
  if (m.rank() == 0) return {};
  const IntMatrix f = fixed_sublattice(m, h);
  if (f.cols() == 0) return {};
  return from_cokernel(coordinates(f, norm_matrix(m, h), "tate"), f.cols(), "tate");
}

std::vector<Subgroup> nontrivial_reps(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (auto& h : subgroup_conjugacy_reps(g))
    if (h.order() > 1) out.push_back(h);
  return out;
}

SubgroupVerdict verdict_minus_one(const GLattice& m) {
  for (const auto& h : nontrivial_reps(m.group())) {
    auto t = tate_minus_one(m, h);
    if (!t.trivial()) return SubgroupVerdict{false, h, t};
  }
  return {};
}

IntMatrix transpose_map(const IntMatrix& a) { return a.transpose(); }

}  // namespace

std::string TateGroup::to_string() const {
  if (invariant_factors.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) os << (i ? " x " : "") << "Z/" << invariant_factors[i];
  return os.str();
}

TateGroup tate(const GLattice& m, const Subgroup& h, int degree) {
  require_same_group(*m.group(), *h.parent(), "tate");
  switch (degree) {
    case -1: return tate_minus_one(m, h);
    case 0: return tate_zero(m, h);
    case 1: return tate_minus_one(dual(m), h);
    default: throw Error(Error::Kind::invalid_parameter, "tate: degree must be -1, 0 or 1");
  }
}

TateGroup tate1_cyclic_direct(const GLattice& m, const Subgroup& h) {
  require_same_group(*m.group(), *h.parent(), "tate1_cyclic_direct");
  auto gen = h.cyclic_generator();
  if (!gen) throw Error(Error::Kind::precondition, "tate1_cyclic_direct: subgroup is not cyclic");
  if (m.rank() == 0) return {};
  const IntMatrix k = kernel_basis(norm_matrix(m, h));
  if (k.cols() == 0) return {};
  const IntMatrix d = m.action(*gen) - IntMatrix::identity(m.rank());
  return from_cokernel(coordinates(k, d, "tate1_cyclic_direct"), k.cols(), "tate1_cyclic_direct");
}

SubgroupVerdict flasque_verdict(const GLattice& m) { return verdict_minus_one(m); }
SubgroupVerdict coflasque_verdict(const GLattice& m) { return verdict_minus_one(dual(m)); }
bool is_flasque(const GLattice& m) { return flasque_verdict(m).holds; }
bool is_coflasque(const GLattice& m) { return coflasque_verdict(m).holds; }

// ---------------------------------------------------------------------------
// Resolutions

std::string certificate_failure(const ResolutionCertificate& c) {
  auto rep = check_exact(c.sequence);
  if (!rep.exact) return "sequence not exact: " + rep.diagnostic;
  const GLattice& p = c.kind == ResolutionKind::coflasque ? c.sequence.left.target() : c.sequence.right.source();
  const GLattice expected = permutation_lattice(c.permutation_witness);
  if (!(expected == p)) return "middle term is not the permutation lattice of the witness";
  if (c.kind == ResolutionKind::coflasque) {
    auto v = coflasque_verdict(c.sequence.left.source());
    if (!v.holds) return "kernel is not coflasque: H^1 = " + v.obstruction.to_string() + " at a subgroup of order " +
                         std::to_string(v.failing->order());
  } else {
    auto v = flasque_verdict(c.sequence.right.target());
    if (!v.holds) return "cokernel is not flasque: H^-1 = " + v.obstruction.to_string() + " at a subgroup of order " +
                         std::to_string(v.failing->order());
  }
  return {};
}

ResolutionCertificate coflasque_resolution(const GLattice& m, ResolutionOrder order) {
  const GroupPtr& g = m.group();
  const std::size_t r = m.rank();
  auto reps = subgroup_conjugacy_reps(g);
  if (order.reverse_subgroups) std::reverse(reps.begin(), reps.end());

  GSet witness = trivial_gset(g, 0);
  std::vector<IntVector> columns;
  for (const auto& h : reps) {
    if (r == 0) break;
    const IntMatrix f = fixed_sublattice(m, h);
    std::vector<std::size_t> idx(f.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (order.reverse_fixed_basis) std::reverse(idx.begin(), idx.end());
    const auto cosets = h.left_coset_representatives();
    for (std::size_t i : idx) {
      const IntVector x = f.column(i);
      witness = disjoint_union(witness, coset_gset(h));
      for (int t : cosets) columns.push_back(m.action(t) * x);
    }
  }
  const GLattice p = permutation_lattice(witness);
  EquivariantMap pi(p, m, IntMatrix::from_columns(columns, r));
  EquivariantMap inc = kernel_inclusion(pi);
  return ResolutionCertificate{ShortExactSequence{inc, pi}, ResolutionKind::coflasque, witness};
}

ResolutionCertificate flasque_resolution(const GLattice& m) {
  const auto co = coflasque_resolution(dual(m));
  const GLattice c = co.sequence.left.source();
  const GLattice p = co.sequence.left.target();
  const GLattice pd = dual(p);
  const GLattice f = dual(c);
  EquivariantMap left(m, pd, transpose_map(co.sequence.right.matrix()));
  EquivariantMap right(pd, f, transpose_map(co.sequence.left.matrix()));
  return ResolutionCertificate{ShortExactSequence{left, right}, ResolutionKind::flasque, co.permutation_witness};
}

// ---------------------------------------------------------------------------
// Sections

namespace {

std::optional<EquivariantMap> permutation_section(const EquivariantMap& pi, const GSet& x) {
  const GLattice& b = pi.source();
  const GLattice& c = pi.target();
  const GroupPtr& g = b.group();
  IntMatrix s(b.rank(), c.rank());
  for (const auto& orbit : x.orbits()) {
    const int rep = orbit.front();
    const IntMatrix f = fixed_sublattice(b, x.stabilizer(rep));
    IntVector e(c.rank(), 0);
    e[rep] = 1;
    if (f.cols() == 0) return std::nullopt;
    const IntMatrix pf = pi.matrix() * f;
    auto z = solve(pf, e);
    if (!z) return std::nullopt;
    IntVector y = f * *z;
    const IntMatrix k = kernel_basis(pf);
    if (k.cols() > 0) y = reduce_against(y, lll_reduce(f * k));
    std::vector<bool> done(c.rank(), false);
    for (int el = 0; el < g->order(); ++el) {
      const int p = x(el, rep);
      if (done[p]) continue;
      done[p] = true;
      s.set_column(p, b.action(el) * y);
    }
  }
  return EquivariantMap(c, b, s);
}

std::optional<EquivariantMap> general_section(const ShortExactSequence& seq) {
  const EquivariantMap& iota = seq.left;
  const EquivariantMap& pi = seq.right;
  const GLattice& a = iota.source();
  const GLattice& b = pi.source();
  const GLattice& c = pi.target();
  const std::size_t na = a.rank(), nc = c.rank();
  if (nc == 0) return EquivariantMap(c, b, IntMatrix(b.rank(), 0));

  auto s0 = solve_columns(pi.matrix(), IntMatrix::identity(nc));
  if (!s0) throw Error(Error::Kind::internal, "find_section: right map is not surjective");
  if (na == 0) return EquivariantMap(c, b, *s0);

  *s0 = reduce_columns_against(*s0, lll_reduce(iota.matrix()));

  auto l = left_inverse(iota.matrix());
  if (!l) throw Error(Error::Kind::internal, "find_section: left map is not a saturated embedding");

  const auto gens = b.group()->generators();
  const std::size_t unknowns = na * nc;
  IntMatrix sys(gens.size() * unknowns, unknowns);
  IntVector rhs(gens.size() * unknowns, 0);
  for (std::size_t q = 0; q < gens.size(); ++q) {
    const int g = gens[q];
    const IntMatrix& ra = a.action(g);
    const IntMatrix& rc = c.action(g);
    const IntMatrix cg = *l * (*s0 * rc - b.action(g) * *s0);
    const std::size_t base = q * unknowns;
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nc; ++j) {
        const std::size_t row = base + i * nc + j;
        for (std::size_t k = 0; k < na; ++k)
          if (ra(i, k) != 0) sys(row, k * nc + j) += ra(i, k);
        for (std::size_t k = 0; k < nc; ++k)
          if (rc(k, j) != 0) sys(row, i * nc + k) -= rc(k, j);
        rhs[row] = cg(i, j);
      }
  }
  std::optional<IntVector> t;
  IntMatrix hom;
  if (gens.empty()) {
    t = IntVector(unknowns, 0);
    hom = IntMatrix::identity(unknowns);
  } else {
    const LinearSolver solver(sys);
    t = solver.solve(rhs);
    hom = solver.kernel();
  }
  if (!t) return std::nullopt;
  auto as_matrix = [&](const IntVector& v) {
    IntMatrix tm(na, nc);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nc; ++j) tm(i, j) = v[i * nc + j];
    return tm;
  };
  auto flatten = [](const IntMatrix& m) {
    IntVector v;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
  };
  IntMatrix s = *s0 + iota.matrix() * as_matrix(*t);
  // Shrink by adding equivariant maps c -> a, which preserve the section property.
  if (hom.cols() > 0) {
    std::vector<IntVector> images;
    for (std::size_t q = 0; q < hom.cols(); ++q) images.push_back(flatten(iota.matrix() * as_matrix(hom.column(q))));
    const IntVector v = reduce_against(flatten(s), lll_reduce(IntMatrix::from_columns(images, b.rank() * nc)));
    for (std::size_t i = 0; i < b.rank(); ++i)
      for (std::size_t j = 0; j < nc; ++j) s(i, j) = v[i * nc + j];
  }
  return EquivariantMap(c, b, s);
}

}  // namespace

std::optional<EquivariantMap> find_section(const ShortExactSequence& seq) {
  auto rep = check_exact(seq);
  if (!rep.exact) throw Error(Error::Kind::precondition, "find_section: sequence is not exact: " + rep.diagnostic);
  const auto& perm = seq.right.target().permutation_structure();
  auto s = perm ? permutation_section(seq.right, *perm) : general_section(seq);
  if (s) {
    if (!(seq.right.matrix() * s->matrix()).is_identity() || !s->is_equivariant())
      throw Error(Error::Kind::internal, "find_section: computed section fails verification");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Permutation bases

bool is_stable_basis(const GLattice& m, const IntMatrix& basis) {
  if (basis.rows() != m.rank() || basis.cols() != m.rank()) return false;
  auto inv = inverse_unimodular(basis);
  if (!inv) return false;
  for (int g = 0; g < m.group()->order(); ++g)
    if (!(*inv * m.action(g) * basis).is_permutation()) return false;
  return true;
}

namespace {

using SmallVec = std::vector<long>;

constexpr std::size_t kVectorBudget = 200000;
constexpr std::size_t kNodeBudget = 20000;

struct OrbitCandidate {
  std::vector<SmallVec> vectors;
  IntMatrix matrix;
};

class BasisSearch {
 public:
  BasisSearch(const GLattice& m, int bound) : m_(m), bound_(bound), r_(m.rank()) {
    for (const auto& a : m.actions()) {
      std::vector<SmallVec> rows(r_, SmallVec(r_));
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < r_; ++j) rows[i][j] = a(i, j).get_si();
      act_.push_back(std::move(rows));
    }
    fixed_rank_ = fixed_sublattice(m, whole_group(m.group())).cols();
  }

  PermutationSearch run() {
    PermutationSearch out;
    out.bound = bound_;
    for (std::size_t w = 1; w <= r_; ++w) {
      const std::size_t before = orbits_.size();
      SmallVec v(r_, 0);
      enumerate(v, 0, w, true);
      if (orbits_.size() > before && try_assemble()) {
        out.basis = result_;
        return out;
      }
      if (budget_hit_) {
        out.reason = "search budget exhausted";
        return out;
      }
    }
    out.reason = "no stable basis with entries in [-" + std::to_string(bound_) + ", " + std::to_string(bound_) + "]";
    return out;
  }

 private:
  void enumerate(SmallVec& v, std::size_t pos, std::size_t left, bool first) {
    if (budget_hit_) return;
    if (left == 0) {
      consider(v);
      return;
    }
    if (r_ - pos < left) return;
    for (long val = first ? 1 : -bound_; val <= bound_; ++val) {
      if (val == 0) continue;
      v[pos] = val;
      enumerate(v, pos + 1, left - 1, false);
      v[pos] = 0;
      if (budget_hit_) return;
    }
    enumerate(v, pos + 1, left, first);
  }

  SmallVec apply(int g, const SmallVec& v) const {
    SmallVec out(r_, 0);
    for (std::size_t i = 0; i < r_; ++i) {
      long acc = 0;
      for (std::size_t j = 0; j < r_; ++j) acc += act_[g][i][j] * v[j];
      out[i] = acc;
    }
    return out;
  }

  void consider(const SmallVec& v) {
    if (++vectors_ > kVectorBudget) {
      budget_hit_ = true;
      return;
    }
    if (seen_.count(v)) return;
    std::set<SmallVec> orbit;
    for (int g = 0; g < m_.group()->order(); ++g) orbit.insert(apply(g, v));
    for (const auto& u : orbit) {
      seen_.insert(u);
      SmallVec neg(u);
      for (auto& x : neg) x = -x;
      seen_.insert(neg);
    }
    if (orbit.size() > r_) return;
    std::vector<IntVector> cols;
    for (const auto& u : orbit) cols.emplace_back(u.begin(), u.end());
    IntMatrix mat = IntMatrix::from_columns(cols, r_);
    auto ed = elementary_divisors(mat);
    if (ed.size() != orbit.size()) return;
    for (const auto& d : ed)
      if (d != 1) return;
    orbits_.push_back(OrbitCandidate{std::vector<SmallVec>(orbit.begin(), orbit.end()), std::move(mat)});
  }

  bool try_assemble() {
    order_.resize(orbits_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return orbits_[a].vectors.size() < orbits_[b].vectors.size(); });
    nodes_ = 0;
    IntMatrix start(r_, 0);
    return dfs(0, start, 0);
  }

  bool dfs(std::size_t from, const IntMatrix& chosen, std::size_t count) {
    if (chosen.cols() == r_) {
      if (count != fixed_rank_ || !is_unimodular(chosen)) return false;
      result_ = chosen;
      return true;
    }
    if (count >= fixed_rank_) return false;
    for (std::size_t k = from; k < order_.size(); ++k) {
      if (++nodes_ > kNodeBudget) {
        budget_hit_ = true;
        return false;
      }
      const auto& cand = orbits_[order_[k]];
      if (chosen.cols() + cand.vectors.size() > r_) continue;
      IntMatrix next = hstack(chosen, cand.matrix);
      auto ed = elementary_divisors(next);
      if (ed.size() != next.cols() || std::any_of(ed.begin(), ed.end(), [](const Integer& d) { return d != 1; }))
        continue;
      if (dfs(k + 1, next, count + 1)) return true;
      if (budget_hit_) return false;
    }
    return false;
  }

  const GLattice& m_;
  long bound_;
  std::size_t r_;
  std::vector<std::vector<SmallVec>> act_;
  std::size_t fixed_rank_ = 0;
  std::set<SmallVec> seen_;
  std::vector<OrbitCandidate> orbits_;
  std::vector<std::size_t> order_;
  std::size_t vectors_ = 0;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  IntMatrix result_;
};

}  // namespace

PermutationSearch is_permutation_bounded(const GLattice& m, int bound) {
  if (bound < 1) throw Error(Error::Kind::invalid_parameter, "is_permutation_bounded: bound must be positive");
  PermutationSearch out;
  out.bound = bound;
  if (m.rank() == 0 || m.permutation_structure()) {
    out.basis = IntMatrix::identity(m.rank());
    return out;
  }
  for (const auto& a : m.actions())
    if (a.max_abs() > Integer(1) << 20) {
      out.reason = "action entries too large for the bounded search";
      return out;
    }
  auto fl = flasque_verdict(m);
  if (!fl.holds) {
    out.reason = "not permutation: H^-1 = " + fl.obstruction.to_string() + " at a subgroup of order " +
                 std::to_string(fl.failing->order());
    return out;
  }
  auto cf = coflasque_verdict(m);
  if (!cf.holds) {
    out.reason = "not permutation: H^1 = " + cf.obstruction.to_string() + " at a subgroup of order " +
                 std::to_string(cf.failing->order());
    return out;
  }
  return BasisSearch(m, bound).run();
}

PermutationSearch find_permutation_basis(const GLattice& m) {
  auto res = is_permutation_bounded(m, 2);
  if (res.found() || res.reason.rfind("not permutation", 0) == 0) return res;
  return is_permutation_bounded(m, 3);
}

// ---------------------------------------------------------------------------
// Invertibility

namespace {

InvertibilityCertificate assemble_certificate(const GLattice& m, std::vector<Subgroup> subs, std::vector<Integer> coef,
                                              std::vector<IntMatrix> witnesses) {
  const std::size_t r = m.rank();
  std::optional<GLattice> total;
  std::vector<EquivariantMap> moves;
  std::vector<GLattice> blocks;
  for (const auto& h : subs) {
    GLattice t = tensor(coset_lattice(h), m);
    moves.push_back(move_to_subgroup_iso(h, m));
    blocks.push_back(t);
    total = total ? direct_sum(*total, t) : t;
  }
  IntMatrix emb(total->rank(), r), ret(r, total->rank());
  std::size_t off = 0;
  for (std::size_t p = 0; p < subs.size(); ++p) {
    const std::size_t k = static_cast<std::size_t>(subs[p].index());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        emb(off + i * r + j, j) = coef[p];
        ret(j, off + i * r + j) = 1;
      }
    off += k * r;
  }
  return InvertibilityCertificate{std::move(subs),
                                  std::move(coef),
                                  std::move(witnesses),
                                  EquivariantMap(m, *total, emb),
                                  EquivariantMap(*total, m, ret),
                                  std::move(moves)};
}

}  // namespace

std::optional<InvertibilityCertificate> invertibility_certificate(const GLattice& m) {
  const GroupPtr& g = m.group();
  if (m.permutation_structure())
    return assemble_certificate(m, {whole_group(g)}, {Integer(1)}, {IntMatrix::identity(m.rank())});
  std::vector<Subgroup> subs;
  std::vector<IntMatrix> witnesses;
  for (int p : prime_divisors(g->order())) {
    Subgroup h = sylow(g, p);
    auto res = find_permutation_basis(restrict(m, h));
    if (!res.found()) return std::nullopt;
    subs.push_back(h);
    witnesses.push_back(*res.basis);
  }
  if (subs.empty()) return assemble_certificate(m, {whole_group(g)}, {Integer(1)}, {IntMatrix::identity(m.rank())});
  // Extended Euclid over the indices.
  std::vector<Integer> coef(subs.size(), 0);
  Integer d = subs[0].index();
  coef[0] = 1;
  for (std::size_t i = 1; i < subs.size(); ++i) {
    Integer gg, x, y;
    const Integer k = subs[i].index();
    mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t(), k.get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) coef[j] *= x;
    coef[i] = y;
    d = gg;
  }
  if (d != 1) throw Error(Error::Kind::internal, "invertibility_certificate: Sylow indices are not coprime");
  return assemble_certificate(m, std::move(subs), std::move(coef), std::move(witnesses));
}

std::string certificate_failure(const InvertibilityCertificate& c) {
  const GLattice& m = c.embedding.source();
  const std::size_t n = c.subgroups.size();
  if (n == 0 || c.coefficients.size() != n || c.witnesses.size() != n || c.moves.size() != n)
    return "inconsistent certificate sizes";
  Integer sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += c.coefficients[i] * c.subgroups[i].index();
  if (sum != 1) return "coefficients do not combine the indices to 1";
  if (!c.embedding.is_equivariant()) return "embedding is not equivariant";
  if (!c.retraction.is_equivariant()) return "retraction is not equivariant";
  if (!(c.retraction.matrix() * c.embedding.matrix()).is_identity()) return "retraction does not split the embedding";
  for (std::size_t i = 0; i < n; ++i) {
    const auto& h = c.subgroups[i];
    if (!(c.moves[i].source() == tensor(coset_lattice(h), m))) return "move source mismatch";
    if (!c.moves[i].is_isomorphism()) return "move is not an isomorphism";
    if (!is_stable_basis(restrict(m, h), c.witnesses[i])) return "witness is not a stable basis of the restriction";
  }
  return {};
}

}  // namespace glattice
