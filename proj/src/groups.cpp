#include "groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace glattice {

namespace {

std::string element_token(int i, int j) {
  if (i == 0 && j == 0) return "e";
  std::string s;
  if (i > 0) s += "s" + std::to_string(i);
  if (j == 1) s += "t";
  if (j > 1) s += "t" + std::to_string(j);
  return s;
}

long mod_pow(long base, long exp, long mod) {
  long result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

long mod_inverse(long a, long mod) {
  long t = 0, new_t = 1, r = mod, new_r = ((a % mod) + mod) % mod;
  while (new_r != 0) {
    long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += mod;
  return t;
}

// Table for sigma^i tau^j at index j*n + i with tau sigma tau^-1 = sigma^s.
std::vector<std::vector<int>> semidirect_table(int n, int m, long s) {
  const int order = n * m;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int i1 = a % n, j1 = a / n, i2 = b % n, j2 = b / n;
      const long i = (i1 + i2 * mod_pow(s, j1, n)) % n;
      const int j = (j1 + j2) % m;
      t[a][b] = static_cast<int>(j * n + i);
    }
  return t;
}

std::string cycle_name(const std::vector<int>& p) {
  std::string s;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x] || p[x] == static_cast<int>(x)) continue;
    s += "(";
    for (std::size_t y = x; !seen[y]; y = static_cast<std::size_t>(p[y])) {
      seen[y] = true;
      s += std::to_string(y + 1);
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

int popcount(ElementMask m) { return __builtin_popcountll(m); }

}  // namespace

// ---------------------------------------------------------------------------

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)) {
  const int n = static_cast<int>(table_.size());
  if (n < 1 || n > kMaxGroupOrder)
    throw Error(Error::Kind::invalid_parameter, "group order must be in [1, 64], got " + std::to_string(n));
  if (static_cast<int>(names_.size()) != n) throw Error(Error::Kind::invalid_parameter, "group: one name per element required");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error(Error::Kind::invalid_parameter, "group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw Error(Error::Kind::invalid_parameter, "group table is not closed");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error(Error::Kind::invalid_parameter, "group table has no identity");
  inverses_.assign(n, -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (table_[g][h] == identity_ && table_[h][g] == identity_) {
        inverses_[g] = h;
        break;
      }
  for (int g = 0; g < n; ++g)
    if (inverses_[g] < 0) throw Error(Error::Kind::invalid_parameter, "element " + names_[g] + " has no inverse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error(Error::Kind::invalid_parameter, "group table is not associative");
  std::set<std::string> distinct(names_.begin(), names_.end());
  if (static_cast<int>(distinct.size()) != n) throw Error(Error::Kind::invalid_parameter, "element names must be distinct");

  ElementMask generated = ElementMask{1} << identity_;
  for (int g = 0; g < n; ++g) {
    if ((generated >> g) & 1U) continue;
    generators_.push_back(g);
    generated = closure(*this, generators_);
  }
}

int FiniteGroup::power(int g, long k) const {
  const int ord = element_order(g);
  long e = k % ord;
  if (e < 0) e += ord;
  int x = identity_;
  for (long i = 0; i < e; ++i) x = mul(x, g);
  return x;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  for (int x = g; x != identity_; x = mul(x, g)) ++k;
  return k;
}

std::optional<int> FiniteGroup::find(const std::string& name) const {
  for (int g = 0; g < order(); ++g)
    if (names_[g] == name) return g;
  return std::nullopt;
}

bool FiniteGroup::same_as(const FiniteGroup& other) const { return this == &other || table_ == other.table_; }

void FiniteGroup::set_family(GroupFamily f, std::vector<int> params, std::string label) {
  family_ = f;
  parameters_ = std::move(params);
  label_ = std::move(label);
}

void FiniteGroup::set_sigma_tau(std::optional<int> s, std::optional<int> t) {
  sigma_ = s;
  tau_ = t;
}

void FiniteGroup::set_permutations(std::vector<std::vector<int>> p) { perms_ = std::move(p); }
void FiniteGroup::set_factors(std::vector<GroupPtr> f) { factors_ = std::move(f); }

// ---------------------------------------------------------------------------
// Constructors

GroupPtr semidirect(int n, int m, int r) {
  if (n < 1 || m < 1) throw Error(Error::Kind::invalid_parameter, "semidirect: n and m must be positive");
  if (n * m > kMaxGroupOrder)
    throw Error(Error::Kind::invalid_parameter, "semidirect: order n*m = " + std::to_string(n * m) + " exceeds 64");
  if (std::gcd(r, n) != 1 && n > 1)
    throw Error(Error::Kind::invalid_parameter,
                "semidirect: gcd(r, n) = gcd(" + std::to_string(r) + ", " + std::to_string(n) + ") != 1");
  if (mod_pow(r, m, n) != 1 % n)
    throw Error(Error::Kind::invalid_parameter, "semidirect: congruence r^m == 1 (mod n) fails: " + std::to_string(r) + "^" +
                                                    std::to_string(m) + " mod " + std::to_string(n) + " = " +
                                                    std::to_string(mod_pow(r, m, n)));
  const long s = n == 1 ? 0 : mod_inverse(r, n);
  std::vector<std::string> names;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) names.push_back(element_token(i, j));
  auto g = std::make_shared<FiniteGroup>(semidirect_table(n, m, s), std::move(names));
  g->set_family(GroupFamily::semidirect, {n, m, r},
                "SD:" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r));
  g->set_sigma_tau(n > 1 ? std::optional<int>(1) : std::nullopt, m > 1 ? std::optional<int>(n) : std::nullopt);
  return g;
}

GroupPtr cyclic(int n) {
  if (n < 1 || n > kMaxGroupOrder)
    throw Error(Error::Kind::invalid_parameter, "cyclic: order must be in [1, 64], got " + std::to_string(n));
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(element_token(a, 0));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  auto g = std::make_shared<FiniteGroup>(std::move(t), std::move(names));
  g->set_family(GroupFamily::cyclic, {n}, "C:" + std::to_string(n));
  g->set_sigma_tau(n > 1 ? std::optional<int>(1) : std::nullopt, std::nullopt);
  return g;
}

GroupPtr dihedral(int n) {
  if (n < 1 || 2 * n > kMaxGroupOrder)
    throw Error(Error::Kind::invalid_parameter, "dihedral: 2n must be in [2, 64], got n = " + std::to_string(n));
  auto base = semidirect(n, 2, n == 1 ? 0 : n - 1);
  auto g = std::make_shared<FiniteGroup>(base->table(), base->names());
  g->set_family(GroupFamily::dihedral, {n}, "D:" + std::to_string(n));
  g->set_sigma_tau(base->sigma(), base->tau());
  return g;
}

namespace {

GroupPtr group_from_permutations(std::vector<std::vector<int>> perms) {
  std::sort(perms.begin(), perms.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t k = 0; k < perms.size(); ++k) index[perms[k]] = static_cast<int>(k);
  const int order = static_cast<int>(perms.size());
  const std::size_t n = perms.front().size();
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index.at(c);
    }
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(cycle_name(q));
  auto g = std::make_shared<FiniteGroup>(std::move(t), std::move(names));
  g->set_permutations(std::move(perms));
  return g;
}

}  // namespace

GroupPtr symmetric(int n) {
  if (n < 1 || n > 4)
    throw Error(Error::Kind::invalid_parameter,
                "symmetric: degree must be in [1, 4] (order cap 64), got " + std::to_string(n));
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto g = group_from_permutations(std::move(perms));
  std::const_pointer_cast<FiniteGroup>(g)->set_family(GroupFamily::symmetric, {n}, "S:" + std::to_string(n));
  return g;
}

GroupPtr permutation_group(int degree, const std::vector<std::vector<int>>& gens) {
  if (degree < 1) throw Error(Error::Kind::invalid_parameter, "permutation_group: degree must be positive");
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : gens) {
    auto sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) throw Error(Error::Kind::invalid_parameter, "permutation_group: generator is not a permutation");
  }
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        std::vector<int> y(degree);
        for (int k = 0; k < degree; ++k) y[k] = x[s[k]];
        if (seen.insert(y).second) {
          if (static_cast<int>(seen.size()) > kMaxGroupOrder)
            throw Error(Error::Kind::invalid_parameter, "permutation_group: generated group exceeds order 64");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  auto g = group_from_permutations({seen.begin(), seen.end()});
  std::const_pointer_cast<FiniteGroup>(g)->set_family(GroupFamily::other, {degree}, "Perm:" + std::to_string(degree));
  return g;
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
  const int a = g->order(), b = h->order();
  if (a * b > kMaxGroupOrder)
    throw Error(Error::Kind::invalid_parameter, "direct_product: order " + std::to_string(a * b) + " exceeds 64");
  std::vector<std::vector<int>> t(a * b, std::vector<int>(a * b));
  std::vector<std::string> names;
  for (int x = 0; x < a * b; ++x) {
    names.push_back(g->name(x / b) + "|" + h->name(x % b));
    for (int y = 0; y < a * b; ++y) t[x][y] = g->mul(x / b, y / b) * b + h->mul(x % b, y % b);
  }
  auto p = std::make_shared<FiniteGroup>(std::move(t), std::move(names));
  p->set_family(GroupFamily::product, {}, "X(" + g->label() + "," + h->label() + ")");
  p->set_factors({g, h});
  return p;
}

// ---------------------------------------------------------------------------
// Subgroups

ElementMask closure(const FiniteGroup& g, const std::vector<int>& gens) {
  ElementMask seen = ElementMask{1} << g.identity();
  std::vector<int> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int s : gens) {
        const int y = g.mul(x, s);
        if (!((seen >> y) & 1U)) {
          seen |= ElementMask{1} << y;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

ElementMask closure(const FiniteGroup& g, ElementMask gens) {
  std::vector<int> list;
  for (int x = 0; x < g.order(); ++x)
    if ((gens >> x) & 1U) list.push_back(x);
  return closure(g, list);
}

Subgroup::Subgroup(GroupPtr parent, ElementMask mask) : parent_(std::move(parent)), mask_(mask) {
  for (int x = 0; x < parent_->order(); ++x)
    if ((mask_ >> x) & 1U) elements_.push_back(x);
  if (!contains(parent_->identity())) throw Error(Error::Kind::invalid_parameter, "subgroup must contain the identity");
  for (int a : elements_) {
    if (!contains(parent_->inv(a))) throw Error(Error::Kind::invalid_parameter, "subgroup not closed under inverses");
    for (int b : elements_)
      if (!contains(parent_->mul(a, b))) throw Error(Error::Kind::invalid_parameter, "subgroup not closed under products");
  }
  if (parent_->order() % order() != 0) throw Error(Error::Kind::internal, "subgroup order does not divide group order");
  const int k = order();
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  std::vector<std::string> names;
  for (int a = 0; a < k; ++a) {
    names.push_back(parent_->name(elements_[a]));
    for (int b = 0; b < k; ++b) t[a][b] = to_local(parent_->mul(elements_[a], elements_[b]));
  }
  auto g = std::make_shared<FiniteGroup>(std::move(t), std::move(names));
  std::string label = "<";
  for (std::size_t i = 0; i < generators().size(); ++i) label += (i ? "," : "") + parent_->name(generators()[i]);
  g->set_family(GroupFamily::subgroup, {}, parent_->label() + label + ">");
  group_ = std::move(g);
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements) : Subgroup(parent, [&] {
  ElementMask m = 0;
  for (int x : elements) {
    if (x < 0 || x >= parent->order()) throw Error(Error::Kind::invalid_parameter, "subgroup element out of range");
    m |= ElementMask{1} << x;
  }
  return m;
}()) {}

int Subgroup::to_local(int parent_element) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), parent_element);
  if (it == elements_.end() || *it != parent_element)
    throw Error(Error::Kind::mismatch, "element " + parent_->name(parent_element) + " is not in the subgroup");
  return static_cast<int>(it - elements_.begin());
}

bool Subgroup::is_cyclic() const { return cyclic_generator().has_value(); }

std::optional<int> Subgroup::cyclic_generator() const {
  for (int x : elements_)
    if (parent_->element_order(x) == order()) return x;
  return std::nullopt;
}

std::vector<int> Subgroup::generators() const {
  std::vector<int> gens;
  ElementMask generated = ElementMask{1} << parent_->identity();
  for (int x : elements_) {
    if ((generated >> x) & 1U) continue;
    gens.push_back(x);
    generated = closure(*parent_, gens);
  }
  return gens;
}

std::vector<int> Subgroup::left_coset_representatives() const {
  std::vector<int> reps;
  ElementMask covered = 0;
  for (int g = 0; g < parent_->order(); ++g) {
    if ((covered >> g) & 1U) continue;
    reps.push_back(g);
    for (int h : elements_) covered |= ElementMask{1} << parent_->mul(g, h);
  }
  return reps;
}

Subgroup Subgroup::conjugate(int g) const {
  ElementMask m = 0;
  for (int h : elements_) m |= ElementMask{1} << parent_->conj(g, h);
  return Subgroup(parent_, m);
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, ElementMask{1} << g->identity()); }

Subgroup whole_group(const GroupPtr& g) {
  const ElementMask all = g->order() == 64 ? ~ElementMask{0} : (ElementMask{1} << g->order()) - 1;
  return Subgroup(g, all);
}

Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens) { return Subgroup(g, closure(*g, gens)); }

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  // Grow the family by joining each known subgroup with one more element
  // until nothing new appears; every subgroup arises this way.
  struct Entry {
    ElementMask mask;
    std::vector<int> gens;
  };
  std::vector<Entry> found;
  std::unordered_set<ElementMask> seen;
  auto add = [&](ElementMask m, std::vector<int> gens) {
    if (seen.insert(m).second) found.push_back({m, std::move(gens)});
  };
  add(ElementMask{1} << g->identity(), {});
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (int x = 0; x < g->order(); ++x) {
      if ((found[k].mask >> x) & 1U) continue;
      std::vector<int> gens = found[k].gens;
      gens.push_back(x);
      add(closure(*g, gens), gens);
    }
  }
  std::sort(found.begin(), found.end(), [](const Entry& a, const Entry& b) {
    const int pa = popcount(a.mask), pb = popcount(b.mask);
    return pa != pb ? pa < pb : a.mask < b.mask;
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& e : found) out.emplace_back(g, e.mask);
  return out;
}

std::vector<Subgroup> subgroup_conjugacy_reps(const GroupPtr& g) {
  std::vector<Subgroup> reps;
  std::unordered_set<ElementMask> covered;
  for (const auto& h : all_subgroups(g)) {
    if (covered.count(h.mask())) continue;
    reps.push_back(h);
    for (int x = 0; x < g->order(); ++x) covered.insert(h.conjugate(x).mask());
  }
  return reps;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> ps;
  for (int p = 2; p <= n; ++p)
    if (n % p == 0 && is_prime(p)) ps.push_back(p);
  return ps;
}

Subgroup sylow(const GroupPtr& g, int p) {
  if (!is_prime(p) || g->order() % p != 0)
    throw Error(Error::Kind::invalid_parameter,
                "sylow: " + std::to_string(p) + " is not a prime dividing |G| = " + std::to_string(g->order()));
  int target = 1;
  for (int n = g->order(); n % p == 0; n /= p) target *= p;
  for (auto& h : all_subgroups(g))
    if (h.order() == target) return h;
  throw Error(Error::Kind::internal, "sylow: no subgroup of order " + std::to_string(target));
}

bool is_z_group(const GroupPtr& g) {
  for (int p : prime_divisors(g->order()))
    if (!sylow(g, p).is_cyclic()) return false;
  return true;
}

}  // namespace glattice
