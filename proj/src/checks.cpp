#include "checks.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "specs.hpp"

namespace glattice {

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  Recorder(std::string id, std::string group, std::map<std::string, std::string> params) : start_(Clock::now()) {
    rep_.check_id = std::move(id);
    rep_.group = std::move(group);
    rep_.parameters = std::move(params);
  }

  bool expect(const std::string& name, bool ok, const std::string& detail = {}) {
    rep_.assertions.push_back(Assertion{name, ok, detail});
    return ok;
  }

  // Runs body; an exception becomes a failed assertion named after the step.
  bool step(const std::string& name, const std::function<void()>& body) {
    try {
      body();
      return true;
    } catch (const std::exception& e) {
      expect(name, false, std::string("exception: ") + e.what());
      return false;
    }
  }

  CheckReport finish() {
    rep_.status = CheckStatus::pass;
    if (rep_.assertions.empty()) rep_.status = CheckStatus::fail;
    for (const auto& a : rep_.assertions)
      if (!a.passed) rep_.status = CheckStatus::fail;
    rep_.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return rep_;
  }

 private:
  CheckReport rep_;
  Clock::time_point start_;
};

std::string names_of(const GroupPtr& g, const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + g->name(s[i]);
  return out;
}

std::string str(std::size_t x) { return std::to_string(x); }

IntVector coords(const IntMatrix& basis, const IntVector& v, const char* what) {
  auto c = solve(basis, v);
  if (!c) throw Error(Error::Kind::internal, std::string(what) + ": vector outside the lattice");
  return *c;
}

IntMatrix coords(const IntMatrix& basis, const IntMatrix& vs, const char* what) {
  if (vs.cols() == 0) return IntMatrix(basis.cols(), 0);
  auto c = solve_columns(basis, vs);
  if (!c) throw Error(Error::Kind::internal, std::string(what) + ": vectors outside the lattice");
  return *c;
}

bool all_ones(const std::vector<Integer>& d, std::size_t count) {
  return d.size() == count && std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 1; });
}

bool rank_formula(Recorder& rec, const GGraph& x, const FlowLattice& fl, const std::string& label = "rank formula") {
  const long expected = static_cast<long>(x.num_edges()) - x.num_vertices() + 1;
  return rec.expect(label, static_cast<long>(fl.lattice.rank()) == expected,
                    "rank " + str(fl.lattice.rank()) + ", |E|-|V|+1 = " + std::to_string(expected));
}

// Point of the coset containing the identity.
int identity_point(const Subgroup& h) {
  const auto reps = h.left_coset_representatives();
  const auto& g = *h.parent();
  for (std::size_t k = 0; k < reps.size(); ++k)
    if (h.contains(g.inv(reps[k]))) return static_cast<int>(k);
  throw Error(Error::Kind::internal, "identity coset not found");
}

// Columns rho(t_k) x over the left coset representatives t_k of h.
IntMatrix orbit_columns(const GLattice& m, const Subgroup& h, const IntVector& x) {
  std::vector<IntVector> cols;
  for (int t : h.left_coset_representatives()) cols.push_back(m.action(t) * x);
  return IntMatrix::from_columns(cols, m.rank());
}

IntVector edge_path(const GGraph& x, const std::vector<int>& verts) {
  IntVector f(x.num_edges(), 0);
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    auto e = x.find_edge(verts[i], verts[i + 1]);
    if (!e) throw Error(Error::Kind::internal, "edge_path: missing edge");
    f[*e] += 1;
  }
  return f;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

IntVector act_edges(const GGraph& x, int g, const IntVector& f) {
  IntVector out(f.size(), 0);
  for (std::size_t e = 0; e < f.size(); ++e) out[x.edge_image(g, static_cast<int>(e))] += f[e];
  return out;
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// ---------------------------------------------------------------------------
// Shared construction for the semidirect checks.

struct KernelSetup {
  int n = 0, m = 0, r = 0;
  GroupPtr g;
  int sigma = 0, tau = 0;
  GGraph graph;
  FlowLattice fl;
  Subgroup hs, ht;
  GSet cs, ct;
  GLattice d;
  EquivariantMap pi;
  EquivariantMap inc;
  IntMatrix gens;  // V_g for every g, then U_{tau^j}
  IntMatrix u;     // U columns ordered by coset point of Z[G/<sigma>]
  std::size_t os = 0, ot = 0, oa = 0;
};

void check_semidirect_params(int n, int m, int r) {
  if (n < 2) throw Error(Error::Kind::precondition, "n must be at least 2");
  if (m < 2) throw Error(Error::Kind::precondition, "m must be at least 2");
  if (std::gcd(n, m) != 1) throw Error(Error::Kind::precondition, "gcd(n, m) != 1");
  if (std::gcd(r, n) != 1) throw Error(Error::Kind::precondition, "gcd(r, n) != 1");
  Integer rm;
  mpz_ui_pow_ui(rm.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(m));
  if ((rm - 1) % n != 0) throw Error(Error::Kind::precondition, "r^m != 1 (mod n)");
  if (((r % n) + n) % n == 1) throw Error(Error::Kind::precondition, "sigma^r == sigma");
}

KernelSetup make_kernel_setup(int n, int m, int r) {
  check_semidirect_params(n, m, r);
  GroupPtr g = semidirect(n, m, r);
  const int sigma = *g->sigma(), tau = *g->tau();
  GGraph x = cayley_graph(g, {sigma, tau});
  FlowLattice fl = flow_lattice(x);
  Subgroup hs = generated_subgroup(g, {sigma}), ht = generated_subgroup(g, {tau});
  const int e = g->identity();
  auto sp = [&](int k) { return g->power(sigma, k); };
  auto tp = [&](int k) { return g->power(tau, k); };

  std::vector<int> sv, tv;
  for (int i = 0; i <= n; ++i) sv.push_back(sp(i));
  for (int j = 0; j <= m; ++j) tv.push_back(tp(j));
  const IntVector s_edges = edge_path(x, sv), t_edges = edge_path(x, tv);
  if (g->mul(sigma, tau) != g->mul(tau, sp(r))) throw Error(Error::Kind::internal, "sigma tau != tau sigma^r");
  std::vector<int> long_path{e, tau};
  for (int i = 1; i <= r; ++i) long_path.push_back(g->mul(tau, sp(i)));
  const IntVector a_edges = sub(edge_path(x, {e, sigma, g->mul(sigma, tau)}), edge_path(x, long_path));

  const IntVector s_m = coords(fl.basis, s_edges, "S"), t_m = coords(fl.basis, t_edges, "T"),
                  a_m = coords(fl.basis, a_edges, "A");
  const GLattice d = direct_sum(direct_sum(coset_lattice(hs), coset_lattice(ht)), regular(g));
  const IntMatrix pim = hstack(hstack(orbit_columns(fl.lattice, hs, s_m), orbit_columns(fl.lattice, ht, t_m)),
                               orbit_columns(fl.lattice, trivial_subgroup(g), a_m));
  EquivariantMap pi(d, fl.lattice, pim);
  EquivariantMap inc = kernel_inclusion(pi);

  GSet cs = coset_gset(hs), ct = coset_gset(ht);
  const int ps0 = identity_point(hs), pt0 = identity_point(ht);
  const std::size_t os = 0, ot = static_cast<std::size_t>(m), oa = static_cast<std::size_t>(m + n);
  const std::size_t dim = d.rank();
  // The regular summand orders its basis by element index.
  auto a_pos = [&](int el) { return oa + static_cast<std::size_t>(el); };

  Integer rm;
  mpz_ui_pow_ui(rm.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(m));
  if ((rm - 1) % n != 0) throw Error(Error::Kind::internal, "(r^m - 1)/n is not an integer");
  const Integer q = (rm - 1) / n;

  std::vector<IntVector> cols;
  for (int el = 0; el < g->order(); ++el) {
    IntVector v(dim, 0);
    for (int j = 0; j < m; ++j) {
      const long count = ipow(r, j);
      for (long i = 0; i < count; ++i) v[a_pos(g->mul(el, g->mul(tp(j), sp(static_cast<int>(i % n)))))] += 1;
    }
    v[os + cs(el, ps0)] += q;
    v[ot + ct(el, pt0)] += 1;
    v[ot + ct(g->mul(el, sigma), pt0)] -= 1;
    cols.push_back(v);
  }
  std::vector<IntVector> ucols(m, IntVector(dim, 0));
  for (int j = 0; j < m; ++j) {
    IntVector v(dim, 0);
    const int tj = tp(j);
    for (int i = 0; i < n; ++i) v[a_pos(g->mul(tj, sp(i)))] += 1;
    v[os + cs(tj, ps0)] -= 1;
    v[os + cs(g->mul(tj, tau), ps0)] += r;
    cols.push_back(v);
    ucols[cs(tj, ps0)] = v;
  }
  KernelSetup k{n, m, r, g, sigma, tau, x, fl, hs, ht, cs, ct, d, pi, inc,
                IntMatrix::from_columns(cols, dim), IntMatrix::from_columns(ucols, dim), os, ot, oa};
  return k;
}

std::map<std::string, std::string> nmr_params(int n, int m, int r) {
  return {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"r", std::to_string(r)}};
}

std::string nmr_label(int n, int m, int r) {
  return "SD:" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r);
}

// The projection of ker(pi) onto the Z[G/<tau>] block, in the basis of I_{G/<tau>}.
struct QuotientMap {
  EquivariantMap phi;
  IntMatrix u_coords;  // M_0 inside ker(pi)
};

QuotientMap quotient_map(const KernelSetup& k) {
  const IntMatrix& kb = k.inc.matrix();
  std::vector<std::size_t> trows;
  for (int i = 0; i < k.n; ++i) trows.push_back(k.ot + i);
  const IntMatrix tk = kb.select_rows(trows);
  const IntMatrix phi = coords(augmentation_basis(k.n), tk, "phi");
  return QuotientMap{EquivariantMap(k.inc.source(), augmentation_lattice(k.ct), phi), coords(kb, k.u, "U")};
}

}  // namespace

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "fail";
}

namespace {

nlohmann::ordered_json report_object(const CheckReport& r, bool with_elapsed) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["group"] = r.group;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["status"] = status_name(r.status);
  if (r.status == CheckStatus::skipped) j["reason"] = r.skip_reason;
  nlohmann::ordered_json as = nlohmann::ordered_json::array();
  for (const auto& a : r.assertions) {
    nlohmann::ordered_json x;
    x["name"] = a.name;
    x["status"] = a.passed ? "pass" : "fail";
    x["detail"] = a.detail;
    as.push_back(x);
  }
  j["assertions"] = as;
  if (with_elapsed) j["elapsed_ms"] = static_cast<long long>(r.elapsed_ms + 0.5);
  return j;
}

}  // namespace

std::string CheckReport::to_json(bool with_elapsed, int indent) const { return report_object(*this, with_elapsed).dump(indent); }

// ---------------------------------------------------------------------------

CheckReport check_cyclic_flows(int n, const std::vector<int>& s) {
  GroupPtr g = cyclic(n);
  if (!g->sigma()) throw Error(Error::Kind::precondition, "cyclic_flows: n must be at least 2");
  const int sigma = *g->sigma();
  if (std::find(s.begin(), s.end(), sigma) == s.end())
    throw Error(Error::Kind::precondition, "cyclic_flows: sigma is not in S");
  Recorder rec("cyclic-flows", g->label(), {{"gens", names_of(g, s)}});
  rec.step("construction", [&] {
    GGraph x = cayley_graph(g, s);
    GGraph xp = cayley_graph(g, {sigma});
    FlowLattice fl = flow_lattice(x), flp = flow_lattice(xp);
    rank_formula(rec, x, fl);
    const int m = removed_orbit_count(x, xp);
    rec.expect("removed orbits", m == static_cast<int>(s.size()) - 1, "m = " + std::to_string(m));
    EquivariantMap iso = remove_edges_decomposition(fl, flp);
    rec.expect("decomposition is an isomorphism", iso.is_isomorphism(),
               "source rank " + str(iso.source().rank()) + ", target rank " + str(iso.target().rank()));
    bool trivial_z = flp.lattice.rank() == 1;
    for (const auto& a : flp.lattice.actions()) trivial_z = trivial_z && a.is_identity();
    rec.expect("Z summand is trivial", trivial_z, "rank " + str(flp.lattice.rank()));
    const GLattice fr = free_lattice(g, m);
    rec.expect("complement is free", iso.source() == direct_sum(flp.lattice, fr) && fr.permutation_structure()->is_free(),
               "complement rank " + str(fr.rank()));
  });
  return rec.finish();
}

CheckReport check_kernel_generators(int n, int m, int r) {
  check_semidirect_params(n, m, r);
  Recorder rec("kernel-generators", nmr_label(n, m, r), nmr_params(n, m, r));
  rec.step("construction", [&] {
    const KernelSetup k = make_kernel_setup(n, m, r);
    rank_formula(rec, k.graph, k.fl);
    rec.expect("pi is equivariant", k.pi.is_equivariant());
    rec.expect("(a) pi is surjective", solve_columns(k.pi.matrix(), IntMatrix::identity(k.fl.lattice.rank())).has_value());
    const IntMatrix& kb = k.inc.matrix();
    rec.expect("generators lie in ker(pi)", (k.pi.matrix() * k.gens).is_zero());
    const auto c = solve_columns(kb, k.gens);
    const bool span = c && all_ones(elementary_divisors(*c), kb.cols());
    rec.expect("(b) generators span ker(pi)", span, "kernel rank " + str(kb.cols()));
    rec.expect("(c) rank of ker(pi)", static_cast<int>(kb.cols()) == n + m - 1,
               "rank " + str(kb.cols()) + ", n+m-1 = " + std::to_string(n + m - 1));

    const QuotientMap qm = quotient_map(k);
    const GLattice& kerl = k.inc.source();
    EquivariantMap m0(coset_lattice(k.hs), kerl, qm.u_coords);
    std::vector<std::size_t> trows;
    for (int i = 0; i < n; ++i) trows.push_back(k.ot + i);
    const IntMatrix in_as = kernel_basis(kb.select_rows(trows));
    const bool m0_ok = m0.is_equivariant() && is_saturated(qm.u_coords) && rank(qm.u_coords) == static_cast<std::size_t>(m) &&
                       sublattice(kerl, qm.u_coords) == coset_lattice(k.hs);
    rec.expect("(d) M_0 is Z[G/<sigma>]", m0_ok, "rank " + str(qm.u_coords.cols()));
    rec.expect("(d) M_0 = ker(pi) meet <A,S>", same_column_lattice(in_as, qm.u_coords));

    const bool onto = solve_columns(qm.phi.matrix(), IntMatrix::identity(n - 1)).has_value();
    const bool ker_is_m0 = same_column_lattice(kernel_basis(qm.phi.matrix()), qm.u_coords);
    const auto quot = cokernel_invariants(qm.u_coords);
    rec.expect("(e) ker(pi)/M_0 is I_{G/<tau>}",
               qm.phi.is_equivariant() && onto && ker_is_m0 && quot.torsion.empty() && quot.free_rank == static_cast<std::size_t>(n - 1),
               "quotient free rank " + str(quot.free_rank));

    auto cv = coflasque_verdict(kerl);
    rec.expect("(f) ker(pi) is coflasque", cv.holds, cv.holds ? "" : cv.obstruction.to_string());

    auto s = find_section(ShortExactSequence{k.inc, k.pi});
    bool split = false;
    if (s) split = EquivariantMap(direct_sum(kerl, k.fl.lattice), k.d, hstack(kb, s->matrix())).is_isomorphism();
    rec.expect("(g) ker(pi) + M = ZG + Z[G/<sigma>] + Z[G/<tau>]", split, s ? "" : "no section");
  });
  return rec.finish();
}

CheckReport check_flow_coflasque(const GroupPtr& g, const std::vector<int>& s) {
  if (closure(*g, s) != whole_group(g).mask()) throw Error(Error::Kind::precondition, "flow_coflasque: S does not generate G");
  Recorder rec("flow-coflasque", g->label(), {{"gens", names_of(g, s)}});
  rec.step("construction", [&] {
    GGraph x = cayley_graph(g, s);
    FlowLattice fl = flow_lattice(x);
    rank_formula(rec, x, fl);
    auto cv = coflasque_verdict(fl.lattice);
    rec.expect("flows are coflasque", cv.holds,
               cv.holds ? "" : "H^1 = " + cv.obstruction.to_string() + " at order " + std::to_string(cv.failing->order()));
    EquivariantMap bd = boundary_matrix(x);
    const GLattice iv = augmentation_lattice(regular_gset(g));
    EquivariantMap right(bd.source(), iv, coords(augmentation_basis(g->order()), bd.matrix(), "boundary"));
    ResolutionCertificate cert{ShortExactSequence{fl.inclusion(), right}, ResolutionKind::coflasque, x.edge_set()};
    const std::string why = certificate_failure(cert);
    rec.expect("boundary sequence is a coflasque resolution of I_G", why.empty(), why);
  });
  return rec.finish();
}

CheckReport check_bar_cocycle(const GroupPtr& g) {
  const int order = g->order();
  if (order < 2) throw Error(Error::Kind::precondition, "bar_cocycle: |G| must be at least 2");
  Recorder rec("bar-cocycle", g->label(), {});
  rec.step("construction", [&] {
    const int e = g->identity();
    std::vector<int> s;
    for (int x = 0; x < order; ++x)
      if (x != e) s.push_back(x);
    GGraph x = cayley_graph(g, s);
    const std::size_t ne = x.num_edges();
    std::vector<std::vector<IntVector>> d(order, std::vector<IntVector>(order, IntVector(ne, 0)));
    std::vector<IntVector> dg(order, IntVector(ne, 0));
    for (int a = 0; a < order; ++a)
      if (a != e) dg[a] = edge_path(x, {e, a});
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) {
        if (a == e || b == e) continue;
        const int ab = g->mul(a, b);
        if (ab == e) d[a][b] = add(edge_path(x, {e, a}), edge_path(x, {a, e}));
        else d[a][b] = sub(edge_path(x, {e, a, ab}), edge_path(x, {e, ab}));
      }
    const IntMatrix bd = boundary_matrix(x).matrix();
    bool flows = true;
    std::vector<IntVector> cand;
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        if (a != e && b != e) {
          flows = flows && is_zero_vector(bd * d[a][b]);
          cand.push_back(d[a][b]);
        }
    rec.expect("d(g,h) are flows", flows);
    std::vector<int> tree;
    for (int a = 0; a < order; ++a)
      if (a != e) tree.push_back(*x.find_edge(e, a));
    auto basis = spanning_tree_basis(x, tree, IntMatrix::from_columns(cand, ne));
    rec.expect("d(g,h) form a basis (star tree)", basis.lattice.has_value(), basis.diagnostic);
    FlowLattice fl = flow_lattice(x);
    rank_formula(rec, x, fl);

    long triples = 0, bad = 0;
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c) {
          ++triples;
          const IntVector lhs = add(d[a][b], d[g->mul(a, b)][c]);
          const IntVector rhs = add(d[a][g->mul(b, c)], act_edges(x, a, d[b][c]));
          if (lhs != rhs) ++bad;
        }
    rec.expect("cocycle identity on all triples", bad == 0,
               std::to_string(triples) + " triples, " + std::to_string(bad) + " failures");
    long pairs_bad = 0;
    for (int h = 0; h < order; ++h)
      for (int a = 0; a < order; ++a) {
        if (h == e || a == e) continue;
        const IntVector rhs = sub(add(dg[h], act_edges(x, h, dg[a])), dg[g->mul(h, a)]);
        if (d[h][a] != rhs) ++pairs_bad;
      }
    rec.expect("d(h,g) = d_h + h(d_g) - d_hg", pairs_bad == 0, std::to_string(pairs_bad) + " failures");
  });
  return rec.finish();
}

CheckReport check_center_walks(const GroupPtr& g, int max_len) {
  if (max_len < g->order() + 1) throw Error(Error::Kind::precondition, "center_walks: max_len must be at least |G|+1");
  Recorder rec("center-walks", g->label(), {{"max_len", std::to_string(max_len)}});
  rec.step("construction", [&] {
    std::vector<int> all(g->order());
    std::iota(all.begin(), all.end(), 0);
    GGraph x = cayley_graph(g, all);
    FlowLattice fl = flow_lattice(x);
    rank_formula(rec, x, fl);
    const int e = g->identity();
    const int ne = x.num_edges();
    std::vector<std::vector<int>> edge_of(g->order(), std::vector<int>(g->order()));
    for (int u = 0; u < g->order(); ++u)
      for (int v = 0; v < g->order(); ++v) edge_of[u][v] = *x.find_edge(u, v);

    std::set<std::vector<long>> flows;
    std::vector<long> counts(ne, 0);
    long walks = 0;
    std::function<void(int, int)> dfs = [&](int at, int len) {
      if (len > 0 && at == e) {
        ++walks;
        flows.insert(counts);
      }
      if (len == max_len) return;
      for (int v = 0; v < g->order(); ++v) {
        ++counts[edge_of[at][v]];
        dfs(v, len + 1);
        --counts[edge_of[at][v]];
      }
    };
    dfs(e, 0);

    const IntMatrix bd = boundary_matrix(x).matrix();
    IntMatrix span(0, ne);
    std::vector<IntVector> batch;
    bool all_flows = true;
    auto flush = [&] {
      if (batch.empty()) return;
      span = row_hermite(vstack(span, IntMatrix::from_rows(batch, ne)));
      batch.clear();
    };
    for (const auto& f : flows) {
      IntVector v(f.begin(), f.end());
      all_flows = all_flows && is_zero_vector(bd * v);
      batch.push_back(std::move(v));
      if (batch.size() >= 256) flush();
    }
    flush();
    rec.expect("walks give flows", all_flows, std::to_string(walks) + " closed walks, " + str(flows.size()) + " distinct");
    const IntMatrix span_cols = span.transpose();
    const IntMatrix sat = span_cols.cols() ? kernel_basis(kernel_basis(span_cols.transpose()).transpose()) : IntMatrix(ne, 0);
    rec.expect("saturated span equals the flow lattice", same_column_lattice(sat, fl.basis),
               "span rank " + str(span.rows()) + ", flow rank " + str(fl.lattice.rank()));
    rec.expect("span equals the flow lattice", same_column_lattice(span_cols, fl.basis));
  });
  return rec.finish();
}

CheckReport check_sn_restrictions(int n) {
  if (n < 3 || n > 5) throw Error(Error::Kind::precondition, "sn_restrictions: n must be 3, 4 or 5");
  Recorder rec("sn-restrictions", "S:" + std::to_string(n), {{"n", std::to_string(n)}});
  rec.step("construction", [&] {
    const int last = n - 1;
    std::vector<int> cycle(n), transposition(n), short_cycle(n);
    for (int i = 0; i < n; ++i) {
      cycle[i] = (i + 1) % n;
      transposition[i] = i;
      short_cycle[i] = i == last ? last : (i + 1) % last;
    }
    std::swap(transposition[0], transposition[1]);
    if (n <= 4) {
      GroupPtr sn = symmetric(n);
      GGraph x = complete_edges(natural_gset(sn), false);
      FlowLattice fl = flow_lattice(x);
      rank_formula(rec, x, fl);
    }
    GroupPtr h1 = permutation_group(n, {cycle});
    GroupPtr h2 = permutation_group(n, {transposition, short_cycle});
    rec.expect("subgroup orders", h1->order() == n && h2->order() * n == [&] {
      int f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f;
    }(), "|H1| = " + std::to_string(h1->order()) + ", |H2| = " + std::to_string(h2->order()));

    GGraph x1 = complete_edges(natural_gset(h1), false);
    FlowLattice f1 = flow_lattice(x1);
    rank_formula(rec, x1, f1, "rank formula (H1)");
    std::vector<Edge> cycle_edges;
    for (int i = 0; i < n; ++i) cycle_edges.push_back(Edge{i, cycle[i]});
    FlowLattice fc = flow_lattice(GGraph(natural_gset(h1), cycle_edges));
    const EquivariantMap split = remove_edges_decomposition(f1, fc);
    rec.expect("H1 restriction has a stable basis", split.is_isomorphism() && is_stable_basis(f1.lattice, split.matrix()),
               "Fl(n-cycle) + ZH1^" + std::to_string(removed_orbit_count(x1, fc.graph)));

    GGraph x2 = complete_edges(natural_gset(h2), false);
    std::vector<int> tree;
    for (int i = 0; i < last; ++i) tree.push_back(*x2.find_edge(i, last));
    std::vector<IntVector> cand;
    for (int e = 0; e < x2.num_edges(); ++e) {
      if (std::find(tree.begin(), tree.end(), e) != tree.end()) continue;
      const Edge& ed = x2.edge(e);
      IntVector c(x2.num_edges(), 0);
      c[e] += 1;
      if (ed.source == last) c[*x2.find_edge(ed.target, last)] += 1;
      else if (ed.target == last) throw Error(Error::Kind::internal, "tree edge outside the tree");
      else {
        c[*x2.find_edge(ed.target, last)] += 1;
        c[*x2.find_edge(ed.source, last)] -= 1;
      }
      cand.push_back(c);
    }
    auto res = spanning_tree_basis(x2, tree, IntMatrix::from_columns(cand, x2.num_edges()));
    rec.expect("C_e form a basis", res.lattice.has_value(), res.diagnostic);
    if (res.lattice) {
      rank_formula(rec, x2, *res.lattice, "rank formula (H2)");
      bool stable = true;
      std::set<IntVector> basis_set(cand.begin(), cand.end());
      for (int h = 0; h < h2->order(); ++h)
        for (const auto& c : cand) stable = stable && basis_set.count(act_edges(x2, h, c));
      rec.expect("C_e basis is H2-stable (orbit closure)", stable);
      bool perm = true;
      for (const auto& a : res.lattice->lattice.actions()) perm = perm && a.is_permutation();
      rec.expect("H2 acts by permutations on C_e", perm);
    }
  });
  return rec.finish();
}

CheckReport check_faithful_transfer(int n, int m, int r) {
  check_semidirect_params(n, m, r);
  Recorder rec("faithful-transfer", nmr_label(n, m, r), nmr_params(n, m, r));
  rec.step("construction", [&] {
    const KernelSetup k = make_kernel_setup(n, m, r);
    const QuotientMap qm = quotient_map(k);
    const GLattice& kerl = k.inc.source();
    const IntMatrix& kb = k.inc.matrix();
    const std::size_t kr = kerl.rank();
    const GroupPtr& g = k.g;
    const int pt0 = identity_point(k.ht);

    const GLattice p = regular(g);
    const GLattice iv = qm.phi.target();
    std::vector<IntVector> psi_cols;
    for (int el = 0; el < g->order(); ++el) {
      IntVector v(n, 0);
      v[k.ct(el, pt0)] += 1;
      v[k.ct(g->mul(el, k.sigma), pt0)] -= 1;
      psi_cols.push_back(v);
    }
    EquivariantMap psi(p, iv, coords(augmentation_basis(n), IntMatrix::from_columns(psi_cols, n), "psi"));
    rec.expect("psi is equivariant", psi.is_equivariant());
    rec.expect("psi is surjective", solve_columns(psi.matrix(), IntMatrix::identity(n - 1)).has_value());

    const GLattice kp = direct_sum(kerl, p);
    EquivariantMap diff(kp, iv, hstack(qm.phi.matrix(), -psi.matrix()));
    EquivariantMap qinc = kernel_inclusion(diff);
    const GLattice& q = qinc.source();
    const IntMatrix& kq = qinc.matrix();
    std::vector<std::size_t> top(kr), bottom(g->order());
    std::iota(top.begin(), top.end(), 0);
    std::iota(bottom.begin(), bottom.end(), kr);

    const IntMatrix m0_in_q = coords(kq, vstack(qm.u_coords, IntMatrix(g->order(), m)), "M0 in Q");
    ShortExactSequence row{EquivariantMap(coset_lattice(k.hs), q, m0_in_q), EquivariantMap(q, p, kq.select_rows(bottom))};
    auto rx = check_exact(row);
    rec.expect("middle row is exact", rx.exact, rx.diagnostic);
    auto s1 = find_section(row);
    bool q_perm = false;
    if (s1)
      q_perm = EquivariantMap(direct_sum(coset_lattice(k.hs), p), q, hstack(m0_in_q, s1->matrix())).is_isomorphism();
    rec.expect("(a) middle row splits, Q is permutation", q_perm, "rank Q = " + str(q.rank()));

    EquivariantMap kpsi = kernel_inclusion(psi);
    const IntMatrix kpsi_in_q = coords(kq, vstack(IntMatrix(kr, kpsi.source().rank()), kpsi.matrix()), "ker psi in Q");
    ShortExactSequence column{EquivariantMap(kpsi.source(), q, kpsi_in_q), EquivariantMap(q, kerl, kq.select_rows(top))};
    auto cx = check_exact(column);
    rec.expect("(b) middle column is exact", cx.exact, cx.diagnostic);

    auto fv = flasque_verdict(kerl);
    auto cv = coflasque_verdict(kerl);
    auto s = find_section(ShortExactSequence{k.inc, k.pi});
    bool invertible = false;
    std::optional<ShortExactSequence> m_res;
    if (s) {
      EquivariantMap iso(direct_sum(kerl, k.fl.lattice), k.d, hstack(kb, s->matrix()));
      if (iso.is_isomorphism()) {
        invertible = true;
        const IntMatrix inv = inverse(iso).matrix();
        m_res = ShortExactSequence{EquivariantMap(k.fl.lattice, k.d, s->matrix()), EquivariantMap(k.d, kerl, inv.select_rows(top))};
      }
    }
    rec.expect("(c) ker(pi) is invertible", invertible && fv.holds && cv.holds);
    rec.expect("(c) middle column is a flasque resolution of ker(psi)", cx.exact && q_perm && fv.holds);
    bool m_ok = false;
    if (m_res) m_ok = check_exact(*m_res).exact;
    rec.expect("(c) 0 -> M -> D -> ker(pi) -> 0 is a flasque resolution of M", m_ok && fv.holds,
               "shared flasque term ker(pi) of rank " + str(kr));
  });
  return rec.finish();
}

CheckReport check_schanuel(const GroupPtr& g, const std::string& lattice_spec) {
  const GLattice mlat = parse_lattice(g, lattice_spec);
  Recorder rec("schanuel", g->label(), {{"lattice", lattice_spec}});
  rec.step("construction", [&] {
    const auto r1 = coflasque_resolution(mlat);
    const auto r2 = coflasque_resolution(mlat, ResolutionOrder{true, true});
    const std::string f1 = certificate_failure(r1), f2 = certificate_failure(r2);
    rec.expect("first resolution certified", f1.empty(), f1);
    rec.expect("second resolution certified", f2.empty(), f2);
    const GLattice& c1 = r1.sequence.left.source();
    const GLattice& c2 = r2.sequence.left.source();
    const GLattice& p1 = r1.sequence.right.source();
    const GLattice& p2 = r2.sequence.right.source();
    const std::size_t n1 = p1.rank(), n2 = p2.rank();

    EquivariantMap diff(direct_sum(p1, p2), mlat, hstack(r1.sequence.right.matrix(), -r2.sequence.right.matrix()));
    EquivariantMap qinc = kernel_inclusion(diff);
    const GLattice& q = qinc.source();
    const IntMatrix& kq = qinc.matrix();
    std::vector<std::size_t> first(n1), second(n2);
    std::iota(first.begin(), first.end(), 0);
    std::iota(second.begin(), second.end(), n1);

    const IntMatrix c2_in_q = coords(kq, vstack(IntMatrix(n1, c2.rank()), r2.sequence.left.matrix()), "C2 in Q");
    const IntMatrix c1_in_q = coords(kq, vstack(r1.sequence.left.matrix(), IntMatrix(n2, c1.rank())), "C1 in Q");
    ShortExactSequence sa{EquivariantMap(c2, q, c2_in_q), EquivariantMap(q, p1, kq.select_rows(first))};
    ShortExactSequence sb{EquivariantMap(c1, q, c1_in_q), EquivariantMap(q, p2, kq.select_rows(second))};
    auto ea = check_exact(sa), eb = check_exact(sb);
    rec.expect("0 -> C2 -> Q -> P1 -> 0 exact", ea.exact, ea.diagnostic);
    rec.expect("0 -> C1 -> Q -> P2 -> 0 exact", eb.exact, eb.diagnostic);
    auto s_a = find_section(sa);
    auto s_b = find_section(sb);
    rec.expect("both sequences split", s_a.has_value() && s_b.has_value());
    if (s_a && s_b) {
      EquivariantMap iso_a(direct_sum(c2, p1), q, hstack(c2_in_q, s_a->matrix()));
      EquivariantMap iso_b(direct_sum(c1, p2), q, hstack(c1_in_q, s_b->matrix()));
      const bool both = iso_a.is_isomorphism() && iso_b.is_isomorphism();
      bool composed = false;
      if (both) composed = compose(inverse(iso_b), iso_a).is_isomorphism();
      rec.expect("C2 + P1 = C1 + P2 by an explicit isomorphism", both && composed,
                 "ranks C1 " + str(c1.rank()) + ", P1 " + str(n1) + ", C2 " + str(c2.rank()) + ", P2 " + str(n2));
    }
  });
  return rec.finish();
}

// ---------------------------------------------------------------------------
// Dispatch and suites

namespace {

const std::string& need(const std::map<std::string, std::string>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw Error(Error::Kind::invalid_parameter, "missing parameter '" + key + "'");
  return it->second;
}

int need_int(const std::map<std::string, std::string>& p, const std::string& key) {
  const std::string& v = need(p, key);
  if (v.empty() || v.size() > 6 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(Error::Kind::parse, "parameter '" + key + "' is not a non-negative integer: '" + v + "'");
  return std::stoi(v);
}

void only(const std::map<std::string, std::string>& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p)
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw Error(Error::Kind::invalid_parameter, "unexpected parameter '" + k + "'");
}

using Instance = std::pair<std::string, std::map<std::string, std::string>>;

std::string all_nonidentity(int n) {
  std::string s;
  for (int k = 1; k < n; ++k) s += (k > 1 ? ",s" : "s") + std::to_string(k);
  return s;
}

std::vector<Instance> quick_instances() {
  std::vector<Instance> v;
  for (int n = 2; n <= 12; ++n) {
    const std::string ns = std::to_string(n);
    v.push_back({"cyclic-flows", {{"n", ns}, {"gens", "s1"}}});
    if (n == 2) v.push_back({"cyclic-flows", {{"n", ns}, {"gens", "e,s1"}}});
    else v.push_back({"cyclic-flows", {{"n", ns}, {"gens", "s1,s2"}}});
    if (n >= 4) v.push_back({"cyclic-flows", {{"n", ns}, {"gens", all_nonidentity(n)}}});
  }
  for (auto [n, m, r] : std::vector<std::tuple<int, int, int>>{{3, 2, 2}, {5, 2, 4}}) {
    v.push_back({"kernel-generators", nmr_params(n, m, r)});
    v.push_back({"faithful-transfer", nmr_params(n, m, r)});
  }
  const std::vector<std::pair<std::string, std::string>> coflasque_cases{
      {"C:4", "s1"},        {"C:6", "s1,s2"},     {"C:12", "s1,s4"},     {"D:3", "s1,t"},
      {"D:4", "s1,t"},      {"D:5", "s1,t"},      {"D:6", "s1,t"},       {"SD:3,2,2", "s1,t"},
      {"SD:3,4,2", "s1,t"}, {"S:3", "(12),(123)"}, {"S:4", "(12),(1234)"}, {"X(C:2,C:2)", "e|s1,s1|e,s1|s1"},
      {"X(C:2,C:3)", "s1|e,e|s1"}};
  for (const auto& [gs, s] : coflasque_cases) v.push_back({"flow-coflasque", {{"group", gs}, {"gens", s}}});
  for (const char* gs : {"C:2", "C:4", "SD:3,2,2", "D:4"}) v.push_back({"bar-cocycle", {{"group", gs}}});
  for (auto [gs, len] : std::vector<std::pair<std::string, int>>{{"C:2", 3}, {"C:3", 4}, {"SD:3,2,2", 7}})
    v.push_back({"center-walks", {{"group", gs}, {"max_len", std::to_string(len)}}});
  v.push_back({"sn-restrictions", {{"n", "3"}}});
  v.push_back({"schanuel", {{"group", "C:2"}, {"lattice", "trivial"}}});
  v.push_back({"schanuel", {{"group", "C:2"}, {"lattice", "sign:e"}}});
  v.push_back({"schanuel", {{"group", "SD:3,2,2"}, {"lattice", "flows:cayley"}}});
  return v;
}

std::vector<Instance> full_instances(bool with_s5) {
  std::vector<Instance> v = quick_instances();
  for (auto [n, m, r] : std::vector<std::tuple<int, int, int>>{{7, 3, 2}, {5, 4, 2}, {5, 4, 3}})
    v.push_back({"kernel-generators", nmr_params(n, m, r)});
  v.push_back({"faithful-transfer", nmr_params(7, 3, 2)});
  const std::vector<std::pair<std::string, std::string>> coflasque_cases{
      {"SD:5,4,2", "s1,t"}, {"SD:7,3,2", "s1,t"}, {"D:12", "s1,t"}, {"C:24", "s1,s5"},
      {"X(C:2,X(C:2,C:2))", "s1|e|e,e|s1|e,e|e|s1"}, {"X(C:2,S:3)", "s1|e,e|(12),e|(123)"}};
  for (const auto& [gs, s] : coflasque_cases) v.push_back({"flow-coflasque", {{"group", gs}, {"gens", s}}});
  for (const char* gs : {"X(C:2,C:2)", "D:6"}) v.push_back({"bar-cocycle", {{"group", gs}}});
  for (auto [gs, len] : std::vector<std::pair<std::string, int>>{{"C:4", 5}, {"X(C:2,C:2)", 5}})
    v.push_back({"center-walks", {{"group", gs}, {"max_len", std::to_string(len)}}});
  v.push_back({"sn-restrictions", {{"n", "4"}}});
  if (with_s5) v.push_back({"sn-restrictions", {{"n", "5"}}});
  v.push_back({"schanuel", {{"group", "C:4"}, {"lattice", "aug"}}});
  return v;
}

}  // namespace

std::vector<std::string> check_ids() {
  return {"bar-cocycle",      "center-walks",    "cyclic-flows", "faithful-transfer",
          "flow-coflasque",   "kernel-generators", "schanuel",   "sn-restrictions"};
}

CheckReport run_check(const std::string& id, const std::map<std::string, std::string>& p) {
  if (id == "cyclic-flows") {
    only(p, {"n", "gens"});
    const int n = need_int(p, "n");
    GroupPtr g = cyclic(n);
    return check_cyclic_flows(n, parse_elements(g, need(p, "gens")));
  }
  if (id == "kernel-generators" || id == "faithful-transfer") {
    only(p, {"n", "m", "r"});
    const int n = need_int(p, "n"), m = need_int(p, "m"), r = need_int(p, "r");
    return id == "kernel-generators" ? check_kernel_generators(n, m, r) : check_faithful_transfer(n, m, r);
  }
  if (id == "flow-coflasque") {
    only(p, {"group", "gens"});
    GroupPtr g = parse_group(need(p, "group"));
    auto it = p.find("gens");
    return check_flow_coflasque(g, it == p.end() ? default_connection_set(g) : parse_elements(g, it->second));
  }
  if (id == "bar-cocycle") {
    only(p, {"group"});
    return check_bar_cocycle(parse_group(need(p, "group")));
  }
  if (id == "center-walks") {
    only(p, {"group", "max_len"});
    GroupPtr g = parse_group(need(p, "group"));
    return check_center_walks(g, p.count("max_len") ? need_int(p, "max_len") : g->order() + 1);
  }
  if (id == "sn-restrictions") {
    only(p, {"n"});
    return check_sn_restrictions(need_int(p, "n"));
  }
  if (id == "schanuel") {
    only(p, {"group", "lattice"});
    return check_schanuel(parse_group(need(p, "group")), need(p, "lattice"));
  }
  throw Error(Error::Kind::invalid_parameter, "unknown check '" + id + "'");
}

std::vector<CheckReport> run_suite(const std::string& name, SuiteOptions opts) {
  std::vector<Instance> inst;
  if (name == "quick") inst = quick_instances();
  else if (name == "full") inst = full_instances(opts.with_s5);
  else throw Error(Error::Kind::invalid_parameter, "unknown suite '" + name + "' (expected quick or full)");
  std::vector<CheckReport> out;
  for (const auto& [id, params] : inst) out.push_back(run_check(id, params));
  std::stable_sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    if (a.group != b.group) return a.group < b.group;
    return a.parameters < b.parameters;
  });
  return out;
}

std::string suite_json(const std::vector<CheckReport>& reports, bool with_elapsed) {
  nlohmann::ordered_json j;
  long passed = 0;
  for (const auto& r : reports) passed += r.passed() ? 1 : 0;
  j["status"] = passed == static_cast<long>(reports.size()) ? "pass" : "fail";
  j["passed"] = passed;
  j["failed"] = static_cast<long>(reports.size()) - passed;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_object(r, with_elapsed));
  j["reports"] = arr;
  return j.dump(2);
}

std::vector<std::pair<std::string, GLattice>> quick_suite_lattices() {
  std::vector<std::pair<std::string, GLattice>> out;
  for (const auto& [id, p] : quick_instances()) {
    if (id == "cyclic-flows") {
      GroupPtr g = cyclic(std::stoi(p.at("n")));
      GGraph x = cayley_graph(g, parse_elements(g, p.at("gens")));
      out.emplace_back("Fl(Cay(" + g->label() + ";" + p.at("gens") + "))", flow_lattice(x).lattice);
      out.emplace_back("Z" + g->label(), regular(g));
    } else if (id == "flow-coflasque") {
      GroupPtr g = parse_group(p.at("group"));
      GGraph x = cayley_graph(g, parse_elements(g, p.at("gens")));
      out.emplace_back("Fl(Cay(" + g->label() + ";" + p.at("gens") + "))", flow_lattice(x).lattice);
      out.emplace_back("I_" + g->label(), augmentation_lattice(regular_gset(g)));
    } else if (id == "kernel-generators") {
      const KernelSetup k = make_kernel_setup(std::stoi(p.at("n")), std::stoi(p.at("m")), std::stoi(p.at("r")));
      const std::string l = k.g->label();
      out.emplace_back("ker(pi) " + l, k.inc.source());
      out.emplace_back("D " + l, k.d);
      out.emplace_back("Z[G/<s1>] " + l, coset_lattice(k.hs));
      out.emplace_back("Z[G/<t>] " + l, coset_lattice(k.ht));
      out.emplace_back("I_{G/<t>} " + l, augmentation_lattice(k.ct));
    } else if (id == "bar-cocycle" || id == "center-walks") {
      GroupPtr g = parse_group(p.at("group"));
      std::vector<int> s;
      for (int x = 0; x < g->order(); ++x)
        if (id == "center-walks" || x != g->identity()) s.push_back(x);
      out.emplace_back(id + " " + g->label(), flow_lattice(cayley_graph(g, s)).lattice);
    } else if (id == "schanuel") {
      GroupPtr g = parse_group(p.at("group"));
      const GLattice m = parse_lattice(g, p.at("lattice"));
      const auto res = coflasque_resolution(m);
      out.emplace_back(p.at("lattice") + " " + g->label(), m);
      out.emplace_back("C(" + p.at("lattice") + ") " + g->label(), res.sequence.left.source());
      out.emplace_back("P(" + p.at("lattice") + ") " + g->label(), res.sequence.left.target());
    }
  }
  return out;
}

}  // namespace glattice
