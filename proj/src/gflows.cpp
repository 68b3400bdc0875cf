#include "gflows.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace glattice {

namespace {

std::vector<std::vector<int>> edge_action_table(const GSet& v, const std::vector<Edge>& edges) {
  const int n = v.size();
  std::unordered_map<long, int> index;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    if (ed.source < 0 || ed.source >= n || ed.target < 0 || ed.target >= n)
      throw Error(Error::Kind::invalid_parameter, "GGraph: edge endpoint out of range");
    if (!index.emplace(static_cast<long>(ed.source) * n + ed.target, static_cast<int>(e)).second)
      throw Error(Error::Kind::invalid_parameter, "GGraph: repeated edge (" + std::to_string(ed.source) + "," +
                                                      std::to_string(ed.target) + ")");
  }
  std::vector<std::vector<int>> act(v.group()->order(), std::vector<int>(edges.size()));
  for (int g = 0; g < v.group()->order(); ++g)
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto it = index.find(static_cast<long>(v(g, edges[e].source)) * n + v(g, edges[e].target));
      if (it == index.end())
        throw Error(Error::Kind::invalid_parameter, "GGraph: edge set is not stable under " + v.group()->name(g));
      act[g][e] = it->second;
    }
  return act;
}

// Undirected adjacency in edge order, restricted to the allowed edges.
std::vector<std::vector<std::pair<int, int>>> adjacency(const GGraph& x, const std::vector<bool>* allowed = nullptr) {
  std::vector<std::vector<std::pair<int, int>>> adj(x.num_vertices());
  for (int e = 0; e < x.num_edges(); ++e) {
    if (allowed && !(*allowed)[e]) continue;
    const auto& ed = x.edge(e);
    if (ed.is_loop()) continue;
    adj[ed.source].push_back({e, ed.target});
    adj[ed.target].push_back({e, ed.source});
  }
  return adj;
}

struct SearchTree {
  std::vector<int> parent;
  std::vector<int> parent_edge;
  std::vector<int> depth;
};

SearchTree bfs(const GGraph& x, int root, const std::vector<bool>* allowed = nullptr) {
  const auto adj = adjacency(x, allowed);
  SearchTree t{std::vector<int>(x.num_vertices(), -1), std::vector<int>(x.num_vertices(), -1),
               std::vector<int>(x.num_vertices(), -1)};
  std::deque<int> queue{root};
  t.depth[root] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (auto [e, w] : adj[u]) {
      if (t.depth[w] >= 0) continue;
      t.depth[w] = t.depth[u] + 1;
      t.parent[w] = u;
      t.parent_edge[w] = e;
      queue.push_back(w);
    }
  }
  return t;
}

// Adds to f the signed edge counts of the tree path from a to b.
void add_tree_path(const GGraph& x, const SearchTree& t, int a, int b, IntVector& f) {
  std::vector<std::pair<int, int>> down;  // (edge, vertex stepped into) from the meeting point to b
  while (a != b) {
    if (t.depth[a] >= t.depth[b]) {
      const int e = t.parent_edge[a];
      f[e] += x.edge(e).source == a ? 1 : -1;
      a = t.parent[a];
    } else {
      down.push_back({t.parent_edge[b], b});
      b = t.parent[b];
    }
  }
  for (auto it = down.rbegin(); it != down.rend(); ++it) f[it->first] += x.edge(it->first).target == it->second ? 1 : -1;
}

IntVector permute_edges(const GGraph& x, int g, const IntVector& f) {
  IntVector out(f.size());
  for (int e = 0; e < x.num_edges(); ++e) out[x.edge_image(g, e)] = f[e];
  return out;
}

int position(const std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

// Fl(X') + ZG^m -> Fl(X) for the subgraph on the allowed edge indices,
// whose flow lattice has the given basis written in Z^E(X).
EquivariantMap remove_edges_core(const FlowLattice& x, const std::vector<bool>& in_sub, const IntMatrix& sub_basis,
                                 const GLattice& sub_lattice) {
  const GGraph& g = x.graph;
  if (!g.vertices().is_free()) throw Error(Error::Kind::precondition, "remove_edges: the action on vertices is not free");
  const int order = g.group()->order();
  std::vector<int> reps;
  std::vector<bool> covered(g.num_edges(), false);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in_sub[e] || covered[e]) continue;
    reps.push_back(e);
    for (int h = 0; h < order; ++h) covered[g.edge_image(h, e)] = true;
  }
  const int removed = static_cast<int>(std::count(in_sub.begin(), in_sub.end(), false));
  if (removed != static_cast<int>(reps.size()) * order)
    throw Error(Error::Kind::precondition, "remove_edges: removed edges are not a union of free orbits");

  auto linv = left_inverse(x.basis);
  if (!linv && x.basis.cols() > 0) throw Error(Error::Kind::internal, "remove_edges: flow basis not saturated");
  const std::size_t k = sub_basis.cols();
  IntMatrix m(x.basis.cols(), k + reps.size() * order);
  for (std::size_t j = 0; j < k; ++j) m.set_column(j, *linv * sub_basis.column(j));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const Edge& ed = g.edge(reps[i]);
    // Circular flow: the removed edge followed by the search-tree path back in the subgraph.
    SearchTree t = bfs(g, ed.target, &in_sub);
    if (t.depth[ed.source] < 0) throw Error(Error::Kind::precondition, "remove_edges: the subgraph is not connected");
    IntVector c(g.num_edges());
    c[reps[i]] += 1;
    // Walk from target back to source: the tree is rooted at the target.
    std::vector<std::pair<int, int>> path;
    for (int v = ed.source; v != ed.target; v = t.parent[v]) path.push_back({t.parent_edge[v], v});
    for (auto it = path.rbegin(); it != path.rend(); ++it) c[it->first] += g.edge(it->first).target == it->second ? 1 : -1;
    for (int h = 0; h < order; ++h) m.set_column(k + i * order + h, *linv * permute_edges(g, h, c));
  }
  return EquivariantMap(direct_sum(sub_lattice, free_lattice(g.group(), static_cast<int>(reps.size()))), x.lattice,
                        std::move(m));
}

}  // namespace

// ---------------------------------------------------------------------------

GGraph::GGraph(GSet vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      edge_action_(edge_action_table(vertices_, edges_)),
      edge_gset_(vertices_.group(), edge_action_) {
  for (int e = 0; e < num_edges(); ++e) index_[static_cast<long>(edges_[e].source) * num_vertices() + edges_[e].target] = e;
}

std::optional<int> GGraph::find_edge(int source, int target) const {
  auto it = index_.find(static_cast<long>(source) * num_vertices() + target);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<int>> GGraph::components() const {
  std::vector<std::vector<int>> comps;
  std::vector<bool> seen(num_vertices(), false);
  for (int v = 0; v < num_vertices(); ++v) {
    if (seen[v]) continue;
    SearchTree t = bfs(*this, v);
    std::vector<int> comp;
    for (int w = 0; w < num_vertices(); ++w)
      if (t.depth[w] >= 0) {
        comp.push_back(w);
        seen[w] = true;
      }
    comps.push_back(std::move(comp));
  }
  return comps;
}

GGraph complete_edges(const GSet& vertices, bool loops) {
  std::vector<Edge> edges;
  for (int u = 0; u < vertices.size(); ++u)
    for (int v = 0; v < vertices.size(); ++v)
      if (u != v || loops) edges.push_back({u, v});
  return GGraph(vertices, std::move(edges));
}

GGraph cayley_graph(const GroupPtr& g, const std::vector<int>& s) {
  std::vector<int> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Error::Kind::invalid_parameter, "cayley_graph: repeated element in the connection set");
  std::vector<Edge> edges;
  for (int x = 0; x < g->order(); ++x)
    for (int t : s) {
      if (t < 0 || t >= g->order()) throw Error(Error::Kind::invalid_parameter, "cayley_graph: element out of range");
      edges.push_back({x, g->mul(x, t)});
    }
  return GGraph(regular_gset(g), std::move(edges));
}

GGraph restrict_graph(const GGraph& x, const Subgroup& h) { return GGraph(restrict_gset(x.vertices(), h), x.edges()); }

EquivariantMap boundary_matrix(const GGraph& x) {
  IntMatrix d(x.num_vertices(), x.num_edges());
  for (int e = 0; e < x.num_edges(); ++e) {
    d(x.edge(e).target, e) += 1;
    d(x.edge(e).source, e) -= 1;
  }
  return EquivariantMap(permutation_lattice(x.edge_set()), permutation_lattice(x.vertices()), std::move(d));
}

EquivariantMap FlowLattice::inclusion() const { return EquivariantMap(lattice, permutation_lattice(graph.edge_set()), basis); }

std::vector<int> bfs_tree_edges(const GGraph& x) {
  std::vector<int> tree;
  if (x.num_vertices() == 0) return tree;
  SearchTree t = bfs(x, 0);
  for (int v = 0; v < x.num_vertices(); ++v)
    if (t.parent_edge[v] >= 0) tree.push_back(t.parent_edge[v]);
  std::sort(tree.begin(), tree.end());
  return tree;
}

FlowLattice flow_lattice(const GGraph& x) {
  const auto comps = x.components();
  if (comps.size() > 1) {
    std::string desc;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      desc += i ? " " : "";
      desc += "{";
      for (std::size_t j = 0; j < comps[i].size(); ++j) desc += (j ? "," : "") + std::to_string(comps[i][j]);
      desc += "}";
    }
    throw Error(Error::Kind::precondition,
                "flow_lattice: graph is disconnected with " + std::to_string(comps.size()) + " components: " + desc);
  }
  SearchTree t = bfs(x, 0);
  std::vector<bool> in_tree(x.num_edges(), false);
  for (int v = 0; v < x.num_vertices(); ++v)
    if (t.parent_edge[v] >= 0) in_tree[t.parent_edge[v]] = true;
  std::vector<int> cotree;
  for (int e = 0; e < x.num_edges(); ++e)
    if (!in_tree[e]) cotree.push_back(e);
  IntMatrix basis(x.num_edges(), cotree.size());
  for (std::size_t j = 0; j < cotree.size(); ++j) {
    IntVector f(x.num_edges());
    const Edge& ed = x.edge(cotree[j]);
    f[cotree[j]] = 1;
    add_tree_path(x, t, ed.target, ed.source, f);
    basis.set_column(j, f);
  }
  // Coordinates of a flow are its values on the non-tree edges.
  std::vector<IntMatrix> act;
  for (int g = 0; g < x.group()->order(); ++g) {
    IntMatrix a(cotree.size(), cotree.size());
    for (std::size_t j = 0; j < cotree.size(); ++j)
      for (std::size_t i = 0; i < cotree.size(); ++i) {
        // (g f_j)(c_i) = f_j(g^-1 c_i)
        a(i, j) = basis(x.edge_image(x.group()->inv(g), cotree[i]), j);
      }
    act.push_back(std::move(a));
  }
  GLattice lattice(x.group(), cotree.size(), std::move(act), false);
  return FlowLattice{x, std::move(basis), std::move(lattice)};
}

FlowLattice flow_lattice_with_basis(const GGraph& x, const IntMatrix& basis) {
  if (x.components().size() > 1) throw Error(Error::Kind::precondition, "flow_lattice: graph is disconnected");
  if (basis.rows() != static_cast<std::size_t>(x.num_edges())) throw Error(Error::Kind::mismatch, "flow basis has wrong length");
  if (!(boundary_matrix(x).matrix() * basis).is_zero()) throw Error(Error::Kind::precondition, "flow basis contains a non-flow");
  if (static_cast<int>(basis.cols()) != x.num_edges() - x.num_vertices() + 1)
    throw Error(Error::Kind::precondition, "flow basis has the wrong number of columns");
  GLattice lattice = sublattice(permutation_lattice(x.edge_set()), basis);
  return FlowLattice{x, basis, std::move(lattice)};
}

SpanningTreeResult spanning_tree_basis(const GGraph& x, const std::vector<int>& tree, const IntMatrix& candidates) {
  const int nv = x.num_vertices(), ne = x.num_edges();
  if (static_cast<int>(tree.size()) != nv - 1)
    throw Error(Error::Kind::precondition, "spanning_tree_basis: tree must have |V|-1 edges");
  std::vector<int> root(nv);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  std::vector<bool> in_tree(ne, false);
  for (int e : tree) {
    if (e < 0 || e >= ne || in_tree[e]) throw Error(Error::Kind::precondition, "spanning_tree_basis: invalid tree edge index");
    const int a = find(x.edge(e).source), b = find(x.edge(e).target);
    if (a == b) throw Error(Error::Kind::precondition, "spanning_tree_basis: tree edges contain a cycle");
    root[a] = b;
    in_tree[e] = true;
  }
  if (candidates.rows() != static_cast<std::size_t>(ne))
    throw Error(Error::Kind::mismatch, "spanning_tree_basis: candidate length differs from edge count");
  const IntMatrix d = boundary_matrix(x).matrix();
  for (std::size_t j = 0; j < candidates.cols(); ++j)
    if (!is_zero_vector(d * candidates.column(j)))
      throw Error(Error::Kind::precondition, "spanning_tree_basis: candidate " + std::to_string(j) + " is not a flow");

  std::vector<int> cotree;
  for (int e = 0; e < ne; ++e)
    if (!in_tree[e]) cotree.push_back(e);
  if (candidates.cols() != cotree.size())
    return {std::nullopt, "expected " + std::to_string(cotree.size()) + " candidates, got " + std::to_string(candidates.cols())};

  // Peel off a non-tree edge on which exactly one remaining candidate is nonzero.
  std::vector<bool> row_left(cotree.size(), true), col_left(cotree.size(), true);
  for (std::size_t step = 0; step < cotree.size(); ++step) {
    bool found = false;
    for (std::size_t c = 0; c < cotree.size() && !found; ++c) {
      if (!col_left[c]) continue;
      int hit = -1, count = 0;
      for (std::size_t r = 0; r < cotree.size(); ++r)
        if (row_left[r] && sgn(candidates(cotree[c], r)) != 0) {
          hit = static_cast<int>(r);
          ++count;
        }
      if (count == 0)
        return {std::nullopt, "no remaining candidate is nonzero on edge " + std::to_string(cotree[c])};
      if (count != 1) continue;
      const Integer& v = candidates(cotree[c], hit);
      if (abs(v) != 1)
        return {std::nullopt, "diagonal entry f_" + std::to_string(hit) + "(e_" + std::to_string(cotree[c]) +
                                  ") = " + v.get_str() + " is not +-1"};
      row_left[hit] = false;
      col_left[c] = false;
      found = true;
    }
    if (!found) return {std::nullopt, "candidate values on the non-tree edges are not triangular"};
  }
  return {flow_lattice_with_basis(x, candidates), ""};
}

IsoPair loop_split(const GSet& vertices) {
  const GGraph xp = complete_edges(vertices, true);
  const GGraph xm = complete_edges(vertices, false);
  const FlowLattice fp = flow_lattice(xp);
  const FlowLattice fm = flow_lattice(xm);
  const int nv = vertices.size();
  std::vector<int> minus_to_plus(xm.num_edges());
  for (int e = 0; e < xm.num_edges(); ++e) minus_to_plus[e] = *xp.find_edge(xm.edge(e).source, xm.edge(e).target);
  std::vector<int> loop(nv);
  for (int v = 0; v < nv; ++v) loop[v] = *xp.find_edge(v, v);

  const auto lm = left_inverse(fm.basis);
  const auto lp = left_inverse(fp.basis);
  IntMatrix fwd(fm.basis.cols() + nv, fp.basis.cols());
  for (std::size_t j = 0; j < fp.basis.cols(); ++j) {
    IntVector h(xm.num_edges());
    for (int e = 0; e < xm.num_edges(); ++e) h[e] = fp.basis(minus_to_plus[e], j);
    IntVector c = fm.basis.cols() ? *lm * h : IntVector{};
    for (std::size_t i = 0; i < c.size(); ++i) fwd(i, j) = c[i];
    for (int v = 0; v < nv; ++v) fwd(fm.basis.cols() + v, j) = fp.basis(loop[v], j);
  }
  IntMatrix bwd(fp.basis.cols(), fm.basis.cols() + nv);
  for (std::size_t j = 0; j < fm.basis.cols() + nv; ++j) {
    IntVector f(xp.num_edges());
    if (j < fm.basis.cols())
      for (int e = 0; e < xm.num_edges(); ++e) f[minus_to_plus[e]] = fm.basis(e, j);
    else
      f[loop[j - fm.basis.cols()]] = 1;
    bwd.set_column(j, *lp * f);
  }
  GLattice split = direct_sum(fm.lattice, permutation_lattice(vertices));
  return {EquivariantMap(fp.lattice, split, std::move(fwd)), EquivariantMap(split, fp.lattice, std::move(bwd))};
}

int removed_orbit_count(const GGraph& x, const GGraph& sub) {
  return (x.num_edges() - sub.num_edges()) / x.group()->order();
}

EquivariantMap remove_edges_decomposition(const FlowLattice& x, const FlowLattice& sub) {
  const GGraph& g = x.graph;
  require_same_group(*g.group(), *sub.graph.group(), "remove_edges_decomposition");
  if (g.vertices().table() != sub.graph.vertices().table())
    throw Error(Error::Kind::mismatch, "remove_edges_decomposition: vertex sets differ");
  std::vector<bool> in_sub(g.num_edges(), false);
  IntMatrix embedded(g.num_edges(), sub.basis.cols());
  for (int e = 0; e < sub.graph.num_edges(); ++e) {
    auto idx = g.find_edge(sub.graph.edge(e).source, sub.graph.edge(e).target);
    if (!idx) throw Error(Error::Kind::precondition, "remove_edges_decomposition: subgraph edge missing from the graph");
    in_sub[*idx] = true;
    for (std::size_t j = 0; j < sub.basis.cols(); ++j) embedded(*idx, j) = sub.basis(e, j);
  }
  return remove_edges_core(x, in_sub, embedded, sub.lattice);
}

EquivariantMap restrict_to_subgroup_decomposition(const GroupPtr& g, const Subgroup& h, const std::vector<int>& s,
                                                  const std::vector<int>& s0) {
  require_same_group(*g, *h.parent(), "restrict_to_subgroup_decomposition");
  if (closure(*g, s) != whole_group(g).mask())
    throw Error(Error::Kind::precondition, "restrict_to_subgroup_decomposition: S does not generate G");
  for (int x : s0)
    if (position(s, x) < 0) throw Error(Error::Kind::precondition, "restrict_to_subgroup_decomposition: S0 is not contained in S");
  if (closure(*g, s0) != h.mask())
    throw Error(Error::Kind::precondition, "restrict_to_subgroup_decomposition: S0 does not generate H");

  const GGraph x = cayley_graph(g, s);
  const FlowLattice fl = flow_lattice(x);
  const GGraph xh = restrict_graph(x, h);
  const FlowLattice flh{xh, fl.basis, restrict(fl.lattice, h)};

  std::vector<int> s0_local;
  for (int t : s0) s0_local.push_back(h.to_local(t));
  const GGraph y = cayley_graph(h.as_group(), s0_local);
  const FlowLattice fy = flow_lattice(y);

  const int ns = static_cast<int>(s.size()), ns0 = static_cast<int>(s0.size());
  std::vector<bool> in_sub(x.num_edges(), false);
  IntMatrix embedded(x.num_edges(), fy.basis.cols());
  for (int e = 0; e < y.num_edges(); ++e) {
    const int idx = h.to_parent(e / ns0) * ns + position(s, s0[e % ns0]);
    in_sub[idx] = true;
    for (std::size_t j = 0; j < fy.basis.cols(); ++j) embedded(idx, j) = fy.basis(e, j);
  }

  // Hang every other H-orbit of vertices (a right coset Hx) from a vertex
  // closer to H, one edge per vertex, translated over H.
  std::vector<int> dist(g->order(), -1);
  std::deque<int> queue;
  for (int v : h.elements()) {
    dist[v] = 0;
    queue.push_back(v);
  }
  const auto adj = adjacency(x);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (auto [e, w] : adj[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  std::vector<bool> placed(g->order(), false);
  for (int v : h.elements()) placed[v] = true;
  for (int v = 0; v < g->order(); ++v) {
    if (placed[v]) continue;
    int chosen = -1;
    for (auto [e, w] : adj[v])
      if (dist[w] < dist[v] && (chosen < 0 || e < chosen)) chosen = e;
    if (chosen < 0) throw Error(Error::Kind::internal, "restrict_to_subgroup_decomposition: no edge towards H");
    for (int k = 0; k < h.order(); ++k) {
      in_sub[xh.edge_image(k, chosen)] = true;
      placed[g->mul(h.to_parent(k), v)] = true;
    }
  }
  return remove_edges_core(flh, in_sub, embedded, fy.lattice);
}

GSet sub_gset(const GSet& x, const std::vector<int>& points) {
  std::vector<int> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> local(x.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> act(x.group()->order(), std::vector<int>(sorted.size()));
  for (int g = 0; g < x.group()->order(); ++g)
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const int y = local[x(g, sorted[i])];
      if (y < 0) throw Error(Error::Kind::precondition, "sub_gset: points are not a union of orbits");
      act[g][i] = y;
    }
  return GSet(x.group(), std::move(act));
}

OrbitRemoval remove_orbit_with_map(const GSet& vertices, const std::vector<int>& orbit, const std::vector<int>& psi,
                                   bool loops) {
  if (orbit.empty() || orbit.size() != psi.size())
    throw Error(Error::Kind::invalid_parameter, "remove_orbit_with_map: orbit and map must be nonempty and of equal length");
  std::vector<int> sorted = orbit;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> full;
  for (const auto& o : vertices.orbits())
    if (std::binary_search(o.begin(), o.end(), orbit[0])) full = o;
  if (sorted != full) throw Error(Error::Kind::invalid_parameter, "remove_orbit_with_map: points do not form one orbit");
  std::vector<int> image(vertices.size(), -1);
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    if (std::binary_search(sorted.begin(), sorted.end(), psi[k]))
      throw Error(Error::Kind::invalid_parameter, "remove_orbit_with_map: map must land in a different orbit");
    image[orbit[k]] = psi[k];
  }
  for (int g = 0; g < vertices.group()->order(); ++g)
    for (int u : orbit)
      if (image[vertices(g, u)] != vertices(g, image[u]))
        throw Error(Error::Kind::invalid_parameter,
                    "remove_orbit_with_map: map is not equivariant at " + vertices.group()->name(g));

  std::vector<int> kept;
  for (int v = 0; v < vertices.size(); ++v)
    if (!std::binary_search(sorted.begin(), sorted.end(), v)) kept.push_back(v);
  const GGraph xs = complete_edges(sub_gset(vertices, kept), loops);
  std::vector<Edge> edges;
  for (const auto& e : xs.edges()) edges.push_back({kept[e.source], kept[e.target]});
  const int pendant_start = static_cast<int>(edges.size());
  for (int u : sorted) edges.push_back({u, image[u]});
  GGraph x(vertices, std::move(edges));
  const FlowLattice fl = flow_lattice(x);
  const FlowLattice fs = flow_lattice(xs);

  bool flow_free = true;
  for (int e = pendant_start; e < x.num_edges(); ++e)
    for (std::size_t j = 0; j < fl.basis.cols(); ++j)
      if (sgn(fl.basis(e, j)) != 0) flow_free = false;

  IntMatrix embedded(x.num_edges(), fs.basis.cols());
  for (int e = 0; e < xs.num_edges(); ++e)
    for (std::size_t j = 0; j < fs.basis.cols(); ++j) embedded(e, j) = fs.basis(e, j);
  auto coords = solve_columns(fl.basis, embedded);
  if (!coords) throw Error(Error::Kind::internal, "remove_orbit_with_map: subgraph flow is not a flow of the graph");
  return {x, kept, EquivariantMap(fs.lattice, fl.lattice, *coords), flow_free};
}

namespace {

// (g, x, y) with a x + b y = g.
std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  if (b == 0) return {a, 1, 0};
  auto [g, x1, y1] = extended_gcd(b, a % b);
  return {g, y1, x1 - (a / b) * y1};
}

}  // namespace

GcdSplitting gcd_splitting(const GSet& vertices) {
  auto orbits = vertices.orbits();
  if (orbits.empty()) throw Error(Error::Kind::precondition, "gcd_splitting: empty vertex set");
  std::vector<Integer> a{1};
  Integer g = static_cast<long>(orbits[0].size());
  for (std::size_t i = 1; i < orbits.size(); ++i) {
    auto [d, x, y] = extended_gcd(g, Integer(static_cast<long>(orbits[i].size())));
    for (auto& c : a) c *= x;
    a.push_back(y);
    g = d;
  }
  if (g != 1) throw Error(Error::Kind::precondition, "gcd_splitting: orbit sizes have gcd " + g.get_str());
  IntMatrix col(vertices.size(), 1);
  for (std::size_t i = 0; i < orbits.size(); ++i)
    for (int v : orbits[i]) col(v, 0) = a[i];
  GLattice zv = permutation_lattice(vertices);
  GLattice z = trivial(vertices.group());
  IntMatrix eps(1, vertices.size());
  for (int v = 0; v < vertices.size(); ++v) eps(0, v) = 1;
  IntMatrix ib = augmentation_basis(vertices.size());
  ShortExactSequence aug{EquivariantMap(sublattice(zv, ib), zv, ib), EquivariantMap(zv, z, eps)};
  return {a, orbits, EquivariantMap(z, zv, col), aug};
}

ShortExactSequence quasi_permutation_sequence(const FlowLattice& fl, const GcdSplitting& split) {
  const GGraph& x = fl.graph;
  GLattice middle = direct_sum(trivial(x.group()), permutation_lattice(x.edge_set()));
  IntMatrix left(1 + x.num_edges(), fl.basis.cols());
  left.set_block(1, 0, fl.basis);
  IntMatrix right = hstack(split.section.matrix(), boundary_matrix(x).matrix());
  return {EquivariantMap(fl.lattice, middle, std::move(left)),
          EquivariantMap(middle, split.section.target(), std::move(right))};
}

IntVector walk_to_flow(const GGraph& x, const std::vector<int>& walk) {
  IntVector f(x.num_edges());
  if (walk.size() <= 1) return f;
  if (walk.front() != walk.back()) throw Error(Error::Kind::precondition, "walk_to_flow: walk is not closed");
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const int u = walk[i], w = walk[i + 1];
    if (auto e = x.find_edge(u, w)) {
      f[*e] += 1;
    } else if (auto r = x.find_edge(w, u)) {
      f[*r] -= 1;
    } else {
      throw Error(Error::Kind::precondition,
                  "walk_to_flow: no edge between " + std::to_string(u) + " and " + std::to_string(w));
    }
  }
  return f;
}

}  // namespace glattice
