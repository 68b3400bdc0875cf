#pragma once

// G-graphs, boundary maps and flow lattices, with the explicit
// decomposition isomorphisms between flow lattices.

#include <optional>
#include <unordered_map>
#include <string>
#include <utility>
#include <vector>

#include "gmod.hpp"

namespace glattice {

struct Edge {
  int source = 0;
  int target = 0;
  bool is_loop() const { return source == target; }
};

class GGraph {
 public:
  // Edges must be pairwise distinct; the edge action is read off the vertex
  // action. Throws Error if the edge set is not G-stable.
  GGraph(GSet vertices, std::vector<Edge> edges);

  const GroupPtr& group() const { return vertices_.group(); }
  const GSet& vertices() const { return vertices_; }
  int num_vertices() const { return vertices_.size(); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int edge_image(int g, int e) const { return edge_action_[g][e]; }
  const GSet& edge_set() const { return edge_gset_; }
  std::optional<int> find_edge(int source, int target) const;

  // Connected components of the underlying undirected graph.
  std::vector<std::vector<int>> components() const;
  bool is_connected() const { return components().size() <= 1; }

 private:
  GSet vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> edge_action_;
  GSet edge_gset_;
  std::unordered_map<long, int> index_;
};

// All ordered pairs (u, v), u major; pairs with u == v only when loops is set.
GGraph complete_edges(const GSet& vertices, bool loops);
// Vertices G under left translation, edge g*|S|+k is (g, g s_k).
GGraph cayley_graph(const GroupPtr& g, const std::vector<int>& s);
// The same graph viewed as an H-graph.
GGraph restrict_graph(const GGraph& x, const Subgroup& h);

// Z^E -> Z^V, column e has +1 at its target and -1 at its source.
EquivariantMap boundary_matrix(const GGraph& x);

struct FlowLattice {
  GGraph graph;
  IntMatrix basis;  // |E| x rank, columns are flows
  GLattice lattice;
  // The embedding of the flow lattice into the edge lattice ZE.
  EquivariantMap inclusion() const;
};

// Basis of fundamental cycles of the breadth-first spanning tree from vertex
// 0, one per non-tree edge in edge order. Throws Error on a disconnected graph.
FlowLattice flow_lattice(const GGraph& x);
// Flow lattice with a caller-supplied basis (saturated and G-stable span).
FlowLattice flow_lattice_with_basis(const GGraph& x, const IntMatrix& basis);

// Edges of the breadth-first spanning tree used by flow_lattice.
std::vector<int> bfs_tree_edges(const GGraph& x);

struct SpanningTreeResult {
  std::optional<FlowLattice> lattice;
  std::string diagnostic;
};

// Certifies candidates (columns) as a basis of the flows when their values on
// the non-tree edges form a triangular matrix with unit diagonal, up to
// reordering. Throws Error when tree is not a spanning tree or a candidate
// is not a flow.
SpanningTreeResult spanning_tree_basis(const GGraph& x, const std::vector<int>& tree, const IntMatrix& candidates);

struct IsoPair {
  EquivariantMap forward;
  EquivariantMap backward;
};

// Fl(V, E+) -> Fl(V, E-) + ZV for the complete graph with loops, and its inverse.
IsoPair loop_split(const GSet& vertices);

// Fl(X') + ZG^m -> Fl(X) for a free action and X' a connected subgraph of X
// on the same vertices. Orbit j of the removed edges occupies the summand
// block at offset rank(Fl(X')) + j*|G|, element g at position g.
EquivariantMap remove_edges_decomposition(const FlowLattice& x, const FlowLattice& sub);
int removed_orbit_count(const GGraph& x, const GGraph& sub);

// Fl(H, S0) + ZH^m -> Fl(G, S) restricted to H.
EquivariantMap restrict_to_subgroup_decomposition(const GroupPtr& g, const Subgroup& h, const std::vector<int>& s,
                                                  const std::vector<int>& s0);

struct OrbitRemoval {
  GGraph graph;             // complete graph on the remaining vertices plus the edges (x, psi(x))
  std::vector<int> kept;    // vertices of graph that survive, in order
  EquivariantMap embedding; // Fl(complete graph on kept) -> Fl(graph)
  bool pendant_edges_flow_free = false;
};

// orbit lists the points of one orbit V_i, psi[k] the image of orbit[k].
OrbitRemoval remove_orbit_with_map(const GSet& vertices, const std::vector<int>& orbit, const std::vector<int>& psi,
                                   bool loops = false);

// The G-set on a union of orbits, points renumbered in increasing order.
GSet sub_gset(const GSet& x, const std::vector<int>& points);

struct GcdSplitting {
  std::vector<Integer> coefficients;   // one per orbit, sum a_i |V_i| = 1
  std::vector<std::vector<int>> orbits;
  EquivariantMap section;              // Z -> ZV, 1 -> sum a_i N_i
  ShortExactSequence augmentation;     // 0 -> I_V -> ZV -> Z -> 0
};

GcdSplitting gcd_splitting(const GSet& vertices);
// 0 -> Fl(X) -> Z + ZE -> ZV -> 0 with (k, f) -> k section(1) + boundary(f).
ShortExactSequence quasi_permutation_sequence(const FlowLattice& fl, const GcdSplitting& split);

// Signed traversal counts of a closed walk given by its vertices.
IntVector walk_to_flow(const GGraph& x, const std::vector<int>& walk);

}  // namespace glattice
