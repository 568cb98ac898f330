#ifndef IMB_GRAPH_HPP
#define IMB_GRAPH_HPP

#include <array>
#include <string>
#include <vector>

#include "imb/matrix.hpp"
#include "imb/rng.hpp"

namespace imb {

struct Edge {
  int from = 0;
  int to = 0;
};

struct OutArc {
  int to = 0;
  int edge = 0;  // index into Graph::edges
};

struct InArc {
  int from = 0;
  int edge = 0;
};

// Immutable directed graph over nodes 0..n-1. No self-loops, no duplicate
// directed edges; adjacency lists are derived from the edge list on build.
class Graph {
 public:
  Graph() = default;
  Graph(int node_count, std::vector<Edge> edge_list);  // validates, builds adjacency

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<OutArc>& out_arcs(int u) const { return out_adj_[u]; }
  const std::vector<InArc>& in_arcs(int v) const { return in_adj_[v]; }

  // sorted unique neighbor lists of the symmetrized graph
  std::vector<std::vector<int>> undirected_neighbors() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<OutArc>> out_adj_;
  std::vector<std::vector<InArc>> in_adj_;
};

// Edge-list text format: one "u v" pair per line, '#' starts a comment,
// optional first line "n=<int>" pins the node count. Duplicate edges are
// dropped; self-loops and malformed lines raise with the line number.
Graph parse_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);

using InitiatorMatrix = std::array<std::array<double, 2>, 2>;

inline constexpr InitiatorMatrix kDefaultInitiator{{{0.9, 0.5}, {0.5, 0.3}}};

// Stochastic Kronecker graph on 2^iterations nodes: directed pair (u,v), u!=v,
// is an edge with probability prod_k initiator[bit_k(u)][bit_k(v)].
// One uniform draw per ordered pair, so a fixed seed reproduces bit-exactly.
Graph kronecker_graph(const InitiatorMatrix& initiator, int iterations, Rng& rng);

// Expected edge density of the Kronecker distribution (self-pairs excluded).
double kronecker_expected_density(const InitiatorMatrix& initiator, int iterations);

// Scales the initiator by a bisected scalar so the expected density matches
// target_density. Throws if the target is unreachable with entries kept in [0,1].
InitiatorMatrix scale_initiator_to_density(const InitiatorMatrix& initiator, int iterations,
                                           double target_density);

// Laplacian D - A of the symmetrized graph.
SymMatrix unweighted_laplacian(const Graph& g);

// d x n matrix of per-node target features, column v is the feature of node v.
// Invariants: every column norm <= 1 and d <= n.
struct FeatureMatrix {
  int dim = 0;
  int nodes = 0;
  std::vector<double> data;  // column-major: data[v*dim + i]

  double at(int i, int v) const { return data[static_cast<std::size_t>(v) * dim + i]; }
  double& at(int i, int v) { return data[static_cast<std::size_t>(v) * dim + i]; }
  double column_norm(int v) const;
};

FeatureMatrix identity_features(int n);

struct LaplacianFeatures {
  FeatureMatrix features;
  std::vector<double> eigenvalues;  // the d smallest, ascending
};

// Rows are the eigenvectors of the unweighted Laplacian with the d smallest
// eigenvalues. Deterministic: ascending eigenvalues with stable ties, each
// eigenvector's first non-negligible entry made positive, then all columns
// rescaled by the maximum column norm.
LaplacianFeatures laplacian_features(const Graph& g, int d);

}  // namespace imb

#endif
