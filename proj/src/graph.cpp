#include "imb/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "imb/numerics.hpp"

namespace imb {

Graph::Graph(int node_count, std::vector<Edge> edge_list) : n_(node_count) {
  if (node_count < 0) throw std::invalid_argument("Graph: negative node count");
  std::set<std::pair<int, int>> seen;
  edges_.reserve(edge_list.size());
  for (const Edge& e : edge_list) {
    if (e.from < 0 || e.from >= n_ || e.to < 0 || e.to >= n_)
      throw std::invalid_argument("Graph: edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("Graph: self-loop rejected");
    if (seen.insert({e.from, e.to}).second) edges_.push_back(e);
  }
  out_adj_.assign(n_, {});
  in_adj_.assign(n_, {});
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    out_adj_[edges_[i].from].push_back({edges_[i].to, i});
    in_adj_[edges_[i].to].push_back({edges_[i].from, i});
  }
}

std::vector<std::vector<int>> Graph::undirected_neighbors() const {
  std::vector<std::set<int>> nb(n_);
  for (const Edge& e : edges_) {
    nb[e.from].insert(e.to);
    nb[e.to].insert(e.from);
  }
  std::vector<std::vector<int>> out(n_);
  for (int u = 0; u < n_; ++u) out[u].assign(nb[u].begin(), nb[u].end());
  return out;
}

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int header_n = -1;
  bool saw_content = false;
  std::vector<Edge> edges;
  int max_id = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    if (!saw_content && line.rfind("n=", 0) == 0) {
      saw_content = true;
      try {
        header_n = std::stoi(line.substr(2));
      } catch (const std::exception&) {
        throw std::runtime_error("parse_edge_list: bad node-count header at line " +
                                 std::to_string(line_no));
      }
      if (header_n < 0)
        throw std::runtime_error("parse_edge_list: negative node count at line " +
                                 std::to_string(line_no));
      continue;
    }
    saw_content = true;
    std::istringstream fields(line);
    long long u, v;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0)
      throw std::runtime_error("parse_edge_list: malformed line " + std::to_string(line_no));
    if (u == v)
      throw std::runtime_error("parse_edge_list: self-loop at line " + std::to_string(line_no));
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }

  int n = max_id + 1;
  if (header_n >= 0) {
    if (header_n < n)
      throw std::runtime_error("parse_edge_list: header node count smaller than max node id");
    n = header_n;
  }
  return Graph(n, std::move(edges));
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n=" << g.node_count() << "\n";
  for (const Edge& e : g.edges()) out << e.from << " " << e.to << "\n";
  return out.str();
}

namespace {

void validate_initiator(const InitiatorMatrix& initiator) {
  for (const auto& row : initiator)
    for (double p : row)
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("kronecker: initiator entry outside [0,1]");
}

double pair_probability(const InitiatorMatrix& initiator, int iterations, int u, int v) {
  double p = 1.0;
  for (int k = 0; k < iterations; ++k) {
    p *= initiator[(u >> k) & 1][(v >> k) & 1];
    if (p == 0.0) break;
  }
  return p;
}

}  // namespace

Graph kronecker_graph(const InitiatorMatrix& initiator, int iterations, Rng& rng) {
  validate_initiator(initiator);
  if (iterations < 1) throw std::invalid_argument("kronecker: iterations must be >= 1");
  if (iterations > 20) throw std::invalid_argument("kronecker: iterations too large");
  const int n = 1 << iterations;
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const double draw = rng.uniform();  // one draw per pair, keeps streams aligned
      if (draw < pair_probability(initiator, iterations, u, v)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

double kronecker_expected_density(const InitiatorMatrix& initiator, int iterations) {
  validate_initiator(initiator);
  const double total = initiator[0][0] + initiator[0][1] + initiator[1][0] + initiator[1][1];
  const double diag = initiator[0][0] + initiator[1][1];
  const double n = std::pow(2.0, iterations);
  const double expected_edges = std::pow(total, iterations) - std::pow(diag, iterations);
  return expected_edges / (n * (n - 1.0));
}

InitiatorMatrix scale_initiator_to_density(const InitiatorMatrix& initiator, int iterations,
                                           double target_density) {
  validate_initiator(initiator);
  double max_entry = 0.0;
  for (const auto& row : initiator)
    for (double p : row) max_entry = std::max(max_entry, p);
  if (max_entry == 0.0 || target_density <= 0.0)
    throw std::invalid_argument("scale_initiator_to_density: degenerate input");

  auto scaled = [&](double s) {
    InitiatorMatrix m = initiator;
    for (auto& row : m)
      for (double& p : row) p *= s;
    return m;
  };

  const double s_max = 1.0 / max_entry;  // keeps entries within [0,1]
  if (kronecker_expected_density(scaled(s_max), iterations) < target_density)
    throw std::invalid_argument("scale_initiator_to_density: target density unreachable");

  double lo = 0.0, hi = s_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kronecker_expected_density(scaled(mid), iterations) < target_density)
      lo = mid;
    else
      hi = mid;
  }
  return scaled(0.5 * (lo + hi));
}

SymMatrix unweighted_laplacian(const Graph& g) {
  const int n = g.node_count();
  SymMatrix lap(n);
  const auto neighbors = g.undirected_neighbors();
  for (int u = 0; u < n; ++u) {
    lap.set(u, u, static_cast<double>(neighbors[u].size()));
    for (int w : neighbors[u])
      if (w > u) lap.set(u, w, -1.0);
  }
  return lap;
}

double FeatureMatrix::column_norm(int v) const {
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) acc += at(i, v) * at(i, v);
  return std::sqrt(acc);
}

FeatureMatrix identity_features(int n) {
  FeatureMatrix x;
  x.dim = n;
  x.nodes = n;
  x.data.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int v = 0; v < n; ++v) x.at(v, v) = 1.0;
  return x;
}

LaplacianFeatures laplacian_features(const Graph& g, int d) {
  const int n = g.node_count();
  if (d < 1 || d > n)
    throw std::invalid_argument("laplacian_features: need 1 <= d <= node count");

  const SymEigenResult eig = sym_eigen(unweighted_laplacian(g));

  LaplacianFeatures out;
  out.eigenvalues.assign(eig.values.begin(), eig.values.begin() + d);
  out.features.dim = d;
  out.features.nodes = n;
  out.features.data.assign(static_cast<std::size_t>(n) * d, 0.0);

  for (int i = 0; i < d; ++i) {
    // sign convention: first entry of visible magnitude is positive
    double sign = 1.0;
    for (int v = 0; v < n; ++v) {
      const double e = eig.vectors.at(v, i);
      if (std::abs(e) > 1e-9) {
        sign = e > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int v = 0; v < n; ++v) out.features.at(i, v) = sign * eig.vectors.at(v, i);
  }

  double max_norm = 0.0;
  for (int v = 0; v < n; ++v) max_norm = std::max(max_norm, out.features.column_norm(v));
  if (max_norm > 0.0) {
    for (double& x : out.features.data) x /= max_norm;
  }
  return out;
}

}  // namespace imb
