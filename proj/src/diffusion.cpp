#include "imb/diffusion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace imb {

std::string model_name(DiffusionModel m) {
  return m == DiffusionModel::IC ? "ic" : "lt";
}

DiffusionModel parse_model_name(const std::string& name) {
  if (name == "ic" || name == "IC") return DiffusionModel::IC;
  if (name == "lt" || name == "LT") return DiffusionModel::LT;
  throw std::invalid_argument("unknown diffusion model: " + name);
}

void validate_params(const Graph& g, const InfluenceParams& params) {
  if (static_cast<int>(params.edge_weight.size()) != g.edge_count())
    throw std::invalid_argument("InfluenceParams: weight count != edge count");
  for (double w : params.edge_weight)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("InfluenceParams: weight outside [0,1]");
  if (params.model == DiffusionModel::LT) {
    for (int v = 0; v < g.node_count(); ++v) {
      double sum = 0.0;
      for (const InArc& a : g.in_arcs(v)) sum += params.edge_weight[a.edge];
      if (sum > 1.0 + 1e-12)
        throw std::invalid_argument("InfluenceParams: LT incoming weights exceed 1 at node " +
                                    std::to_string(v));
    }
  }
}

InfluenceParams sample_uniform_weights(const Graph& g, DiffusionModel model, double lo,
                                       double hi, Rng& rng) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
    throw std::invalid_argument("sample_uniform_weights: need 0 <= lo <= hi <= 1");
  InfluenceParams params;
  params.model = model;
  params.edge_weight.resize(g.edge_count());
  for (double& w : params.edge_weight) w = rng.uniform(lo, hi);
  if (model == DiffusionModel::LT) {
    for (int v = 0; v < g.node_count(); ++v) {
      double sum = 0.0;
      for (const InArc& a : g.in_arcs(v)) sum += params.edge_weight[a.edge];
      if (sum > 1.0) {
        for (const InArc& a : g.in_arcs(v)) params.edge_weight[a.edge] /= sum;
      }
    }
  }
  return params;
}

std::pair<Graph, InfluenceParams> parse_weighted_edge_list(const std::string& text,
                                                           DiffusionModel model) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int header_n = -1;
  bool saw_content = false;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::set<std::pair<int, int>> seen;
  int max_id = -1;

  while (std::getline(in, line)) {
    ++line_no;
    bool blank = true;
    for (char c : line) {
      if (c == '#') break;
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    if (!saw_content && line.rfind("n=", 0) == 0) {
      saw_content = true;
      header_n = std::stoi(line.substr(2));
      continue;
    }
    saw_content = true;
    std::istringstream fields(line);
    long long u, v;
    double w;
    std::string extra;
    if (!(fields >> u >> v >> w) || (fields >> extra) || u < 0 || v < 0)
      throw std::runtime_error("parse_weighted_edge_list: malformed line " +
                               std::to_string(line_no));
    if (u == v)
      throw std::runtime_error("parse_weighted_edge_list: self-loop at line " +
                               std::to_string(line_no));
    if (!seen.insert({static_cast<int>(u), static_cast<int>(v)}).second)
      throw std::runtime_error("parse_weighted_edge_list: duplicate edge at line " +
                               std::to_string(line_no));
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    weights.push_back(w);
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }

  int n = max_id + 1;
  if (header_n >= 0) {
    if (header_n < n)
      throw std::runtime_error("parse_weighted_edge_list: header node count too small");
    n = header_n;
  }
  Graph g(n, std::move(edges));
  InfluenceParams params{model, std::move(weights)};
  validate_params(g, params);
  return {std::move(g), std::move(params)};
}

std::string write_weighted_edge_list(const Graph& g, const InfluenceParams& params) {
  std::ostringstream out;
  out.precision(17);
  out << "n=" << g.node_count() << "\n";
  for (int i = 0; i < g.edge_count(); ++i)
    out << g.edges()[i].from << " " << g.edges()[i].to << " " << params.edge_weight[i] << "\n";
  return out.str();
}

DiffusionSample sample_diffusion(const Graph& g, const InfluenceParams& params, Rng& rng) {
  DiffusionSample w;
  w.model = params.model;
  if (params.model == DiffusionModel::IC) {
    w.live_edges.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
      w.live_edges[e] = rng.bernoulli(params.edge_weight[e]) ? 1 : 0;
  } else {
    w.thresholds.resize(g.node_count());
    for (double& t : w.thresholds) t = rng.uniform();
  }
  return w;
}

namespace {

void check_seeds(const Graph& g, const std::vector<int>& seeds) {
  for (int s : seeds)
    if (s < 0 || s >= g.node_count())
      throw std::invalid_argument("propagate: seed id out of range");
}

std::vector<int> mask_to_sorted(const std::vector<std::uint8_t>& mask) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(mask.size()); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

std::vector<std::uint8_t> propagate_mask(const Graph& g, const InfluenceParams& params,
                                         const DiffusionSample& w,
                                         const std::vector<int>& seeds) {
  const int n = g.node_count();
  std::vector<std::uint8_t> active(n, 0);
  std::queue<int> frontier;
  for (int s : seeds) {
    if (!active[s]) {
      active[s] = 1;
      frontier.push(s);
    }
  }

  if (params.model == DiffusionModel::IC) {
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (const OutArc& a : g.out_arcs(u)) {
        if (w.live_edges[a.edge] && !active[a.to]) {
          active[a.to] = 1;
          frontier.push(a.to);
        }
      }
    }
  } else {
    // accumulate incoming active weight; a node joins once it reaches its
    // threshold, which can only happen after receiving some weight
    std::vector<double> incoming(n, 0.0);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (const OutArc& a : g.out_arcs(u)) {
        if (active[a.to]) continue;
        incoming[a.to] += params.edge_weight[a.edge];
        if (incoming[a.to] >= w.thresholds[a.to]) {
          active[a.to] = 1;
          frontier.push(a.to);
        }
      }
    }
  }
  return active;
}

}  // namespace

std::vector<int> propagate(const Graph& g, const InfluenceParams& params,
                           const DiffusionSample& w, const std::vector<int>& seeds) {
  check_seeds(g, seeds);
  return mask_to_sorted(propagate_mask(g, params, w, seeds));
}

PairwiseFeedback pairwise_feedback(const Graph& g, const InfluenceParams& params,
                                   const DiffusionSample& w, const std::vector<int>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("pairwise_feedback: empty seed set");
  check_seeds(g, seeds);
  PairwiseFeedback feedback;
  for (int u : seeds) feedback[u] = propagate_mask(g, params, w, {u});
  return feedback;
}

double estimate_spread(const Graph& g, const InfluenceParams& params,
                       const std::vector<int>& seeds, long num_sims, Rng& rng) {
  if (num_sims < 1) throw std::invalid_argument("estimate_spread: num_sims must be >= 1");
  check_seeds(g, seeds);
  if (seeds.empty()) return 0.0;
  long long total = 0;
  for (long s = 0; s < num_sims; ++s) {
    const DiffusionSample w = sample_diffusion(g, params, rng);
    const auto mask = propagate_mask(g, params, w, seeds);
    for (std::uint8_t b : mask) total += b;
  }
  return static_cast<double>(total) / static_cast<double>(num_sims);
}

std::vector<double> exact_influence_ic(const Graph& g, const InfluenceParams& params,
                                       const std::vector<int>& seeds) {
  if (params.model != DiffusionModel::IC)
    throw std::invalid_argument("exact_influence_ic: IC only");
  const int m = g.edge_count();
  if (m > 22) throw std::invalid_argument("exact_influence_ic: too many edges to enumerate");
  check_seeds(g, seeds);

  std::vector<double> prob(g.node_count(), 0.0);
  if (seeds.empty()) return prob;

  DiffusionSample w;
  w.model = DiffusionModel::IC;
  w.live_edges.assign(m, 0);
  const std::uint64_t count = 1ULL << m;
  for (std::uint64_t subset = 0; subset < count; ++subset) {
    double p = 1.0;
    for (int e = 0; e < m; ++e) {
      const bool live = (subset >> e) & 1ULL;
      w.live_edges[e] = live ? 1 : 0;
      p *= live ? params.edge_weight[e] : 1.0 - params.edge_weight[e];
    }
    if (p == 0.0) continue;
    const auto mask = propagate_mask(g, params, w, seeds);
    for (int v = 0; v < g.node_count(); ++v)
      if (mask[v]) prob[v] += p;
  }
  return prob;
}

double exact_spread_ic(const Graph& g, const InfluenceParams& params,
                       const std::vector<int>& seeds) {
  const auto prob = exact_influence_ic(g, params, seeds);
  double total = 0.0;
  for (double p : prob) total += p;
  return total;
}

std::string write_table_csv(const ReachabilityTable& table) {
  std::ostringstream out;
  out.precision(17);
  for (int u = 0; u < table.n; ++u) {
    for (int v = 0; v < table.n; ++v) {
      if (v) out << ",";
      out << table.at(u, v);
    }
    out << "\n";
  }
  return out.str();
}

ReachabilityTable parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  ReachabilityTable table(n);
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(rows[u].size()) != n)
      throw std::runtime_error("parse_table_csv: table is not square");
    for (int v = 0; v < n; ++v) table.at(u, v) = rows[u][v];
  }
  return table;
}

ReachabilityEstimate estimate_reachability(const Graph& g, const InfluenceParams& params,
                                           long num_sims, int k_min, int k_max, Rng& rng) {
  if (num_sims < 1)
    throw std::invalid_argument("estimate_reachability: num_sims must be >= 1");
  const int n = g.node_count();
  k_min = std::max(1, k_min);
  k_max = std::min(n, std::max(k_min, k_max));

  ReachabilityEstimate est;
  est.table = ReachabilityTable(n, 0.0);
  est.source_observations.assign(n, 0);
  std::vector<long long> hits(static_cast<std::size_t>(n) * n, 0);

  for (long s = 0; s < num_sims; ++s) {
    const int k = rng.integer_range(k_min, k_max);
    const std::vector<int> seeds = rng.sample_without_replacement(n, k);
    const DiffusionSample w = sample_diffusion(g, params, rng);
    for (int u : seeds) {
      const auto mask = propagate_mask(g, params, w, {u});
      ++est.source_observations[u];
      long long* row = &hits[static_cast<std::size_t>(u) * n];
      for (int v = 0; v < n; ++v) row[v] += mask[v];
    }
  }

  for (int u = 0; u < n; ++u) {
    if (est.source_observations[u] > 0) {
      const double denom = static_cast<double>(est.source_observations[u]);
      for (int v = 0; v < n; ++v)
        est.table.at(u, v) = static_cast<double>(hits[static_cast<std::size_t>(u) * n + v]) / denom;
    }
    est.table.at(u, u) = 1.0;  // a seed always influences itself
  }
  return est;
}

SeedSelection mc_greedy_spread(const Graph& g, const InfluenceParams& params,
                               int max_cardinality, int sims_per_eval, Rng& rng) {
  const int n = g.node_count();
  if (max_cardinality < 1)
    throw std::invalid_argument("mc_greedy_spread: cardinality must be >= 1");
  if (sims_per_eval < 1)
    throw std::invalid_argument("mc_greedy_spread: sims_per_eval must be >= 1");

  struct Entry {
    double gain;
    int node;
    int round;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    return a.gain < b.gain || (a.gain == b.gain && a.node > b.node);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  SeedSelection result;
  std::vector<int> trial;
  double current_value = 0.0;

  for (int u = 0; u < n; ++u) {
    const double spread = estimate_spread(g, params, {u}, sims_per_eval, rng);
    ++result.evaluations;
    queue.push({spread, u, 0});
  }

  const int k = std::min(max_cardinality, n);
  while (static_cast<int>(result.seeds.size()) < k && !queue.empty()) {
    Entry top = queue.top();
    queue.pop();
    const int round = static_cast<int>(result.seeds.size());
    if (top.round == round) {
      result.seeds.push_back(top.node);
      current_value += top.gain;
      continue;
    }
    trial = result.seeds;
    trial.push_back(top.node);
    const double spread = estimate_spread(g, params, trial, sims_per_eval, rng);
    ++result.evaluations;
    queue.push({spread - current_value, top.node, round});
  }
  result.value = current_value;
  return result;
}

}  // namespace imb
