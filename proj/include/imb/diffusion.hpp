#ifndef IMB_DIFFUSION_HPP
#define IMB_DIFFUSION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "imb/graph.hpp"
#include "imb/rng.hpp"

namespace imb {

enum class DiffusionModel { IC, LT };

std::string model_name(DiffusionModel m);
DiffusionModel parse_model_name(const std::string& name);

// Per-edge diffusion parameters, aligned with Graph::edges. For IC the weight
// is the activation probability of the edge; for LT it is the edge weight and
// every node's incoming weights must sum to at most 1.
struct InfluenceParams {
  DiffusionModel model = DiffusionModel::IC;
  std::vector<double> edge_weight;
};

void validate_params(const Graph& g, const InfluenceParams& params);

// Uniform weights on [lo, hi]. For LT, nodes whose incoming weights exceed 1
// have them rescaled proportionally to sum to exactly 1.
InfluenceParams sample_uniform_weights(const Graph& g, DiffusionModel model, double lo,
                                       double hi, Rng& rng);

// "u v weight" text format mirroring the edge-list format. Duplicate directed
// edges are an error here since their weights would be ambiguous.
std::pair<Graph, InfluenceParams> parse_weighted_edge_list(const std::string& text,
                                                           DiffusionModel model);
std::string write_weighted_edge_list(const Graph& g, const InfluenceParams& params);

// One realization of the diffusion randomness: live/blocked flags per edge for
// IC, an activation threshold per node for LT. Conditioned on a sample the
// propagation below is deterministic.
struct DiffusionSample {
  DiffusionModel model = DiffusionModel::IC;
  std::vector<std::uint8_t> live_edges;  // IC, length m
  std::vector<double> thresholds;        // LT, length n
};

DiffusionSample sample_diffusion(const Graph& g, const InfluenceParams& params, Rng& rng);

// Activated set from the seeds under the given realization, sorted ascending.
// IC: closure over live edges. LT: a node activates once the weight of its
// active in-neighbors reaches its threshold; iterated to fixpoint.
std::vector<int> propagate(const Graph& g, const InfluenceParams& params,
                           const DiffusionSample& w, const std::vector<int>& seeds);

// y_u(v) = 1 iff v is activated when {u} alone is seeded under the SAME
// realization, for every chosen seed u.
using PairwiseFeedback = std::map<int, std::vector<std::uint8_t>>;
PairwiseFeedback pairwise_feedback(const Graph& g, const InfluenceParams& params,
                                   const DiffusionSample& w, const std::vector<int>& seeds);

// Mean activated count over num_sims fresh realizations.
double estimate_spread(const Graph& g, const InfluenceParams& params,
                       const std::vector<int>& seeds, long num_sims, Rng& rng);

// Exact IC quantities by enumerating all 2^m edge realizations (m <= 22).
std::vector<double> exact_influence_ic(const Graph& g, const InfluenceParams& params,
                                       const std::vector<int>& seeds);
double exact_spread_ic(const Graph& g, const InfluenceParams& params,
                       const std::vector<int>& seeds);

// Pairwise reachability matrix with p[u][v] = probability that v activates
// when {u} is the sole seed. Row u is the reachability vector from source u.
struct ReachabilityTable {
  int n = 0;
  std::vector<double> values;  // row-major n x n

  ReachabilityTable() = default;
  explicit ReachabilityTable(int nodes, double fill = 0.0)
      : n(nodes), values(static_cast<std::size_t>(nodes) * nodes, fill) {}

  double at(int u, int v) const { return values[static_cast<std::size_t>(u) * n + v]; }
  double& at(int u, int v) { return values[static_cast<std::size_t>(u) * n + v]; }
};

std::string write_table_csv(const ReachabilityTable& table);
ReachabilityTable parse_table_csv(const std::string& text);

// Monte-Carlo reachability estimate: each simulation draws a uniform seed-set
// cardinality in [k_min, k_max], a uniform seed set of that size and one
// realization, then records singleton feedback for every chosen source.
// Diagonals are pinned to 1; off-diagonal entries of never-chosen sources stay
// 0 and are flagged through source_observations.
struct ReachabilityEstimate {
  ReachabilityTable table;
  std::vector<long> source_observations;
};

ReachabilityEstimate estimate_reachability(const Graph& g, const InfluenceParams& params,
                                           long num_sims, int k_min, int k_max, Rng& rng);

// Lazy greedy maximization of Monte-Carlo estimated spread under a cardinality
// cap. Each marginal evaluation spends sims_per_eval fresh simulations.
struct SeedSelection {
  std::vector<int> seeds;
  double value = 0.0;     // spread estimate of the final set
  long evaluations = 0;   // marginal-gain evaluations performed
};

SeedSelection mc_greedy_spread(const Graph& g, const InfluenceParams& params,
                               int max_cardinality, int sims_per_eval, Rng& rng);

}  // namespace imb

#endif
