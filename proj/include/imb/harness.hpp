#ifndef IMB_HARNESS_HPP
#define IMB_HARNESS_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "imb/bandit.hpp"
#include "imb/diffusion.hpp"
#include "imb/graph.hpp"
#include "imb/surrogate.hpp"

namespace imb {

inline constexpr double kGreedyApproximationFactor = 0.6321205588285577;  // 1 - 1/e

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AlgorithmKind { DiLinUcbTabular, DiLinUcbFeatures, DiLinUcbLaplacian, Cucb };

std::string algorithm_name(AlgorithmKind kind);
AlgorithmKind parse_algorithm_name(const std::string& name);

struct GraphSource {
  std::string path;  // non-empty: load an edge-list file, ignore the rest
  int kronecker_iterations = 6;
  InitiatorMatrix initiator = kDefaultInitiator;
  double target_density = 0.0;  // > 0: rescale the initiator to this density
};

struct AlgorithmConfig {
  AlgorithmKind kind = AlgorithmKind::DiLinUcbTabular;
  double exploration = 1.0;
  double ridge = 1e-4;
  double noise = 1.0;
  WeightSolver solver = WeightSolver::Cholesky;
  int feature_dim = 16;             // feature / laplacian variants
  double smoothing = 0.1;           // laplacian variant
  double cg_tol = 1e-4;
  int cg_max_iters = 50;
  double initial_confidence = 1.0;  // laplacian variant
  int cucb_sims = 20;               // cucb greedy simulations per evaluation
};

struct ValidationConfig {
  long rounds = 0;  // 0 disables the pre-phase
  std::vector<double> exploration_grid;
};

struct SurrogateCheckConfig {
  long reachability_sims = 20000;
  int spread_sims = 500;
  int random_sets = 100;
  std::vector<int> cardinalities = {2, 5, 10, 15};
  int sample_k_min = 1;
  int sample_k_max = 35;
};

struct ExperimentConfig {
  int version = 1;
  GraphSource graph;
  DiffusionModel model = DiffusionModel::IC;
  double weight_low = 0.0;
  double weight_high = 0.1;
  int cardinality = 5;   // seeds per round
  long rounds = 1000;    // bandit horizon
  int instances = 1;
  std::uint64_t seed = 1;
  int baseline_sims = 200;  // simulations per evaluation for the spread-greedy baseline
  ValidationConfig validation;
  AlgorithmConfig algorithm;
  SurrogateCheckConfig surrogate;
};

// JSON config files, nested per section; missing keys keep their defaults.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Per-round record of one bandit run plus the derived regret curves.
struct RegretTrace {
  std::vector<std::vector<int>> seeds;
  std::vector<double> reward;             // realized reward of the chosen set
  std::vector<double> baseline_reward;    // same-realization reward of the fixed baseline
  std::vector<double> cumulative_regret;  // prefix sums of (baseline - reward)
  std::vector<double> per_step_reward;    // running mean of reward

  long rounds() const { return static_cast<long>(reward.size()); }
  double final_regret() const {
    return cumulative_regret.empty() ? 0.0 : cumulative_regret.back();
  }
  void record(std::vector<int> chosen, double realized, double baseline);
};

// T*F(S*) - (1/kappa) * sum_t F(S_t), both estimated from the trace.
double scaled_regret(const RegretTrace& trace, double kappa);

std::string write_trace_csv(const RegretTrace& trace);
RegretTrace parse_trace_csv(const std::string& text);

// One verification row per cardinality, averaged over instances; the paired
// standard errors are pooled over every sampled seed set.
struct SurrogateReportRow {
  int cardinality = 0;
  double mean_spread = 0.0;      // F on random sets
  double mean_surrogate = 0.0;   // f on the same sets
  double se_spread = 0.0;
  double se_surrogate = 0.0;
  double se_gap = 0.0;           // stderr of the per-set (f - F) difference
  double best_spread = 0.0;      // F of the spread-greedy set
  double greedy_surrogate = 0.0; // f of the surrogate-greedy set
  double upper_bound = 0.0;      // best_spread / (1 - 1/e)
  double lower_bound = 0.0;      // best_spread / K
  double rho_floor = 0.0;        // (1 - 1/e) * greedy_surrogate / best_spread
};

struct SurrogateReport {
  std::vector<SurrogateReportRow> rows;
  int instances = 0;
};

std::string write_report_csv(const SurrogateReport& report);

// Round-level interface the experiment loop drives.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::vector<int> select(SeedConstraint constraint) = 0;
  virtual void observe(const Graph& g, const InfluenceParams& params,
                       const DiffusionSample& w, const std::vector<int>& seeds,
                       const std::vector<int>& activated) = 0;
  virtual nlohmann::json describe() const = 0;
};

std::unique_ptr<Policy> make_policy(const Graph& g, const AlgorithmConfig& algo,
                                    const FeatureMatrix& features, std::uint64_t seed);

// Features the algorithm kind calls for: identity for tabular and cucb,
// Laplacian eigenfeatures otherwise.
FeatureMatrix features_for(const Graph& g, const AlgorithmConfig& algo);

struct PreparedInstance {
  Graph graph;
  InfluenceParams params;
  std::vector<int> baseline_seeds;  // spread-greedy solution played as the comparator
  double baseline_value = 0.0;      // its Monte-Carlo spread estimate
};

// Graph + weights + baseline, all derived deterministically from the config seed.
PreparedInstance prepare_instance(const ExperimentConfig& config);

RegretTrace run_bandit_rounds(const Graph& g, const InfluenceParams& params,
                              const std::vector<int>& baseline_seeds, Policy& policy,
                              int cardinality, long rounds, Rng& diffusion_rng);

// One trace for one instance index: optional validation pre-phase picks the
// exploration weight, then a fresh policy plays the recorded horizon.
RegretTrace run_single_trace(const PreparedInstance& instance, const ExperimentConfig& config,
                             const AlgorithmConfig& algo, int instance_index);

struct ExperimentResult {
  std::vector<RegretTrace> traces;
  double mean_final_regret = 0.0;
  double mean_per_step_reward = 0.0;
  nlohmann::json summary;
};

ExperimentResult run_bandit_experiment(const ExperimentConfig& config);

SurrogateReport verify_surrogate(const ExperimentConfig& config);

}  // namespace imb

#endif
