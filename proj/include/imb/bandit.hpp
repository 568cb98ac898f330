#ifndef IMB_BANDIT_HPP
#define IMB_BANDIT_HPP

#include <iosfwd>
#include <vector>

#include "imb/diffusion.hpp"
#include "imb/graph.hpp"
#include "imb/numerics.hpp"
#include "imb/surrogate.hpp"

namespace imb {

// Smallest exploration weight for which the confidence bonuses cover the
// estimation error over a whole horizon with high probability:
//   (1/noise) * sqrt(d*n*log(1 + n*T/(noise^2*ridge*d)) + 2*log(n^2*T))
//     + sqrt(ridge) * max_weight_norm
double theoretical_exploration_weight(int n, int d, long horizon, double ridge, double noise,
                                      double max_weight_norm);

// Optimistic estimates of all pairwise reachabilities, one row per source.
// Starts at all-ones and stays clamped to [0,1]; unlike a reachability table
// its diagonal may transiently dip below 1 while a source is being learned.
using UcbTable = ReachabilityTable;

// Backend for the per-source weight solve. Both satisfy the same residual
// contract; conjugate gradient warm-starts from the previous weights and
// falls back to the factorization if it stalls.
enum class WeightSolver { Cholesky, ConjugateGradient };

struct DiLinUcbConfig {
  double exploration = 1.0;  // weight on the confidence width
  double ridge = 1.0;        // regularizer seeding every Gram matrix
  double noise = 1.0;        // observation noise scale
  WeightSolver solver = WeightSolver::Cholesky;
  FeatureMatrix features;    // target features, one column per node
};

// Per-source ridge-regression statistics.
struct SourceState {
  SymMatrix gram;               // ridge * I + (selections/noise^2) * X X^T
  std::vector<double> response; // accumulated X * y
  std::vector<double> weight;   // noise^-2 * gram^-1 * response
};

// Linear-UCB learner over pairwise reachabilities. Each chosen source gets
// singleton reachability feedback for every target; sources are estimated
// independently of the diffusion process generating the feedback.
class DiLinUcb {
 public:
  DiLinUcb(int node_count, DiLinUcbConfig config);

  std::vector<int> select(const SurrogateOracle& oracle, SeedConstraint constraint) const;

  // Feedback keys must be exactly the selected seeds; rows of unselected
  // sources are left untouched.
  void update(const std::vector<int>& seeds, const PairwiseFeedback& feedback);

  const UcbTable& ucb() const { return ucb_; }
  const SourceState& source_state(int u) const { return states_[u]; }
  long rounds() const { return rounds_; }
  long selection_count(int u) const { return selections_[u]; }
  int node_count() const { return n_; }
  const DiLinUcbConfig& config() const { return config_; }

  double mean_estimate(int u, int v) const;
  double confidence_radius(int u, int v) const;

  // Versioned structured-text snapshot of the full learner state.
  void save(std::ostream& out) const;
  static DiLinUcb load(std::istream& in);

 private:
  int n_ = 0;
  DiLinUcbConfig config_;
  SymMatrix feature_gram_;  // X X^T
  std::vector<SourceState> states_;
  std::vector<long> selections_;
  UcbTable ucb_;
  long rounds_ = 0;
};

// Learner state when adjacent sources are tied together by a graph smoothness
// penalty on their weight vectors. Requires features whose rows come from the
// Laplacian eigenbasis so the per-source data term stays diagonal.
struct LaplacianDiLinUcbConfig {
  double exploration = 1.0;
  double smoothing = 0.1;          // weight of the adjacency penalty
  double cg_tol = 1e-4;
  int cg_max_iters = 50;
  double initial_confidence = 1.0; // starting per-source confidence diagonal
  FeatureMatrix features;
};

struct CgDiagnostics {
  int iterations = 0;
  bool converged = true;
};

class LaplacianDiLinUcb {
 public:
  LaplacianDiLinUcb(const Graph& g, LaplacianDiLinUcbConfig config);

  std::vector<int> select(const SurrogateOracle& oracle, SeedConstraint constraint) const;
  void update(const std::vector<int>& seeds, const PairwiseFeedback& feedback);

  const UcbTable& ucb() const { return ucb_; }
  const std::vector<double>& stacked_weights() const { return theta_; }
  const std::vector<double>& stacked_response() const { return response_; }
  const std::vector<long>& selection_counts() const { return beta_; }
  double confidence_diagonal(int u) const { return confidence_diag_[u]; }
  CgDiagnostics last_solve() const { return last_solve_; }
  long rounds() const { return rounds_; }

 private:
  int n_ = 0;
  int d_ = 0;
  LaplacianDiLinUcbConfig config_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<double> theta_;     // stacked per-source weights, n*d
  std::vector<double> response_;  // stacked per-source responses, n*d
  std::vector<long> beta_;        // per-source selection counts
  std::vector<double> confidence_diag_;
  std::vector<double> target_norms_;
  UcbTable ucb_;
  CgDiagnostics last_solve_;
  long rounds_ = 0;
};

// Edge-level UCB baseline. Assumes independent-cascade semantics: it keeps a
// success/observation counter per directed edge and seeds greedily against
// Monte-Carlo spread under the optimistic edge probabilities. Documented as a
// simplified baseline; misspecified feedback (update_observational) credits
// an edge whenever both endpoints activate in the same cascade.
struct CucbConfig {
  int sims_per_eval = 20;  // simulations per greedy marginal evaluation
};

class Cucb {
 public:
  Cucb(const Graph& g, CucbConfig config);

  std::vector<int> select(SeedConstraint constraint, Rng& rng) const;

  // IC ground truth: edge observed when its source activated, success when
  // the edge was additionally live in the realization.
  void update_from_cascade(const std::vector<int>& activated, const DiffusionSample& w);
  // Cascade-only view used when the true diffusion is not IC.
  void update_observational(const std::vector<int>& activated);

  double edge_mean(int e) const;
  double edge_ucb(int e) const;
  long rounds() const { return rounds_; }

 private:
  std::vector<std::uint8_t> activation_mask(const std::vector<int>& activated) const;

  const Graph* graph_;
  CucbConfig config_;
  std::vector<long> successes_;
  std::vector<long> observations_;
  long rounds_ = 0;
};

}  // namespace imb

#endif
