#include "imb/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace imb {

double theoretical_exploration_weight(int n, int d, long horizon, double ridge, double noise,
                                      double max_weight_norm) {
  if (n < 1 || d < 1 || horizon < 1 || !(ridge > 0.0) || !(noise > 0.0) ||
      !(max_weight_norm > 0.0))
    throw std::invalid_argument("theoretical_exploration_weight: arguments must be positive");
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double td = static_cast<double>(horizon);
  const double log_term = std::log(1.0 + nd * td / (noise * noise * ridge * dd));
  const double tail_term = 2.0 * std::log(nd * nd * td);
  return std::sqrt(dd * nd * log_term + tail_term) / noise +
         std::sqrt(ridge) * max_weight_norm;
}

namespace {

void validate_features(const FeatureMatrix& x) {
  if (x.dim < 1 || x.nodes < 1) throw std::invalid_argument("features: empty matrix");
  if (x.dim > x.nodes) throw std::invalid_argument("features: dimension exceeds node count");
  if (x.data.size() != static_cast<std::size_t>(x.dim) * x.nodes)
    throw std::invalid_argument("features: data size mismatch");
  for (int v = 0; v < x.nodes; ++v)
    if (x.column_norm(v) > 1.0 + 1e-9)
      throw std::invalid_argument("features: column norm exceeds 1");
}

SymMatrix feature_outer_product(const FeatureMatrix& x) {
  SymMatrix g(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (int v = 0; v < x.nodes; ++v) acc += x.at(i, v) * x.at(j, v);
      g.set(i, j, acc);
    }
  return g;
}

std::vector<double> feature_column(const FeatureMatrix& x, int v) {
  std::vector<double> col(x.dim);
  for (int i = 0; i < x.dim; ++i) col[i] = x.at(i, v);
  return col;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

DiLinUcb::DiLinUcb(int node_count, DiLinUcbConfig config)
    : n_(node_count), config_(std::move(config)) {
  if (n_ < 1) throw std::invalid_argument("DiLinUcb: need at least one node");
  if (!(config_.exploration > 0.0) || !(config_.ridge > 0.0) || !(config_.noise > 0.0))
    throw std::invalid_argument("DiLinUcb: exploration, ridge and noise must be positive");
  validate_features(config_.features);
  if (config_.features.nodes != n_)
    throw std::invalid_argument("DiLinUcb: feature columns != node count");

  feature_gram_ = feature_outer_product(config_.features);
  const int d = config_.features.dim;
  states_.resize(n_);
  for (SourceState& s : states_) {
    s.gram = SymMatrix::identity(d, config_.ridge);
    s.response.assign(d, 0.0);
    s.weight.assign(d, 0.0);
  }
  selections_.assign(n_, 0);
  ucb_ = UcbTable(n_, 1.0);
}

std::vector<int> DiLinUcb::select(const SurrogateOracle& oracle,
                                  SeedConstraint constraint) const {
  return oracle(ucb_, constraint).seeds;
}

void DiLinUcb::update(const std::vector<int>& seeds, const PairwiseFeedback& feedback) {
  if (feedback.size() != seeds.size())
    throw std::invalid_argument("DiLinUcb::update: feedback keys must match seeds");
  for (int u : seeds) {
    if (u < 0 || u >= n_) throw std::invalid_argument("DiLinUcb::update: seed out of range");
    const auto it = feedback.find(u);
    if (it == feedback.end())
      throw std::invalid_argument("DiLinUcb::update: missing feedback for a seed");
    if (static_cast<int>(it->second.size()) != n_)
      throw std::invalid_argument("DiLinUcb::update: feedback vector wrong length");
  }

  const FeatureMatrix& x = config_.features;
  const int d = x.dim;
  const double inv_noise_sq = 1.0 / (config_.noise * config_.noise);

  for (const auto& [u, y] : feedback) {
    SourceState& s = states_[u];

    for (int v = 0; v < n_; ++v) {
      if (!y[v]) continue;
      for (int i = 0; i < d; ++i) s.response[i] += x.at(i, v);
    }
    s.gram.add_scaled(feature_gram_, inv_noise_sq);

    const CholeskyFactor factor = CholeskyFactor::compute(s.gram);
    std::vector<double> target = s.response;
    for (double& t : target) t *= inv_noise_sq;
    if (config_.solver == WeightSolver::ConjugateGradient) {
      const CgResult cg = conjugate_gradient(
          [&s](const std::vector<double>& in, std::vector<double>& out) {
            out = s.gram.multiply(in);
          },
          target, s.weight, 1e-9, 8 * d);
      s.weight = cg.converged ? cg.solution : factor.solve(target);
    } else {
      s.weight = factor.solve(target);
    }

    std::vector<double> col(d);
    for (int v = 0; v < n_; ++v) {
      for (int i = 0; i < d; ++i) col[i] = x.at(i, v);
      const double mean = vec_dot(s.weight, col);
      const double width = std::sqrt(factor.inverse_quadratic(col));
      ucb_.at(u, v) = clamp01(mean + config_.exploration * width);
    }
    ++selections_[u];
  }
  ++rounds_;
}

double DiLinUcb::mean_estimate(int u, int v) const {
  return vec_dot(states_[u].weight, feature_column(config_.features, v));
}

double DiLinUcb::confidence_radius(int u, int v) const {
  const CholeskyFactor factor = CholeskyFactor::compute(states_[u].gram);
  return config_.exploration *
         std::sqrt(factor.inverse_quadratic(feature_column(config_.features, v)));
}

void DiLinUcb::save(std::ostream& out) const {
  nlohmann::json j;
  j["format"] = "dilinucb-state";
  j["version"] = 1;
  j["nodes"] = n_;
  j["rounds"] = rounds_;
  j["exploration"] = config_.exploration;
  j["ridge"] = config_.ridge;
  j["noise"] = config_.noise;
  j["solver"] = config_.solver == WeightSolver::ConjugateGradient ? "cg" : "cholesky";
  j["feature_dim"] = config_.features.dim;
  j["features"] = config_.features.data;
  j["selections"] = selections_;
  j["ucb"] = ucb_.values;
  nlohmann::json sources = nlohmann::json::array();
  const int d = config_.features.dim;
  for (const SourceState& s : states_) {
    nlohmann::json js;
    std::vector<double> gram;
    gram.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k <= i; ++k) gram.push_back(s.gram.at(i, k));
    js["gram_lower"] = gram;
    js["response"] = s.response;
    js["weight"] = s.weight;
    sources.push_back(std::move(js));
  }
  j["sources"] = std::move(sources);
  out << j.dump(2) << "\n";
}

DiLinUcb DiLinUcb::load(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("format", "") != "dilinucb-state")
    throw std::runtime_error("DiLinUcb::load: not a learner snapshot");
  if (j.value("version", 0) != 1)
    throw std::runtime_error("DiLinUcb::load: unsupported snapshot version");

  DiLinUcbConfig config;
  config.exploration = j.at("exploration").get<double>();
  config.ridge = j.at("ridge").get<double>();
  config.noise = j.at("noise").get<double>();
  config.solver = j.value("solver", "cholesky") == std::string("cg")
                      ? WeightSolver::ConjugateGradient
                      : WeightSolver::Cholesky;
  const int n = j.at("nodes").get<int>();
  config.features.dim = j.at("feature_dim").get<int>();
  config.features.nodes = n;
  config.features.data = j.at("features").get<std::vector<double>>();

  DiLinUcb learner(n, std::move(config));
  learner.rounds_ = j.at("rounds").get<long>();
  learner.selections_ = j.at("selections").get<std::vector<long>>();
  learner.ucb_.values = j.at("ucb").get<std::vector<double>>();
  if (learner.selections_.size() != static_cast<std::size_t>(n) ||
      learner.ucb_.values.size() != static_cast<std::size_t>(n) * n)
    throw std::runtime_error("DiLinUcb::load: corrupt snapshot dimensions");

  const int d = learner.config_.features.dim;
  const auto& sources = j.at("sources");
  if (static_cast<int>(sources.size()) != n)
    throw std::runtime_error("DiLinUcb::load: source count mismatch");
  for (int u = 0; u < n; ++u) {
    SourceState& s = learner.states_[u];
    const auto gram = sources[u].at("gram_lower").get<std::vector<double>>();
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k <= i; ++k) s.gram.set(i, k, gram.at(idx++));
    s.response = sources[u].at("response").get<std::vector<double>>();
    s.weight = sources[u].at("weight").get<std::vector<double>>();
    if (s.response.size() != static_cast<std::size_t>(d) ||
        s.weight.size() != static_cast<std::size_t>(d))
      throw std::runtime_error("DiLinUcb::load: corrupt source state");
  }
  return learner;
}

LaplacianDiLinUcb::LaplacianDiLinUcb(const Graph& g, LaplacianDiLinUcbConfig config)
    : n_(g.node_count()), config_(std::move(config)) {
  if (n_ < 1) throw std::invalid_argument("LaplacianDiLinUcb: empty graph");
  if (!(config_.exploration > 0.0) || config_.smoothing < 0.0 ||
      !(config_.initial_confidence > 0.0))
    throw std::invalid_argument("LaplacianDiLinUcb: bad parameters");
  validate_features(config_.features);
  if (config_.features.nodes != n_)
    throw std::invalid_argument("LaplacianDiLinUcb: feature columns != node count");

  d_ = config_.features.dim;
  neighbors_ = g.undirected_neighbors();
  theta_.assign(static_cast<std::size_t>(n_) * d_, 0.0);
  response_.assign(static_cast<std::size_t>(n_) * d_, 0.0);
  beta_.assign(n_, 0);
  confidence_diag_.assign(n_, config_.initial_confidence);
  target_norms_.resize(n_);
  for (int v = 0; v < n_; ++v) target_norms_[v] = config_.features.column_norm(v);
  ucb_ = UcbTable(n_, 1.0);
}

std::vector<int> LaplacianDiLinUcb::select(const SurrogateOracle& oracle,
                                           SeedConstraint constraint) const {
  return oracle(ucb_, constraint).seeds;
}

void LaplacianDiLinUcb::update(const std::vector<int>& seeds,
                               const PairwiseFeedback& feedback) {
  if (feedback.size() != seeds.size())
    throw std::invalid_argument("LaplacianDiLinUcb::update: feedback keys must match seeds");

  const FeatureMatrix& x = config_.features;
  for (const auto& [u, y] : feedback) {
    if (u < 0 || u >= n_)
      throw std::invalid_argument("LaplacianDiLinUcb::update: seed out of range");
    if (static_cast<int>(y.size()) != n_)
      throw std::invalid_argument("LaplacianDiLinUcb::update: feedback vector wrong length");
  }
  for (const auto& [u, y] : feedback) {
    double* block = &response_[static_cast<std::size_t>(u) * d_];
    for (int v = 0; v < n_; ++v) {
      if (!y[v]) continue;
      for (int i = 0; i < d_; ++i) block[i] += x.at(i, v);
    }
    ++beta_[u];
    confidence_diag_[u] = confidence_diag_[u] / (1.0 + confidence_diag_[u]);
  }

  // Warm-started conjugate gradient on the Jacobi-scaled system
  // D^{-1/2} A D^{-1/2} x' = D^{-1/2} b with x' = D^{1/2} theta,
  // where A = (beta + smoothing * L) (x) I_d and D is its diagonal.
  std::vector<double> scale(beta_.begin(), beta_.end());
  const double smoothing = config_.smoothing;
  const auto& neighbors = neighbors_;
  const int d = d_;
  std::vector<double> root_diag(theta_.size());
  for (int u = 0; u < n_; ++u) {
    double diag = scale[u] + smoothing * static_cast<double>(neighbors[u].size());
    if (diag <= 1e-12) diag = 1.0;  // untouched block, stays at zero anyway
    const double root = std::sqrt(diag);
    for (int i = 0; i < d; ++i) root_diag[static_cast<std::size_t>(u) * d + i] = root;
  }
  std::vector<double> scaled_rhs(theta_.size()), scaled_start(theta_.size());
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    scaled_rhs[i] = response_[i] / root_diag[i];
    scaled_start[i] = theta_[i] * root_diag[i];
  }
  const CgResult cg = conjugate_gradient(
      [&scale, &neighbors, smoothing, d, &root_diag](const std::vector<double>& in,
                                                     std::vector<double>& out) {
        std::vector<double> tmp(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) tmp[i] = in[i] / root_diag[i];
        tmp = kron_block_apply(scale, neighbors, smoothing, tmp, d);
        out.resize(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = tmp[i] / root_diag[i];
      },
      scaled_rhs, scaled_start, config_.cg_tol, config_.cg_max_iters);
  for (std::size_t i = 0; i < theta_.size(); ++i) theta_[i] = cg.solution[i] / root_diag[i];
  last_solve_ = {cg.iterations, cg.converged};

  // smoothing couples sources, so every row is recomputed each round
  std::vector<double> col(d_);
  for (int u = 0; u < n_; ++u) {
    const double* block = &theta_[static_cast<std::size_t>(u) * d_];
    const double width_scale = config_.exploration * std::sqrt(confidence_diag_[u]);
    for (int v = 0; v < n_; ++v) {
      double mean = 0.0;
      for (int i = 0; i < d_; ++i) mean += block[i] * x.at(i, v);
      ucb_.at(u, v) = clamp01(mean + width_scale * target_norms_[v]);
    }
  }
  ++rounds_;
}

Cucb::Cucb(const Graph& g, CucbConfig config) : graph_(&g), config_(config) {
  if (config_.sims_per_eval < 1)
    throw std::invalid_argument("Cucb: sims_per_eval must be >= 1");
  successes_.assign(g.edge_count(), 0);
  observations_.assign(g.edge_count(), 0);
}

double Cucb::edge_mean(int e) const {
  return observations_[e] == 0
             ? 1.0
             : static_cast<double>(successes_[e]) / static_cast<double>(observations_[e]);
}

double Cucb::edge_ucb(int e) const {
  if (observations_[e] == 0) return 1.0;  // optimism for unseen edges
  const double t = static_cast<double>(std::max<long>(rounds_, 1));
  const double radius =
      std::sqrt(1.5 * std::log(t) / static_cast<double>(observations_[e]));
  return clamp01(edge_mean(e) + radius);
}

std::vector<int> Cucb::select(SeedConstraint constraint, Rng& rng) const {
  InfluenceParams optimistic;
  optimistic.model = DiffusionModel::IC;
  optimistic.edge_weight.resize(graph_->edge_count());
  for (int e = 0; e < graph_->edge_count(); ++e) optimistic.edge_weight[e] = edge_ucb(e);
  return mc_greedy_spread(*graph_, optimistic, constraint.max_cardinality,
                          config_.sims_per_eval, rng)
      .seeds;
}

std::vector<std::uint8_t> Cucb::activation_mask(const std::vector<int>& activated) const {
  std::vector<std::uint8_t> mask(graph_->node_count(), 0);
  for (int v : activated) mask[v] = 1;
  return mask;
}

void Cucb::update_from_cascade(const std::vector<int>& activated, const DiffusionSample& w) {
  if (w.model != DiffusionModel::IC ||
      static_cast<int>(w.live_edges.size()) != graph_->edge_count())
    throw std::invalid_argument("Cucb::update_from_cascade: expected an IC realization");
  const auto mask = activation_mask(activated);
  for (int e = 0; e < graph_->edge_count(); ++e) {
    if (!mask[graph_->edges()[e].from]) continue;
    ++observations_[e];
    if (w.live_edges[e]) ++successes_[e];
  }
  ++rounds_;
}

void Cucb::update_observational(const std::vector<int>& activated) {
  const auto mask = activation_mask(activated);
  for (int e = 0; e < graph_->edge_count(); ++e) {
    if (!mask[graph_->edges()[e].from]) continue;
    ++observations_[e];
    if (mask[graph_->edges()[e].to]) ++successes_[e];
  }
  ++rounds_;
}

}  // namespace imb
