#include "imb/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace imb {

std::string algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::DiLinUcbTabular: return "dilinucb-tabular";
    case AlgorithmKind::DiLinUcbFeatures: return "dilinucb-feat";
    case AlgorithmKind::DiLinUcbLaplacian: return "dilinucb-laplacian";
    case AlgorithmKind::Cucb: return "cucb";
  }
  throw std::logic_error("algorithm_name: unreachable");
}

AlgorithmKind parse_algorithm_name(const std::string& name) {
  if (name == "dilinucb-tabular") return AlgorithmKind::DiLinUcbTabular;
  if (name == "dilinucb-feat") return AlgorithmKind::DiLinUcbFeatures;
  if (name == "dilinucb-laplacian") return AlgorithmKind::DiLinUcbLaplacian;
  if (name == "cucb") return AlgorithmKind::Cucb;
  throw ConfigError("unknown algorithm: " + name);
}

namespace {

constexpr std::uint64_t kGraphStream = 0xA1;
constexpr std::uint64_t kWeightStream = 0xA2;
constexpr std::uint64_t kBaselineStream = 0xA3;
constexpr std::uint64_t kDiffusionStreamBase = 0xB000;
constexpr std::uint64_t kPolicyStreamBase = 0xC000;
constexpr std::uint64_t kValidationPolicyBase = 0xD000;
constexpr std::uint64_t kValidationDiffusionBase = 0xD800;
constexpr std::uint64_t kSurrogateGraphBase = 0xE000;
constexpr std::uint64_t kSurrogateWeightBase = 0xE100;
constexpr std::uint64_t kSurrogateSimBase = 0xE200;

void validate_config(const ExperimentConfig& config) {
  if (config.version != 1) throw ConfigError("config: unsupported version");
  if (config.rounds < 1) throw ConfigError("config: rounds must be >= 1");
  if (config.cardinality < 1) throw ConfigError("config: cardinality must be >= 1");
  if (config.instances < 1) throw ConfigError("config: instances must be >= 1");
  if (!(0.0 <= config.weight_low && config.weight_low <= config.weight_high &&
        config.weight_high <= 1.0))
    throw ConfigError("config: need 0 <= weight_low <= weight_high <= 1");
  if (config.baseline_sims < 1) throw ConfigError("config: baseline_sims must be >= 1");
  if (config.graph.path.empty()) {
    if (config.graph.kronecker_iterations < 1 || config.graph.kronecker_iterations > 20)
      throw ConfigError("config: kronecker iterations must be in [1, 20]");
  }
  if (config.validation.rounds < 0) throw ConfigError("config: validation rounds < 0");
  if (config.surrogate.reachability_sims < 1 || config.surrogate.spread_sims < 1 ||
      config.surrogate.random_sets < 1)
    throw ConfigError("config: surrogate simulation counts must be >= 1");
}

template <typename T>
void read_key(const nlohmann::json& section, const char* key, T& out) {
  if (section.contains(key)) out = section.at(key).get<T>();
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig config;
  try {
    read_key(j, "version", config.version);
    if (j.contains("graph")) {
      const auto& g = j.at("graph");
      read_key(g, "path", config.graph.path);
      read_key(g, "iterations", config.graph.kronecker_iterations);
      read_key(g, "target_density", config.graph.target_density);
      if (g.contains("initiator")) {
        const auto& m = g.at("initiator");
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            config.graph.initiator[r][c] = m.at(r).at(c).get<double>();
      }
    }
    if (j.contains("diffusion")) {
      const auto& d = j.at("diffusion");
      if (d.contains("model")) config.model = parse_model_name(d.at("model").get<std::string>());
      read_key(d, "weight_low", config.weight_low);
      read_key(d, "weight_high", config.weight_high);
    }
    if (j.contains("experiment")) {
      const auto& e = j.at("experiment");
      read_key(e, "cardinality", config.cardinality);
      read_key(e, "rounds", config.rounds);
      read_key(e, "instances", config.instances);
      read_key(e, "seed", config.seed);
      read_key(e, "baseline_sims", config.baseline_sims);
    }
    if (j.contains("validation")) {
      const auto& v = j.at("validation");
      read_key(v, "rounds", config.validation.rounds);
      read_key(v, "exploration_grid", config.validation.exploration_grid);
    }
    if (j.contains("algorithm")) {
      const auto& a = j.at("algorithm");
      if (a.contains("name"))
        config.algorithm.kind = parse_algorithm_name(a.at("name").get<std::string>());
      read_key(a, "exploration", config.algorithm.exploration);
      read_key(a, "ridge", config.algorithm.ridge);
      read_key(a, "noise", config.algorithm.noise);
      if (a.contains("solver")) {
        const std::string solver = a.at("solver").get<std::string>();
        if (solver == "cg")
          config.algorithm.solver = WeightSolver::ConjugateGradient;
        else if (solver == "cholesky")
          config.algorithm.solver = WeightSolver::Cholesky;
        else
          throw ConfigError("config: unknown solver " + solver);
      }
      read_key(a, "feature_dim", config.algorithm.feature_dim);
      read_key(a, "smoothing", config.algorithm.smoothing);
      read_key(a, "cg_tol", config.algorithm.cg_tol);
      read_key(a, "cg_max_iters", config.algorithm.cg_max_iters);
      read_key(a, "initial_confidence", config.algorithm.initial_confidence);
      read_key(a, "cucb_sims", config.algorithm.cucb_sims);
    }
    if (j.contains("surrogate")) {
      const auto& s = j.at("surrogate");
      read_key(s, "reachability_sims", config.surrogate.reachability_sims);
      read_key(s, "spread_sims", config.surrogate.spread_sims);
      read_key(s, "random_sets", config.surrogate.random_sets);
      read_key(s, "cardinalities", config.surrogate.cardinalities);
      read_key(s, "sample_k_min", config.surrogate.sample_k_min);
      read_key(s, "sample_k_max", config.surrogate.sample_k_max);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate_config(config);
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["version"] = config.version;
  j["graph"] = {{"path", config.graph.path},
                {"iterations", config.graph.kronecker_iterations},
                {"target_density", config.graph.target_density},
                {"initiator",
                 {{config.graph.initiator[0][0], config.graph.initiator[0][1]},
                  {config.graph.initiator[1][0], config.graph.initiator[1][1]}}}};
  j["diffusion"] = {{"model", model_name(config.model)},
                    {"weight_low", config.weight_low},
                    {"weight_high", config.weight_high}};
  j["experiment"] = {{"cardinality", config.cardinality},
                     {"rounds", config.rounds},
                     {"instances", config.instances},
                     {"seed", config.seed},
                     {"baseline_sims", config.baseline_sims}};
  j["validation"] = {{"rounds", config.validation.rounds},
                     {"exploration_grid", config.validation.exploration_grid}};
  j["algorithm"] = {{"name", algorithm_name(config.algorithm.kind)},
                    {"exploration", config.algorithm.exploration},
                    {"ridge", config.algorithm.ridge},
                    {"noise", config.algorithm.noise},
                    {"solver",
                     config.algorithm.solver == WeightSolver::ConjugateGradient ? "cg"
                                                                                : "cholesky"},
                    {"feature_dim", config.algorithm.feature_dim},
                    {"smoothing", config.algorithm.smoothing},
                    {"cg_tol", config.algorithm.cg_tol},
                    {"cg_max_iters", config.algorithm.cg_max_iters},
                    {"initial_confidence", config.algorithm.initial_confidence},
                    {"cucb_sims", config.algorithm.cucb_sims}};
  j["surrogate"] = {{"reachability_sims", config.surrogate.reachability_sims},
                    {"spread_sims", config.surrogate.spread_sims},
                    {"random_sets", config.surrogate.random_sets},
                    {"cardinalities", config.surrogate.cardinalities},
                    {"sample_k_min", config.surrogate.sample_k_min},
                    {"sample_k_max", config.surrogate.sample_k_max}};
  return j;
}

void RegretTrace::record(std::vector<int> chosen, double realized, double baseline) {
  seeds.push_back(std::move(chosen));
  reward.push_back(realized);
  baseline_reward.push_back(baseline);
  const double prev = cumulative_regret.empty() ? 0.0 : cumulative_regret.back();
  cumulative_regret.push_back(prev + (baseline - realized));
  const double prev_sum =
      per_step_reward.empty() ? 0.0 : per_step_reward.back() * (reward.size() - 1);
  per_step_reward.push_back((prev_sum + realized) / static_cast<double>(reward.size()));
}

double scaled_regret(const RegretTrace& trace, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw std::invalid_argument("scaled_regret: kappa must be in (0, 1]");
  double baseline_total = 0.0, reward_total = 0.0;
  for (double r : trace.baseline_reward) baseline_total += r;
  for (double r : trace.reward) reward_total += r;
  return baseline_total - reward_total / kappa;
}

namespace {

std::string csv_quote(const std::string& field) {
  bool needs = field.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string write_trace_csv(const RegretTrace& trace) {
  std::ostringstream out;
  out << "t,seeds,reward,baseline_reward,cum_regret,per_step_reward\n";
  for (long t = 0; t < trace.rounds(); ++t) {
    std::string seed_field;
    for (std::size_t i = 0; i < trace.seeds[t].size(); ++i) {
      if (i) seed_field += ' ';
      seed_field += std::to_string(trace.seeds[t][i]);
    }
    out << (t + 1) << "," << csv_quote(seed_field) << "," << fixed6(trace.reward[t]) << ","
        << fixed6(trace.baseline_reward[t]) << "," << fixed6(trace.cumulative_regret[t])
        << "," << fixed6(trace.per_step_reward[t]) << "\n";
  }
  return out.str();
}

RegretTrace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  RegretTrace trace;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 6) throw std::runtime_error("parse_trace_csv: bad column count");
    std::vector<int> seeds;
    std::istringstream seed_in(fields[1]);
    int node;
    while (seed_in >> node) seeds.push_back(node);
    trace.seeds.push_back(std::move(seeds));
    trace.reward.push_back(std::stod(fields[2]));
    trace.baseline_reward.push_back(std::stod(fields[3]));
    trace.cumulative_regret.push_back(std::stod(fields[4]));
    trace.per_step_reward.push_back(std::stod(fields[5]));
  }
  return trace;
}

std::string write_report_csv(const SurrogateReport& report) {
  std::ostringstream out;
  out << "cardinality,mean_spread,mean_surrogate,se_spread,se_surrogate,se_gap,"
         "best_spread,greedy_surrogate,upper_bound,lower_bound,rho_floor\n";
  for (const SurrogateReportRow& r : report.rows) {
    out << r.cardinality << "," << fixed6(r.mean_spread) << "," << fixed6(r.mean_surrogate)
        << "," << fixed6(r.se_spread) << "," << fixed6(r.se_surrogate) << ","
        << fixed6(r.se_gap) << "," << fixed6(r.best_spread) << ","
        << fixed6(r.greedy_surrogate) << "," << fixed6(r.upper_bound) << ","
        << fixed6(r.lower_bound) << "," << fixed6(r.rho_floor) << "\n";
  }
  return out.str();
}

namespace {

SurrogateOracle lazy_greedy_oracle() {
  return [](const ReachabilityTable& p, SeedConstraint c) { return greedy_oracle(p, c); };
}

class DiLinUcbPolicy : public Policy {
 public:
  DiLinUcbPolicy(int n, DiLinUcbConfig cfg, std::string label)
      : learner_(n, std::move(cfg)), label_(std::move(label)) {}

  std::vector<int> select(SeedConstraint constraint) override {
    return learner_.select(lazy_greedy_oracle(), constraint);
  }

  void observe(const Graph& g, const InfluenceParams& params, const DiffusionSample& w,
               const std::vector<int>& seeds, const std::vector<int>&) override {
    learner_.update(seeds, pairwise_feedback(g, params, w, seeds));
  }

  nlohmann::json describe() const override {
    return {{"name", label_},
            {"exploration", learner_.config().exploration},
            {"ridge", learner_.config().ridge},
            {"noise", learner_.config().noise},
            {"feature_dim", learner_.config().features.dim}};
  }

 private:
  DiLinUcb learner_;
  std::string label_;
};

class LaplacianPolicy : public Policy {
 public:
  LaplacianPolicy(const Graph& g, LaplacianDiLinUcbConfig cfg)
      : learner_(g, std::move(cfg)) {}

  std::vector<int> select(SeedConstraint constraint) override {
    return learner_.select(lazy_greedy_oracle(), constraint);
  }

  void observe(const Graph& g, const InfluenceParams& params, const DiffusionSample& w,
               const std::vector<int>& seeds, const std::vector<int>&) override {
    learner_.update(seeds, pairwise_feedback(g, params, w, seeds));
    max_cg_iterations_ = std::max(max_cg_iterations_, learner_.last_solve().iterations);
  }

  nlohmann::json describe() const override {
    return {{"name", algorithm_name(AlgorithmKind::DiLinUcbLaplacian)},
            {"max_cg_iterations", max_cg_iterations_}};
  }

 private:
  LaplacianDiLinUcb learner_;
  int max_cg_iterations_ = 0;
};

class CucbPolicy : public Policy {
 public:
  CucbPolicy(const Graph& g, CucbConfig cfg, std::uint64_t seed)
      : learner_(g, cfg), rng_(seed) {}

  std::vector<int> select(SeedConstraint constraint) override {
    return learner_.select(constraint, rng_);
  }

  void observe(const Graph&, const InfluenceParams&, const DiffusionSample& w,
               const std::vector<int>&, const std::vector<int>& activated) override {
    if (w.model == DiffusionModel::IC)
      learner_.update_from_cascade(activated, w);
    else
      learner_.update_observational(activated);
  }

  nlohmann::json describe() const override {
    return {{"name", algorithm_name(AlgorithmKind::Cucb)}};
  }

 private:
  Cucb learner_;
  Rng rng_;
};

}  // namespace

FeatureMatrix features_for(const Graph& g, const AlgorithmConfig& algo) {
  if (algo.kind == AlgorithmKind::DiLinUcbTabular || algo.kind == AlgorithmKind::Cucb)
    return identity_features(g.node_count());
  const int d = std::min(algo.feature_dim, g.node_count());
  return laplacian_features(g, d).features;
}

std::unique_ptr<Policy> make_policy(const Graph& g, const AlgorithmConfig& algo,
                                    const FeatureMatrix& features, std::uint64_t seed) {
  switch (algo.kind) {
    case AlgorithmKind::DiLinUcbTabular:
    case AlgorithmKind::DiLinUcbFeatures: {
      DiLinUcbConfig cfg;
      cfg.exploration = algo.exploration;
      cfg.ridge = algo.ridge;
      cfg.noise = algo.noise;
      cfg.solver = algo.solver;
      cfg.features = features;
      return std::make_unique<DiLinUcbPolicy>(g.node_count(), std::move(cfg),
                                              algorithm_name(algo.kind));
    }
    case AlgorithmKind::DiLinUcbLaplacian: {
      LaplacianDiLinUcbConfig cfg;
      cfg.exploration = algo.exploration;
      cfg.smoothing = algo.smoothing;
      cfg.cg_tol = algo.cg_tol;
      cfg.cg_max_iters = algo.cg_max_iters;
      cfg.initial_confidence = algo.initial_confidence;
      cfg.features = features;
      return std::make_unique<LaplacianPolicy>(g, std::move(cfg));
    }
    case AlgorithmKind::Cucb:
      return std::make_unique<CucbPolicy>(g, CucbConfig{algo.cucb_sims}, seed);
  }
  throw std::logic_error("make_policy: unreachable");
}

namespace {

Graph build_graph(const GraphSource& source, std::uint64_t seed) {
  if (!source.path.empty()) {
    std::ifstream in(source.path);
    if (!in) throw ConfigError("graph: cannot open " + source.path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
  }
  InitiatorMatrix initiator = source.initiator;
  if (source.target_density > 0.0)
    initiator = scale_initiator_to_density(initiator, source.kronecker_iterations,
                                           source.target_density);
  Rng rng(seed);
  return kronecker_graph(initiator, source.kronecker_iterations, rng);
}

}  // namespace

PreparedInstance prepare_instance(const ExperimentConfig& config) {
  validate_config(config);
  PreparedInstance instance;
  instance.graph = build_graph(config.graph, derive_seed(config.seed, kGraphStream));
  if (config.cardinality > instance.graph.node_count())
    throw ConfigError("config: cardinality exceeds node count");
  Rng weight_rng(derive_seed(config.seed, kWeightStream));
  instance.params = sample_uniform_weights(instance.graph, config.model, config.weight_low,
                                           config.weight_high, weight_rng);
  Rng baseline_rng(derive_seed(config.seed, kBaselineStream));
  const SeedSelection baseline = mc_greedy_spread(
      instance.graph, instance.params, config.cardinality, config.baseline_sims, baseline_rng);
  instance.baseline_seeds = baseline.seeds;
  instance.baseline_value = baseline.value;
  return instance;
}

RegretTrace run_bandit_rounds(const Graph& g, const InfluenceParams& params,
                              const std::vector<int>& baseline_seeds, Policy& policy,
                              int cardinality, long rounds, Rng& diffusion_rng) {
  RegretTrace trace;
  const SeedConstraint constraint{cardinality};
  for (long t = 0; t < rounds; ++t) {
    std::vector<int> seeds = policy.select(constraint);
    const DiffusionSample w = sample_diffusion(g, params, diffusion_rng);
    const std::vector<int> activated = propagate(g, params, w, seeds);
    const std::vector<int> baseline_activated = propagate(g, params, w, baseline_seeds);
    policy.observe(g, params, w, seeds, activated);
    trace.record(std::move(seeds), static_cast<double>(activated.size()),
                 static_cast<double>(baseline_activated.size()));
  }
  return trace;
}

RegretTrace run_single_trace(const PreparedInstance& instance, const ExperimentConfig& config,
                             const AlgorithmConfig& algo, int instance_index) {
  const FeatureMatrix features = features_for(instance.graph, algo);

  AlgorithmConfig chosen = algo;
  if (config.validation.rounds > 0 && !config.validation.exploration_grid.empty() &&
      algo.kind != AlgorithmKind::Cucb) {
    double best_total = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < config.validation.exploration_grid.size(); ++j) {
      AlgorithmConfig trial = algo;
      trial.exploration = config.validation.exploration_grid[j];
      auto policy = make_policy(
          instance.graph, trial, features,
          derive_seed(config.seed, kValidationPolicyBase + 131 * instance_index + j));
      // one shared realization stream keeps the candidate comparison paired
      Rng validation_rng(
          derive_seed(config.seed, kValidationDiffusionBase + instance_index));
      const RegretTrace trace =
          run_bandit_rounds(instance.graph, instance.params, instance.baseline_seeds, *policy,
                            config.cardinality, config.validation.rounds, validation_rng);
      double total = 0.0;
      for (double r : trace.reward) total += r;
      if (total > best_total) {
        best_total = total;
        chosen.exploration = trial.exploration;
      }
    }
  }

  auto policy = make_policy(instance.graph, chosen, features,
                            derive_seed(config.seed, kPolicyStreamBase + instance_index));
  Rng diffusion_rng(derive_seed(config.seed, kDiffusionStreamBase + instance_index));
  return run_bandit_rounds(instance.graph, instance.params, instance.baseline_seeds, *policy,
                           config.cardinality, config.rounds, diffusion_rng);
}

ExperimentResult run_bandit_experiment(const ExperimentConfig& config) {
  const PreparedInstance instance = prepare_instance(config);

  ExperimentResult result;
  nlohmann::json per_instance = nlohmann::json::array();
  for (int i = 0; i < config.instances; ++i) {
    RegretTrace trace = run_single_trace(instance, config, config.algorithm, i);
    per_instance.push_back({{"final_regret", trace.final_regret()},
                            {"per_step_reward", trace.per_step_reward.back()}});
    result.mean_final_regret += trace.final_regret();
    result.mean_per_step_reward += trace.per_step_reward.back();
    result.traces.push_back(std::move(trace));
  }
  result.mean_final_regret /= config.instances;
  result.mean_per_step_reward /= config.instances;

  result.summary = {{"config", config_to_json(config)},
                    {"algorithm", algorithm_name(config.algorithm.kind)},
                    {"nodes", instance.graph.node_count()},
                    {"edges", instance.graph.edge_count()},
                    {"baseline_seeds", instance.baseline_seeds},
                    {"baseline_value", instance.baseline_value},
                    {"instances", per_instance},
                    {"mean_final_regret", result.mean_final_regret},
                    {"mean_per_step_reward", result.mean_per_step_reward}};
  return result;
}

SurrogateReport verify_surrogate(const ExperimentConfig& config) {
  validate_config(config);
  const auto& sc = config.surrogate;

  struct Accumulator {
    std::vector<double> spreads, surrogates, gaps;
    double best_spread = 0.0, greedy_surrogate = 0.0;
    double upper = 0.0, lower = 0.0, rho = 0.0;
    int instances = 0;
  };
  std::vector<Accumulator> acc(sc.cardinalities.size());

  for (int inst = 0; inst < config.instances; ++inst) {
    const Graph g =
        build_graph(config.graph, derive_seed(config.seed, kSurrogateGraphBase + inst));
    Rng weight_rng(derive_seed(config.seed, kSurrogateWeightBase + inst));
    const InfluenceParams params = sample_uniform_weights(
        g, config.model, config.weight_low, config.weight_high, weight_rng);
    Rng sim_rng(derive_seed(config.seed, kSurrogateSimBase + inst));

    const ReachabilityEstimate reach = estimate_reachability(
        g, params, sc.reachability_sims, sc.sample_k_min,
        std::min(sc.sample_k_max, g.node_count()), sim_rng);

    for (std::size_t ki = 0; ki < sc.cardinalities.size(); ++ki) {
      const int k = sc.cardinalities[ki];
      if (k > g.node_count()) continue;
      Accumulator& a = acc[ki];
      ++a.instances;

      for (int s = 0; s < sc.random_sets; ++s) {
        std::vector<int> set = sim_rng.sample_without_replacement(g.node_count(), k);
        std::sort(set.begin(), set.end());
        const double f_value = surrogate_value(reach.table, set);
        const double spread = estimate_spread(g, params, set, sc.spread_sims, sim_rng);
        a.surrogates.push_back(f_value);
        a.spreads.push_back(spread);
        a.gaps.push_back(f_value - spread);
      }

      const OracleResult greedy = greedy_oracle(reach.table, SeedConstraint{k});
      const SeedSelection best =
          mc_greedy_spread(g, params, k, config.baseline_sims, sim_rng);
      const double best_spread =
          estimate_spread(g, params, best.seeds, sc.spread_sims, sim_rng);
      a.greedy_surrogate += greedy.value;
      a.best_spread += best_spread;
      a.upper += best_spread / kGreedyApproximationFactor;
      a.lower += best_spread / k;
      a.rho += kGreedyApproximationFactor * greedy.value / best_spread;
    }
  }

  auto mean_of = [](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
  };
  auto stderr_of = [&](const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0) /
                     static_cast<double>(xs.size()));
  };

  SurrogateReport report;
  report.instances = config.instances;
  for (std::size_t ki = 0; ki < sc.cardinalities.size(); ++ki) {
    const Accumulator& a = acc[ki];
    if (a.instances == 0) continue;
    SurrogateReportRow row;
    row.cardinality = sc.cardinalities[ki];
    row.mean_spread = mean_of(a.spreads);
    row.mean_surrogate = mean_of(a.surrogates);
    row.se_spread = stderr_of(a.spreads);
    row.se_surrogate = stderr_of(a.surrogates);
    row.se_gap = stderr_of(a.gaps);
    row.best_spread = a.best_spread / a.instances;
    row.greedy_surrogate = a.greedy_surrogate / a.instances;
    row.upper_bound = a.upper / a.instances;
    row.lower_bound = a.lower / a.instances;
    row.rho_floor = a.rho / a.instances;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace imb
