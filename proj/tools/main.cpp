#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "imb/diffusion.hpp"
#include "imb/graph.hpp"
#include "imb/harness.hpp"

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw imb::ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::string algo;
  std::uint64_t seed = 0;
  int cardinality = 0;
  long rounds = 0;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* rounds_opt = nullptr;
  CLI::Option* algo_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON experiment config");
    cmd->add_option("--out", out_dir, "output directory");
    seed_opt = cmd->add_option("--seed", seed, "master seed override");
    k_opt = cmd->add_option("--k", cardinality, "seed-set cardinality override");
    rounds_opt = cmd->add_option("--rounds", rounds, "bandit horizon override");
    algo_opt = cmd->add_option("--algo", algo,
                               "dilinucb-tabular|dilinucb-feat|dilinucb-laplacian|cucb");
  }

  imb::ExperimentConfig resolve() const {
    imb::ExperimentConfig config;
    if (!config_path.empty()) config = imb::load_config_file(config_path);
    if (seed_opt && seed_opt->count()) config.seed = seed;
    if (k_opt && k_opt->count()) config.cardinality = cardinality;
    if (rounds_opt && rounds_opt->count()) config.rounds = rounds;
    if (algo_opt && algo_opt->count())
      config.algorithm.kind = imb::parse_algorithm_name(algo);
    return config;
  }
};

int cmd_generate_graph(int iterations, const std::vector<double>& initiator, double density,
                       std::uint64_t seed, const std::string& out_path) {
  imb::InitiatorMatrix m = imb::kDefaultInitiator;
  if (!initiator.empty()) {
    if (initiator.size() != 4)
      throw imb::ConfigError("--initiator needs exactly 4 values (row major)");
    m = {{{initiator[0], initiator[1]}, {initiator[2], initiator[3]}}};
  }
  if (density > 0.0) m = imb::scale_initiator_to_density(m, iterations, density);
  imb::Rng rng(seed);
  const imb::Graph g = imb::kronecker_graph(m, iterations, rng);
  const std::string text = imb::write_edge_list(g);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cerr << "wrote " << g.node_count() << " nodes, " << g.edge_count() << " edges to "
              << out_path << "\n";
  }
  return 0;
}

int cmd_estimate_reachability(const std::string& graph_path, const std::string& weights_path,
                              const std::string& model_name, double lo, double hi, long sims,
                              int k_min, int k_max, std::uint64_t seed,
                              const std::string& out_path) {
  const imb::DiffusionModel model = imb::parse_model_name(model_name);
  imb::Graph g;
  imb::InfluenceParams params;
  if (!weights_path.empty()) {
    auto parsed = imb::parse_weighted_edge_list(read_file(weights_path), model);
    g = std::move(parsed.first);
    params = std::move(parsed.second);
  } else {
    if (graph_path.empty()) throw imb::ConfigError("need --graph or --weights");
    g = imb::parse_edge_list(read_file(graph_path));
    imb::Rng weight_rng(imb::derive_seed(seed, 0xA2));
    params = imb::sample_uniform_weights(g, model, lo, hi, weight_rng);
  }
  imb::Rng rng(imb::derive_seed(seed, 0xE2));
  const imb::ReachabilityEstimate est =
      imb::estimate_reachability(g, params, sims, k_min, k_max, rng);
  const std::string csv = imb::write_table_csv(est.table);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  long unobserved = 0;
  for (long c : est.source_observations)
    if (c == 0) ++unobserved;
  if (unobserved > 0)
    std::cerr << "warning: " << unobserved << " sources were never sampled as seeds\n";
  return 0;
}

int cmd_verify_surrogate(const CommonOptions& common) {
  const imb::ExperimentConfig config = common.resolve();
  const imb::SurrogateReport report = imb::verify_surrogate(config);

  const fs::path dir(common.out_dir);
  write_file(dir / "surrogate_report.csv", imb::write_report_csv(report));

  nlohmann::json summary;
  summary["config"] = imb::config_to_json(config);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"cardinality", r.cardinality},
                    {"mean_spread", r.mean_spread},
                    {"mean_surrogate", r.mean_surrogate},
                    {"best_spread", r.best_spread},
                    {"greedy_surrogate", r.greedy_surrogate},
                    {"upper_bound", r.upper_bound},
                    {"lower_bound", r.lower_bound},
                    {"rho_floor", r.rho_floor}});
  }
  summary["rows"] = rows;
  write_file(dir / "surrogate_summary.json", summary.dump(2) + "\n");

  for (const auto& r : report.rows)
    std::cout << "K=" << r.cardinality << " mean_f=" << r.mean_surrogate
              << " mean_F=" << r.mean_spread << " rho_floor=" << r.rho_floor << "\n";
  return 0;
}

int cmd_run_bandit(const CommonOptions& common) {
  const imb::ExperimentConfig config = common.resolve();
  const imb::ExperimentResult result = imb::run_bandit_experiment(config);

  const fs::path dir(common.out_dir);
  for (std::size_t i = 0; i < result.traces.size(); ++i) {
    write_file(dir / ("trace_" + std::to_string(i) + ".csv"),
               imb::write_trace_csv(result.traces[i]));
  }
  write_file(dir / "summary.json", result.summary.dump(2) + "\n");
  std::cout << imb::algorithm_name(config.algorithm.kind)
            << " mean_final_regret=" << result.mean_final_regret
            << " mean_per_step_reward=" << result.mean_per_step_reward << "\n";
  return 0;
}

int cmd_compare(const CommonOptions& common, const std::vector<std::string>& algo_names) {
  imb::ExperimentConfig config = common.resolve();
  std::vector<imb::AlgorithmKind> kinds;
  if (algo_names.empty()) {
    kinds = {imb::AlgorithmKind::DiLinUcbTabular, imb::AlgorithmKind::DiLinUcbFeatures,
             imb::AlgorithmKind::DiLinUcbLaplacian, imb::AlgorithmKind::Cucb};
  } else {
    for (const std::string& name : algo_names) kinds.push_back(imb::parse_algorithm_name(name));
  }

  const fs::path dir(common.out_dir);
  nlohmann::json summary;
  summary["config"] = imb::config_to_json(config);
  nlohmann::json per_algo = nlohmann::json::array();
  for (imb::AlgorithmKind kind : kinds) {
    config.algorithm.kind = kind;
    const imb::ExperimentResult result = imb::run_bandit_experiment(config);
    const std::string name = imb::algorithm_name(kind);
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
      write_file(dir / (name + "_trace_" + std::to_string(i) + ".csv"),
                 imb::write_trace_csv(result.traces[i]));
    }
    per_algo.push_back({{"algorithm", name},
                        {"mean_final_regret", result.mean_final_regret},
                        {"mean_per_step_reward", result.mean_per_step_reward}});
    std::cout << name << " mean_final_regret=" << result.mean_final_regret << "\n";
  }
  summary["results"] = per_algo;
  write_file(dir / "compare_summary.json", summary.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"influence-maximization bandit toolkit"};
  app.require_subcommand(1);

  // generate-graph
  auto* gen = app.add_subcommand("generate-graph", "sample a stochastic Kronecker graph");
  int gen_iterations = 6;
  std::vector<double> gen_initiator;
  double gen_density = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--iterations", gen_iterations, "log2 of the node count");
  gen->add_option("--initiator", gen_initiator, "4 row-major initiator entries");
  gen->add_option("--density", gen_density, "rescale initiator to this expected density");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "edge-list output path (default stdout)");

  // estimate-reachability
  auto* est = app.add_subcommand("estimate-reachability",
                                 "Monte-Carlo pairwise reachability table");
  std::string est_graph, est_weights, est_model = "ic", est_out;
  double est_lo = 0.0, est_hi = 0.1;
  long est_sims = 50000;
  int est_kmin = 1, est_kmax = 35;
  std::uint64_t est_seed = 1;
  est->add_option("--graph", est_graph, "edge-list file");
  est->add_option("--weights", est_weights, "weighted edge-list file (u v w)");
  est->add_option("--model", est_model, "ic or lt");
  est->add_option("--weight-lo", est_lo, "uniform weight lower bound");
  est->add_option("--weight-hi", est_hi, "uniform weight upper bound");
  est->add_option("--sims", est_sims, "number of simulations");
  est->add_option("--k-min", est_kmin, "smallest sampled seed-set size");
  est->add_option("--k-max", est_kmax, "largest sampled seed-set size");
  est->add_option("--seed", est_seed, "rng seed");
  est->add_option("--out", est_out, "CSV output path (default stdout)");

  // verify-surrogate / run-bandit / compare
  auto* ver = app.add_subcommand("verify-surrogate",
                                 "compare the surrogate objective against simulated spread");
  CommonOptions ver_opts;
  ver_opts.attach(ver);

  auto* run = app.add_subcommand("run-bandit", "run one bandit algorithm and emit traces");
  CommonOptions run_opts;
  run_opts.attach(run);

  auto* cmp = app.add_subcommand("compare", "run several algorithms on one instance");
  CommonOptions cmp_opts;
  cmp_opts.attach(cmp);
  std::vector<std::string> cmp_algos;
  cmp->add_option("--algos", cmp_algos, "algorithms to compare (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return cmd_generate_graph(gen_iterations, gen_initiator, gen_density, gen_seed, gen_out);
    if (est->parsed())
      return cmd_estimate_reachability(est_graph, est_weights, est_model, est_lo, est_hi,
                                       est_sims, est_kmin, est_kmax, est_seed, est_out);
    if (ver->parsed()) return cmd_verify_surrogate(ver_opts);
    if (run->parsed()) return cmd_run_bandit(run_opts);
    if (cmp->parsed()) return cmd_compare(cmp_opts, cmp_algos);
  } catch (const imb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
