#include "imb/surrogate.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace imb {

namespace {

void check_constraint(const ReachabilityTable& p, SeedConstraint constraint) {
  if (constraint.max_cardinality < 1)
    throw std::invalid_argument("seed constraint: cardinality must be >= 1");
  if (p.n < 1) throw std::invalid_argument("surrogate: empty table");
}

// marginal gain of adding u given the current per-target maxima
double marginal_gain(const ReachabilityTable& p, const std::vector<double>& best, int u) {
  double gain = 0.0;
  for (int v = 0; v < p.n; ++v) {
    const double d = p.at(u, v) - best[v];
    if (d > 0.0) gain += d;
  }
  return gain;
}

void absorb(const ReachabilityTable& p, std::vector<double>& best, int u) {
  for (int v = 0; v < p.n; ++v) best[v] = std::max(best[v], p.at(u, v));
}

}  // namespace

double surrogate_value(const ReachabilityTable& p, const std::vector<int>& seeds) {
  for (int u : seeds)
    if (u < 0 || u >= p.n) throw std::invalid_argument("surrogate_value: node out of range");
  if (seeds.empty()) return 0.0;
  double total = 0.0;
  for (int v = 0; v < p.n; ++v) {
    double best = 0.0;
    for (int u : seeds) best = std::max(best, p.at(u, v));
    total += best;
  }
  return total;
}

OracleResult naive_greedy(const ReachabilityTable& p, SeedConstraint constraint) {
  check_constraint(p, constraint);
  const int n = p.n;
  const int k = std::min(constraint.max_cardinality, n);

  OracleResult result;
  std::vector<double> best(n, 0.0);
  std::vector<std::uint8_t> chosen(n, 0);

  for (int round = 0; round < k; ++round) {
    int arg = -1;
    double top = -1.0;
    for (int u = 0; u < n; ++u) {
      if (chosen[u]) continue;
      const double gain = marginal_gain(p, best, u);
      ++result.evaluations;
      if (gain > top) {  // strict: equal gains keep the smaller id
        top = gain;
        arg = u;
      }
    }
    chosen[arg] = 1;
    result.seeds.push_back(arg);
    absorb(p, best, arg);
    result.value += top;
  }
  return result;
}

OracleResult greedy_oracle(const ReachabilityTable& p, SeedConstraint constraint) {
  check_constraint(p, constraint);
  const int n = p.n;
  const int k = std::min(constraint.max_cardinality, n);

  struct Entry {
    double gain;
    int node;
    int round;  // round this gain was computed in
  };
  auto worse = [](const Entry& a, const Entry& b) {
    return a.gain < b.gain || (a.gain == b.gain && a.node > b.node);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  OracleResult result;
  std::vector<double> best(n, 0.0);

  for (int u = 0; u < n; ++u) {
    queue.push({marginal_gain(p, best, u), u, 0});
    ++result.evaluations;
  }

  while (static_cast<int>(result.seeds.size()) < k) {
    Entry top = queue.top();
    queue.pop();
    const int round = static_cast<int>(result.seeds.size());
    if (top.round == round) {
      // fresh at the top of the queue: exact gain beats every stale bound
      result.seeds.push_back(top.node);
      result.value += top.gain;
      absorb(p, best, top.node);
      continue;
    }
    queue.push({marginal_gain(p, best, top.node), top.node, round});
    ++result.evaluations;
  }
  return result;
}

OracleResult brute_force_best(const ReachabilityTable& p, SeedConstraint constraint) {
  check_constraint(p, constraint);
  const int n = p.n;
  const int k = std::min(constraint.max_cardinality, n);

  double total_sets = 0.0;
  {
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) {
      binom = binom * (n - i + 1) / i;
      total_sets += binom;
    }
  }
  if (total_sets > 2e6)
    throw std::invalid_argument("brute_force_best: combinatorial budget exceeded");

  OracleResult result;  // the empty set, value 0, is the initial candidate
  std::vector<int> combo;

  // depth-first over prefixes yields lexicographic sequence order, so with
  // strict improvements the first maximal set found is the smallest witness
  auto consider = [&](const std::vector<int>& seeds) {
    const double value = surrogate_value(p, seeds);
    ++result.evaluations;
    if (value > result.value) {
      result.value = value;
      result.seeds = seeds;
    }
  };

  std::function<void(int, int)> enumerate = [&](int start, int remaining) {
    if (!combo.empty()) consider(combo);
    if (remaining == 0) return;
    for (int u = start; u < n; ++u) {
      combo.push_back(u);
      enumerate(u + 1, remaining - 1);
      combo.pop_back();
    }
  };
  enumerate(0, k);
  return result;
}

}  // namespace imb
