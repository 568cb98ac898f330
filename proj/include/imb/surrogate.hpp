#ifndef IMB_SURROGATE_HPP
#define IMB_SURROGATE_HPP

#include <functional>
#include <vector>

#include "imb/diffusion.hpp"

namespace imb {

struct SeedConstraint {
  int max_cardinality = 1;
};

struct OracleResult {
  std::vector<int> seeds;  // in selection order
  double value = 0.0;      // surrogate value of the final set
  long evaluations = 0;    // marginal-gain evaluations performed
};

// f(S) = sum over targets v of the best pairwise probability max_{u in S} p[u][v].
// Monotone and submodular in S; empty set scores 0.
double surrogate_value(const ReachabilityTable& p, const std::vector<int>& seeds);

// Reference greedy: K rounds, each adding the argmax marginal gain, ties
// broken toward the smallest node id.
OracleResult naive_greedy(const ReachabilityTable& p, SeedConstraint constraint);

// Lazy greedy with a stale-gain priority queue. Produces exactly the naive
// greedy seed set under the shared smallest-id tie-break, usually with far
// fewer evaluations.
OracleResult greedy_oracle(const ReachabilityTable& p, SeedConstraint constraint);

// Exhaustive argmax over all seed sets of size <= K, smallest lexicographic
// set on ties. Refuses combinatorially large instances.
OracleResult brute_force_best(const ReachabilityTable& p, SeedConstraint constraint);

using SurrogateOracle =
    std::function<OracleResult(const ReachabilityTable&, SeedConstraint)>;

}  // namespace imb

#endif
