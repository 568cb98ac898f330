#ifndef IMB_NUMERICS_HPP
#define IMB_NUMERICS_HPP

#include <functional>
#include <vector>

#include "imb/matrix.hpp"

namespace imb {

struct SymEigenResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector for values[k]
};

// Cyclic Jacobi eigendecomposition for small dense symmetric matrices.
// Throws if the off-diagonal mass has not vanished after max_sweeps.
SymEigenResult sym_eigen(const SymMatrix& a, int max_sweeps = 100);

// Cholesky factor of a symmetric positive-definite matrix.
class CholeskyFactor {
 public:
  static CholeskyFactor compute(const SymMatrix& a);  // throws on a non-PD pivot

  std::vector<double> solve(const std::vector<double>& b) const;
  // y from L y = b (useful for quadratic forms in the inverse)
  std::vector<double> forward_solve(const std::vector<double>& b) const;
  // x^T A^{-1} x
  double inverse_quadratic(const std::vector<double>& x) const;

  int order() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> l_;  // packed lower triangle
};

std::vector<double> spd_solve(const SymMatrix& a, const std::vector<double>& b);

struct CgResult {
  std::vector<double> solution;
  int iterations = 0;
  bool converged = false;
};

using LinearOperator =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;

// Conjugate gradient on a symmetric positive semidefinite operator.
// Stops when ||apply(x) - b|| <= tol * ||b|| (absolute tol when b = 0).
// Non-convergence is reported through the flag, never thrown.
CgResult conjugate_gradient(const LinearOperator& apply, const std::vector<double>& rhs,
                            const std::vector<double>& initial, double tol, int max_iters);

// Applies [(diag(node_scale) + smoothing * L) (x) I_dim] to a stacked vector,
// where L is the unweighted Laplacian given by the symmetric neighbor lists.
// stacked[u*dim + i] holds component i of node u's block. O(dim*(n+m)).
std::vector<double> kron_block_apply(const std::vector<double>& node_scale,
                                     const std::vector<std::vector<int>>& neighbors,
                                     double smoothing, const std::vector<double>& stacked,
                                     int dim);

}  // namespace imb

#endif
