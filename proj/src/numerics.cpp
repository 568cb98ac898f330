#include "imb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace imb {

SymEigenResult sym_eigen(const SymMatrix& a, int max_sweeps) {
  const int n = a.order();
  Matrix work = a.dense();
  Matrix vecs = Matrix::identity(n);

  auto off_norm = [&]() {
    double acc = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) acc += work.at(p, q) * work.at(p, q);
    return std::sqrt(2.0 * acc);
  };

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const double stop = 1e-12 * scale;

  int sweep = 0;
  while (off_norm() > stop) {
    if (sweep++ >= max_sweeps)
      throw std::runtime_error("sym_eigen: Jacobi sweeps exhausted without convergence");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = work.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = work.at(p, p);
        const double aqq = work.at(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = work.at(k, p);
          const double akq = work.at(k, q);
          work.at(k, p) = c * akp - s * akq;
          work.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = work.at(p, k);
          const double aqk = work.at(q, k);
          work.at(p, k) = c * apk - s * aqk;
          work.at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = vecs.at(k, p);
          const double vkq = vecs.at(k, q);
          vecs.at(k, p) = c * vkp - s * vkq;
          vecs.at(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  // ascending eigenvalue order; stable so equal values keep rotation order
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int i, int j) { return work.at(i, i) < work.at(j, j); });

  SymEigenResult result;
  result.values.resize(n);
  result.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    result.values[k] = work.at(perm[k], perm[k]);
    for (int r = 0; r < n; ++r) result.vectors.at(r, k) = vecs.at(r, perm[k]);
  }
  return result;
}

CholeskyFactor CholeskyFactor::compute(const SymMatrix& a) {
  CholeskyFactor f;
  const int n = a.order();
  f.n_ = n;
  f.l_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
  auto idx = [](int i, int j) {
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  };
  for (int j = 0; j < n; ++j) {
    double d = a.at(j, j);
    for (int k = 0; k < j; ++k) d -= f.l_[idx(j, k)] * f.l_[idx(j, k)];
    if (!(d > 0.0)) throw std::runtime_error("spd_solve: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    f.l_[idx(j, j)] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a.at(i, j);
      for (int k = 0; k < j; ++k) s -= f.l_[idx(i, k)] * f.l_[idx(j, k)];
      f.l_[idx(i, j)] = s / ljj;
    }
  }
  return f;
}

std::vector<double> CholeskyFactor::forward_solve(const std::vector<double>& b) const {
  auto idx = [](int i, int j) {
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  };
  std::vector<double> y(n_);
  for (int i = 0; i < n_; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l_[idx(i, k)] * y[k];
    y[i] = s / l_[idx(i, i)];
  }
  return y;
}

std::vector<double> CholeskyFactor::solve(const std::vector<double>& b) const {
  auto idx = [](int i, int j) {
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  };
  std::vector<double> x = forward_solve(b);
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n_; ++k) s -= l_[idx(k, i)] * x[k];
    x[i] = s / l_[idx(i, i)];
  }
  return x;
}

double CholeskyFactor::inverse_quadratic(const std::vector<double>& x) const {
  const std::vector<double> y = forward_solve(x);
  return vec_dot(y, y);
}

std::vector<double> spd_solve(const SymMatrix& a, const std::vector<double>& b) {
  if (static_cast<int>(b.size()) != a.order())
    throw std::invalid_argument("spd_solve: dimension mismatch");
  return CholeskyFactor::compute(a).solve(b);
}

CgResult conjugate_gradient(const LinearOperator& apply, const std::vector<double>& rhs,
                            const std::vector<double>& initial, double tol, int max_iters) {
  if (initial.size() != rhs.size())
    throw std::invalid_argument("conjugate_gradient: dimension mismatch");
  const std::size_t n = rhs.size();
  CgResult result;
  result.solution = initial;

  std::vector<double> ax(n), r(n), p(n), ap(n);
  apply(result.solution, ax);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ax[i];

  const double b_norm = vec_norm(rhs);
  const double target = tol * (b_norm > 0.0 ? b_norm : 1.0);

  double rr = vec_dot(r, r);
  if (std::sqrt(rr) <= target) {
    result.converged = true;
    return result;
  }

  p = r;
  for (int it = 1; it <= max_iters; ++it) {
    apply(p, ap);
    const double pap = vec_dot(p, ap);
    if (pap <= 0.0) {  // null-space direction on a semidefinite operator
      result.iterations = it;
      return result;
    }
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      result.solution[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_next = vec_dot(r, r);
    result.iterations = it;
    if (std::sqrt(rr_next) <= target) {
      result.converged = true;
      return result;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  return result;
}

std::vector<double> kron_block_apply(const std::vector<double>& node_scale,
                                     const std::vector<std::vector<int>>& neighbors,
                                     double smoothing, const std::vector<double>& stacked,
                                     int dim) {
  const int n = static_cast<int>(node_scale.size());
  if (neighbors.size() != node_scale.size() ||
      stacked.size() != static_cast<std::size_t>(n) * dim)
    throw std::invalid_argument("kron_block_apply: dimension mismatch");

  std::vector<double> out(stacked.size(), 0.0);
  for (int u = 0; u < n; ++u) {
    const double diag = node_scale[u] + smoothing * static_cast<double>(neighbors[u].size());
    const std::size_t base = static_cast<std::size_t>(u) * dim;
    for (int i = 0; i < dim; ++i) out[base + i] = diag * stacked[base + i];
    for (int w : neighbors[u]) {
      const std::size_t wbase = static_cast<std::size_t>(w) * dim;
      for (int i = 0; i < dim; ++i) out[base + i] -= smoothing * stacked[wbase + i];
    }
  }
  return out;
}

}  // namespace imb
