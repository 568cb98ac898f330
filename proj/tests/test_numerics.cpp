#include <doctest.h>

#include <cmath>

#include "imb/numerics.hpp"
#include "imb/rng.hpp"

using namespace imb;

namespace {

SymMatrix random_symmetric(int n, Rng& rng) {
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
  return a;
}

SymMatrix random_spd(int n, Rng& rng) {
  // M^T M + 0.1 I is positive definite
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = rng.uniform(-1.0, 1.0);
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += m.at(k, i) * m.at(k, j);
      a.set(i, j, acc + (i == j ? 0.1 : 0.0));
    }
  return a;
}

SymMatrix path3_laplacian() {
  SymMatrix lap(3);
  lap.set(0, 0, 1.0);
  lap.set(1, 1, 2.0);
  lap.set(2, 2, 1.0);
  lap.set(0, 1, -1.0);
  lap.set(1, 2, -1.0);
  return lap;
}

// dense materialization of (diag(scale) + smoothing * L) (x) I_dim
SymMatrix dense_kron(const std::vector<double>& scale,
                     const std::vector<std::vector<int>>& neighbors, double smoothing,
                     int dim) {
  const int n = static_cast<int>(scale.size());
  SymMatrix big(n * dim);
  for (int u = 0; u < n; ++u) {
    const double diag = scale[u] + smoothing * static_cast<double>(neighbors[u].size());
    for (int i = 0; i < dim; ++i) big.set(u * dim + i, u * dim + i, diag);
    for (int w : neighbors[u]) {
      if (w <= u) continue;
      for (int i = 0; i < dim; ++i) big.set(u * dim + i, w * dim + i, -smoothing);
    }
  }
  return big;
}

}  // namespace

TEST_CASE("sym_eigen identity") {
  const auto eig = sym_eigen(SymMatrix::identity(3));
  for (double v : eig.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sym_eigen 2x2 hand values") {
  SymMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(1, 1, 2.0);
  a.set(0, 1, 1.0);
  const auto eig = sym_eigen(a);
  CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("sym_eigen path laplacian spectrum") {
  const auto eig = sym_eigen(path3_laplacian());
  CHECK(eig.values[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eig.values[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("sym_eigen factorization and orthogonality on random matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.integer(15));
    const SymMatrix a = random_symmetric(n, rng);
    const auto eig = sym_eigen(a);

    double residual = 0.0;
    for (int c = 0; c < n; ++c) {
      std::vector<double> col(n);
      for (int r = 0; r < n; ++r) col[r] = eig.vectors.at(r, c);
      const auto av = a.multiply(col);
      for (int r = 0; r < n; ++r) {
        const double d = av[r] - eig.values[c] * col[r];
        residual += d * d;
      }
    }
    CHECK(std::sqrt(residual) <= 1e-8 * std::max(a.frobenius_norm(), 1e-12));

    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = 0; c2 <= c1; ++c2) {
        double dot = 0.0;
        for (int r = 0; r < n; ++r) dot += eig.vectors.at(r, c1) * eig.vectors.at(r, c2);
        CHECK(std::abs(dot - (c1 == c2 ? 1.0 : 0.0)) <= 1e-10);
      }

    double value_sum = 0.0;
    for (double v : eig.values) value_sum += v;
    CHECK(value_sum ==
          doctest::Approx(a.trace()).epsilon(1e-8).scale(std::max(1.0, std::abs(a.trace()))));
  }
}

TEST_CASE("spd_solve scaled identity") {
  const auto x = spd_solve(SymMatrix::identity(2, 2.0), {2.0, 4.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("spd_solve hand elimination") {
  SymMatrix a(2);
  a.set(0, 0, 4.0);
  a.set(1, 1, 3.0);
  a.set(0, 1, 1.0);
  const auto x = spd_solve(a, {1.0, 2.0});
  CHECK(x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("spd_solve zero rhs") {
  Rng rng(3);
  const SymMatrix a = random_spd(5, rng);
  const auto x = spd_solve(a, std::vector<double>(5, 0.0));
  for (double v : x) CHECK(v == 0.0);
}

TEST_CASE("spd_solve rejects an indefinite matrix") {
  SymMatrix a(2);
  a.set(0, 0, 1.0);
  a.set(1, 1, 1.0);
  a.set(0, 1, 2.0);  // eigenvalues 3 and -1
  CHECK_THROWS_AS(spd_solve(a, {1.0, 1.0}), std::runtime_error);
}

TEST_CASE("spd_solve residual contract") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.integer(30));
    const SymMatrix a = random_spd(n, rng);
    std::vector<double> b(n);
    for (double& v : b) v = rng.uniform(-2.0, 2.0);
    const auto x = spd_solve(a, b);
    const auto ax = a.multiply(x);
    double res = 0.0;
    for (int i = 0; i < n; ++i) res += (ax[i] - b[i]) * (ax[i] - b[i]);
    CHECK(std::sqrt(res) <= 1e-10 * std::max(vec_norm(b), 1e-12));
  }
}

TEST_CASE("conjugate_gradient converges in one step on a scaled identity") {
  const auto apply = [](const std::vector<double>& in, std::vector<double>& out) {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = 2.0 * in[i];
  };
  const auto result = conjugate_gradient(apply, {2.0, 4.0}, {0.0, 0.0}, 1e-12, 10);
  CHECK(result.converged);
  CHECK(result.iterations == 1);
  CHECK(result.solution[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.solution[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("conjugate_gradient accepts an exact warm start without iterating") {
  const auto apply = [](const std::vector<double>& in, std::vector<double>& out) {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = 3.0 * in[i];
  };
  const auto result = conjugate_gradient(apply, {3.0, 6.0}, {1.0, 2.0}, 1e-12, 10);
  CHECK(result.converged);
  CHECK(result.iterations == 0);
}

TEST_CASE("conjugate_gradient matches the dense solver") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.integer(49));
    const SymMatrix a = random_spd(n, rng);
    std::vector<double> b(n);
    for (double& v : b) v = rng.uniform(-1.0, 1.0);

    const auto direct = spd_solve(a, b);
    const auto apply = [&a](const std::vector<double>& in, std::vector<double>& out) {
      out = a.multiply(in);
    };
    const auto cg = conjugate_gradient(apply, b, std::vector<double>(n, 0.0), 1e-10, 10 * n);
    REQUIRE(cg.converged);
    for (int i = 0; i < n; ++i) CHECK(std::abs(cg.solution[i] - direct[i]) <= 1e-6);
  }
}

TEST_CASE("kron_block_apply with zero smoothing scales per node") {
  const std::vector<double> scale = {2.0, 3.0};
  const std::vector<std::vector<int>> neighbors = {{1}, {0}};
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const auto out = kron_block_apply(scale, neighbors, 0.0, v, 2);
  CHECK(out[0] == 2.0);
  CHECK(out[1] == 4.0);
  CHECK(out[2] == 9.0);
  CHECK(out[3] == 12.0);
}

TEST_CASE("kron_block_apply annihilates component-constant vectors") {
  // path on 3 nodes, beta = 0, smoothing = 1: constant blocks sit in the null space
  const std::vector<double> scale = {0.0, 0.0, 0.0};
  const std::vector<std::vector<int>> neighbors = {{1}, {0, 2}, {1}};
  const std::vector<double> v = {0.7, -0.2, 0.7, -0.2, 0.7, -0.2};
  const auto out = kron_block_apply(scale, neighbors, 1.0, v, 2);
  for (double x : out) CHECK(std::abs(x) <= 1e-14);
}

TEST_CASE("kron_block_apply matches the dense Kronecker product") {
  Rng rng(31);
  const int n = 4, d = 2;
  const std::vector<std::vector<int>> neighbors = {{1, 2}, {0, 3}, {0}, {1}};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> scale(n);
    for (double& s : scale) s = rng.uniform(0.0, 3.0);
    const double smoothing = rng.uniform(0.0, 2.0);
    std::vector<double> v(n * d);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);

    const auto fast = kron_block_apply(scale, neighbors, smoothing, v, d);
    const auto dense = dense_kron(scale, neighbors, smoothing, d).multiply(v);
    for (int i = 0; i < n * d; ++i) CHECK(std::abs(fast[i] - dense[i]) <= 1e-10);
  }
}

TEST_CASE("kron_block_apply is linear") {
  Rng rng(37);
  const std::vector<double> scale = {1.0, 2.0, 0.5};
  const std::vector<std::vector<int>> neighbors = {{1}, {0, 2}, {1}};
  const int d = 3;
  std::vector<double> v1(9), v2(9);
  for (double& x : v1) x = rng.uniform(-1.0, 1.0);
  for (double& x : v2) x = rng.uniform(-1.0, 1.0);
  std::vector<double> sum(9);
  for (int i = 0; i < 9; ++i) sum[i] = v1[i] + v2[i];

  const auto a1 = kron_block_apply(scale, neighbors, 0.4, v1, d);
  const auto a2 = kron_block_apply(scale, neighbors, 0.4, v2, d);
  const auto as = kron_block_apply(scale, neighbors, 0.4, sum, d);
  for (int i = 0; i < 9; ++i) {
    const double expect = a1[i] + a2[i];
    CHECK(std::abs(as[i] - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
}
