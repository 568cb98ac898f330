#ifndef IMB_MATRIX_HPP
#define IMB_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace imb {

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      double acc = 0.0;
      const double* row = &data_[static_cast<std::size_t>(r) * cols_];
      for (int c = 0; c < cols_; ++c) acc += row[c] * x[c];
      y[r] = acc;
    }
    return y;
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Symmetric matrix with packed lower-triangle storage; symmetry holds by
// construction since (i,j) and (j,i) share one slot.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int order, double fill = 0.0)
      : n_(order), data_(static_cast<std::size_t>(order) * (order + 1) / 2, fill) {}

  static SymMatrix identity(int order, double scale = 1.0) {
    SymMatrix m(order);
    for (int i = 0; i < order; ++i) m.set(i, i, scale);
    return m;
  }

  int order() const { return n_; }

  double at(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, double v) { data_[index(i, j)] = v; }
  void add(int i, int j, double v) { data_[index(i, j)] += v; }

  // this += scale * other
  void add_scaled(const SymMatrix& other, double scale) {
    if (other.n_ != n_) throw std::invalid_argument("SymMatrix: order mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += scale * other.data_[k];
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n_; ++j) acc += at(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }

  Matrix dense() const {
    Matrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j);
    return m;
  }

  double frobenius_norm() const {
    double acc = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) acc += at(i, j) * at(i, j);
    return std::sqrt(acc);
  }

  double trace() const {
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += at(i, i);
    return acc;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }

  int n_ = 0;
  std::vector<double> data_;
};

inline double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double vec_norm(const std::vector<double>& a) { return std::sqrt(vec_dot(a, a)); }

}  // namespace imb

#endif
