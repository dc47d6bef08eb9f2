#ifndef PLDG_DENSE_HPP
#define PLDG_DENSE_HPP

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pldg
{

// Row-major dense matrix for element-local blocks (sizes up to a few tens).
class DenseMatrix
{
public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double & operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<double> & data() const { return data_; }
  std::vector<double> & data() { return data_; }

  void set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

  DenseMatrix transposed() const
  {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  // y = A x
  void apply(const double * x, double * y) const
  {
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      const double * row = &data_[static_cast<size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j)
        s += row[j] * x[j];
      y[i] = s;
    }
  }

  // y += alpha * A x
  void apply_add(const double * x, double * y, double alpha = 1.0) const
  {
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      const double * row = &data_[static_cast<size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j)
        s += row[j] * x[j];
      y[i] += alpha * s;
    }
  }

  // y += alpha * A^T x
  void apply_transpose_add(const double * x, double * y, double alpha = 1.0) const
  {
    for (int i = 0; i < rows_; ++i) {
      const double * row = &data_[static_cast<size_t>(i) * cols_];
      const double xi = alpha * x[i];
      for (int j = 0; j < cols_; ++j)
        y[j] += row[j] * xi;
    }
  }

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// C += alpha * A * B
inline void matmul_add(const DenseMatrix & a, const DenseMatrix & b, DenseMatrix & c, double alpha = 1.0)
{
  assert(a.cols() == b.rows() && c.rows() == a.rows() && c.cols() == b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = alpha * a(i, k);
      if (aik == 0.0)
        continue;
      for (int j = 0; j < b.cols(); ++j)
        c(i, j) += aik * b(k, j);
    }
}

// C += alpha * A^T * B
inline void matmul_tn_add(const DenseMatrix & a, const DenseMatrix & b, DenseMatrix & c, double alpha = 1.0)
{
  assert(a.rows() == b.rows() && c.rows() == a.cols() && c.cols() == b.cols());
  for (int k = 0; k < a.rows(); ++k)
    for (int i = 0; i < a.cols(); ++i) {
      const double aki = alpha * a(k, i);
      if (aki == 0.0)
        continue;
      for (int j = 0; j < b.cols(); ++j)
        c(i, j) += aki * b(k, j);
    }
}

// Cholesky factorization A = L L^T of an SPD matrix, stored lower-triangular.
class CholeskyFactor
{
public:
  CholeskyFactor() = default;

  // Throws std::runtime_error if the matrix is not positive definite.
  explicit CholeskyFactor(const DenseMatrix & a) : n_(a.rows()), l_(a.rows(), a.cols())
  {
    if (a.rows() != a.cols())
      throw std::invalid_argument("CholeskyFactor: matrix must be square");
    for (int j = 0; j < n_; ++j) {
      double d = a(j, j);
      for (int k = 0; k < j; ++k)
        d -= l_(j, k) * l_(j, k);
      if (!(d > 0.0))
        throw std::runtime_error("CholeskyFactor: matrix not positive definite");
      l_(j, j) = std::sqrt(d);
      for (int i = j + 1; i < n_; ++i) {
        double s = a(i, j);
        for (int k = 0; k < j; ++k)
          s -= l_(i, k) * l_(j, k);
        l_(i, j) = s / l_(j, j);
      }
    }
  }

  int size() const { return n_; }

  // Solves L L^T x = b in place.
  void solve_in_place(double * b) const
  {
    for (int i = 0; i < n_; ++i) {
      double s = b[i];
      for (int k = 0; k < i; ++k)
        s -= l_(i, k) * b[k];
      b[i] = s / l_(i, i);
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double s = b[i];
      for (int k = i + 1; k < n_; ++k)
        s -= l_(k, i) * b[k];
      b[i] = s / l_(i, i);
    }
  }

  void solve(const double * b, double * x) const
  {
    for (int i = 0; i < n_; ++i)
      x[i] = b[i];
    solve_in_place(x);
  }

private:
  int n_ = 0;
  DenseMatrix l_;
};

} // namespace pldg

#endif
