#ifndef PHO_LINALG_HPP
#define PHO_LINALG_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace pho {

using Vec = std::vector<double>;

/// Dense row-major matrix. Desk-scale problems only; no sparsity.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

inline double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// A * x
inline Vec matvec(const Mat& a, const Vec& x) {
  assert(static_cast<int>(x.size()) == a.cols());
  Vec y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

/// A^T * x
inline Vec tmatvec(const Mat& a, const Vec& x) {
  assert(static_cast<int>(x.size()) == a.rows());
  Vec y(a.cols(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[j] += a(i, j) * x[i];
  return y;
}

inline Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline Vec add(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(const Vec& a, double s) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

/// Gather a[indices[0..k)] into a dense subvector.
inline Vec gather(const Vec& a, const std::vector<int>& indices) {
  Vec r(indices.size());
  for (size_t i = 0; i < indices.size(); ++i) r[i] = a[indices[i]];
  return r;
}

/// Scatter sub into a at the given indices (overwrites).
inline void scatter(Vec& a, const std::vector<int>& indices, const Vec& sub) {
  assert(indices.size() == sub.size());
  for (size_t i = 0; i < indices.size(); ++i) a[indices[i]] = sub[i];
}

}  // namespace pho

#endif  // PHO_LINALG_HPP
