#pragma once

// Small dense matrices: exact kernels, enclosures of 2x2 symmetric
// eigenvectors, and cyclic Jacobi for numeric spectra.

#include "advice_kit/interval.hpp"

#include <array>
#include <cmath>

namespace advice_kit {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  bool square() const { return rows_ == cols_; }

  template <typename F>
  auto map(F f) const {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntervalMatrix = Matrix<Interval>;

template <typename T>
bool isSymmetric(const Matrix<T>& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

template <typename T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

template <typename T>
std::vector<T> multiply(const Matrix<T>& a, const std::vector<T>& v) {
  if (v.size() != a.cols()) throw std::invalid_argument("dimension mismatch");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = out[i] + a(i, j) * v[j];
  return out;
}

template <typename T>
std::vector<T> kronecker(const std::vector<T>& u, const std::vector<T>& v) {
  std::vector<T> out;
  for (const auto& x : u)
    for (const auto& y : v) out.push_back(x * y);
  return out;
}

/// Parses `a,b;c,d` (rows separated by ';').
inline RationalMatrix parseMatrix(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::string s(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(';', start);
    std::string row = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::vector<Rational> r;
    std::size_t a = 0;
    while (a <= row.size()) {
      auto b = row.find(',', a);
      r.push_back(parseRational(row.substr(a, b == std::string::npos ? std::string::npos : b - a)));
      if (b == std::string::npos) break;
      a = b + 1;
    }
    rows.push_back(std::move(r));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw std::invalid_argument("ragged matrix literal");
  std::vector<Rational> data;
  for (auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return {rows.size(), rows.front().size(), std::move(data)};
}

// Exact kernels.

/// Basis of the kernel from the reduced row echelon form: one vector per free
/// column, that column set to 1 and the other free columns to 0.
inline std::vector<std::vector<Rational>> kernelBasis(const RationalMatrix& a) {
  RationalMatrix r = a;
  std::vector<std::size_t> pivotCols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < r.rows() && r(pivot, col) == 0) ++pivot;
    if (pivot == r.rows()) continue;
    for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(row, j), r(pivot, j));
    Rational inv = 1 / r(row, col);
    for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == 0) continue;
      Rational f = r(i, col);
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
    }
    pivotCols.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < r.cols(); ++free) {
    if (std::find(pivotCols.begin(), pivotCols.end(), free) != pivotCols.end()) continue;
    std::vector<Rational> v(r.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivotCols.size(); ++k) v[pivotCols[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Kernel vector with the first free variable set to 1; nullopt when rank = cols.
inline std::optional<std::vector<Rational>> rationalKernel(const RationalMatrix& a) {
  auto basis = kernelBasis(a);
  if (basis.empty()) return std::nullopt;
  return basis.front();
}

// 2x2 symmetric eigenvectors.

struct EigenEnclosure {
  Interval value;
  std::array<Interval, 2> vector;
};

struct Eigen2Result {
  /// Set when the matrix may be scalar at the current width: every unit vector is a candidate.
  bool undetermined = false;
  /// Ascending eigenvalue order when determined.
  std::vector<EigenEnclosure> pairs;
};

namespace detail {

inline std::optional<std::array<Interval, 2>> normalise(const Interval& x, const Interval& y, unsigned bits) {
  Interval n2 = x.square() + y.square();
  if (!n2.positive()) return std::nullopt;
  Interval norm = sqrtEnclosure(n2, bits);
  if (!norm.positive()) return std::nullopt;
  return std::array<Interval, 2>{x / norm, y / norm};
}

}  // namespace detail

/// Closed-form eigenpair enclosures of [[a, b], [b, c]].
inline Eigen2Result symmetricEigen2(const IntervalMatrix& m, unsigned bits = 64) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("symmetricEigen2 needs a 2x2 matrix");
  const Interval& a = m(0, 0);
  const Interval b = m(0, 1).intersect(m(1, 0)).value_or(m(0, 1));
  const Interval& c = m(1, 1);
  Interval disc2 = (a - c).square() + Rational(4) * b.square();
  Eigen2Result out;
  if (disc2.containsZero()) {
    out.undetermined = true;
    return out;
  }
  Interval d = sqrtEnclosure(disc2, bits);
  Rational half(1, 2);
  for (int sign : {-1, 1}) {
    Interval lambda = half * (a + c + Rational(sign) * d);
    auto v = detail::normalise(b, lambda - a, bits);
    if (!v) v = detail::normalise(lambda - c, b, bits);
    if (!v) {
      out.undetermined = true;
      out.pairs.clear();
      return out;
    }
    out.pairs.push_back({lambda, *v});
  }
  return out;
}

inline IntervalMatrix pointMatrix(const RationalMatrix& m) {
  return m.map([](const Rational& x) { return Interval(x); });
}

/// Exact unit eigenvectors of a rational symmetric 2x2 matrix, enclosed to width <= 2^-bits.
/// Scalar matrices return nullopt (every unit vector is an eigenvector).
inline std::optional<std::array<std::array<Interval, 2>, 2>> eigenvectors2(const RationalMatrix& m, unsigned bits) {
  if (m(0, 1) == 0 && m(0, 0) == m(1, 1)) return std::nullopt;
  for (unsigned extra = 8;; extra *= 2) {
    auto r = symmetricEigen2(pointMatrix(m), bits + extra);
    if (r.undetermined) continue;
    bool tight = true;
    for (const auto& p : r.pairs)
      for (const auto& x : p.vector) tight = tight && x.width() <= pow2(-static_cast<long>(bits));
    if (tight) return std::array<std::array<Interval, 2>, 2>{r.pairs[0].vector, r.pairs[1].vector};
  }
}

// Numeric spectra.

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenPair {
  double value;
  std::vector<double> vector;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below tol.
/// Eigenpairs are returned in ascending eigenvalue order.
inline std::vector<EigenPair> jacobiEigen(const Matrix<double>& input, double tol, int maxSweeps = 100) {
  if (!input.square()) throw std::invalid_argument("jacobiEigen needs a square matrix");
  if (input.rows() > 8) throw std::invalid_argument("jacobiEigen is limited to n <= 8");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const std::size_t n = input.rows();
  Matrix<double> a = input;
  Matrix<double> v = Matrix<double>::identity(n);
  auto offNorm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  int sweeps = 0;
  while (offNorm() >= tol) {
    if (sweeps++ >= maxSweeps) throw NoConvergence("Jacobi sweeps exhausted");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<EigenPair> out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, j);
    out.push_back({a(j, j), std::move(col)});
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
  return out;
}

inline Matrix<double> toDouble(const RationalMatrix& m) {
  return m.map([](const Rational& x) { return x.get_d(); });
}

}  // namespace advice_kit
