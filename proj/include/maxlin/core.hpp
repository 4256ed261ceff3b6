#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxlin {

/// Vertices are labelled 1..d.
using Vertex = int;
using VertexSet = std::set<Vertex>;

/// Directed edge from -> to.
struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  auto operator<=>(const Edge&) const = default;
};

using EdgeWeights = std::map<Edge, double>;

// Errors. Every domain failure derives from maxlin::Error so callers (the CLI in
// particular) can separate them from usage and logic errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MAXLIN_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

MAXLIN_DEFINE_ERROR(CycleError)
MAXLIN_DEFINE_ERROR(DuplicateEdgeError)
MAXLIN_DEFINE_ERROR(VertexOutOfRange)
MAXLIN_DEFINE_ERROR(DimensionMismatch)
MAXLIN_DEFINE_ERROR(InvalidWeightMatrix)
MAXLIN_DEFINE_ERROR(InvalidCoefficientMatrix)
MAXLIN_DEFINE_ERROR(NotAPath)
MAXLIN_DEFINE_ERROR(PathLimitExceeded)
MAXLIN_DEFINE_ERROR(NonPositiveWeight)
MAXLIN_DEFINE_ERROR(MissingEdgeWeight)
MAXLIN_DEFINE_ERROR(ExtraneousWeight)
MAXLIN_DEFINE_ERROR(IncompatibleDag)
MAXLIN_DEFINE_ERROR(NonDisjointQuery)
MAXLIN_DEFINE_ERROR(EmptyVertexSet)
MAXLIN_DEFINE_ERROR(SizeLimitExceeded)
MAXLIN_DEFINE_ERROR(EmptySample)
MAXLIN_DEFINE_ERROR(InsufficientSample)
MAXLIN_DEFINE_ERROR(NonPositiveSample)
MAXLIN_DEFINE_ERROR(NonPositiveInput)
MAXLIN_DEFINE_ERROR(InvalidNoiseSpec)
MAXLIN_DEFINE_ERROR(FormatError)

#undef MAXLIN_DEFINE_ERROR

/// Relative tolerance governing every tie decision between path weights.
inline constexpr double kDefaultRtol = 1e-9;

/// |a - b| <= rtol * max(|a|, |b|). Two zeros compare equal.
[[nodiscard]] inline bool approx_equal(double a, double b, double rtol = kDefaultRtol) {
  if (a == b) return true;
  return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b));
}

/// a <= b, allowing a to exceed b by the relative tolerance.
[[nodiscard]] inline bool approx_less_equal(double a, double b, double rtol = kDefaultRtol) {
  return a <= b || approx_equal(a, b, rtol);
}

/// Dense row-major matrix. Indices are zero-based; domain code maps vertex v
/// to index v - 1.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T{0});
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * c));
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] const std::vector<T>& data() const { return data_; }

  [[nodiscard]] std::vector<T> row(std::size_t r) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    return {first, first + static_cast<std::ptrdiff_t>(cols_)};
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Entrywise approx_equal on matrices of equal shape.
[[nodiscard]] inline bool approx_equal(const Matrix<double>& a, const Matrix<double>& b,
                                       double rtol = kDefaultRtol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    if (!approx_equal(a.data()[i], b.data()[i], rtol)) return false;
  }
  return true;
}

/// Entrywise a <= b up to rtol.
[[nodiscard]] inline bool approx_less_equal(const Matrix<double>& a, const Matrix<double>& b,
                                            double rtol = kDefaultRtol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    if (!approx_less_equal(a.data()[i], b.data()[i], rtol)) return false;
  }
  return true;
}

namespace detail {

inline std::size_t index_of(Vertex v) { return static_cast<std::size_t>(v - 1); }

inline void check_vertex(Vertex v, int d) {
  if (v < 1 || v > d) {
    throw VertexOutOfRange("vertex " + std::to_string(v) + " outside 1.." + std::to_string(d));
  }
}

inline void check_vertices(const VertexSet& s, int d) {
  for (Vertex v : s) check_vertex(v, d);
}

}  // namespace detail

}  // namespace maxlin
