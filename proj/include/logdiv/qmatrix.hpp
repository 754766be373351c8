#ifndef LOGDIV_QMATRIX_HPP
#define LOGDIV_QMATRIX_HPP

#include <cstddef>
#include <vector>

#include "logdiv/poly.hpp"

namespace logdiv {

// Dense matrix of exact rationals.  Rank goes through fraction-free
// (Bareiss) elimination on a denominator-cleared integer copy.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix operator*(const QMatrix& o) const;
  bool operator==(const QMatrix& o) const;

  std::size_t rank() const;

  // Basis of { x : A x = 0 }, one kernel vector per row of the result.
  QMatrix kernel() const;

  // Append the rows of `o` (same column count).
  QMatrix vstack(const QMatrix& o) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

// Row spans.  span(sub) subset of span(sup)?
bool row_span_contains(const QMatrix& sup, const QMatrix& sub);
bool row_span_equal(const QMatrix& a, const QMatrix& b);

}  // namespace logdiv

#endif
