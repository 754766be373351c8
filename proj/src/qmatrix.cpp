#include "logdiv/qmatrix.hpp"

#include <algorithm>

namespace logdiv {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Rat& b = o.at(k, j);
        if (b != 0) r.at(i, j) += a * b;
      }
    }
  return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

QMatrix QMatrix::vstack(const QMatrix& o) const {
  if (rows_ == 0) return o;
  if (o.rows_ == 0) return *this;
  if (cols_ != o.cols_) throw Error("vstack column mismatch");
  QMatrix r(rows_ + o.rows_, cols_);
  r.data_ = data_;
  r.data_.insert(r.data_.end(), o.data_.begin(), o.data_.end());
  return r;
}

std::size_t QMatrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  // Clear denominators per row, then run Bareiss fraction-free elimination.
  std::vector<std::vector<mpz_class>> m(rows_, std::vector<mpz_class>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols_; ++j) {
      const mpz_class den = at(i, j).get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      Rat v = at(i, j) * Rat(lcm);
      v.canonicalize();
      m[i][j] = v.get_num();
    }
  }

  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    // Pick the pivot with the shortest entry to limit growth.
    std::size_t piv = rows_;
    for (std::size_t r = rank; r < rows_; ++r) {
      if (m[r][col] == 0) continue;
      if (piv == rows_ ||
          mpz_sizeinbase(m[r][col].get_mpz_t(), 2) <
              mpz_sizeinbase(m[piv][col].get_mpz_t(), 2))
        piv = r;
    }
    if (piv == rows_) continue;
    std::swap(m[rank], m[piv]);
    const mpz_class& p = m[rank][col];
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      if (m[r][col] == 0 && cols_ - col > 1) {
        // Still rescale the row to keep the Bareiss division exact.
        for (std::size_t j = col + 1; j < cols_; ++j)
          m[r][j] = (p * m[r][j]) / prev;
        continue;
      }
      for (std::size_t j = col + 1; j < cols_; ++j)
        m[r][j] = (p * m[r][j] - m[r][col] * m[rank][j]) / prev;
      m[r][col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

QMatrix QMatrix::kernel() const {
  // Rational Gauss-Jordan; kernel vectors from the free columns.
  std::vector<std::vector<Rat>> m(rows_, std::vector<Rat>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m[i][j] = at(i, j);

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t piv = row;
    while (piv < rows_ && m[piv][col] == 0) ++piv;
    if (piv == rows_) continue;
    std::swap(m[row], m[piv]);
    Rat inv = Rat(1) / m[row][col];
    for (std::size_t j = col; j < cols_; ++j) m[row][j] *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t j = col; j < cols_; ++j) m[r][j] -= f * m[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  QMatrix ker(free_cols.size(), cols_);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    ker.at(k, fc) = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      ker.at(k, pivot_col[r]) = -m[r][fc];
  }
  return ker;
}

bool row_span_contains(const QMatrix& sup, const QMatrix& sub) {
  if (sub.rows() == 0) return true;
  if (sup.rows() == 0) {
    for (std::size_t i = 0; i < sub.rows(); ++i)
      for (std::size_t j = 0; j < sub.cols(); ++j)
        if (sub.at(i, j) != 0) return false;
    return true;
  }
  return sup.rank() == sup.vstack(sub).rank();
}

bool row_span_equal(const QMatrix& a, const QMatrix& b) {
  return row_span_contains(a, b) && row_span_contains(b, a);
}

}  // namespace logdiv
