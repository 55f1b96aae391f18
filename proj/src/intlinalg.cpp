#include "theta2/intlinalg.hpp"

#include "theta2/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace theta2 {

IntMat IntMat::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols)
      throw Error("domain", "ragged row list in IntMat::from_rows");
    for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMat IntMat::transposed() const {
  IntMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw Error("domain", "IntMat dimension mismatch in mul");
  IntMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const long long v = x(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

namespace {

void swap_rows(IntMat& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}

// row[i] -= q * row[j]
void row_axpy(IntMat& m, int i, int j, long long q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols; ++c) m(i, c) -= q * m(j, c);
}

} // namespace

IntMat hnf_rows(IntMat m) {
  int pivot_row = 0;
  for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
    // Euclidean elimination below the pivot position in this column.
    while (true) {
      int best = -1;
      for (int r = pivot_row; r < m.rows; ++r)
        if (m(r, col) != 0 && (best < 0 || std::llabs(m(r, col)) < std::llabs(m(best, col))))
          best = r;
      if (best < 0) break;
      swap_rows(m, pivot_row, best);
      bool clean = true;
      for (int r = pivot_row + 1; r < m.rows; ++r) {
        if (m(r, col) == 0) continue;
        // floor division keeps |remainder| < |pivot| and terminates.
        long long q = m(r, col) / m(pivot_row, col);
        row_axpy(m, r, pivot_row, q);
        if (m(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(pivot_row, col) == 0) continue;
    if (m(pivot_row, col) < 0)
      for (int c = 0; c < m.cols; ++c) m(pivot_row, c) = -m(pivot_row, c);
    // Reduce the entries above the pivot into [0, pivot).
    for (int r = 0; r < pivot_row; ++r) {
      long long q = m(r, col) / m(pivot_row, col);
      if (m(r, col) - q * m(pivot_row, col) < 0) --q;
      row_axpy(m, r, pivot_row, q);
    }
    ++pivot_row;
  }
  IntMat out(pivot_row, m.cols);
  for (int i = 0; i < pivot_row; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

int rank(IntMat m) { return hnf_rows(std::move(m)).rows; }

IntMat kernel_rows(const IntMat& m) {
  // Column-reduce [m; I] as one matrix; columns whose m-part becomes zero
  // carry a basis of the kernel in their I-part.
  const int n = m.cols;
  IntMat w(m.rows + n, n);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = m(i, j);
  for (int j = 0; j < n; ++j) w(m.rows + j, j) = 1;

  int pivot_col = 0;
  for (int row = 0; row < m.rows && pivot_col < n; ++row) {
    while (true) {
      int best = -1;
      for (int c = pivot_col; c < n; ++c)
        if (w(row, c) != 0 && (best < 0 || std::llabs(w(row, c)) < std::llabs(w(row, best))))
          best = c;
      if (best < 0) break;
      for (int r = 0; r < w.rows; ++r) std::swap(w(r, pivot_col), w(r, best));
      bool clean = true;
      for (int c = pivot_col + 1; c < n; ++c) {
        if (w(row, c) == 0) continue;
        long long q = w(row, c) / w(row, pivot_col);
        for (int r = 0; r < w.rows; ++r) w(r, c) -= q * w(r, pivot_col);
        if (w(row, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w(row, pivot_col) != 0) ++pivot_col;
  }

  IntMat out(n - pivot_col, n);
  for (int c = pivot_col; c < n; ++c)
    for (int j = 0; j < n; ++j) out(c - pivot_col, j) = w(m.rows + j, c);
  return out;
}

IntMat saturate_rows(const IntMat& m) {
  // x is in the saturation iff x is orthogonal to the kernel of m
  // (ordinary dot product); a kernel-of-kernel basis is saturated.
  return hnf_rows(kernel_rows(kernel_rows(m)));
}

std::vector<long long> elementary_divisors(IntMat m) {
  std::vector<long long> divisors;
  int top = 0;
  while (top < m.rows && top < m.cols) {
    // Find the smallest nonzero entry in the working block.
    int pi = -1, pj = -1;
    for (int i = top; i < m.rows; ++i)
      for (int j = top; j < m.cols; ++j)
        if (m(i, j) != 0 && (pi < 0 || std::llabs(m(i, j)) < std::llabs(m(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(m, top, pi);
    for (int r = 0; r < m.rows; ++r) std::swap(m(r, top), m(r, pj));

    bool again = false;
    for (int r = top + 1; r < m.rows; ++r) {
      long long q = m(r, top) / m(top, top);
      row_axpy(m, r, top, q);
      if (m(r, top) != 0) again = true;
    }
    for (int c = top + 1; c < m.cols; ++c) {
      long long q = m(top, c) / m(top, top);
      if (q != 0)
        for (int r = 0; r < m.rows; ++r) m(r, c) -= q * m(r, top);
      if (m(top, c) != 0) again = true;
    }
    if (again) continue;
    // Divisibility fix-up: every entry of the remaining block must be a
    // multiple of the pivot.
    bool fixed = true;
    for (int i = top + 1; i < m.rows && fixed; ++i)
      for (int j = top + 1; j < m.cols && fixed; ++j)
        if (m(i, j) % m(top, top) != 0) {
          for (int c = 0; c < m.cols; ++c) m(top, c) += m(i, c);
          fixed = false;
        }
    if (!fixed) continue;
    divisors.push_back(std::llabs(m(top, top)));
    ++top;
  }
  return divisors;
}

long long det(IntMat m) {
  if (m.rows != m.cols) throw Error("domain", "det of non-square IntMat");
  const int n = m.rows;
  long long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      swap_rows(m, k, swap);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

} // namespace theta2
