#ifndef THETA2_INTLINALG_HPP
#define THETA2_INTLINALG_HPP

#include <cstdint>
#include <vector>

namespace theta2 {

// Dense integer matrix, row major.  Everything here works on desk-scale
// matrices (at most a few dozen rows), so the implementation favors exactness
// and clarity over asymptotics.  Entries are kept in int64; the Euclidean
// reductions used below cannot overflow for the inputs this project produces.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<long long> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  long long& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  long long operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static IntMat from_rows(const std::vector<std::vector<long long>>& rows);
  IntMat transposed() const;
  bool operator==(const IntMat&) const = default;
};

IntMat mul(const IntMat& x, const IntMat& y);

// Canonical row Hermite normal form of the lattice spanned by the rows.
// Zero rows are dropped; pivots are positive and entries above each pivot are
// reduced into [0, pivot).  Two row sets span the same lattice iff their HNFs
// are equal, which is how sublattice equality is decided throughout.
IntMat hnf_rows(IntMat m);

int rank(IntMat m);

// Basis (as rows) of the integer kernel {x : m x^T = 0}.  The basis generates
// the full kernel lattice, hence is saturated.
IntMat kernel_rows(const IntMat& m);

// Saturation of the row span: (row span tensor Q) intersect Z^cols.
IntMat saturate_rows(const IntMat& m);

// Elementary divisors (Smith normal form diagonal, nonzero entries only).
std::vector<long long> elementary_divisors(IntMat m);

// Determinant by Bareiss fraction-free elimination; matrix must be square.
long long det(IntMat m);

} // namespace theta2

#endif
