#ifndef THETA2_SIEGEL_HPP
#define THETA2_SIEGEL_HPP

#include "theta2/intlinalg.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace theta2 {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// z transforms as a row vector throughout ("z * (C*Omega+D)^{-1}"); vectors
// are stored as column objects, so this helper applies a matrix on the right.
inline CVector row_times(const CVector& z, const CMatrix& m) {
  return (z.transpose() * m).transpose();
}

// A point of Siegel space: symmetric complex g-by-g with positive-definite
// imaginary part.  Symmetry is checked to 1e-12; positivity is certified by a
// successful Cholesky factorization of Im (plus a strictly positive smallest
// eigenvalue, which the truncation bounds need anyway).
class PeriodMatrix {
public:
  explicit PeriodMatrix(CMatrix m);

  int genus() const { return static_cast<int>(m_.rows()); }
  const CMatrix& mat() const { return m_; }
  cdouble operator()(int i, int j) const { return m_(i, j); }

  const RMatrix& im() const { return im_; }
  const RMatrix& im_inverse() const { return im_inv_; }
  double min_im_eigenvalue() const { return lambda_min_; }

private:
  CMatrix m_;
  RMatrix im_;
  RMatrix im_inv_;
  double lambda_min_;
};

// Element of Sp_g(Z) in block form (A B; C D).  The constructor checks
// M^T J M = J exactly over the integers, J = (0 I; -I 0).
class SymplecticIntMatrix {
public:
  SymplecticIntMatrix(IntMat a, IntMat b, IntMat c, IntMat d);

  static SymplecticIntMatrix identity(int g);

  int genus() const { return a_.rows; }
  const IntMat& a() const { return a_; }
  const IntMat& b() const { return b_; }
  const IntMat& c() const { return c_; }
  const IntMat& d() const { return d_; }

  CMatrix block_a() const;
  CMatrix block_b() const;
  CMatrix block_c() const;
  CMatrix block_d() const;

  SymplecticIntMatrix operator*(const SymplecticIntMatrix& rhs) const;

  bool operator==(const SymplecticIntMatrix&) const = default;

private:
  IntMat a_, b_, c_, d_;
};

struct TorusPoint {
  CVector z;
  Eigen::VectorXi m1;
  Eigen::VectorXi m2;
};

// M . Omega = (A Omega + B)(C Omega + D)^{-1}.  Throws numeric-instability if
// C Omega + D has condition number above 1e12.
PeriodMatrix act_on_siegel(const SymplecticIntMatrix& m, const PeriodMatrix& omega);

// M . (Omega, z) = (M . Omega, z (C Omega + D)^{-1}).
std::pair<PeriodMatrix, CVector> act_on_pair(const SymplecticIntMatrix& m,
                                             const PeriodMatrix& omega, const CVector& z);

PeriodMatrix direct_sum_period(const PeriodMatrix& o1, const PeriodMatrix& o2);

// True iff Omega_12 is within tol of zero, i.e. Omega lies on the standard
// h_1 x h_1 component of the reducible locus.  Sp-translates of that component
// are deliberately not detected.
bool is_block_reducible(const PeriodMatrix& omega, double tol);

// Real coordinates (alpha, beta) with z = alpha + beta * Omega (row vectors).
std::pair<RVector, RVector> torus_coords(const PeriodMatrix& omega, const CVector& z);
CVector from_torus_coords(const PeriodMatrix& omega, const RVector& alpha, const RVector& beta);

// z' = z - m1 - m2 Omega with torus coordinates of z' in [0,1)^{2g}.
TorusPoint reduce_mod_lattice(const PeriodMatrix& omega, const CVector& z);

// Distance from z to the lattice translate of w nearest to it.
double torus_distance(const PeriodMatrix& omega, const CVector& z, const CVector& w);

// Fixed generating set of Sp_4(Z): the symplectic involution J, the three
// elementary translations (I B; 0 I), and two GL_2(Z) embeddings
// (U 0; 0 U^{-T}).  Names: "J", "T11", "T22", "T12", "U-shear", "U-swap".
std::vector<std::pair<std::string, SymplecticIntMatrix>> sp4_generators();

} // namespace theta2

#endif
