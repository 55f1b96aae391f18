#include "theta2/siegel.hpp"

#include "theta2/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace theta2 {

PeriodMatrix::PeriodMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw Error("domain", "period matrix must be square and nonempty");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  for (int i = 0; i < m_.rows(); ++i)
    for (int j = i + 1; j < m_.cols(); ++j)
      if (std::abs(m_(i, j) - m_(j, i)) > 1e-12 * scale)
        throw Error("domain", "period matrix is not symmetric to 1e-12");

  im_ = m_.imag();
  im_ = 0.5 * (im_ + im_.transpose().eval());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(im_);
  lambda_min_ = es.eigenvalues().minCoeff();
  Eigen::LLT<RMatrix> llt(im_);
  if (llt.info() != Eigen::Success || lambda_min_ <= 0.0)
    throw Error("domain", "imaginary part of period matrix is not positive definite");
  im_inv_ = im_.inverse();
}

namespace {

IntMat int_identity(int g) {
  IntMat m(g, g);
  for (int i = 0; i < g; ++i) m(i, i) = 1;
  return m;
}

CMatrix to_cmatrix(const IntMat& m) {
  CMatrix out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = cdouble(static_cast<double>(m(i, j)), 0.0);
  return out;
}

IntMat assemble(const IntMat& a, const IntMat& b, const IntMat& c, const IntMat& d) {
  const int g = a.rows;
  IntMat m(2 * g, 2 * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      m(i, j) = a(i, j);
      m(i, j + g) = b(i, j);
      m(i + g, j) = c(i, j);
      m(i + g, j + g) = d(i, j);
    }
  return m;
}

} // namespace

SymplecticIntMatrix::SymplecticIntMatrix(IntMat a, IntMat b, IntMat c, IntMat d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const int g = a_.rows;
  if (g == 0 || a_.cols != g || b_.rows != g || b_.cols != g || c_.rows != g || c_.cols != g ||
      d_.rows != g || d_.cols != g)
    throw Error("domain", "symplectic blocks must be g x g");
  IntMat m = assemble(a_, b_, c_, d_);
  IntMat j(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    j(i, i + g) = 1;
    j(i + g, i) = -1;
  }
  if (mul(mul(m.transposed(), j), m) != j)
    throw Error("domain", "matrix does not preserve the symplectic form");
}

SymplecticIntMatrix SymplecticIntMatrix::identity(int g) {
  return SymplecticIntMatrix(int_identity(g), IntMat(g, g), IntMat(g, g), int_identity(g));
}

CMatrix SymplecticIntMatrix::block_a() const { return to_cmatrix(a_); }
CMatrix SymplecticIntMatrix::block_b() const { return to_cmatrix(b_); }
CMatrix SymplecticIntMatrix::block_c() const { return to_cmatrix(c_); }
CMatrix SymplecticIntMatrix::block_d() const { return to_cmatrix(d_); }

SymplecticIntMatrix SymplecticIntMatrix::operator*(const SymplecticIntMatrix& rhs) const {
  if (genus() != rhs.genus()) throw Error("domain", "symplectic genus mismatch");
  const int g = genus();
  IntMat lhs_full = assemble(a_, b_, c_, d_);
  IntMat rhs_full = assemble(rhs.a_, rhs.b_, rhs.c_, rhs.d_);
  IntMat m = mul(lhs_full, rhs_full);
  IntMat a(g, g), b(g, g), c(g, g), d(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      a(i, j) = m(i, j);
      b(i, j) = m(i, j + g);
      c(i, j) = m(i + g, j);
      d(i, j) = m(i + g, j + g);
    }
  return SymplecticIntMatrix(std::move(a), std::move(b), std::move(c), std::move(d));
}

namespace {

CMatrix inverse_checked(const CMatrix& m, const char* what) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > 1e12)
    throw Error("numeric-instability", std::string(what) + " is numerically singular");
  return m.inverse();
}

} // namespace

PeriodMatrix act_on_siegel(const SymplecticIntMatrix& m, const PeriodMatrix& omega) {
  if (m.genus() != omega.genus()) throw Error("domain", "genus mismatch in Sp action");
  const CMatrix& o = omega.mat();
  CMatrix cd = m.block_c() * o + m.block_d();
  CMatrix result = (m.block_a() * o + m.block_b()) * inverse_checked(cd, "C*Omega+D");
  return PeriodMatrix(std::move(result));
}

std::pair<PeriodMatrix, CVector> act_on_pair(const SymplecticIntMatrix& m,
                                             const PeriodMatrix& omega, const CVector& z) {
  if (z.size() != omega.genus()) throw Error("domain", "z has wrong length in Sp action");
  const CMatrix& o = omega.mat();
  CMatrix cd_inv = inverse_checked(m.block_c() * o + m.block_d(), "C*Omega+D");
  PeriodMatrix moved((m.block_a() * o + m.block_b()) * cd_inv);
  return {std::move(moved), row_times(z, cd_inv)};
}

PeriodMatrix direct_sum_period(const PeriodMatrix& o1, const PeriodMatrix& o2) {
  const int g1 = o1.genus(), g2 = o2.genus();
  CMatrix m = CMatrix::Zero(g1 + g2, g1 + g2);
  m.topLeftCorner(g1, g1) = o1.mat();
  m.bottomRightCorner(g2, g2) = o2.mat();
  return PeriodMatrix(std::move(m));
}

bool is_block_reducible(const PeriodMatrix& omega, double tol) {
  if (omega.genus() != 2) throw Error("domain", "block reducibility test is genus-2 only");
  return std::abs(omega(0, 1)) <= tol;
}

std::pair<RVector, RVector> torus_coords(const PeriodMatrix& omega, const CVector& z) {
  if (z.size() != omega.genus()) throw Error("domain", "z has wrong length");
  // Im z = beta * Im Omega, then alpha = Re z - beta * Re Omega (row vectors).
  RVector beta = (z.imag().transpose() * omega.im_inverse()).transpose();
  RVector alpha = z.real() - (beta.transpose() * omega.mat().real()).transpose();
  return {std::move(alpha), std::move(beta)};
}

CVector from_torus_coords(const PeriodMatrix& omega, const RVector& alpha, const RVector& beta) {
  CVector z = alpha.cast<cdouble>();
  z += (beta.transpose().cast<cdouble>() * omega.mat()).transpose();
  return z;
}

TorusPoint reduce_mod_lattice(const PeriodMatrix& omega, const CVector& z) {
  const int g = omega.genus();
  auto [alpha, beta] = torus_coords(omega, z);
  Eigen::VectorXi m1(g), m2(g);
  for (int j = 0; j < g; ++j) {
    m1[j] = static_cast<int>(std::floor(alpha[j]));
    m2[j] = static_cast<int>(std::floor(beta[j]));
    alpha[j] -= m1[j];
    beta[j] -= m2[j];
    // Rounding can push a coordinate to 1.0 exactly; wrap once more.
    if (alpha[j] >= 1.0) {
      alpha[j] -= 1.0;
      ++m1[j];
    }
    if (beta[j] >= 1.0) {
      beta[j] -= 1.0;
      ++m2[j];
    }
  }
  return TorusPoint{from_torus_coords(omega, alpha, beta), std::move(m1), std::move(m2)};
}

std::vector<std::pair<std::string, SymplecticIntMatrix>> sp4_generators() {
  auto mat = [](std::vector<std::vector<long long>> rows) { return IntMat::from_rows(rows); };
  const IntMat id = mat({{1, 0}, {0, 1}});
  const IntMat zero(2, 2);
  std::vector<std::pair<std::string, SymplecticIntMatrix>> gens;
  gens.emplace_back("J", SymplecticIntMatrix(zero, id, mat({{-1, 0}, {0, -1}}), zero));
  gens.emplace_back("T11", SymplecticIntMatrix(id, mat({{1, 0}, {0, 0}}), zero, id));
  gens.emplace_back("T22", SymplecticIntMatrix(id, mat({{0, 0}, {0, 1}}), zero, id));
  gens.emplace_back("T12", SymplecticIntMatrix(id, mat({{0, 1}, {1, 0}}), zero, id));
  gens.emplace_back("U-shear",
                    SymplecticIntMatrix(mat({{1, 1}, {0, 1}}), zero, zero, mat({{1, 0}, {-1, 1}})));
  gens.emplace_back("U-swap",
                    SymplecticIntMatrix(mat({{0, 1}, {1, 0}}), zero, zero, mat({{0, 1}, {1, 0}})));
  return gens;
}

double torus_distance(const PeriodMatrix& omega, const CVector& z, const CVector& w) {
  const int g = omega.genus();
  CVector diff = z - w;
  auto [alpha, beta] = torus_coords(omega, diff);
  RVector a0(g), b0(g);
  for (int j = 0; j < g; ++j) {
    a0[j] = std::round(alpha[j]);
    b0[j] = std::round(beta[j]);
  }
  // Coordinate rounding is not exact closest-vector for skew lattices; probe
  // the neighboring translates as well.
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> digits(2 * g, -1);
  while (true) {
    RVector a = a0, b = b0;
    for (int j = 0; j < g; ++j) {
      a[j] += digits[j];
      b[j] += digits[g + j];
    }
    CVector lattice_pt = from_torus_coords(omega, a, b);
    best = std::min(best, (diff - lattice_pt).norm());
    int k = 0;
    while (k < 2 * g && digits[k] == 1) digits[k++] = -1;
    if (k == 2 * g) break;
    ++digits[k];
  }
  return best;
}

} // namespace theta2
