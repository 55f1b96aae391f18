#ifndef THETA2_THETA_EVAL_HPP
#define THETA2_THETA_EVAL_HPP

#include "theta2/characteristics.hpp"
#include "theta2/siegel.hpp"

#include <vector>

namespace theta2 {

// Value of a truncated theta series together with a certified bound on the
// discarded tail.  The series is summed over the box max_j |m_j| <= radius in
// a fixed order (increasing max-norm shell, lexicographic within a shell), so
// results are bit-reproducible.
struct ThetaResult {
  cdouble value;
  double truncation_bound; // |exact - value| <= truncation_bound
  int radius_used;
};

// Value, z-gradient and z-Hessian from term-by-term differentiation at a
// common certified radius.  Omega-derivatives come from the heat equation:
// 2 pi i (1 + delta_jk) dtheta/dOmega_jk = d^2 theta / dz_j dz_k.
struct ThetaJet {
  cdouble value;
  CVector grad_z;
  CMatrix hess_z;
  double truncation_bound;
  int radius_used;

  cdouble omega_deriv(int j, int k) const;
};

inline constexpr int kThetaRadiusCap = 200;

// Peak magnitude envelope exp(pi y Y^{-1} y^T), y = Im z.  Theta values scale
// like this factor, so "small" must be judged relative to it.
double theta_scale(const PeriodMatrix& omega, const CVector& z);

ThetaResult theta(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                  double target_err);

// Fixed-radius evaluation; the reported bound is the certified tail at that
// radius (used by the truncation spot checks).
ThetaResult theta_at_radius(const Characteristic& delta, const PeriodMatrix& omega,
                            const CVector& z, int radius);

ThetaJet theta_jet(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                   double target_err);

// Value and z-gradient only; cheaper than a full jet inside Newton loops.
std::pair<cdouble, CVector> theta_value_grad(const Characteristic& delta,
                                             const PeriodMatrix& omega, const CVector& z,
                                             double target_err);

ThetaResult thetanull(const Characteristic& delta, const PeriodMatrix& omega, double target_err);

// |theta(Omega,-z) - sigma theta(Omega,z)|, sigma = +1 for even delta, -1 odd.
double check_parity(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                    double target_err);

// Relative residual of the block-diagonal product formula; delta splits at
// genus(omega1).
double check_product(const Characteristic& delta, const PeriodMatrix& omega1,
                     const PeriodMatrix& omega2, const CVector& z, double target_err);

// Shift appearing in the reduction to the zero characteristic.  The working
// convention eps'' + eps' * Omega is the one the series identity validates
// numerically (the two halves of delta do not play symmetric roles).
CVector reference_shift(const Characteristic& delta, const PeriodMatrix& omega);

struct ShiftReferenceSample {
  cdouble ratio;           // theta_delta(Omega,z) / theta_0(Omega, z + shift)
  cdouble expected_factor; // exp(pi i eps' Omega eps'^T + 2 pi i eps' (z+eps'')^T)
  double denom_abs;
};

// Throws code "resample" when the reference theta is too close to zero at z.
ShiftReferenceSample check_shift_reference(const Characteristic& delta, const PeriodMatrix& omega,
                                           const CVector& z, double target_err);

// Candidate data reused across transformation-law matches at a fixed Omega:
// sample grid over a fundamental cell and the 16 candidate theta grids.
class TransformContext {
public:
  explicit TransformContext(const PeriodMatrix& omega, int grid_n = 5, double tick_offset = 0.37);

  const PeriodMatrix& omega() const { return omega_; }
  const std::vector<Characteristic>& candidates() const { return candidates_; }

private:
  friend Characteristic transformed_characteristic(const SymplecticIntMatrix&,
                                                   const Characteristic&, const TransformContext&);
  PeriodMatrix omega_;
  std::vector<Characteristic> candidates_;
  std::vector<CVector> grid_;
  Eigen::MatrixXd design_; // 1, linear and quadratic monomials in cell coords
  std::vector<std::vector<cdouble>> cand_values_;
  std::vector<double> cand_scale_;
  double skip_rel_;
};

// The unique delta* whose zero set matches z -> theta_delta(M.Omega,
// z (C Omega + D)^{-1}), decided by sampling the two functions over a cell
// grid that avoids zeros: for the matching candidate (and only for it) the
// log-ratio agrees with the log-modulus of a non-vanishing holomorphic factor,
// i.e. with a quadratic polynomial in the cell coordinates, to within +-0.5.
Characteristic transformed_characteristic(const SymplecticIntMatrix& m,
                                          const Characteristic& delta,
                                          const PeriodMatrix& omega);
Characteristic transformed_characteristic(const SymplecticIntMatrix& m,
                                          const Characteristic& delta,
                                          const TransformContext& context);

} // namespace theta2

#endif
