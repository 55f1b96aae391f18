#ifndef THETA2_THETA_LOCUS_HPP
#define THETA2_THETA_LOCUS_HPP

#include "theta2/characteristics.hpp"
#include "theta2/siegel.hpp"

#include <vector>

namespace theta2 {

// Affine complex line t -> base + t * dir together with the parallelogram
// {origin + s*span_u + r*span_v : s,r in [0,1)} of local coordinates in which
// zeros are searched ("one fundamental cell" of the restriction).
struct Slice {
  CVector base;
  CVector dir;
  cdouble origin;
  cdouble span_u;
  cdouble span_v;

  CVector point(cdouble t) const { return base + t * dir; }

  // Slice z_axis = const through `base`, varying coordinate `axis`.  The cell
  // vectors are (1, u) with u chosen so the parallelogram covers each torus
  // point of the restriction exactly once; the restricted divisor then has
  // total multiplicity 1 in the cell for every genus-2 period matrix.
  static Slice axis(const PeriodMatrix& omega, int axis, const CVector& base);

  // Generic line through a point; the cell is a unit-by-Omega_00 patch.
  static Slice through(const PeriodMatrix& omega, const CVector& point, const CVector& dir);
};

struct SlicedZero {
  cdouble local_coord;
  CVector z;
  int multiplicity;
};

struct TracedPoint {
  int slice_index;
  cdouble local_coord;
  CVector z;
  int multiplicity;
};

enum class PointKind { Smooth, Node };

struct PointClass {
  PointKind kind;
  double grad_norm;     // |(dtheta/dz_1, dtheta/dz_2)|
  cdouble hess_det;     // det of the z-Hessian
  double full_grad_norm; // all five derivatives, Omega ones via the heat equation
};

struct ClassifyTols {
  double smooth_tol = 1e-6;
  double node_tol = 1e-8;
  double hess_tol = 1e-8;
  double full_grad_tol = 1e-8;
  double on_locus_tol = 1e-8;
};

struct ReducibleReport {
  double branch_residual;
  int node_count;
  int node_order;
  CVector node;
  CVector branch_zero1; // zero of the first elliptic factor
  CVector branch_zero2;
};

// All zeros of the restriction of theta to the slice inside the slice cell,
// Newton-refined, with argument-principle multiplicities.  The multiplicity
// sum is cross-checked against the winding number of the cell boundary;
// start_grid is the side length of the Newton start lattice.
std::vector<SlicedZero> slice_zeros(const Characteristic& delta, const PeriodMatrix& omega,
                                    const Slice& slice, double target_err, int start_grid = 12);

// Union of slice_zeros over n parallel slices z_2 = const sweeping a
// fundamental cell; sorted by (slice index, Re t, Im t).
std::vector<TracedPoint> trace_zero_curve(const Characteristic& delta, const PeriodMatrix& omega,
                                          int n_slices, double target_err, int start_grid = 12);

// Smooth/Node classification at a point of the zero locus.  Throws
// unresolved-classification when the gradient norm falls between node_tol and
// smooth_tol, and domain when the five-component gradient degenerates or the
// point is not on the locus.
PointClass classify_point(const Characteristic& delta, const PeriodMatrix& omega,
                          const CVector& z0, const ClassifyTols& tols = {});

// Zero-divisor structure over a block period matrix: two elliptic branches
// meeting in one node of local order 2.  delta must split into two odd
// genus-1 characteristics.
ReducibleReport verify_reducible_structure(const Characteristic& delta, const PeriodMatrix& omega1,
                                           const PeriodMatrix& omega2);

// Argument-principle multiplicity of the slice restriction at local
// coordinate t_center (winding of a small circle; radius shrinks until the
// integral is within 0.1 of an integer).  max_radius lets callers keep the
// circle clear of neighboring zeros.
int multiplicity_at(const Characteristic& delta, const PeriodMatrix& omega, const Slice& slice,
                    cdouble t_center, double target_err, double max_radius = 1e-3);

} // namespace theta2

#endif
