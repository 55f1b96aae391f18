#include "theta2/theta_locus.hpp"

#include "theta2/errors.hpp"
#include "theta2/theta_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace theta2 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cdouble kCellJitter{0.0310, 0.0170};

struct SliceFn {
  const Characteristic& delta;
  const PeriodMatrix& omega;
  const Slice& slice;
  double target;

  cdouble value(cdouble t) const { return theta(delta, omega, slice.point(t), target).value; }
  std::pair<cdouble, cdouble> value_deriv(cdouble t) const {
    auto [val, grad] = theta_value_grad(delta, omega, slice.point(t), target);
    cdouble d(0.0, 0.0);
    for (int j = 0; j < omega.genus(); ++j) d += grad[j] * slice.dir[j];
    return {val, d};
  }
  double scale(cdouble t) const { return theta_scale(omega, slice.point(t)); }
};

struct LoopResult {
  double winding = 0.0;
  double min_abs = 0.0;
  bool steps_ok = false;
};

// Winding number of f along a closed polyline of sample points, by tracking
// argument increments.  steps_ok is false when any increment exceeds 1 radian,
// i.e. when the sampling cannot be trusted and must be refined.
LoopResult winding_of_samples(const std::vector<cdouble>& vals) {
  LoopResult out;
  out.steps_ok = true;
  out.min_abs = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    out.min_abs = std::min(out.min_abs, std::abs(vals[i]));
    const cdouble a = vals[i];
    const cdouble b = vals[(i + 1) % vals.size()];
    if (a == cdouble(0.0, 0.0) || b == cdouble(0.0, 0.0)) {
      out.steps_ok = false;
      return out;
    }
    const double step = std::arg(b / a);
    if (std::abs(step) > 1.0) out.steps_ok = false;
    total += step;
  }
  out.winding = total / (2.0 * kPi);
  return out;
}

LoopResult winding_of_cell_boundary(const SliceFn& fn, cdouble origin, cdouble u, cdouble v,
                                    int samples_per_edge) {
  std::vector<cdouble> vals;
  vals.reserve(4 * samples_per_edge);
  auto edge = [&](cdouble from, cdouble span) {
    for (int i = 0; i < samples_per_edge; ++i)
      vals.push_back(fn.value(from + (double(i) / samples_per_edge) * span));
  };
  edge(origin, u);
  edge(origin + u, v);
  edge(origin + u + v, -u);
  edge(origin + v, -v);
  return winding_of_samples(vals);
}

// (s, r) coordinates of t in the cell {origin + s u + r v}.
std::pair<double, double> cell_coords(const Slice& slice, cdouble t) {
  const cdouble d = t - slice.origin;
  const double det = slice.span_u.real() * slice.span_v.imag() -
                     slice.span_u.imag() * slice.span_v.real();
  const double s = (d.real() * slice.span_v.imag() - d.imag() * slice.span_v.real()) / det;
  const double r = (slice.span_u.real() * d.imag() - slice.span_u.imag() * d.real()) / det;
  return {s, r};
}

} // namespace

Slice Slice::axis(const PeriodMatrix& omega, int axis, const CVector& base) {
  const int g = omega.genus();
  if (axis < 0 || axis >= g) throw Error("domain", "slice axis out of range");
  if (base.size() != g) throw Error("domain", "slice base has wrong length");
  Slice s;
  s.base = base;
  s.dir = CVector::Zero(g);
  s.dir[axis] = 1.0;
  s.span_u = 1.0;
  if (g == 1) {
    s.span_v = omega(0, 0);
  } else if (g == 2) {
    const int other = 1 - axis;
    // Cell vector adapted to the fixed coordinate: with it the parallelogram
    // covers each torus point of the slice exactly once, so the restricted
    // divisor contributes total multiplicity 1 per cell.
    s.span_v = omega(axis, axis) -
               omega(axis, other) * (omega(axis, other).imag() / omega(other, other).imag());
  } else {
    throw Error("domain", "axis slices support genus 1 and 2 only");
  }
  s.origin = -0.5 * s.span_u - 0.5 * s.span_v + kCellJitter;
  return s;
}

Slice Slice::through(const PeriodMatrix& omega, const CVector& point, const CVector& dir) {
  if (point.size() != omega.genus() || dir.size() != omega.genus())
    throw Error("domain", "slice data has wrong length");
  if (dir.norm() == 0.0) throw Error("domain", "slice direction must be nonzero");
  Slice s;
  s.base = point;
  s.dir = dir;
  s.span_u = 1.0;
  s.span_v = omega(0, 0);
  s.origin = -0.5 * s.span_u - 0.5 * s.span_v + kCellJitter;
  return s;
}

int multiplicity_at(const Characteristic& delta, const PeriodMatrix& omega, const Slice& slice,
                    cdouble t_center, double target_err, double max_radius) {
  SliceFn fn{delta, omega, slice, target_err};
  double radius = max_radius;
  for (int attempt = 0; attempt < 3; ++attempt, radius *= 0.25) {
    for (int n = 128; n <= 2048; n *= 4) {
      std::vector<cdouble> vals;
      vals.reserve(n);
      for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * kPi * i / n;
        vals.push_back(fn.value(t_center + radius * cdouble(std::cos(phi), std::sin(phi))));
      }
      LoopResult loop = winding_of_samples(vals);
      if (!loop.steps_ok) continue;
      const int mult = static_cast<int>(std::lround(loop.winding));
      if (std::abs(loop.winding - mult) <= 0.1 && mult >= 1) return mult;
      break; // integral clean but not an acceptable integer: shrink the circle
    }
  }
  throw Error("ill-conditioned-slice",
              "winding integral not within 0.1 of a positive integer after 3 radius refinements");
}

std::vector<SlicedZero> slice_zeros(const Characteristic& delta, const PeriodMatrix& omega,
                                    const Slice& slice, double target_err, int start_grid) {
  if (delta.genus() != omega.genus()) throw Error("domain", "characteristic genus mismatch");
  if (!(target_err > 0.0)) throw Error("domain", "target_err must be positive");
  if (start_grid < 2) throw Error("domain", "start grid must be at least 2");
  SliceFn fn{delta, omega, slice, target_err};

  // Degenerate-restriction detection: the slice may lie inside the divisor.
  {
    double probe_max = 0.0, scale_max = 0.0;
    for (int i = 0; i < 23; ++i) {
      const double s = (i * 0.381966011 + 0.09);
      const cdouble t = slice.origin + std::fmod(s, 1.0) * slice.span_u +
                        std::fmod(s * 2.618033988, 1.0) * slice.span_v;
      probe_max = std::max(probe_max, std::abs(fn.value(t)));
      scale_max = std::max(scale_max, fn.scale(t));
    }
    if (probe_max <= 1e-9 * scale_max)
      throw Error("resample", "slice restriction is identically zero to working precision");
  }

  // Boundary winding with nudges away from zeros sitting on the cell edge.
  Slice cell = slice;
  int total_winding = -1;
  for (int nudge = 0; nudge < 4 && total_winding < 0; ++nudge) {
    double boundary_scale = 0.0;
    for (cdouble corner : {cell.origin, cell.origin + cell.span_u, cell.origin + cell.span_v,
                           cell.origin + cell.span_u + cell.span_v})
      boundary_scale = std::max(boundary_scale, fn.scale(corner));
    for (int n = 256; n <= 8192; n *= 2) {
      LoopResult loop = winding_of_cell_boundary(fn, cell.origin, cell.span_u, cell.span_v, n);
      if (!loop.steps_ok) continue;
      if (loop.min_abs < 1e-7 * boundary_scale) break; // too close to a zero: nudge
      const int w = static_cast<int>(std::lround(loop.winding));
      if (std::abs(loop.winding - w) <= 0.1 && w >= 0) total_winding = w;
      break;
    }
    if (total_winding < 0) cell.origin += 0.017 * (cell.span_u + cell.span_v);
  }
  if (total_winding < 0)
    throw Error("ill-conditioned-slice", "could not certify the cell boundary winding");

  if (total_winding == 0) return {};

  // Newton refinement from a grid of starts, cheapest (most promising) first.
  std::vector<cdouble> zeros;
  auto newton_from = [&](cdouble t0) {
    cdouble t = t0;
    for (int iter = 0; iter < 50; ++iter) {
      auto [val, deriv] = fn.value_deriv(t);
      if (std::abs(val) <= 1e-12 * fn.scale(t)) break;
      if (deriv == cdouble(0.0, 0.0)) return;
      const cdouble step = val / deriv;
      t -= step;
      if (std::abs(t - t0) > 3.0 * (std::abs(cell.span_u) + std::abs(cell.span_v))) return;
      if (std::abs(step) <= 1e-14) break;
    }
    if (std::abs(fn.value(t)) > 1e-8 * fn.scale(t)) return;
    auto [s, r] = cell_coords(cell, t);
    if (s < -1e-9 || s >= 1.0 - 1e-9 || r < -1e-9 || r >= 1.0 - 1e-9) return;
    for (cdouble known : zeros)
      if (std::abs(known - t) < 1e-6) return;
    zeros.push_back(t);
  };

  for (int grid_n : {start_grid, 2 * start_grid}) {
    zeros.clear();
    std::vector<std::pair<double, cdouble>> starts;
    starts.reserve(grid_n * grid_n);
    for (int i = 0; i < grid_n; ++i)
      for (int j = 0; j < grid_n; ++j) {
        const cdouble t = cell.origin + ((i + 0.5) / grid_n) * cell.span_u +
                          ((j + 0.5) / grid_n) * cell.span_v;
        starts.emplace_back(std::abs(fn.value(t)) / fn.scale(t), t);
      }
    std::sort(starts.begin(), starts.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return std::make_pair(a.second.real(), a.second.imag()) <
             std::make_pair(b.second.real(), b.second.imag());
    });
    const std::size_t first_batch = std::min<std::size_t>(starts.size(), 40);
    for (std::size_t i = 0; i < first_batch; ++i) newton_from(starts[i].second);
    if (static_cast<int>(zeros.size()) < total_winding)
      for (std::size_t i = first_batch; i < starts.size(); ++i) newton_from(starts[i].second);

    std::vector<SlicedZero> out;
    int mult_sum = 0;
    for (cdouble t : zeros) {
      // Keep each winding circle clear of the neighboring zeros.
      double clearance = 1e-3;
      for (cdouble other : zeros)
        if (other != t) clearance = std::min(clearance, 0.3 * std::abs(other - t));
      const int mult = multiplicity_at(delta, omega, cell, t, target_err, clearance);
      mult_sum += mult;
      out.push_back(SlicedZero{t, slice.point(t), mult});
    }
    if (mult_sum == total_winding) {
      std::sort(out.begin(), out.end(), [](const SlicedZero& a, const SlicedZero& b) {
        return std::make_pair(a.local_coord.real(), a.local_coord.imag()) <
               std::make_pair(b.local_coord.real(), b.local_coord.imag());
      });
      return out;
    }
    // fall through once with a denser start grid
  }
  throw Error("ill-conditioned-slice", "zero search does not account for the boundary winding");
}

std::vector<TracedPoint> trace_zero_curve(const Characteristic& delta, const PeriodMatrix& omega,
                                          int n_slices, double target_err, int start_grid) {
  if (omega.genus() != 2) throw Error("domain", "zero-curve tracing is genus-2 only");
  if (delta.genus() != 2) throw Error("domain", "characteristic genus mismatch");
  std::vector<TracedPoint> cloud;
  if (n_slices <= 0) return cloud;
  for (int j = 0; j < n_slices; ++j) {
    const cdouble c = cdouble(0.1234, 0.0567) + cdouble((j + 0.5) / n_slices, 0.0);
    CVector base(2);
    base << cdouble(0.0, 0.0), c;
    std::vector<SlicedZero> zs;
    try {
      zs = slice_zeros(delta, omega, Slice::axis(omega, 0, base), target_err, start_grid);
    } catch (const Error& e) {
      if (e.code() != "resample") throw;
      base[1] = c + cdouble(0.0777, 0.0411);
      zs = slice_zeros(delta, omega, Slice::axis(omega, 0, base), target_err, start_grid);
    }
    for (const SlicedZero& z : zs)
      cloud.push_back(TracedPoint{j, z.local_coord, z.z, z.multiplicity});
  }
  return cloud;
}

PointClass classify_point(const Characteristic& delta, const PeriodMatrix& omega,
                          const CVector& z0, const ClassifyTols& tols) {
  ThetaJet jet = theta_jet(delta, omega, z0, 1e-12);
  const double scale = theta_scale(omega, z0);
  if (std::abs(jet.value) > tols.on_locus_tol * scale)
    throw Error("domain", "point is not on the zero locus");

  const int g = omega.genus();
  double full_sq = 0.0;
  for (int j = 0; j < g; ++j)
    for (int k = j; k < g; ++k) full_sq += std::norm(jet.omega_deriv(j, k));
  for (int j = 0; j < g; ++j) full_sq += std::norm(jet.grad_z[j]);
  const double full_grad = std::sqrt(full_sq) / scale;
  if (full_grad <= tols.full_grad_tol)
    throw Error("domain", "five-component gradient degenerates: vanishing order exceeds 2");

  const double grad = jet.grad_z.norm() / scale;
  const cdouble hdet = jet.hess_z.determinant() / (scale * scale);
  if (grad > tols.smooth_tol) return PointClass{PointKind::Smooth, grad, hdet, full_grad};
  if (grad <= tols.node_tol && std::abs(hdet) > tols.hess_tol)
    return PointClass{PointKind::Node, grad, hdet, full_grad};
  throw Error("unresolved-classification",
              "gradient norm falls in the tolerance gap; refine the point");
}

ReducibleReport verify_reducible_structure(const Characteristic& delta,
                                           const PeriodMatrix& omega1,
                                           const PeriodMatrix& omega2) {
  if (omega1.genus() != 1 || omega2.genus() != 1)
    throw Error("domain", "reducible verification expects two genus-1 factors");
  if (delta.genus() != 2) throw Error("domain", "characteristic must have genus 2");
  auto [d1, d2] = split(delta, 1);
  if (parity(d1) != Parity::Odd || parity(d2) != Parity::Odd)
    throw Error("domain", "both characteristic blocks must be odd");

  const double target = 1e-12;
  auto factor_zero = [&](const Characteristic& d, const PeriodMatrix& o) {
    auto zs = slice_zeros(d, o, Slice::axis(o, 0, CVector::Zero(1)), target);
    if (zs.size() != 1 || zs[0].multiplicity != 1)
      throw Error("table-mismatch", "elliptic factor does not have a unique simple zero");
    return zs[0].z[0];
  };
  const cdouble w1 = factor_zero(d1, omega1);
  const cdouble w2 = factor_zero(d2, omega2);

  PeriodMatrix omega = direct_sum_period(omega1, omega2);

  // Trace both branches: slices with z2 fixed catch {z1 = w1}, and vice versa.
  std::vector<CVector> points;
  const int n = 12;
  for (int axis = 0; axis < 2; ++axis) {
    for (int j = 0; j < n; ++j) {
      const cdouble c = cdouble(0.1234, 0.0567) + cdouble((j + 0.5) / n, 0.0);
      CVector base = CVector::Zero(2);
      base[1 - axis] = c;
      auto zs = slice_zeros(delta, omega, Slice::axis(omega, axis, base), target);
      for (const SlicedZero& z : zs) points.push_back(z.z);
    }
  }

  CVector w1v(1), w2v(1);
  w1v << w1;
  w2v << w2;
  double residual = 0.0;
  for (const CVector& p : points) {
    CVector p1(1), p2(1);
    p1 << p[0];
    p2 << p[1];
    const double d_branch1 = torus_distance(omega1, p1, w1v);
    const double d_branch2 = torus_distance(omega2, p2, w2v);
    residual = std::max(residual, std::min(d_branch1, d_branch2));
  }

  // The branches meet once per cell, at (w1, w2).
  CVector node(2);
  node << w1, w2;
  PointClass at_node = classify_point(delta, omega, node);
  const int node_count = at_node.kind == PointKind::Node ? 1 : 0;

  CVector dir(2);
  dir << cdouble(1.0, 0.0), cdouble(0.6, 0.22);
  const int node_order =
      multiplicity_at(delta, omega, Slice::through(omega, node, dir), cdouble(0.0, 0.0), target);

  return ReducibleReport{residual, node_count, node_order, node, w1v, w2v};
}

} // namespace theta2
