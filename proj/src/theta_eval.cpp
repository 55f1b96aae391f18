#include "theta2/theta_eval.hpp"

#include "theta2/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace theta2 {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier compensated accumulator; the summation order is fixed by the shell
// loop, so results are reproducible bit for bit.
struct Accum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double get() const { return sum + comp; }
};

// Gaussian tail data for the series of characteristic delta at (Omega, z).
// With v = m + eps', y = Im z, Y = Im Omega the term modulus is
//   exp(-pi (v Y v^T + 2 v y^T)) = exp(pi y Y^{-1} y^T) exp(-pi |v + y Y^{-1}|_Y^2)
// by completing the square, so shells with max-norm k contribute at most
//   count(k) * prefactor * exp(-pi lambda (k - s)^2),  s = |eps'| + |Y^{-1}y|,
// where lambda is the least eigenvalue of Y and count(k) <= 2g 3^{g-1} k^{g-1}.
struct TailModel {
  int g;
  double lambda;
  double shell_const; // 2g 3^{g-1}
  double center;      // s above
  double prefactor;   // exp(pi y Y^{-1} y^T)
};

TailModel tail_model(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z) {
  TailModel m;
  m.g = omega.genus();
  m.lambda = omega.min_im_eigenvalue();
  m.shell_const = 2.0 * m.g * std::pow(3.0, m.g - 1);
  RVector y = z.imag();
  RVector y_pulled = omega.im_inverse() * y;
  m.center = delta.eps_prime().norm() + y_pulled.norm();
  m.prefactor = std::exp(kPi * y.dot(y_pulled));
  return m;
}

// Upper bound for one shell; deriv_order 2 covers value, gradient and Hessian
// entries simultaneously since |2 pi v_j| <= 2 pi (k + 1/2) per derivative.
double shell_term(const TailModel& m, int k, int deriv_order) {
  double x = std::max(0.0, k - m.center);
  double t = m.shell_const * std::pow(double(k), m.g - 1) * std::exp(-kPi * m.lambda * x * x);
  for (int d = 0; d < deriv_order; ++d) t *= 2.0 * kPi * (k + 0.5);
  return t;
}

// Certified bound on the total contribution of shells beyond R.  Shell terms
// and their ratios are eventually decreasing, so once the ratio drops below
// 1/2 the remainder is dominated by a geometric series.
double tail_bound(const TailModel& m, int radius, int deriv_order) {
  double sum = 0.0;
  for (int k = radius + 1;; ++k) {
    double t = shell_term(m, k, deriv_order);
    if (t == 0.0) {
      sum += 1e-300; // underflowed terms; true remainder is far below this
      break;
    }
    if (k > m.center + 1.0) {
      double r = shell_term(m, k + 1, deriv_order) / t;
      if (r < 0.5) {
        sum += t / (1.0 - r);
        break;
      }
    }
    sum += t;
    // A nearly flat tail (tiny lambda) cannot be summed at desk scale; an
    // infinite bound is still a valid bound and callers report it as such.
    if (k > radius + 2'000'000) return std::numeric_limits<double>::infinity();
  }
  return m.prefactor * sum;
}

int choose_radius(const TailModel& m, double target, int deriv_order) {
  for (int radius = 1; radius <= kThetaRadiusCap; ++radius) {
    // The first discarded shell already exceeds the target: skip the full sum.
    if (m.prefactor * shell_term(m, radius + 1, deriv_order) > target) continue;
    if (tail_bound(m, radius, deriv_order) <= target) return radius;
  }
  std::ostringstream os;
  os << "truncation radius cap " << kThetaRadiusCap << " reached; achievable bound "
     << tail_bound(m, kThetaRadiusCap, deriv_order);
  throw Error("unattainable-accuracy", os.str());
}

struct SeriesSums {
  cdouble value;
  CVector grad;
  CMatrix hess;
};

SeriesSums sum_series(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                      int radius, int jet_order) {
  const int g = omega.genus();
  const RVector ep = delta.eps_prime();
  CVector w = z + delta.eps_dprime().cast<cdouble>();
  const CMatrix& om = omega.mat();

  Accum val_re, val_im;
  std::vector<Accum> grad_acc(jet_order >= 1 ? 2 * g : 0);
  std::vector<Accum> hess_acc(jet_order >= 2 ? 2 * g * g : 0);
  std::vector<double> v(g);
  std::vector<int> digit(g);

  for (int shell = 0; shell <= radius; ++shell) {
    for (int j = 0; j < g; ++j) digit[j] = -shell;
    while (true) {
      int maxabs = 0;
      for (int j = 0; j < g; ++j) maxabs = std::max(maxabs, std::abs(digit[j]));
      if (maxabs == shell) {
        for (int j = 0; j < g; ++j) v[j] = digit[j] + ep[j];
        cdouble q(0.0, 0.0);
        for (int j = 0; j < g; ++j) {
          cdouble row(0.0, 0.0);
          for (int l = 0; l < g; ++l) row += om(j, l) * v[l];
          q += v[j] * (row + 2.0 * w[j]);
        }
        const double mag = std::exp(-kPi * q.imag());
        const double phase = kPi * q.real();
        const cdouble term(mag * std::cos(phase), mag * std::sin(phase));
        val_re.add(term.real());
        val_im.add(term.imag());
        if (jet_order >= 1) {
          for (int j = 0; j < g; ++j) {
            // d/dz_j term = 2 pi i v_j term
            const cdouble gj = cdouble(0.0, 2.0 * kPi * v[j]) * term;
            grad_acc[2 * j].add(gj.real());
            grad_acc[2 * j + 1].add(gj.imag());
            if (jet_order >= 2)
              for (int l = 0; l < g; ++l) {
                const cdouble hjl = -4.0 * kPi * kPi * v[j] * v[l] * term;
                hess_acc[2 * (j * g + l)].add(hjl.real());
                hess_acc[2 * (j * g + l) + 1].add(hjl.imag());
              }
          }
        }
      }
      // lexicographic odometer over the box [-shell, shell]^g
      int j = g - 1;
      while (j >= 0 && digit[j] == shell) digit[j--] = -shell;
      if (j < 0) break;
      ++digit[j];
    }
  }

  SeriesSums out;
  out.value = cdouble(val_re.get(), val_im.get());
  if (jet_order >= 1) {
    out.grad = CVector(g);
    for (int j = 0; j < g; ++j)
      out.grad[j] = cdouble(grad_acc[2 * j].get(), grad_acc[2 * j + 1].get());
  }
  if (jet_order >= 2) {
    out.hess = CMatrix(g, g);
    for (int j = 0; j < g; ++j)
      for (int l = 0; l < g; ++l)
        out.hess(j, l) = cdouble(hess_acc[2 * (j * g + l)].get(), hess_acc[2 * (j * g + l) + 1].get());
  }
  return out;
}

void check_args(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                double target_err) {
  if (delta.genus() != omega.genus()) throw Error("domain", "characteristic genus mismatch");
  if (z.size() != omega.genus()) throw Error("domain", "z has wrong length");
  if (!(target_err > 0.0)) throw Error("domain", "target_err must be positive");
}

} // namespace

cdouble ThetaJet::omega_deriv(int j, int k) const {
  const double diag = (j == k) ? 2.0 : 1.0;
  return hess_z(j, k) / (cdouble(0.0, 2.0 * kPi) * diag);
}

double theta_scale(const PeriodMatrix& omega, const CVector& z) {
  RVector y = z.imag();
  return std::exp(kPi * y.dot(omega.im_inverse() * y));
}

ThetaResult theta(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                  double target_err) {
  check_args(delta, omega, z, target_err);
  TailModel model = tail_model(delta, omega, z);
  int radius = choose_radius(model, target_err, 0);
  return {sum_series(delta, omega, z, radius, 0).value, tail_bound(model, radius, 0), radius};
}

ThetaResult theta_at_radius(const Characteristic& delta, const PeriodMatrix& omega,
                            const CVector& z, int radius) {
  check_args(delta, omega, z, 1.0);
  if (radius < 0 || radius > kThetaRadiusCap)
    throw Error("domain", "radius out of range");
  TailModel model = tail_model(delta, omega, z);
  return {sum_series(delta, omega, z, radius, 0).value, tail_bound(model, radius, 0), radius};
}

ThetaJet theta_jet(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                   double target_err) {
  check_args(delta, omega, z, target_err);
  TailModel model = tail_model(delta, omega, z);
  int radius = choose_radius(model, target_err, 2);
  SeriesSums sums = sum_series(delta, omega, z, radius, 2);
  return {sums.value, std::move(sums.grad), std::move(sums.hess), tail_bound(model, radius, 2),
          radius};
}

std::pair<cdouble, CVector> theta_value_grad(const Characteristic& delta,
                                             const PeriodMatrix& omega, const CVector& z,
                                             double target_err) {
  check_args(delta, omega, z, target_err);
  TailModel model = tail_model(delta, omega, z);
  int radius = choose_radius(model, target_err, 1);
  SeriesSums sums = sum_series(delta, omega, z, radius, 1);
  return {sums.value, std::move(sums.grad)};
}

ThetaResult thetanull(const Characteristic& delta, const PeriodMatrix& omega, double target_err) {
  return theta(delta, omega, CVector::Zero(omega.genus()), target_err);
}

double check_parity(const Characteristic& delta, const PeriodMatrix& omega, const CVector& z,
                    double target_err) {
  const double sigma = parity(delta) == Parity::Even ? 1.0 : -1.0;
  cdouble plus = theta(delta, omega, z, target_err).value;
  cdouble minus = theta(delta, omega, -z, target_err).value;
  return std::abs(minus - sigma * plus);
}

double check_product(const Characteristic& delta, const PeriodMatrix& omega1,
                     const PeriodMatrix& omega2, const CVector& z, double target_err) {
  const int g1 = omega1.genus();
  auto [d1, d2] = split(delta, g1);
  PeriodMatrix total = direct_sum_period(omega1, omega2);
  cdouble lhs = theta(delta, total, z, target_err).value;
  cdouble rhs = theta(d1, omega1, z.head(g1), target_err).value *
                theta(d2, omega2, z.tail(z.size() - g1), target_err).value;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

CVector reference_shift(const Characteristic& delta, const PeriodMatrix& omega) {
  CVector edp = delta.eps_dprime().cast<cdouble>();
  return edp + row_times(delta.eps_prime().cast<cdouble>(), omega.mat());
}

ShiftReferenceSample check_shift_reference(const Characteristic& delta, const PeriodMatrix& omega,
                                           const CVector& z, double target_err) {
  check_args(delta, omega, z, target_err);
  const CVector shifted = z + reference_shift(delta, omega);
  cdouble denom = theta(Characteristic::zero(omega.genus()), omega, shifted, target_err).value;
  if (std::abs(denom) <= 1e-8 * theta_scale(omega, shifted))
    throw Error("resample", "reference theta vanishes near the sample point");
  cdouble numer = theta(delta, omega, z, target_err).value;

  RVector ep = delta.eps_prime();
  cdouble quad = (ep.cast<cdouble>().transpose() * omega.mat() * ep.cast<cdouble>())(0, 0);
  cdouble lin(0.0, 0.0);
  for (int j = 0; j < omega.genus(); ++j)
    lin += ep[j] * (z[j] + cdouble(0.5 * delta.delta_dprime()[j], 0.0));
  cdouble exponent = cdouble(0.0, kPi) * (quad + 2.0 * lin);
  return {numer / denom, std::exp(exponent), std::abs(denom)};
}

TransformContext::TransformContext(const PeriodMatrix& omega, int grid_n, double tick_offset)
    : omega_(omega), skip_rel_(grid_n > 5 ? 1e-5 : 1e-4) {
  if (omega.genus() != 2) throw Error("domain", "transformation-law matching is genus-2 only");
  candidates_ = enumerate_characteristics(2);

  std::vector<double> ticks(grid_n);
  for (int i = 0; i < grid_n; ++i) ticks[i] = (i + tick_offset) / grid_n;

  const int npts = grid_n * grid_n * grid_n * grid_n;
  grid_.reserve(npts);
  design_.resize(npts, 15);
  int p = 0;
  for (double a1 : ticks)
    for (double a2 : ticks)
      for (double b1 : ticks)
        for (double b2 : ticks) {
          RVector alpha(2), beta(2);
          alpha << a1, a2;
          beta << b1, b2;
          grid_.push_back(from_torus_coords(omega, alpha, beta));
          const double u[4] = {a1, a2, b1, b2};
          int col = 0;
          design_(p, col++) = 1.0;
          for (int i = 0; i < 4; ++i) design_(p, col++) = u[i];
          for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) design_(p, col++) = u[i] * u[j];
          ++p;
        }

  cand_values_.resize(candidates_.size());
  cand_scale_.resize(candidates_.size());
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    cand_values_[c].reserve(grid_.size());
    for (const CVector& zp : grid_)
      cand_values_[c].push_back(theta(candidates_[c], omega, zp, 1e-9).value);
    std::vector<double> mags;
    mags.reserve(grid_.size());
    for (cdouble v : cand_values_[c]) mags.push_back(std::abs(v));
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    cand_scale_[c] = mags[mags.size() / 2];
  }
}

namespace {

// Largest deviation of log|f/g| from its best quadratic fit over the kept
// grid points.  A matching candidate differs from f by a non-vanishing factor
// exp(quadratic), so its deviation is at numerical noise level; a mismatched
// candidate has zeros in the wrong place and deviates by whole log units.
double profile_residual(const Eigen::MatrixXd& design, const std::vector<double>& logratio,
                        const std::vector<int>& kept) {
  Eigen::MatrixXd x(kept.size(), design.cols());
  Eigen::VectorXd y(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    x.row(i) = design.row(kept[i]);
    y[i] = logratio[i];
  }
  Eigen::VectorXd coef = x.colPivHouseholderQr().solve(y);
  return (y - x * coef).cwiseAbs().maxCoeff();
}

} // namespace

Characteristic transformed_characteristic(const SymplecticIntMatrix& m,
                                          const Characteristic& delta,
                                          const TransformContext& context) {
  if (m.genus() != 2 || delta.genus() != 2)
    throw Error("domain", "transformation-law matching is genus-2 only");
  const PeriodMatrix& omega = context.omega_;
  CMatrix cd_inv = (m.block_c() * omega.mat() + m.block_d()).inverse();
  PeriodMatrix moved = act_on_siegel(m, omega);

  std::vector<cdouble> f;
  f.reserve(context.grid_.size());
  for (const CVector& zp : context.grid_)
    f.push_back(theta(delta, moved, row_times(zp, cd_inv), 1e-9).value);
  std::vector<double> fmags;
  fmags.reserve(f.size());
  for (cdouble v : f) fmags.push_back(std::abs(v));
  std::nth_element(fmags.begin(), fmags.begin() + fmags.size() / 2, fmags.end());
  const double fscale = fmags[fmags.size() / 2];

  int match = -1;
  for (std::size_t c = 0; c < context.candidates_.size(); ++c) {
    std::vector<int> kept;
    std::vector<double> logratio;
    for (std::size_t p = 0; p < context.grid_.size(); ++p) {
      const double fa = std::abs(f[p]);
      const double ga = std::abs(context.cand_values_[c][p]);
      if (fa <= context.skip_rel_ * fscale || ga <= context.skip_rel_ * context.cand_scale_[c])
        continue;
      kept.push_back(static_cast<int>(p));
      logratio.push_back(std::log(fa / ga));
    }
    if (kept.size() < std::size_t(4 * context.design_.cols())) continue;
    if (profile_residual(context.design_, logratio, kept) > 0.5) continue;
    if (match >= 0)
      throw Error("ambiguous-characteristic",
                  "multiple candidate characteristics match; refine the sample grid");
    match = static_cast<int>(c);
  }
  if (match < 0)
    throw Error("ambiguous-characteristic",
                "no candidate characteristic matches; refine the sample grid");
  return context.candidates_[match];
}

Characteristic transformed_characteristic(const SymplecticIntMatrix& m,
                                          const Characteristic& delta,
                                          const PeriodMatrix& omega) {
  TransformContext context(omega);
  try {
    return transformed_characteristic(m, delta, context);
  } catch (const Error& e) {
    if (e.code() != "ambiguous-characteristic") throw;
    TransformContext finer(omega, 7, 0.29);
    return transformed_characteristic(m, delta, finer);
  }
}

} // namespace theta2
