#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "theta2/characteristics.hpp"
#include "theta2/errors.hpp"
#include "theta2/rng.hpp"
#include "theta2/siegel.hpp"
#include "theta2/theta_eval.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace theta2;

namespace {

constexpr double kPi = std::numbers::pi;

Characteristic chr(std::vector<std::uint8_t> dp, std::vector<std::uint8_t> dpp) {
  return Characteristic(std::move(dp), std::move(dpp));
}

PeriodMatrix g1(cdouble tau) {
  CMatrix m(1, 1);
  m(0, 0) = tau;
  return PeriodMatrix(std::move(m));
}

PeriodMatrix g2(cdouble a, cdouble off, cdouble b) {
  CMatrix m(2, 2);
  m << a, off, off, b;
  return PeriodMatrix(std::move(m));
}

PeriodMatrix random_g2(Rng& rng) {
  RMatrix bm(2, 2);
  bm << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
      rng.uniform(-0.5, 0.5);
  RMatrix y = bm * bm.transpose();
  y(0, 0) += rng.uniform(0.7, 1.5);
  y(1, 1) += rng.uniform(0.7, 1.5);
  const double x01 = rng.uniform(-0.4, 0.4);
  return g2(cdouble(rng.uniform(-0.4, 0.4), y(0, 0)), cdouble(x01, y(0, 1)),
            cdouble(rng.uniform(-0.4, 0.4), y(1, 1)));
}

CVector random_cell(Rng& rng, const PeriodMatrix& omega, double extent = 1.0) {
  RVector alpha(omega.genus()), beta(omega.genus());
  for (int j = 0; j < omega.genus(); ++j) alpha[j] = extent * rng.uniform01();
  for (int j = 0; j < omega.genus(); ++j) beta[j] = extent * rng.uniform01();
  return from_torus_coords(omega, alpha, beta);
}

// Brute-force direct summation at radius 30 in extended precision, written
// against the series definition only; used to cross-check the frozen
// regression constants below.
long double brute_force_null_tau_i(int dp_bit, int dpp_bit) {
  const long double pi_l = 3.14159265358979323846264338327950288L;
  long double re = 0.0L;
  // at tau = i, z = 0: term = exp(-pi (m+e1)^2) * exp(2 pi i (m+e1) e2)
  for (int m = -30; m <= 30; ++m) {
    const long double v = m + 0.5L * dp_bit;
    const long double mag = std::exp(-pi_l * v * v);
    const long double phase = 2.0L * pi_l * v * (0.5L * dpp_bit);
    re += mag * std::cos(phase);
  }
  return re;
}

} // namespace

TEST_CASE("regression constants at tau = i") {
  // Reference values from a 50-digit direct summation of the series at
  // radius 30 (the even nulls at tau = i; the first equals pi^(1/4)/Gamma(3/4)).
  const double kNull00 = 1.0864348112133080145753161215102234570702;
  const double kNull10 = 0.9135791381561168214072425934012220897016;

  ThetaResult r00 = thetanull(chr({0}, {0}), g1(cdouble(0, 1)), 1e-14);
  CHECK(std::abs(r00.value - cdouble(kNull00, 0)) < 1e-14);
  CHECK(std::abs(r00.value.real() - double(brute_force_null_tau_i(0, 0))) < 1e-15);
  CHECK(std::abs(r00.value.imag()) < 1e-15);

  ThetaResult r10 = thetanull(chr({1}, {0}), g1(cdouble(0, 1)), 1e-14);
  ThetaResult r01 = thetanull(chr({0}, {1}), g1(cdouble(0, 1)), 1e-14);
  CHECK(std::abs(r10.value - cdouble(kNull10, 0)) < 1e-14);
  CHECK(std::abs(r01.value - cdouble(kNull10, 0)) < 1e-14);
  CHECK(std::abs(r10.value.real() - double(brute_force_null_tau_i(1, 0))) < 1e-15);
  CHECK(std::abs(r01.value.real() - double(brute_force_null_tau_i(0, 1))) < 1e-15);
}

TEST_CASE("regression values at a generic genus-2 point") {
  // Reference values from a 50-digit direct summation at radius 30.
  PeriodMatrix omega = g2(cdouble(0.1, 0.9), cdouble(0.15, 0.1), cdouble(-0.2, 1.3));
  CVector z(2);
  z << cdouble(0.23, 0.11), cdouble(-0.31, 0.07);
  ThetaResult r = theta(chr({1, 0}, {0, 1}), omega, z, 1e-14);
  CHECK(std::abs(r.value - cdouble(0.803614916744601100980690703945,
                                   -0.199834715378966718713646049412)) < 1e-13);
  ThetaResult null = thetanull(Characteristic::zero(2), omega, 1e-14);
  CHECK(std::abs(null.value - cdouble(1.14180520763249745838323670417,
                                      0.0138651482125529746075777568905)) < 1e-13);
}

TEST_CASE("odd thetanulls vanish") {
  ThetaResult odd1 = thetanull(chr({1}, {1}), g1(cdouble(0, 1)), 1e-12);
  CHECK(std::abs(odd1.value) <= odd1.truncation_bound + 1e-12);

  for (const PeriodMatrix& omega :
       {g2(cdouble(0, 1), 0.0, cdouble(0, 2)),
        g2(cdouble(0, 1), cdouble(0.1, 0.3), cdouble(0, 2))}) {
    for (const Characteristic& d : enumerate_characteristics(2)) {
      if (parity(d) != Parity::Odd) continue;
      ThetaResult r = thetanull(d, omega, 1e-12);
      CHECK(std::abs(r.value) <= r.truncation_bound + 1e-12);
    }
  }
}

TEST_CASE("product formula on block matrices") {
  PeriodMatrix o1 = g1(cdouble(0, 1)), o2 = g1(cdouble(0, 2));

  // thetanulls of even characteristics agree with the product of the factors
  for (const Characteristic& d : enumerate_characteristics(2)) {
    if (parity(d) != Parity::Even) continue;
    CHECK(check_product(d, o1, o2, CVector::Zero(2), 1e-12) <= 1e-10);
  }

  // generic z for the all-half characteristic
  CVector z(2);
  z << cdouble(0.21, 0.13), cdouble(-0.05, 0.34);
  CHECK(check_product(chr({1, 1}, {1, 1}), o1, o2, z, 1e-12) <= 1e-10);

  // one odd block makes both sides vanish at z = 0
  const Characteristic mixed = direct_sum(chr({1}, {1}), chr({0}, {0}));
  PeriodMatrix total = direct_sum_period(o1, o2);
  ThetaResult lhs = thetanull(mixed, total, 1e-12);
  CHECK(std::abs(lhs.value) <= lhs.truncation_bound + 1e-12);
  CHECK(check_product(mixed, o1, o2, CVector::Zero(2), 1e-12) <= 1e-10);

  // square identity at omega = diag(i, i)
  for (auto bits : {std::pair{0, 0}, std::pair{1, 0}}) {
    Characteristic block = chr({std::uint8_t(bits.first)}, {std::uint8_t(bits.second)});
    ThetaResult square =
        thetanull(direct_sum(block, block), g2(cdouble(0, 1), 0.0, cdouble(0, 1)), 1e-12);
    cdouble factor = thetanull(block, g1(cdouble(0, 1)), 1e-12).value;
    CHECK(std::abs(square.value - factor * factor) < 1e-11);
  }

  // random samples
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    PeriodMatrix a = g1(cdouble(rng.uniform(-0.4, 0.4), rng.uniform(0.6, 2.0)));
    PeriodMatrix b = g1(cdouble(rng.uniform(-0.4, 0.4), rng.uniform(0.6, 2.0)));
    const auto all = enumerate_characteristics(2);
    const Characteristic& d = all[rng.below(16)];
    CVector zr = random_cell(rng, direct_sum_period(a, b));
    CHECK(check_product(d, a, b, zr, 1e-12) <= 1e-10);
  }
}

TEST_CASE("jets: gradients and the heat relation") {
  PeriodMatrix omega = g2(cdouble(0.1, 0.9), cdouble(0.15, 0.1), cdouble(-0.2, 1.3));

  // even characteristics have vanishing gradient at z = 0
  for (const Characteristic& d : enumerate_characteristics(2)) {
    if (parity(d) != Parity::Even) continue;
    ThetaJet jet = theta_jet(d, omega, CVector::Zero(2), 1e-12);
    CHECK(jet.grad_z.norm() <= jet.truncation_bound + 1e-12);
  }

  const Characteristic d = chr({1, 0}, {0, 1});
  CVector z(2);
  z << cdouble(0.23, 0.11), cdouble(-0.31, 0.07);
  ThetaJet jet = theta_jet(d, omega, z, 1e-12);

  // Hessian is symmetric term by term
  CHECK(std::abs(jet.hess_z(0, 1) - jet.hess_z(1, 0)) < 1e-14);

  // finite difference in z_1
  const double h = 1e-5;
  CVector zp = z, zm = z;
  zp[0] += h;
  zm[0] -= h;
  cdouble fd_z = (theta(d, omega, zp, 1e-13).value - theta(d, omega, zm, 1e-13).value) / (2 * h);
  CHECK(std::abs(fd_z - jet.grad_z[0]) / std::abs(jet.grad_z[0]) < 1e-6);

  // finite difference in Omega_12 against hess/(2 pi i)
  const double ho = 1e-4;
  CMatrix plus = omega.mat(), minus = omega.mat();
  plus(0, 1) += ho;
  plus(1, 0) += ho;
  minus(0, 1) -= ho;
  minus(1, 0) -= ho;
  cdouble fd_o = (theta(d, PeriodMatrix(plus), z, 1e-13).value -
                  theta(d, PeriodMatrix(minus), z, 1e-13).value) /
                 (2 * ho);
  cdouble expected = jet.hess_z(0, 1) / cdouble(0, 2 * kPi);
  CHECK(std::abs(fd_o - expected) / std::abs(expected) < 1e-6);
  CHECK(std::abs(jet.omega_deriv(0, 1) - expected) < 1e-15);
}

TEST_CASE("value, gradient and jet evaluation paths agree") {
  PeriodMatrix omega = g2(cdouble(0.1, 0.9), cdouble(0.15, 0.1), cdouble(-0.2, 1.3));
  const Characteristic d = chr({0, 1}, {1, 1});
  CVector z(2);
  z << cdouble(0.12, 0.27), cdouble(-0.4, 0.09);
  ThetaResult value_only = theta(d, omega, z, 1e-13);
  auto [value, grad] = theta_value_grad(d, omega, z, 1e-13);
  ThetaJet jet = theta_jet(d, omega, z, 1e-13);
  CHECK(std::abs(value_only.value - value) < 1e-12);
  CHECK(std::abs(value_only.value - jet.value) < 1e-12);
  CHECK((grad - jet.grad_z).norm() < 1e-11);
}

TEST_CASE("certified truncation bounds hold under radius increase") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const bool genus2 = trial % 2 == 0;
    PeriodMatrix omega =
        genus2 ? random_g2(rng) : g1(cdouble(rng.uniform(-0.4, 0.4), rng.uniform(0.5, 2.0)));
    const auto all = enumerate_characteristics(omega.genus());
    const Characteristic& d = all[rng.below(static_cast<long long>(all.size()))];
    CVector z = random_cell(rng, omega, 1.4); // also outside the fundamental cell
    ThetaResult r = theta(d, omega, z, 1e-10);
    ThetaResult refined = theta_at_radius(d, omega, z, r.radius_used + 5);
    CHECK(std::abs(r.value - refined.value) <=
          r.truncation_bound + 1e-13 * theta_scale(omega, z));
  }
}

TEST_CASE("parity residuals") {
  Rng rng(29);
  PeriodMatrix omega = random_g2(rng);
  CVector z = random_cell(rng, omega);
  for (const Characteristic& d : enumerate_characteristics(2)) {
    ThetaResult r = theta(d, omega, z, 1e-12);
    CHECK(check_parity(d, omega, z, 1e-12) <= 2 * r.truncation_bound + 1e-10);
  }
  // odd characteristic at z = 0: parity forces the value itself to vanish
  ThetaResult odd0 = thetanull(chr({1, 0}, {1, 0}), omega, 1e-12);
  CHECK(std::abs(odd0.value) <= odd0.truncation_bound + 1e-12);
}

TEST_CASE("quasi-periodicity under lattice shifts") {
  Rng rng(31);
  PeriodMatrix omega = random_g2(rng);
  CVector z = random_cell(rng, omega, 0.8);
  const RMatrix& y_mat = omega.im();
  const RVector y = z.imag();

  for (const Characteristic& d :
       {chr({1, 0}, {0, 0}), chr({1, 1}, {0, 0}), chr({1, 1}, {1, 1}), chr({0, 1}, {1, 0})}) {
    const double base = std::abs(theta(d, omega, z, 1e-12).value);
    // integer shifts only: absolute value is preserved
    if (d.delta_dprime() == std::vector<std::uint8_t>{0, 0}) {
      CVector shifted = z;
      shifted[0] += 1.0;
      shifted[1] += 2.0;
      CHECK(std::abs(std::abs(theta(d, omega, shifted, 1e-12).value) - base) <= 1e-9 * base);
    }
    // full lattice shifts scale by exp(pi (m2 Y m2^T + 2 m2 y^T))
    for (auto [m1a, m1b, m2a, m2b] :
         {std::array{1, 0, 1, 0}, std::array{0, 1, 0, -1}, std::array{1, -1, 1, 1}}) {
      RVector m2(2);
      m2 << m2a, m2b;
      CVector shifted = z;
      shifted[0] += m1a;
      shifted[1] += m1b;
      shifted += row_times(m2.cast<cdouble>(), omega.mat());
      const double factor = std::exp(kPi * (m2.dot(y_mat * m2) + 2.0 * m2.dot(y)));
      const double lhs = std::abs(theta(d, omega, shifted, 1e-12).value);
      CHECK(std::abs(lhs - base * factor) <= 1e-8 * base * factor);
    }
  }
}

TEST_CASE("reduction to the zero characteristic") {
  // delta = 0 gives ratio 1 everywhere
  PeriodMatrix omega0 = g2(cdouble(0, 1.1), cdouble(0.1, 0.2), cdouble(0, 0.9));
  CVector z0(2);
  z0 << cdouble(0.17, 0.21), cdouble(0.42, -0.08);
  ShiftReferenceSample trivial =
      check_shift_reference(Characteristic::zero(2), omega0, z0, 1e-12);
  CHECK(std::abs(trivial.ratio - 1.0) < 1e-12);
  CHECK(std::abs(trivial.expected_factor - 1.0) < 1e-15);

  // genus 1, all-half characteristic, grid of 25 sample points
  PeriodMatrix tau = g1(cdouble(0, 1));
  const Characteristic half = chr({1}, {1});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CVector z(1);
      z << cdouble(0.07 + 0.2 * i, -0.35 + 0.19 * j);
      ShiftReferenceSample s = check_shift_reference(half, tau, z, 1e-12);
      CHECK(std::abs(s.ratio) > 1e-6);
      CHECK(std::abs(s.ratio) < 1e6);
      CHECK(std::abs(s.ratio - s.expected_factor) <= 1e-8 * std::abs(s.expected_factor));
    }

  // all 16 genus-2 characteristics at scattered samples
  Rng rng(37);
  PeriodMatrix omega = random_g2(rng);
  for (const Characteristic& d : enumerate_characteristics(2)) {
    for (int k = 0; k < 5; ++k) {
      CVector z = random_cell(rng, omega, 0.9);
      ShiftReferenceSample s = [&] {
        while (true) {
          try {
            return check_shift_reference(d, omega, z, 1e-12);
          } catch (const Error& e) {
            if (e.code() != "resample") throw;
            z = random_cell(rng, omega, 0.9);
          }
        }
      }();
      CHECK(std::abs(s.ratio - s.expected_factor) <= 1e-8 * std::abs(s.expected_factor));
    }
  }

  // hitting a zero of the reference theta signals a resample
  CVector bad(1);
  bad << cdouble(0.5, 0.5); // the zero of theta_0 on the square torus
  CHECK_THROWS_WITH_AS(
      (void)check_shift_reference(Characteristic::zero(1), g1(cdouble(0, 1)), bad, 1e-12),
      "reference theta vanishes near the sample point", Error);
}

TEST_CASE("transformed characteristic") {
  PeriodMatrix omega = g2(cdouble(0.12, 0.9), cdouble(0.1, 0.05), cdouble(-0.07, 1.2));
  TransformContext context(omega);

  // identity fixes every characteristic
  const SymplecticIntMatrix id = SymplecticIntMatrix::identity(2);
  for (const Characteristic& d : enumerate_characteristics(2))
    CHECK(transformed_characteristic(id, d, context) == d);

  // a translation shifts the zero characteristic by a half diagonal
  const auto gens = sp4_generators();
  const SymplecticIntMatrix& t11 = gens[1].second;
  CHECK(transformed_characteristic(t11, Characteristic::zero(2), context) ==
        chr({0, 0}, {1, 0}));

  // two sample generators act as parity-preserving permutations
  for (std::size_t gi : {0u, 4u}) { // J and the GL shear
    std::set<std::string> images;
    for (const Characteristic& d : enumerate_characteristics(2)) {
      Characteristic image = transformed_characteristic(gens[gi].second, d, context);
      CHECK(parity(image) == parity(d));
      images.insert(image.str());
    }
    CHECK(images.size() == 16);
  }
}

TEST_CASE("radius cap reports unattainable accuracy") {
  CHECK_THROWS_AS((void)theta(chr({0}, {0}), g1(cdouble(0, 1e-4)), CVector::Zero(1), 1e-12),
                  Error);
  try {
    (void)theta(chr({0}, {0}), g1(cdouble(0, 1e-4)), CVector::Zero(1), 1e-12);
  } catch (const Error& e) {
    CHECK(e.code() == "unattainable-accuracy");
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS((void)theta(chr({0}, {0}), g2(cdouble(0, 1), 0.0, cdouble(0, 1)),
                              CVector::Zero(2), 1e-12),
                  Error);
  CHECK_THROWS_AS((void)theta(chr({0, 0}, {0, 0}), g2(cdouble(0, 1), 0.0, cdouble(0, 1)),
                              CVector::Zero(2), 0.0),
                  Error);
  CHECK_THROWS_AS((void)theta(chr({0, 0}, {0, 0}), g2(cdouble(0, 1), 0.0, cdouble(0, 1)),
                              CVector::Zero(1), 1e-12),
                  Error);
}
