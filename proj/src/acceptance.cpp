#include "theta2/acceptance.hpp"

#include "theta2/characteristics.hpp"
#include "theta2/errors.hpp"
#include "theta2/json_io.hpp"
#include "theta2/rng.hpp"
#include "theta2/siegel.hpp"
#include "theta2/strata_nerve.hpp"
#include "theta2/surface_group.hpp"
#include "theta2/theta_eval.hpp"
#include "theta2/theta_locus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

namespace theta2 {

namespace {

constexpr double kPi = std::numbers::pi;

PeriodMatrix random_period_g1(Rng& rng) {
  CMatrix m(1, 1);
  m(0, 0) = cdouble(rng.uniform(-0.4, 0.4), rng.uniform(0.6, 2.2));
  return PeriodMatrix(std::move(m));
}

PeriodMatrix random_period_g2(Rng& rng, bool diagonal) {
  CMatrix m = CMatrix::Zero(2, 2);
  if (diagonal) {
    m(0, 0) = cdouble(0.0, rng.uniform(0.6, 2.2));
    m(1, 1) = cdouble(0.0, rng.uniform(0.6, 2.2));
    return PeriodMatrix(std::move(m));
  }
  RMatrix x(2, 2), b(2, 2);
  const double x01 = rng.uniform(-0.4, 0.4);
  x << rng.uniform(-0.4, 0.4), x01, x01, rng.uniform(-0.4, 0.4);
  b << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
      rng.uniform(-0.5, 0.5);
  RMatrix y = b * b.transpose();
  y(0, 0) += rng.uniform(0.7, 1.5);
  y(1, 1) += rng.uniform(0.7, 1.5);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = cdouble(x(i, j), y(i, j));
  return PeriodMatrix(std::move(m));
}

CVector random_cell_point(Rng& rng, const PeriodMatrix& omega, double extent = 1.0) {
  const int g = omega.genus();
  RVector alpha(g), beta(g);
  for (int j = 0; j < g; ++j) alpha[j] = extent * rng.uniform01();
  for (int j = 0; j < g; ++j) beta[j] = extent * rng.uniform01();
  return from_torus_coords(omega, alpha, beta);
}

SurfaceWord random_word(Rng& rng, int max_len) {
  const int len = 1 + static_cast<int>(rng.below(max_len));
  std::vector<std::int8_t> letters;
  letters.reserve(len);
  for (int i = 0; i < len; ++i) {
    const int idx = 1 + static_cast<int>(rng.below(4));
    letters.push_back(static_cast<std::int8_t>(rng.below(2) ? idx : -idx));
  }
  return SurfaceWord(std::move(letters));
}

CriterionResult guard(int id, const std::string& name,
                      const std::function<std::pair<bool, nlohmann::json>()>& body) {
  CriterionResult r{id, name, false, nlohmann::json::object()};
  try {
    auto [pass, details] = body();
    r.pass = pass;
    r.details = std::move(details);
  } catch (const Error& e) {
    r.details = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    r.details = {{"error", {{"code", "internal"}, {"message", e.what()}}}};
  }
  return r;
}

CriterionResult criterion_parity_census(std::uint64_t) {
  return guard(1, "parity census", []() -> std::pair<bool, nlohmann::json> {
    int even = 0, odd = 0;
    for (const Characteristic& d : enumerate_characteristics(2))
      (parity(d) == Parity::Even ? even : odd)++;
    // independent oracle: raw F_2 dot products over all 16 bit patterns
    int oracle_even = 0;
    for (int bits = 0; bits < 16; ++bits) {
      const int dot = ((bits >> 3) & (bits >> 1) & 1) ^ ((bits >> 2) & bits & 1);
      if (dot == 0) ++oracle_even;
    }
    const bool pass = even == 10 && odd == 6 && oracle_even == 10;
    return {pass, {{"even", even}, {"odd", odd}, {"oracle_even", oracle_even}}};
  });
}

CriterionResult criterion_odd_thetanulls(std::uint64_t seed) {
  return guard(2, "odd thetanulls vanish", [seed]() -> std::pair<bool, nlohmann::json> {
    Rng rng(seed, 2);
    std::vector<Characteristic> odd;
    for (const Characteristic& d : enumerate_characteristics(2))
      if (parity(d) == Parity::Odd) odd.push_back(d);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      PeriodMatrix omega = random_period_g2(rng, i < 5);
      for (const Characteristic& d : odd) {
        ThetaResult r = thetanull(d, omega, 1e-12);
        worst = std::max(worst, std::abs(r.value) - r.truncation_bound);
      }
    }
    return {worst <= 1e-12, {{"max_abs_minus_bound", worst}, {"odd_count", odd.size()}}};
  });
}

CriterionResult criterion_heat_equation(std::uint64_t seed) {
  return guard(3, "heat equation", [seed]() -> std::pair<bool, nlohmann::json> {
    Rng rng(seed, 3);
    const auto all = enumerate_characteristics(2);
    const double h = 1e-4;
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      const Characteristic& delta = all[rng.below(16)];
      PeriodMatrix omega = random_period_g2(rng, false);
      CVector z = random_cell_point(rng, omega, 0.8);
      ThetaJet jet = theta_jet(delta, omega, z, 1e-12);
      for (int j = 0; j < 2; ++j)
        for (int k = j; k < 2; ++k) {
          CMatrix plus = omega.mat(), minus = omega.mat();
          plus(j, k) += h;
          minus(j, k) -= h;
          if (j != k) {
            plus(k, j) += h;
            minus(k, j) -= h;
          }
          const cdouble fd = (theta(delta, PeriodMatrix(plus), z, 1e-13).value -
                              theta(delta, PeriodMatrix(minus), z, 1e-13).value) /
                             (2.0 * h);
          const double diag = (j == k) ? 2.0 : 1.0;
          const cdouble lhs = cdouble(0.0, 2.0 * kPi) * diag * fd;
          const cdouble rhs = jet.hess_z(j, k);
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    return {worst <= 1e-6, {{"max_rel_residual", worst}}};
  });
}

CriterionResult criterion_product_formula(std::uint64_t seed) {
  return guard(4, "product formula", [seed]() -> std::pair<bool, nlohmann::json> {
    Rng rng(seed, 4);
    const auto all = enumerate_characteristics(2);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Characteristic& delta = all[rng.below(16)];
      PeriodMatrix o1 = random_period_g1(rng);
      PeriodMatrix o2 = random_period_g1(rng);
      CVector z = random_cell_point(rng, direct_sum_period(o1, o2));
      worst = std::max(worst, check_product(delta, o1, o2, z, 1e-12));
    }
    return {worst <= 1e-10, {{"max_rel_residual", worst}}};
  });
}

CriterionResult criterion_transformation_law(std::uint64_t) {
  return guard(5, "transformation law", []() -> std::pair<bool, nlohmann::json> {
    CMatrix m(2, 2);
    m << cdouble(0.12, 0.9), cdouble(0.1, 0.05), cdouble(0.1, 0.05), cdouble(-0.07, 1.2);
    TransformContext context{PeriodMatrix(m)};
    const auto all = enumerate_characteristics(2);
    bool pass = true;
    nlohmann::json per_generator = nlohmann::json::object();
    for (const auto& [name, gen] : sp4_generators()) {
      std::set<std::string> images;
      bool parity_ok = true;
      for (const Characteristic& delta : all) {
        Characteristic image = transformed_characteristic(gen, delta, context);
        images.insert(image.str());
        parity_ok = parity_ok && parity(image) == parity(delta);
      }
      const bool bijection = images.size() == all.size();
      per_generator[name] = {{"bijection", bijection}, {"parity_preserved", parity_ok}};
      pass = pass && bijection && parity_ok;
    }
    return {pass, per_generator};
  });
}

CriterionResult criterion_reducible_structure(std::uint64_t) {
  return guard(6, "reducible zero locus", []() -> std::pair<bool, nlohmann::json> {
    CMatrix o1(1, 1), o2(1, 1);
    o1(0, 0) = cdouble(0.0, 1.0);
    o2(0, 0) = cdouble(0.0, 2.0);
    const Characteristic delta({1, 1}, {1, 1});
    ReducibleReport rep =
        verify_reducible_structure(delta, PeriodMatrix(o1), PeriodMatrix(o2));
    const bool pass =
        rep.branch_residual <= 1e-6 && rep.node_count == 1 && rep.node_order == 2;
    return {pass, to_json(rep)};
  });
}

CriterionResult criterion_generic_smooth(std::uint64_t) {
  return guard(7, "generic simple vanishing", []() -> std::pair<bool, nlohmann::json> {
    CMatrix m(2, 2);
    m << cdouble(0.0, 1.0), cdouble(0.1, 0.2), cdouble(0.1, 0.2), cdouble(0.0, 2.0);
    PeriodMatrix omega(std::move(m));
    const Characteristic delta({1, 1}, {1, 1});
    auto cloud = trace_zero_curve(delta, omega, 200, 1e-12);
    int smooth = 0;
    double min_full_grad = std::numeric_limits<double>::infinity();
    for (const TracedPoint& p : cloud) {
      PointClass c = classify_point(delta, omega, p.z);
      if (c.kind == PointKind::Smooth) ++smooth;
      min_full_grad = std::min(min_full_grad, c.full_grad_norm);
    }
    const bool pass = cloud.size() >= 200 && smooth == static_cast<int>(cloud.size()) &&
                      min_full_grad > 1e-8;
    return {pass,
            {{"points", cloud.size()}, {"smooth", smooth}, {"min_full_grad", min_full_grad}}};
  });
}

CriterionResult criterion_hall_witt(std::uint64_t seed) {
  return guard(8, "hall-witt identities", [seed]() -> std::pair<bool, nlohmann::json> {
    Rng rng(seed, 8);
    int ok = 0;
    for (int i = 0; i < 100; ++i)
      if (hall_witt_check(random_word(rng, 8), random_word(rng, 8), random_word(rng, 8))) ++ok;
    const bool relation = scc_relation_identity();
    return {ok == 100 && relation, {{"triples_ok", ok}, {"scc_relation", relation}}};
  });
}

CriterionResult criterion_figure2(std::uint64_t) {
  return guard(9, "figure-2 splittings", []() -> std::pair<bool, nlohmann::json> {
    Figure2Report rep = figure2_verify();
    nlohmann::json rows = nlohmann::json::array();
    for (const Figure2Row& row : rep.rows)
      rows.push_back({{"scc", row.scc},
                      {"matches_table", row.matches_table},
                      {"null_homologous", row.null_homologous},
                      {"splitting", to_json(row.computed)}});
    return {rep.ok(),
            {{"rows", rows},
             {"pairwise_distinct", rep.pairwise_distinct},
             {"relation_holds", rep.relation_holds}}};
  });
}

CriterionResult criterion_word_problem(std::uint64_t seed) {
  return guard(10, "dehn word problem", [seed]() -> std::pair<bool, nlohmann::json> {
    Rng rng(seed, 10);
    const SurfaceWord relator =
        concat(commutator(SurfaceWord::generator(1), SurfaceWord::generator(2)),
               commutator(SurfaceWord::generator(3), SurfaceWord::generator(4)));
    bool pass = dehn_is_trivial(relator);
    for (int i = 0; i < 20 && pass; ++i)
      pass = dehn_is_trivial(conjugate(relator, random_word(rng, 8)));
    pass = pass && !dehn_is_trivial(SurfaceWord::generator(1));
    int nontrivial_checked = 0;
    while (nontrivial_checked < 20 && pass) {
      SurfaceWord w = random_word(rng, 10);
      if (abelianize(w).is_zero()) continue;
      pass = !dehn_is_trivial(w);
      ++nontrivial_checked;
    }
    return {pass, {{"nontrivial_checked", nontrivial_checked}}};
  });
}

CriterionResult criterion_nerve_cohomology(std::uint64_t) {
  return guard(11, "nerve cohomology", []() -> std::pair<bool, nlohmann::json> {
    bool pass = true;
    for (int n_beta = 0; n_beta <= 10 && pass; ++n_beta)
      for (int radius = 0; radius <= 4 && pass; ++radius) {
        Nerve nerve = build_nerve(n_beta, radius);
        const long long side = 2LL * radius + 1;
        const long long comps = n_beta * 2 * side * side;
        const long long pairs = n_beta * side * side * side * side;
        pass = static_cast<long long>(nerve.components.size()) == comps &&
               static_cast<long long>(nerve.pairs.size()) == pairs;
        GradedRanks expected;
        if (comps) expected[6] = comps;
        if (pairs) expected[5] = pairs;
        pass = pass && compute_hc(nerve) == expected;
        for (const auto& [i, j] : nerve.pairs) {
          const ComponentId& ci = nerve.components[i];
          const ComponentId& cj = nerve.components[j];
          if (ci.beta != cj.beta || ci.kind == cj.kind) {
            pass = false;
            break;
          }
        }
      }
    return {pass, nlohmann::json::object()};
  });
}

CriterionResult criterion_gysin(std::uint64_t) {
  return guard(12, "gysin vanishing", []() -> std::pair<bool, nlohmann::json> {
    const std::vector<int> expected{4, 5, 6, 7, 8};
    bool pass = true;
    for (GradedRanks hc :
         {GradedRanks{{5, 1}, {6, 2}}, GradedRanks{{5, 1875}, {6, 150}},
          GradedRanks{{5, 7}, {6, 3}}})
      pass = pass && gysin_vanishing(hc, 3, 8) == expected;
    return {pass, nlohmann::json::object()};
  });
}

CriterionResult criterion_kernel_rank(std::uint64_t) {
  return guard(13, "kernel rank growth", []() -> std::pair<bool, nlohmann::json> {
    bool pass = true;
    for (int n = 0; n <= 20; ++n) pass = pass && kernel_rank(n) == n;
    return {pass, nlohmann::json::object()};
  });
}

nlohmann::json criteria_to_json(const std::vector<CriterionResult>& criteria) {
  nlohmann::json out = nlohmann::json::array();
  for (const CriterionResult& c : criteria)
    out.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  return out;
}

} // namespace

std::vector<CriterionResult> run_core_criteria(std::uint64_t seed) {
  return {
      criterion_parity_census(seed),     criterion_odd_thetanulls(seed),
      criterion_heat_equation(seed),     criterion_product_formula(seed),
      criterion_transformation_law(seed), criterion_reducible_structure(seed),
      criterion_generic_smooth(seed),    criterion_hall_witt(seed),
      criterion_figure2(seed),           criterion_word_problem(seed),
      criterion_nerve_cohomology(seed),  criterion_gysin(seed),
      criterion_kernel_rank(seed),
  };
}

AcceptanceReport run_acceptance(std::uint64_t seed) {
  AcceptanceReport report;
  report.seed = seed;
  report.criteria = run_core_criteria(seed);

  CriterionResult determinism{14, "report determinism", false, nlohmann::json::object()};
  const std::string first = criteria_to_json(report.criteria).dump();
  const std::string second = criteria_to_json(run_core_criteria(seed)).dump();
  determinism.pass = first == second;
  determinism.details = {{"bytes", first.size()}, {"identical", determinism.pass}};
  report.criteria.push_back(std::move(determinism));

  report.all_pass = std::all_of(report.criteria.begin(), report.criteria.end(),
                                [](const CriterionResult& c) { return c.pass; });
  return report;
}

nlohmann::json AcceptanceReport::to_json() const {
  return {{"seed", seed}, {"criteria", criteria_to_json(criteria)}, {"all_pass", all_pass}};
}

} // namespace theta2
