// Command-line front end: JSON in, JSON out, deterministic seeds.
// Exit codes: 0 success, 1 structured module error, 2 malformed input.

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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>

using namespace theta2;

namespace {

struct Common {
  std::string out = "-";
  std::string input; // optional JSON object with named inputs
  double target_err = 1e-12;
  std::uint64_t seed = 0;

  json input_obj;
  bool input_loaded = false;

  json need(const std::string& inline_arg, const char* key) {
    if (!inline_arg.empty()) return parse_json_arg(inline_arg);
    if (!input.empty() && !input_loaded) {
      input_obj = input == "-" ? json::parse(std::cin) : parse_json_arg("@" + input);
      input_loaded = true;
    }
    if (input_loaded && input_obj.contains(key)) return input_obj[key];
    throw Error("bad-input", std::string("missing input \"") + key + "\"");
  }

  void emit(const json& report) const {
    if (out == "-") {
      std::cout << report.dump(2) << "\n";
      return;
    }
    std::ofstream f(out);
    if (!f) throw Error("bad-input", "cannot open output file " + out);
    f << report.dump(2) << "\n";
  }
};

json parity_json(const Characteristic& d) {
  return parity(d) == Parity::Even ? "Even" : "Odd";
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--out", common.out, "output file or - for stdout");
  cmd->add_option("--json", common.input, "JSON object (file path or -) holding named inputs");
  cmd->add_option("--target-err", common.target_err, "certified truncation target");
  cmd->add_option("--seed", common.seed, "seed for randomized checks");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"genus-2 theta function verification toolkit"};
  app.require_subcommand(1);

  Common common;
  json report;
  int exit_code = 0;

  // ---- char ----------------------------------------------------------
  auto* chr = app.add_subcommand("char", "theta characteristic arithmetic");
  chr->require_subcommand(1);

  int arg_g = 2, arg_g1 = 1;
  std::string arg_delta, arg_delta2, arg_omega, arg_omega2, arg_z, arg_m;

  {
    auto* c = chr->add_subcommand("list", "enumerate all characteristics of a genus");
    add_common(c, common);
    c->add_option("--g", arg_g, "genus")->check(CLI::PositiveNumber);
    c->callback([&] {
      json rows = json::array();
      for (const Characteristic& d : enumerate_characteristics(arg_g))
        rows.push_back({{"delta", to_json(d)}, {"parity", parity_json(d)}});
      report = {{"g", arg_g}, {"characteristics", rows}};
    });
  }
  {
    auto* c = chr->add_subcommand("parity", "parity of a characteristic");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      report = {{"delta", to_json(d)}, {"parity", parity_json(d)}};
    });
  }
  {
    auto* c = chr->add_subcommand("sum", "direct sum of two characteristics");
    add_common(c, common);
    c->add_option("--delta1", arg_delta, "first characteristic");
    c->add_option("--delta2", arg_delta2, "second characteristic");
    c->callback([&] {
      Characteristic d = direct_sum(characteristic_from_json(common.need(arg_delta, "delta1")),
                                    characteristic_from_json(common.need(arg_delta2, "delta2")));
      report = {{"delta", to_json(d)}, {"parity", parity_json(d)}};
    });
  }
  {
    auto* c = chr->add_subcommand("split", "split a characteristic at genus g1");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->add_option("--g1", arg_g1, "genus of the first factor");
    c->callback([&] {
      auto [d1, d2] = split(characteristic_from_json(common.need(arg_delta, "delta")), arg_g1);
      report = {{"first", to_json(d1)}, {"second", to_json(d2)}};
    });
  }
  {
    auto* c = chr->add_subcommand("half-period", "2-torsion point eps' + eps'' Omega");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      report = {{"point", to_json(half_period(d, omega))}};
    });
  }

  // ---- siegel --------------------------------------------------------
  auto* sg = app.add_subcommand("siegel", "Siegel space and Sp_g(Z) actions");
  sg->require_subcommand(1);
  double arg_tol = 1e-10;

  {
    auto* c = sg->add_subcommand("act", "apply a symplectic matrix to Omega (and z)");
    add_common(c, common);
    c->add_option("--m", arg_m, "symplectic matrix blocks {A,B,C,D}");
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--z", arg_z, "optional point in C^g");
    c->callback([&] {
      SymplecticIntMatrix m = symplectic_from_json(common.need(arg_m, "m"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      if (arg_z.empty()) {
        report = {{"omega", to_json(act_on_siegel(m, omega))}};
      } else {
        auto [moved, z] = act_on_pair(m, omega, cvector_from_json(parse_json_arg(arg_z)));
        report = {{"omega", to_json(moved)}, {"z", to_json(z)}};
      }
    });
  }
  {
    auto* c = sg->add_subcommand("block-sum", "direct sum of two period matrices");
    add_common(c, common);
    c->add_option("--omega1", arg_omega, "first block");
    c->add_option("--omega2", arg_omega2, "second block");
    c->callback([&] {
      PeriodMatrix o1 = period_from_json(common.need(arg_omega, "omega1"));
      PeriodMatrix o2 = period_from_json(common.need(arg_omega2, "omega2"));
      report = {{"omega", to_json(direct_sum_period(o1, o2))}};
    });
  }
  {
    auto* c = sg->add_subcommand("reducible", "test for the h1 x h1 component");
    add_common(c, common);
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--tol", arg_tol, "off-diagonal tolerance");
    c->callback([&] {
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      report = {{"reducible", is_block_reducible(omega, arg_tol)}, {"tol", arg_tol}};
    });
  }
  {
    auto* c = sg->add_subcommand("reduce", "reduce z modulo the period lattice");
    add_common(c, common);
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--z", arg_z, "point in C^g");
    c->callback([&] {
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      TorusPoint p = reduce_mod_lattice(omega, cvector_from_json(common.need(arg_z, "z")));
      report = to_json(p);
    });
  }

  // ---- theta ---------------------------------------------------------
  auto* th = app.add_subcommand("theta", "certified theta evaluation and identities");
  th->require_subcommand(1);
  std::string arg_gen;

  {
    auto* c = th->add_subcommand("eval", "evaluate theta_delta(Omega, z)");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--z", arg_z, "point in C^g");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      CVector z = cvector_from_json(common.need(arg_z, "z"));
      report = to_json(theta(d, omega, z, common.target_err));
    });
  }
  {
    auto* c = th->add_subcommand("null-table", "thetanull table over all characteristics");
    add_common(c, common);
    c->add_option("--g", arg_g, "genus")->check(CLI::PositiveNumber);
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->callback([&] {
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      if (omega.genus() != arg_g) throw Error("domain", "--g disagrees with the period matrix");
      json rows = json::array();
      for (const Characteristic& d : enumerate_characteristics(arg_g)) {
        ThetaResult r = thetanull(d, omega, common.target_err);
        rows.push_back({{"delta", to_json(d)},
                        {"parity", parity_json(d)},
                        {"abs_value", std::abs(r.value)},
                        {"value", to_json(r.value)},
                        {"truncation_bound", r.truncation_bound},
                        {"radius_used", r.radius_used}});
      }
      report = {{"g", arg_g}, {"omega", to_json(omega)}, {"table", rows}};
    });
  }

  auto* chk = th->add_subcommand("check", "numerical identity checks");
  chk->require_subcommand(1);
  {
    auto* c = chk->add_subcommand("heat", "heat equation against finite differences");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--z", arg_z, "point in C^g");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      CVector z = cvector_from_json(common.need(arg_z, "z"));
      ThetaJet jet = theta_jet(d, omega, z, common.target_err);
      const double h = 1e-4;
      json entries = json::array();
      double worst = 0.0;
      for (int j = 0; j < omega.genus(); ++j)
        for (int k = j; k < omega.genus(); ++k) {
          CMatrix plus = omega.mat(), minus = omega.mat();
          plus(j, k) += h;
          minus(j, k) -= h;
          if (j != k) {
            plus(k, j) += h;
            minus(k, j) -= h;
          }
          cdouble fd = (theta(d, PeriodMatrix(plus), z, common.target_err).value -
                        theta(d, PeriodMatrix(minus), z, common.target_err).value) /
                       (2.0 * h);
          const double diag = (j == k) ? 2.0 : 1.0;
          cdouble lhs = cdouble(0.0, 2.0 * std::numbers::pi) * diag * fd;
          const double rel =
              std::abs(lhs - jet.hess_z(j, k)) / std::max(1.0, std::abs(jet.hess_z(j, k)));
          worst = std::max(worst, rel);
          entries.push_back({{"j", j}, {"k", k}, {"rel_residual", rel}});
        }
      report = {{"entries", entries}, {"max_rel_residual", worst}, {"fd_step", h}};
    });
  }
  {
    auto* c = chk->add_subcommand("parity", "theta(-z) against the parity sign");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--z", arg_z, "point in C^g");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      CVector z = cvector_from_json(common.need(arg_z, "z"));
      ThetaResult r = theta(d, omega, z, common.target_err);
      report = {{"residual", check_parity(d, omega, z, common.target_err)},
                {"parity", parity_json(d)},
                {"tolerance", 2.0 * r.truncation_bound + 1e-10}};
    });
  }
  {
    auto* c = chk->add_subcommand("product", "block-diagonal product formula");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "genus-2 characteristic JSON");
    c->add_option("--omega1", arg_omega, "first factor");
    c->add_option("--omega2", arg_omega2, "second factor");
    c->add_option("--z", arg_z, "point in C^2");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix o1 = period_from_json(common.need(arg_omega, "omega1"));
      PeriodMatrix o2 = period_from_json(common.need(arg_omega2, "omega2"));
      CVector z = cvector_from_json(common.need(arg_z, "z"));
      report = {{"rel_residual", check_product(d, o1, o2, z, common.target_err)}};
    });
  }
  {
    auto* c = chk->add_subcommand("shift", "reduction to the zero characteristic");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--z", arg_z, "point in C^g");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      CVector z = cvector_from_json(common.need(arg_z, "z"));
      ShiftReferenceSample s = check_shift_reference(d, omega, z, common.target_err);
      report = {{"ratio", to_json(s.ratio)},
                {"expected_factor", to_json(s.expected_factor)},
                {"rel_difference",
                 std::abs(s.ratio - s.expected_factor) / std::abs(s.expected_factor)},
                {"denom_abs", s.denom_abs}};
    });
  }
  {
    auto* c = chk->add_subcommand("transform", "characteristic permutation under Sp_4(Z)");
    add_common(c, common);
    c->add_option("--m", arg_m, "symplectic matrix blocks {A,B,C,D}");
    c->add_option("--gen", arg_gen, "named generator (J, T11, T22, T12, U-shear, U-swap)");
    c->add_option("--omega", arg_omega, "genus-2 period matrix JSON");
    c->add_option("--delta", arg_delta, "optional single characteristic");
    c->callback([&] {
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      SymplecticIntMatrix m = [&] {
        if (!arg_gen.empty()) {
          for (auto& [name, gen] : sp4_generators())
            if (name == arg_gen) return gen;
          throw Error("bad-input", "unknown generator name " + arg_gen);
        }
        return symplectic_from_json(common.need(arg_m, "m"));
      }();
      TransformContext context(omega);
      json rows = json::array();
      auto run_one = [&](const Characteristic& d) {
        Characteristic image = transformed_characteristic(m, d, context);
        rows.push_back({{"delta", to_json(d)},
                        {"image", to_json(image)},
                        {"parity_preserved", parity(d) == parity(image)}});
      };
      if (!arg_delta.empty()) {
        run_one(characteristic_from_json(parse_json_arg(arg_delta)));
      } else {
        for (const Characteristic& d : enumerate_characteristics(2)) run_one(d);
      }
      report = {{"mapping", rows}};
    });
  }

  // ---- locus ---------------------------------------------------------
  auto* lc = app.add_subcommand("locus", "zero locus exploration");
  lc->require_subcommand(1);
  int arg_slices = 20, arg_cell_grid = 12;

  {
    auto* c = lc->add_subcommand("trace", "trace the zero curve through parallel slices");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "genus-2 characteristic JSON");
    c->add_option("--omega", arg_omega, "genus-2 period matrix JSON");
    c->add_option("--slices", arg_slices, "number of parallel slices");
    c->add_option("--cell-grid", arg_cell_grid, "Newton start grid per cell side");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      auto cloud = trace_zero_curve(d, omega, arg_slices, common.target_err, arg_cell_grid);
      json pts = json::array();
      for (const TracedPoint& p : cloud)
        pts.push_back({{"slice", p.slice_index},
                       {"t", to_json(p.local_coord)},
                       {"z", to_json(p.z)},
                       {"multiplicity", p.multiplicity}});
      report = {{"points", pts}, {"count", pts.size()}};
    });
  }
  {
    auto* c = lc->add_subcommand("classify", "Smooth/Node classification at a point");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "characteristic JSON");
    c->add_option("--omega", arg_omega, "period matrix JSON");
    c->add_option("--z", arg_z, "point on the zero locus");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix omega = period_from_json(common.need(arg_omega, "omega"));
      CVector z = cvector_from_json(common.need(arg_z, "z"));
      report = to_json(classify_point(d, omega, z));
    });
  }
  {
    auto* c = lc->add_subcommand("verify-reducible", "two branches joined at one node");
    add_common(c, common);
    c->add_option("--delta", arg_delta, "odd+odd genus-2 characteristic JSON");
    c->add_option("--omega1", arg_omega, "first elliptic period");
    c->add_option("--omega2", arg_omega2, "second elliptic period");
    c->callback([&] {
      Characteristic d = characteristic_from_json(common.need(arg_delta, "delta"));
      PeriodMatrix o1 = period_from_json(common.need(arg_omega, "omega1"));
      PeriodMatrix o2 = period_from_json(common.need(arg_omega2, "omega2"));
      report = to_json(verify_reducible_structure(d, o1, o2));
    });
  }

  // ---- group ---------------------------------------------------------
  auto* gp = app.add_subcommand("group", "surface group word calculus");
  gp->require_subcommand(1);
  std::string arg_word, arg_u, arg_v, arg_c;

  {
    auto* c = gp->add_subcommand("reduce", "free reduction of a word");
    add_common(c, common);
    c->add_option("--word", arg_word, "word over A,B,C,D (lowercase = inverse)");
    c->callback([&] {
      SurfaceWord w = SurfaceWord::parse(arg_word);
      report = {{"word", w.str()}, {"length", w.size()}};
    });
  }
  {
    auto* c = gp->add_subcommand("trivial", "word problem by Dehn's algorithm");
    add_common(c, common);
    c->add_option("--word", arg_word, "word over A,B,C,D (lowercase = inverse)");
    c->callback([&] {
      SurfaceWord w = SurfaceWord::parse(arg_word);
      report = {{"word", w.str()}, {"trivial", dehn_is_trivial(w)}};
    });
  }
  {
    auto* c = gp->add_subcommand("abelianize", "image in H_1(S_2, Z)");
    add_common(c, common);
    c->add_option("--word", arg_word, "word over A,B,C,D (lowercase = inverse)");
    c->callback([&] {
      HomologyClass h = abelianize(SurfaceWord::parse(arg_word));
      report = {{"coords", h.coords}};
    });
  }
  {
    auto* c = gp->add_subcommand("splitting", "homology splitting of c[u,v]c^-1");
    add_common(c, common);
    c->add_option("--u", arg_u, "first commutator entry");
    c->add_option("--v", arg_v, "second commutator entry");
    c->add_option("--c", arg_c, "optional conjugator");
    c->callback([&] {
      HomologySplitting s = splitting_from_scc(SurfaceWord::parse(arg_c),
                                               SurfaceWord::parse(arg_u),
                                               SurfaceWord::parse(arg_v));
      report = to_json(s);
    });
  }
  {
    auto* c = gp->add_subcommand("verify-figure2", "reproduce the four splittings");
    add_common(c, common);
    c->callback([&] {
      Figure2Report rep = figure2_verify();
      json rows = json::array();
      for (const Figure2Row& row : rep.rows)
        rows.push_back({{"scc", row.scc},
                        {"splitting", to_json(row.computed)},
                        {"matches_table", row.matches_table},
                        {"null_homologous", row.null_homologous}});
      report = {{"rows", rows},
                {"all_match", rep.all_match},
                {"pairwise_distinct", rep.pairwise_distinct},
                {"relation_holds", rep.relation_holds},
                {"ok", rep.ok()}};
      if (!rep.ok()) exit_code = 1;
    });
  }

  // ---- strata --------------------------------------------------------
  auto* st = app.add_subcommand("strata", "nerve models of the reducible locus");
  st->require_subcommand(1);
  int arg_nbeta = 1, arg_radius = 0, arg_open_from = 3, arg_ambient = 8;
  bool arg_full = false;
  std::string arg_hc;

  {
    auto* c = st->add_subcommand("nerve", "build the component nerve");
    add_common(c, common);
    c->add_option("--nbeta", arg_nbeta, "number of splitting families");
    c->add_option("--radius", arg_radius, "translation truncation radius");
    c->add_flag("--full", arg_full, "include component and pair lists");
    c->callback([&] { report = to_json(build_nerve(arg_nbeta, arg_radius), arg_full); });
  }
  {
    auto* c = st->add_subcommand("hc", "compact-support cohomology ranks");
    add_common(c, common);
    c->add_option("--nbeta", arg_nbeta, "number of splitting families");
    c->add_option("--radius", arg_radius, "translation truncation radius");
    c->callback([&] {
      Nerve nerve = build_nerve(arg_nbeta, arg_radius);
      report = {{"nerve", to_json(nerve, false)}, {"hc", to_json(compute_hc(nerve))}};
    });
  }
  {
    auto* c = st->add_subcommand("gysin", "degrees forced to vanish by exactness");
    add_common(c, common);
    c->add_option("--nbeta", arg_nbeta, "number of splitting families");
    c->add_option("--radius", arg_radius, "translation truncation radius");
    c->add_option("--hc", arg_hc, "explicit graded ranks JSON, e.g. {\"5\":1,\"6\":2}");
    c->add_option("--open-from", arg_open_from, "complement vanishing threshold");
    c->add_option("--ambient-dim", arg_ambient, "ambient real dimension");
    c->callback([&] {
      GradedRanks hc;
      if (!arg_hc.empty()) {
        for (const auto& [key, value] : parse_json_arg(arg_hc).items())
          hc[std::stoi(key)] = value.get<long long>();
      } else {
        hc = compute_hc(build_nerve(arg_nbeta, arg_radius));
      }
      report = {{"hc", to_json(hc)},
                {"forced_zero", gysin_vanishing(hc, arg_open_from, arg_ambient)},
                {"open_from", arg_open_from},
                {"ambient_dim", arg_ambient}};
    });
  }
  {
    auto* c = st->add_subcommand("kernel-rank", "rank of the section-difference kernel");
    add_common(c, common);
    c->add_option("--nbeta", arg_nbeta, "number of splitting families");
    c->callback([&] {
      report = {{"n_beta", arg_nbeta}, {"kernel_rank", kernel_rank(arg_nbeta)}};
    });
  }

  // ---- verify-all ----------------------------------------------------
  {
    auto* c = app.add_subcommand("verify-all", "run the full acceptance suite");
    add_common(c, common);
    c->callback([&] {
      AcceptanceReport rep = run_acceptance(common.seed);
      report = rep.to_json();
      if (!rep.all_pass) exit_code = 1;
    });
  }

  try {
    app.parse(argc, argv);
    common.emit(report);
    return exit_code;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  } catch (const json::parse_error& e) {
    json err = {{"error", {{"code", "bad-input"}, {"message", e.what()}, {"context", "json"}}}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const Error& e) {
    json err = {{"error",
                 {{"code", e.code()}, {"message", e.what()}, {"context", e.context()}}}};
    std::cerr << err.dump(2) << "\n";
    return e.code() == "bad-input" ? 2 : 1;
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
}
