#include <refsel/assumptions.hpp>
#include <refsel/config.hpp>
#include <refsel/error.hpp>
#include <refsel/experiments.hpp>
#include <refsel/gauss_markov.hpp>
#include <refsel/setcover.hpp>
#include <refsel/solver_dp.hpp>
#include <refsel/solver_oracle.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

using namespace refsel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitConfig = 3;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App *cmd, Common &c, bool needs_config = true) {
  auto *opt = cmd->add_option("--config", c.config, "Scenario file");
  if (needs_config)
    opt->required();
  cmd->add_option("--out", c.out, "Output CSV path (stdout when omitted)");
  cmd->add_option("--seed", c.seed, "Override the scenario seed");
}

Scenario load(const Common &c) {
  Scenario s = load_scenario_file(c.config);
  if (c.seed)
    s.seed = *c.seed;
  return s;
}

void emit(const Common &c, const std::function<void(std::ostream &)> &write) {
  if (c.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::Io, "cannot open " + c.out + " for writing");
  write(f);
  if (!f)
    throw Error(ErrorCode::Io, "failed writing " + c.out);
}

std::vector<Rational> parse_rationals(const std::vector<std::string> &items) {
  std::vector<Rational> out;
  for (const auto &s : items)
    out.push_back(parse_rational(s));
  return out;
}

std::string refs_text(const std::vector<ViewTick> &refs, std::int64_t L) {
  std::string out;
  for (std::size_t i = 0; i < refs.size(); ++i)
    out += (i ? ";" : "") + format_units(refs[i], L);
  return out;
}

void write_selection(std::ostream &out, const Selection &sel, const NavigationWindow &w) {
  out << "u_tick,vl_tick,vr_tick,distortion\n" << std::setprecision(17);
  for (std::size_t i = 0; i < sel.assignment.size(); ++i)
    out << w.left.ticks + static_cast<std::int64_t>(i) << ',' << sel.assignment[i].vl.ticks << ','
        << sel.assignment[i].vr.ticks << ',' << sel.per_view[i] << '\n';
}

int report_selection(const Common &c, const Scenario &s, const Selection &sel) {
  std::cerr << "refs: " << refs_text(sel.refs, s.grid.ticks_per_unit) << '\n'
            << "objective: " << std::setprecision(17) << sel.objective << '\n';
  emit(c, [&](std::ostream &o) { write_selection(o, sel, s.window); });
  return kExitOk;
}

void write_counterexample(std::ostream &o, const char *name, const AssumptionReport &r) {
  o << name << ',' << (r.holds ? "true" : "false");
  if (r.counterexample) {
    const auto &x = *r.counterexample;
    o << ',' << x.u.ticks << ',' << x.u2.ticks << ',' << x.vl.ticks << ',' << x.vr.ticks << ','
      << x.vl2.ticks << ',' << x.vr2.ticks << ',' << x.lhs_first << ',' << x.lhs_second << ','
      << x.rhs_first << ',' << x.rhs_second;
  } else {
    o << ",,,,,,,,,,";
  }
  o << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::Infeasible:
  case ErrorCode::CoverageGap:
  case ErrorCode::Unsynthesizable:
    return kExitInfeasible;
  case ErrorCode::Config:
  case ErrorCode::Io:
  case ErrorCode::NonIntegralPosition:
  case ErrorCode::EmptyCameraSet:
  case ErrorCode::InvalidGrid:
  case ErrorCode::InvalidWindow:
  case ErrorCode::InvalidOrdering:
  case ErrorCode::DuplicateKey:
  case ErrorCode::NegativeDistortion:
  case ErrorCode::InvalidParameters:
    return kExitConfig;
  default:
    return kExitFailure;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Reference view selection for interactive multiview navigation"};
  app.require_subcommand(1);

  std::function<int()> action;

  Common solve_c;
  auto *solve_cmd = app.add_subcommand("solve", "Optimal selection with the dynamic program");
  add_common(solve_cmd, solve_c);
  solve_cmd->callback([&] {
    action = [&] {
      const Scenario s = load(solve_c);
      return report_selection(solve_c, s, solve(s));
    };
  });

  Common oracle_c;
  std::string method = "exhaustive";
  auto *oracle_cmd = app.add_subcommand("oracle", "Optimal selection by search");
  add_common(oracle_cmd, oracle_c);
  oracle_cmd->add_option("--method", method, "exhaustive or treesearch")
      ->check(CLI::IsMember({"exhaustive", "treesearch"}));
  oracle_cmd->callback([&] {
    action = [&] {
      const Scenario s = load(oracle_c);
      const Selection sel = method == "exhaustive" ? exhaustive_solve(s) : treesearch_solve(s);
      return report_selection(oracle_c, s, sel);
    };
  });

  Common check_c;
  auto *check_cmd = app.add_subcommand("check-assumptions", "Test the two structural assumptions");
  add_common(check_cmd, check_c);
  check_cmd->callback([&] {
    action = [&] {
      const Scenario s = load(check_c);
      validate(s);
      const auto refD = reference_distortions(s);
      const auto shared = check_shared_optimality(s.grid, s.window, s.evaluator, refD);
      const auto indep = check_independence(s.grid, s.window, s.evaluator, refD);
      std::cerr << "shared_optimality: " << (shared.holds ? "holds" : "violated") << '\n'
                << "independence: " << (indep.holds ? "holds" : "violated") << '\n';
      emit(check_c, [&](std::ostream &o) {
        o << "check,holds,u_tick,u2_tick,vl_tick,vr_tick,vl2_tick,vr2_tick,"
             "lhs_first,lhs_second,rhs_first,rhs_second\n"
          << std::setprecision(17);
        write_counterexample(o, "shared_optimality", shared);
        write_counterexample(o, "independence", indep);
      });
      return kExitOk;
    };
  });

  Common cap_c;
  std::vector<int> c_values;
  auto *cap_cmd = app.add_subcommand("sweep-capacity", "PSNR against channel capacity");
  add_common(cap_cmd, cap_c);
  cap_cmd->add_option("--c", c_values, "Capacities")->delimiter(',')->required();
  cap_cmd->callback([&] {
    action = [&] {
      const auto r = sweep_capacity(load(cap_c), c_values);
      emit(cap_c, [&](std::ostream &o) { write_sweep_csv(o, r); });
      return kExitOk;
    };
  });

  Common ul_c;
  std::vector<std::string> ul_values;
  auto *ul_cmd = app.add_subcommand("sweep-window-left", "PSNR against the window left end");
  add_common(ul_cmd, ul_c);
  ul_cmd->add_option("--ul", ul_values, "Left ends in view units")->delimiter(',')->required();
  ul_cmd->callback([&] {
    action = [&] {
      const auto r = sweep_window_left(load(ul_c), parse_rationals(ul_values));
      emit(ul_c, [&](std::ostream &o) { write_sweep_csv(o, r); });
      return kExitOk;
    };
  });

  Common size_c;
  std::vector<std::string> delta_values;
  int trials = 100;
  auto *size_cmd = app.add_subcommand("sweep-window-size", "Mean PSNR against window size");
  add_common(size_cmd, size_c);
  size_cmd->add_option("--delta", delta_values, "Window sizes in view units")
      ->delimiter(',')
      ->required();
  size_cmd->add_option("--trials", trials, "Window placements per size");
  size_cmd->callback([&] {
    action = [&] {
      const auto r = sweep_window_size(load(size_c), parse_rationals(delta_values), trials);
      emit(size_c, [&](std::ostream &o) { write_sweep_csv(o, r); });
      return kExitOk;
    };
  });

  Common rnd_c;
  std::vector<double> sigma_values;
  int rnd_runs = 400;
  auto *rnd_cmd = app.add_subcommand("sweep-randomness", "Mean PSNR against camera jitter");
  add_common(rnd_cmd, rnd_c);
  rnd_cmd->add_option("--sigma2", sigma_values, "Position variances")->delimiter(',')->required();
  rnd_cmd->add_option("--runs", rnd_runs, "Random camera sets per variance");
  rnd_cmd->callback([&] {
    action = [&] {
      const auto r = sweep_camera_randomness(load(rnd_c), sigma_values, rnd_runs);
      emit(rnd_c, [&](std::ostream &o) { write_sweep_csv(o, r); });
      return kExitOk;
    };
  });

  Common smp_c;
  std::vector<int> spacing_values;
  int smp_runs = 400;
  auto *smp_cmd = app.add_subcommand("sweep-sampling", "Mean PSNR against camera spacing");
  add_common(smp_cmd, smp_c);
  smp_cmd->add_option("--spacing", spacing_values, "Viewpoints per camera")
      ->delimiter(',')
      ->required();
  smp_cmd->add_option("--runs", smp_runs, "Window placements per spacing");
  smp_cmd->callback([&] {
    action = [&] {
      const auto r = sweep_sampling_distance(load(smp_c), spacing_values, smp_runs);
      emit(smp_c, [&](std::ostream &o) { write_sweep_csv(o, r); });
      return kExitOk;
    };
  });

  Common thr_c;
  std::vector<std::string> ur_values;
  int c_max = 8;
  auto *thr_cmd =
      app.add_subcommand("threshold-capacity", "Capacity beyond which synthesis stops helping");
  add_common(thr_cmd, thr_c);
  thr_cmd->add_option("--ur", ur_values, "Window right ends in view units")
      ->delimiter(',')
      ->required();
  thr_cmd->add_option("--c-max", c_max, "Largest capacity scanned");
  thr_cmd->callback([&] {
    action = [&] {
      const auto r = threshold_capacity(load(thr_c), parse_rationals(ur_values), c_max);
      emit(thr_c, [&](std::ostream &o) { write_threshold_csv(o, r); });
      return kExitOk;
    };
  });

  Common gm_c;
  std::vector<double> s2, s3, s4;
  auto *gm_cmd = app.add_subcommand("gm-compare", "Precision of x2 with synthesized or direct views");
  add_common(gm_cmd, gm_c, false);
  gm_cmd->add_option("--s2", s2, "sigma_2^2 values")->delimiter(',')->required();
  gm_cmd->add_option("--s3", s3, "sigma_3^2 values")->delimiter(',')->required();
  gm_cmd->add_option("--s4", s4, "sigma_4^2 values")->delimiter(',')->required();
  gm_cmd->callback([&] {
    action = [&] {
      if (s2.size() != s3.size() || s2.size() != s4.size())
        throw Error(ErrorCode::InvalidParameters, "--s2, --s3 and --s4 need equal lengths");
      emit(gm_c, [&](std::ostream &o) {
        o << "sigma2_sq,sigma3_sq,sigma4_sq,q_synth,q_direct\n" << std::setprecision(17);
        for (std::size_t i = 0; i < s2.size(); ++i) {
          const auto r = compare_synth_vs_direct(s2[i], s3[i], s4[i]);
          o << s2[i] << ',' << s3[i] << ',' << s4[i] << ',' << r.q_synth << ',' << r.q_direct
            << '\n';
        }
      });
      return kExitOk;
    };
  });

  Common sc_c;
  std::string sc_path;
  int sc_k = 1;
  double d_bar = 100.0, delta = 10.0;
  auto *sc_cmd = app.add_subcommand("reduce-setcover", "Build and decide the set-cover gadget");
  add_common(sc_cmd, sc_c, false);
  sc_cmd->add_option("--setcover", sc_path, "CSV with subset_id,item rows")->required();
  sc_cmd->add_option("--k", sc_k, "Cover size bound")->required();
  sc_cmd->add_option("--d-bar", d_bar, "Base distortion");
  sc_cmd->add_option("--delta", delta, "Distortion reduction");
  sc_cmd->callback([&] {
    action = [&] {
      const auto sc = read_setcover_csv_file(sc_path, sc_k);
      const auto gadget = build_gadget(sc, d_bar, delta);
      const auto d = decide(gadget);
      std::cerr << "answer: " << (d.answer ? "true" : "false") << '\n'
                << "objective: " << std::setprecision(17) << d.selection.objective << '\n'
                << "target: " << gadget.target << '\n';
      emit(sc_c, [&](std::ostream &o) { write_tabulated_csv(o, gadget.rows); });
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    return action();
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
