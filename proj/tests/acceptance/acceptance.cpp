// Acceptance checks. Prints one PASS/FAIL line per criterion.
// Usage: refsel_acceptance [criterion ...]   (default: all)

#include "scenarios.hpp"

#include <refsel/assumptions.hpp>
#include <refsel/config.hpp>
#include <refsel/error.hpp>
#include <refsel/experiments.hpp>
#include <refsel/gauss_markov.hpp>
#include <refsel/setcover.hpp>
#include <refsel/solver_dp.hpp>
#include <refsel/solver_oracle.hpp>

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include <unistd.h>

using namespace refsel;
using namespace refsel::testing;

namespace {

// Tolerances.
constexpr double kObjectiveRelTol = 1e-9;
constexpr double kGadgetTol = 1e-9;
constexpr double kGmExactTol = 1e-12;
constexpr double kGmLimitTol = 1e-6;
constexpr double kMcSigmas = 3.0;
constexpr double kSlopeMax = 4.3;
constexpr double kExhaustiveFactor = 100.0;
constexpr double kTrendTol = 1e-9;
constexpr double kWindowSizeInversion = 0.05;

constexpr int kEquivalenceScenarios = 500;
constexpr int kEquivalenceMaxDraws = 20000;
constexpr int kCrossOracleScenarios = 100;
constexpr int kGadgetInstances = 200;
constexpr int kGmTriples = 10000;
constexpr int kMcSamples = 100000;

struct Outcome {
  bool pass{false};
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string data_path(const char *name) { return std::string(REFSEL_TEST_DATA_DIR) + "/" + name; }

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

bool assumptions_hold(const Scenario &s) {
  const auto refD = reference_distortions(s);
  return check_shared_optimality(s.grid, s.window, s.evaluator, refD).holds &&
         check_independence(s.grid, s.window, s.evaluator, refD).holds;
}

std::optional<double> exhaustive_objective(const Scenario &s) {
  try {
    return exhaustive_solve(s).objective;
  } catch (const Error &e) {
    if (e.code() == ErrorCode::Infeasible)
      return std::nullopt;
    throw;
  }
}

std::optional<double> dp_objective(const Scenario &s) {
  try {
    return solve(s).objective;
  } catch (const Error &e) {
    if (e.code() == ErrorCode::Infeasible)
      return std::nullopt;
    throw;
  }
}

/// Optimum through the DP when the scenario satisfies both assumptions, else the oracle.
/// The selected set is re-scored with one summation so that equal sets compare exactly.
std::optional<double> optimum(const Scenario &s) {
  try {
    const auto sel = assumptions_hold(s) ? solve(s) : exhaustive_solve(s);
    return aggregate_distortion(sel.refs, s).objective;
  } catch (const Error &e) {
    if (e.code() == ErrorCode::Infeasible)
      return std::nullopt;
    throw;
  }
}

// Scenarios shared by criteria 1 and 6.
std::vector<Scenario> &equivalence_scenarios() {
  static std::vector<Scenario> cache;
  if (cache.empty()) {
    std::mt19937_64 rng(20240601);
    for (int draw = 0; draw < kEquivalenceMaxDraws &&
                       static_cast<int>(cache.size()) < kEquivalenceScenarios;
         ++draw) {
      auto s = random_scenario(rng);
      if (draw % 2)
        s.candidate_mode = CandidateMode::CamerasOnly;
      if (assumptions_hold(s))
        cache.push_back(s);
    }
  }
  return cache;
}

Outcome criterion_1() {
  const auto &scenarios = equivalence_scenarios();
  int compared = 0, infeasible = 0, mismatches = 0;
  double worst = 0;
  for (const auto &s : scenarios) {
    const auto ex = exhaustive_objective(s);
    const auto dp = dp_objective(s);
    if (!ex || !dp) {
      if (ex.has_value() != dp.has_value())
        ++mismatches;
      else
        ++infeasible;
      continue;
    }
    ++compared;
    worst = std::max(worst, std::abs(*dp - *ex) / std::max(1.0, *ex));
    if (!close_rel(*dp, *ex, kObjectiveRelTol))
      ++mismatches;
  }
  const bool enough = static_cast<int>(scenarios.size()) >= kEquivalenceScenarios;
  return {enough && mismatches == 0,
          fmt("%zu scenarios passing both checks, %d feasible compared, %d infeasible in both, "
              "%d mismatches, worst rel diff %.3g (tol %.0e)",
              scenarios.size(), compared, infeasible, mismatches, worst, kObjectiveRelTol)};
}

Outcome criterion_2() {
  std::mt19937_64 rng(77);
  int compared = 0, mismatches = 0, violating = 0, tables = 0;
  for (int i = 0; i < kCrossOracleScenarios; ++i) {
    Scenario s = (i % 2) ? random_table_scenario(rng) : random_scenario(rng);
    if (i % 2)
      ++tables;
    if (!assumptions_hold(s))
      ++violating;
    std::optional<double> ex, ts;
    try {
      ex = exhaustive_solve(s).objective;
    } catch (const Error &) {
    }
    try {
      ts = treesearch_solve(s).objective;
    } catch (const Error &) {
    }
    if (ex.has_value() != ts.has_value() || (ex && !close_rel(*ex, *ts, kObjectiveRelTol)))
      ++mismatches;
    else
      ++compared;
  }
  return {mismatches == 0 && violating > 0,
          fmt("%d scenarios (%d tabulated, %d violating an assumption), %d agree, %d mismatches",
              kCrossOracleScenarios, tables, violating, compared, mismatches)};
}

Outcome criterion_3() {
  const std::map<int, std::vector<std::string>> printed_s{
      {2, {"0.75", "5.25"}},
      {3, {"0.75", "3", "5.25"}},
      {4, {"0.75", "2", "4", "5.25"}},
      {5, {"0.75", "2", "3", "4", "5.25"}},
      {6, {"0", "1", "2", "3", "4", "5.25"}},
      {7, {"0", "1", "2", "3", "4", "5", "6"}}};
  const std::map<int, std::vector<std::string>> printed_ns{
      {2, {"0", "6"}},
      {3, {"0", "3", "6"}},
      {4, {"0", "2", "4", "6"}},
      {5, {"0", "2", "3", "4", "6"}},
      {6, {"0", "1", "2", "3", "4", "6"}},
      {7, {"0", "1", "2", "3", "4", "5", "6"}}};

  auto names = [](const std::vector<ViewTick> &refs) {
    std::vector<std::string> out;
    for (auto r : refs)
      out.push_back(format_units(r, 8));
    return out;
  };
  auto join = [](const std::vector<std::string> &v) {
    std::string s;
    for (const auto &x : v)
      s += (s.empty() ? "" : ";") + x;
    return s;
  };

  bool exact = true, endpoints = true, same_at_7 = false;
  std::string detail;
  for (int c = 2; c <= 7; ++c) {
    const auto syn = solve(table_scenario(c));
    const auto ns = solve(table_scenario(c, CandidateMode::CamerasOnly));
    // The DP optimum is cross-checked against the oracle where the oracle fits its guard.
    if (count_subsets(Instance(table_scenario(c)).candidates().size(), c) <= kOracleSubsetLimit) {
      const auto ex = exhaustive_solve(table_scenario(c));
      if (!close_rel(ex.objective, syn.objective, kObjectiveRelTol))
        return {false, fmt("C=%d: DP objective %.9g differs from oracle %.9g", c, syn.objective,
                           ex.objective)};
    }
    const auto sn = names(syn.refs), nn = names(ns.refs);
    const bool row_ok = sn == printed_s.at(c) && nn == printed_ns.at(c);
    exact = exact && row_ok;
    if (c <= 5)
      endpoints = endpoints && !sn.empty() && sn.front() == "0.75" && sn.back() == "5.25";
    if (c == 7)
      same_at_7 = sn == nn;
    detail += fmt("\n    C=%d synth {%s} nosynth {%s}%s", c, join(sn).c_str(), join(nn).c_str(),
                  row_ok ? "" : "  [differs]");
    if (!row_ok) {
      std::vector<ViewTick> printed;
      for (const auto &u : printed_s.at(c))
        printed.push_back(ViewTick{static_cast<std::int64_t>(std::llround(std::stod(u) * 8))});
      const double printed_obj = aggregate_distortion(printed, table_scenario(c)).objective;
      detail += fmt(" selected objective %.6f vs printed set %.6f", syn.objective, printed_obj);
    }
  }
  const bool pass = exact || (endpoints && same_at_7);
  return {pass, fmt("exact=%s, fallback endpoints(C=2..5)=%s, synth==nosynth at C=7=%s",
                    exact ? "yes" : "no", endpoints ? "yes" : "no", same_at_7 ? "yes" : "no") +
                    detail};
}

bool brute_cover(const SetCoverInstance &sc) {
  const auto m = sc.subsets.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (std::popcount(mask) > sc.k)
      continue;
    std::uint32_t hit = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (mask >> j & 1u)
        for (int x : sc.subsets[j])
          hit |= 1u << (x - 1);
    if (hit == (1u << sc.universe_size) - 1)
      return true;
  }
  return false;
}

// Calls f on every collection of m distinct non-empty subsets of {1..n}, as bitmasks.
void for_each_collection(int n, int m, const std::function<void(const std::vector<std::uint32_t> &)> &f) {
  std::vector<std::uint32_t> pick;
  const std::uint32_t top = (1u << n) - 1;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t next) {
    if (static_cast<int>(pick.size()) == m) {
      f(pick);
      return;
    }
    for (std::uint32_t mask = next; mask <= top; ++mask) {
      pick.push_back(mask);
      rec(mask + 1);
      pick.pop_back();
    }
  };
  rec(1);
}

Outcome criterion_4() {
  // Every collection of distinct subsets for |S| <= 4 with |C| <= 4, and |S| = 5 with |C| <= 3.
  int instances = 0, decisions = 0, mismatches = 0, yes = 0;
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= (n == 5 ? 3 : 4); ++m)
      for_each_collection(n, m, [&](const std::vector<std::uint32_t> &masks) {
        SetCoverInstance sc;
        sc.universe_size = n;
        for (auto bits : masks) {
          std::vector<int> subset;
          for (int x = 1; x <= n; ++x)
            if (bits >> (x - 1) & 1u)
              subset.push_back(x);
          sc.subsets.push_back(subset);
        }
        ++instances;
        for (int k = 1; k <= m; ++k) {
          sc.k = k;
          const auto g = build_gadget(sc, 10.0, 4.0);
          const auto d = decide(g);
          const bool want = brute_cover(sc);
          const bool direct = d.selection.objective <= g.target + kGadgetTol;
          yes += want;
          ++decisions;
          if (d.answer != want || direct != want)
            ++mismatches;
        }
      });
  return {instances >= kGadgetInstances && mismatches == 0,
          fmt("%d instances, %d decisions (%d coverable), %d mismatches", instances, decisions, yes,
              mismatches)};
}

Outcome criterion_5() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lg(-3.0, 8.0);
  int dominance_fail = 0, strict_fail = 0, strict_checked = 0, rounded_equal = 0;
  for (int i = 0; i < kGmTriples; ++i) {
    const double a = std::pow(10.0, lg(rng)), b = std::pow(10.0, lg(rng)),
                 c = std::pow(10.0, lg(rng));
    const auto r = compare_synth_vs_direct(a, b, c);
    if (!(r.q_synth >= r.q_direct))
      ++dominance_fail;
    if (b <= 1e6) {
      ++strict_checked;
      // Strictness on the gain; the two precisions can round to the same double.
      if (!(r.gain > 0))
        ++strict_fail;
      if (!(r.q_synth > r.q_direct))
        ++rounded_equal;
    }
  }
  const auto unit = compare_synth_vs_direct(1, 1, 1);
  const bool unit_ok = std::abs(unit.q_synth - 5.0 / 3.0) <= kGmExactTol &&
                       std::abs(unit.q_direct - 1.5) <= kGmExactTol;
  const auto lim = compare_synth_vs_direct(1, 1e8, 1);
  const bool limit_ok = std::abs(lim.q_synth - lim.q_direct) <= kGmLimitTol;

  // Monte Carlo: residual variance of x2 regressed on (x1, x4) against 1/q_direct.
  const double s1 = 1.0, s2 = 0.7, s3 = 1.3, s4 = 0.5;
  std::mt19937_64 mc(55);
  std::normal_distribution<double> z(0.0, 1.0);
  double sxx11 = 0, sxx14 = 0, sxx44 = 0, sxy1 = 0, sxy4 = 0, syy = 0;
  for (int i = 0; i < kMcSamples; ++i) {
    const double x1 = std::sqrt(s1) * z(mc);
    const double x2 = x1 + std::sqrt(s2) * z(mc);
    const double x3 = x2 + std::sqrt(s3) * z(mc);
    const double x4 = x3 + std::sqrt(s4) * z(mc);
    sxx11 += x1 * x1;
    sxx14 += x1 * x4;
    sxx44 += x4 * x4;
    sxy1 += x1 * x2;
    sxy4 += x4 * x2;
    syy += x2 * x2;
  }
  const double det = sxx11 * sxx44 - sxx14 * sxx14;
  const double b1 = (sxx44 * sxy1 - sxx14 * sxy4) / det;
  const double b4 = (sxx11 * sxy4 - sxx14 * sxy1) / det;
  const double rss = syy - b1 * sxy1 - b4 * sxy4;
  const double n = kMcSamples;
  const double var_hat = rss / (n - 2);
  const double want = 1.0 / compare_synth_vs_direct(s2, s3, s4).q_direct;
  const double se = want * std::sqrt(2.0 / (n - 3));
  const bool mc_ok = std::abs(var_hat - want) <= kMcSigmas * se;

  return {dominance_fail == 0 && strict_fail == 0 && unit_ok && limit_ok && mc_ok,
          fmt("dominance failures %d/%d, strict gain failures %d/%d (%d equal after rounding), q(1,1,1)=(%.15f, %.15f), "
              "limit gap %.3g, MC var %.6f vs %.6f (%.2f SE)",
              dominance_fail, kGmTriples, strict_fail, strict_checked, rounded_equal, unit.q_synth, unit.q_direct,
              std::abs(lim.q_synth - lim.q_direct), var_hat, want, (var_hat - want) / se)};
}

Outcome criterion_6() {
  const auto &scenarios = equivalence_scenarios();
  int mono_fail = 0, mode_fail = 0, mode_ties = 0, checked = 0;
  double worst_tie = 0;
  for (const auto &base : scenarios) {
    std::optional<double> prev;
    for (int c = 2; c <= 5; ++c) {
      Scenario s = base;
      s.capacity = c;
      const auto obj = optimum(s);
      if (prev && obj && !(*obj <= *prev))
        ++mono_fail;
      if (prev && !obj)
        ++mono_fail;
      if (obj)
        prev = obj;
    }
    Scenario syn = base, cams = base;
    syn.candidate_mode = CandidateMode::AllViews;
    cams.candidate_mode = CandidateMode::CamerasOnly;
    const auto a = optimum(syn), b = optimum(cams);
    // Equal-objective selections are ranked by the tie-break order, so a synth pick
    // may exceed the cameras-only value by rounding only.
    if (b && !(a && (*a <= *b || nearly_equal(*a, *b))))
      ++mode_fail;
    else if (a && b && *a > *b) {
      ++mode_ties;
      worst_tie = std::max(worst_tie, (*a - *b) / *b);
    }
    ++checked;
  }
  return {mono_fail == 0 && mode_fail == 0,
          fmt("%d scenarios: capacity monotonicity failures %d, synth > cameras-only failures %d "
              "(%d tie-broken picks above cameras-only, largest rel excess %.2g)",
              checked, mono_fail, mode_fail, mode_ties, worst_tie)};
}

Outcome criterion_7() {
  std::vector<double> x, y, xu;
  std::string detail;
  double last_dp = 0;
  Scenario largest;
  for (std::int64_t su : {20, 40, 80, 160}) {
    const std::int64_t margin = su / 10;
    const std::int64_t n = su + 2 * margin;
    std::vector<Rational> cams;
    for (std::int64_t t = 0; t < n; t += 4)
      cams.push_back(Rational::from_int(t));
    cams.push_back(Rational::from_int(n));
    Scenario s;
    s.grid = build_grid(1, 5, Rational::from_int(n), cams);
    s.window = {ViewTick{margin}, ViewTick{margin + su - 1}};
    s.capacity = 4;
    s.params.gamma = 0.05;
    s.evaluator = DistortionEvaluator::closed_form(s.params);
    const auto sv = static_cast<double>(Instance(s).candidates().size());

    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto sel = solve(s);
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      best = std::min(best, dt);
      (void)sel;
    }
    x.push_back(std::log(static_cast<double>(su) * sv));
    xu.push_back(std::log(static_cast<double>(su)));
    y.push_back(std::log(best));
    detail += fmt("\n    S_u=%lld S_v=%.0f dp=%.5fs", static_cast<long long>(su), sv, best);
    last_dp = best;
    largest = s;
  }
  auto slope = [&](const std::vector<double> &xs) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / n;
      my += y[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (y[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
  };
  const double k_uv = slope(x), k_u = slope(xu);

  std::string ex_note;
  bool ex_ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    exhaustive_solve(largest);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ex_ok = dt > kExhaustiveFactor * last_dp;
    ex_note = fmt("exhaustive %.3fs (%.0fx dp)", dt, dt / last_dp);
  } catch (const Error &e) {
    ex_ok = e.code() == ErrorCode::TooLarge;
    ex_note = std::string("exhaustive guard: ") + to_string(e.code());
  }
  return {k_uv <= kSlopeMax && ex_ok,
          fmt("slope vs S_u*S_v %.3f (max %.1f), slope vs S_u %.3f, %s", k_uv, kSlopeMax, k_u,
              ex_note.c_str()) +
              detail};
}

Outcome criterion_8() {
  std::string detail;
  bool ok = true;

  // Window left end sweep.
  std::vector<Rational> uls;
  for (int i = 0; i <= 15; ++i)
    uls.push_back({i, 8});
  auto wl = load_scenario_file(data_path("window_left.cfg"));
  wl.capacity = 2;
  const auto r2 = sweep_window_left(wl, uls);
  wl.capacity = 3;
  const auto r3 = sweep_window_left(wl, uls);
  bool gap_monotone = true;
  double max2 = 0, max3 = 0, prev = -1e300;
  for (std::size_t i = 0; i < r2.rows.size(); ++i) {
    const double g2 = *r2.rows[i].psnr_synth_db - *r2.rows[i].psnr_nosynth_db;
    const double g3 = *r3.rows[i].psnr_synth_db - *r3.rows[i].psnr_nosynth_db;
    if (g2 < prev - kTrendTol)
      gap_monotone = false;
    prev = g2;
    max2 = std::max(max2, g2);
    max3 = std::max(max3, g3);
  }
  const bool c3_smaller = max3 <= max2 + kTrendTol;
  ok = ok && gap_monotone && c3_smaller;
  detail += fmt("\n    window-left: C=2 gap non-decreasing=%s; max gap C=2 %.4f dB, C=3 %.4f dB "
                "(C=3 <= C=2: %s)",
                gap_monotone ? "yes" : "no", max2, max3, c3_smaller ? "yes" : "no");

  // Window size sweep.
  std::vector<Rational> deltas;
  for (int d = 1; d <= 12; ++d)
    deltas.push_back(Rational::from_int(d));
  const auto ws = sweep_window_size(load_scenario_file(data_path("window_size.cfg")), deltas, 1000);
  int inversions = 0;
  double worst_inv = 0;
  bool gain_nonneg = true;
  for (std::size_t i = 0; i < ws.rows.size(); ++i) {
    const double g = *ws.rows[i].psnr_synth_db - *ws.rows[i].psnr_nosynth_db;
    gain_nonneg = gain_nonneg && g >= -kTrendTol;
    if (i > 0) {
      const double gp = *ws.rows[i - 1].psnr_synth_db - *ws.rows[i - 1].psnr_nosynth_db;
      if (g > gp + kTrendTol) {
        ++inversions;
        worst_inv = std::max(worst_inv, g - gp);
      }
    }
  }
  const bool ws_ok = gain_nonneg && inversions <= 1 && worst_inv <= kWindowSizeInversion;
  ok = ok && ws_ok;
  detail += fmt("\n    window-size: %d inversion(s), largest %.4f dB (allowed one <= %.2f)",
                inversions, worst_inv, kWindowSizeInversion);

  // Camera randomness sweep.
  const auto rnd = sweep_camera_randomness(load_scenario_file(data_path("randomness.cfg")),
                                           {0.0, 0.05, 0.1, 0.2, 0.3, 0.5}, 400);
  bool rnd_ok = true;
  const double syn0 = *rnd.rows[0].psnr_synth_db, ns0 = *rnd.rows[0].psnr_nosynth_db;
  double worst_drop_diff = -1e300;
  for (const auto &row : rnd.rows) {
    const double ds = syn0 - *row.psnr_synth_db, dn = ns0 - *row.psnr_nosynth_db;
    worst_drop_diff = std::max(worst_drop_diff, ds - dn);
    rnd_ok = rnd_ok && ds <= dn + kTrendTol;
  }
  ok = ok && rnd_ok;
  detail += fmt("\n    randomness: synth drop <= nosynth drop at every variance=%s "
                "(max synth-minus-nosynth drop %.4f dB)",
                rnd_ok ? "yes" : "no", worst_drop_diff);

  // Sampling distance sweep.
  std::vector<int> spacings;
  for (int l = 1; l <= 12; ++l)
    spacings.push_back(l);
  const auto smp =
      sweep_sampling_distance(load_scenario_file(data_path("sampling.cfg")), spacings, 400);
  bool smp_mono = true, smp_dom = true;
  for (std::size_t i = 0; i < smp.rows.size(); ++i) {
    smp_dom = smp_dom && *smp.rows[i].psnr_synth_db >= *smp.rows[i].psnr_nosynth_db - kTrendTol;
    if (i > 0)
      smp_mono = smp_mono &&
                 *smp.rows[i].psnr_synth_db <= *smp.rows[i - 1].psnr_synth_db + kTrendTol &&
                 *smp.rows[i].psnr_nosynth_db <= *smp.rows[i - 1].psnr_nosynth_db + kTrendTol;
  }
  ok = ok && smp_mono && smp_dom;
  detail += fmt("\n    sampling: both curves non-increasing=%s, synth >= nosynth=%s",
                smp_mono ? "yes" : "no", smp_dom ? "yes" : "no");

  return {ok, "qualitative trends" + detail};
}

int run_command(const std::string &cmd) {
  const int rc = std::system((cmd + " 2>/dev/null").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome criterion_9() {
#ifndef REFSEL_CLI_PATH
  return {false, "command line tool was not built"};
#else
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / fmt("refsel_accept_%d", static_cast<int>(::getpid()));
  fs::create_directories(dir);
  const std::string cli = REFSEL_CLI_PATH;
  auto cfg = [](const char *n) { return " --config " + data_path(n); };
  const std::vector<std::pair<std::string, std::string>> cmds{
      {"solve", "solve" + cfg("table_scenario.cfg")},
      {"oracle-exhaustive", "oracle --method exhaustive" + cfg("table_scenario.cfg")},
      {"oracle-treesearch", "oracle --method treesearch" + cfg("window_left.cfg")},
      {"check-assumptions", "check-assumptions" + cfg("window_left.cfg")},
      {"sweep-capacity", "sweep-capacity --c 2,3,4" + cfg("table_scenario.cfg")},
      {"sweep-window-left", "sweep-window-left --ul 0,0.5,1,1.5" + cfg("window_left.cfg")},
      {"sweep-window-size", "sweep-window-size --delta 2,4 --trials 5 --seed 9" + cfg("window_size.cfg")},
      {"sweep-randomness", "sweep-randomness --sigma2 0,0.2 --runs 20 --seed 5" + cfg("randomness.cfg")},
      {"sweep-sampling", "sweep-sampling --spacing 2,4 --runs 10 --seed 3" + cfg("sampling.cfg")},
      {"threshold-capacity", "threshold-capacity --ur 5,6 --c-max 10" + cfg("threshold.cfg")},
      {"gm-compare", "gm-compare --s2 1,2 --s3 1,3 --s4 1,4"},
      {"reduce-setcover", "reduce-setcover --k 2 --setcover " + data_path("setcover.csv")}};
  int failures = 0;
  std::string detail;
  for (const auto &[name, args] : cmds) {
    const auto a = dir / (name + "_a.csv"), b = dir / (name + "_b.csv");
    const int ra = run_command(cli + " " + args + " --out " + a.string());
    const int rb = run_command(cli + " " + args + " --out " + b.string());
    const auto ca = slurp(a), cb = slurp(b);
    const bool same = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
    failures += !same;
    if (!same)
      detail += fmt("\n    %s: exit %d/%d, %zu/%zu bytes, identical=%s", name.c_str(), ra, rb,
                    ca.size(), cb.size(), ca == cb ? "yes" : "no");
  }
  fs::remove_all(dir);
  return {failures == 0, fmt("%zu subcommands run twice, %d differ or failed", cmds.size(), failures) +
                             detail};
#endif
}

} // namespace

int main(int argc, char **argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3,
                                                       criterion_4, criterion_5, criterion_6,
                                                       criterion_7, criterion_8, criterion_9};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i)
    selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i)
      selected.push_back(i);

  int failed = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::printf("criterion %d: unknown\n", id);
      ++failed;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(id - 1)]();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s (%.1fs) %s\n", id, o.pass ? "PASS" : "FAIL", dt, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
