#include <refsel/error.hpp>
#include <refsel/experiments.hpp>
#include <refsel/solver_dp.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace refsel {

namespace {
struct ModeStats {
  double sum{0};
  int count{0};
  bool failed{false};

  void add(const std::optional<Selection> &sel, std::int64_t n, double peak) {
    if (!sel) {
      failed = true;
      return;
    }
    sum += psnr_of(*sel, n, peak);
    ++count;
  }

  std::optional<double> mean() const {
    if (failed || count == 0)
      return std::nullopt;
    return sum / count;
  }
};

SweepRow solve_both(const Scenario &s, double value, double peak) {
  SweepRow row;
  row.sweep_value = value;
  const auto n = s.window.tick_count();
  if (const auto sel = solve_mode(s, CandidateMode::AllViews)) {
    row.psnr_synth_db = psnr_of(*sel, n, peak);
    row.refs_synth = sel->refs;
  }
  if (const auto sel = solve_mode(s, CandidateMode::CamerasOnly)) {
    row.psnr_nosynth_db = psnr_of(*sel, n, peak);
    row.refs_nosynth = sel->refs;
  }
  return row;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_psnr(const std::optional<double> &v) {
  if (!v)
    return "infeasible";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

std::string join_refs(const std::vector<ViewTick> &refs, std::int64_t ticks_per_unit) {
  std::string out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i)
      out += ';';
    out += format_units(refs[i], ticks_per_unit);
  }
  return out;
}

bool less_rational(const Rational &a, const Rational &b) {
  return static_cast<long double>(a.num) * b.den < static_cast<long double>(b.num) * a.den;
}
} // namespace

double psnr_of(const Selection &selection, std::int64_t window_tick_count, double peak) {
  const double mse = selection.objective / static_cast<double>(window_tick_count);
  return 10.0 * std::log10(peak * peak / std::max(mse, 1e-12));
}

std::mt19937_64 run_rng(std::uint64_t seed, std::uint64_t run_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run_index),
                    static_cast<std::uint32_t>(run_index >> 32)};
  return std::mt19937_64(seq);
}

std::optional<Selection> solve_mode(Scenario s, CandidateMode mode) {
  s.candidate_mode = mode;
  try {
    return solve(s);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::Infeasible || e.code() == ErrorCode::CoverageGap)
      return std::nullopt;
    throw;
  }
}

SweepResult sweep_capacity(const Scenario &base, std::vector<int> c_values,
                           const ExperimentOptions &opt) {
  std::sort(c_values.begin(), c_values.end());
  SweepResult result{base.grid.ticks_per_unit, {}};
  for (int c : c_values) {
    if (c < 2)
      throw Error(ErrorCode::InvalidParameters, "capacity values must be at least 2");
    Scenario s = base;
    s.capacity = c;
    result.rows.push_back(solve_both(s, c, opt.peak));
  }
  return result;
}

SweepResult sweep_window_left(const Scenario &base, std::vector<Rational> ul_values,
                              const ExperimentOptions &opt) {
  std::sort(ul_values.begin(), ul_values.end(), less_rational);
  SweepResult result{base.grid.ticks_per_unit, {}};
  for (const auto &ul : ul_values) {
    Scenario s = base;
    s.window.left = s.grid.to_tick(ul);
    validate_window(s.window, s.grid);
    result.rows.push_back(solve_both(s, ul.to_double(), opt.peak));
  }
  return result;
}

SweepResult sweep_window_size(const Scenario &base, std::vector<Rational> delta_values,
                              int n_trials, const ExperimentOptions &opt) {
  if (n_trials < 1)
    throw Error(ErrorCode::InvalidParameters, "n_trials must be positive");
  std::sort(delta_values.begin(), delta_values.end(), less_rational);
  SweepResult result{base.grid.ticks_per_unit, {}};
  const auto hull_lo = base.grid.cameras.front().ticks;
  const auto hull_hi = base.grid.cameras.back().ticks;

  for (std::size_t row = 0; row < delta_values.size(); ++row) {
    const auto width = base.grid.to_tick(delta_values[row]).ticks;
    if (width < 1 || width > hull_hi - hull_lo)
      throw Error(ErrorCode::InvalidParameters, "window size does not fit inside the camera hull");
    const auto n_starts = hull_hi - width - hull_lo + 1;

    std::vector<std::int64_t> starts;
    if (n_starts <= n_trials) {
      for (auto t = hull_lo; t + width <= hull_hi; ++t)
        starts.push_back(t);
    } else {
      for (int trial = 0; trial < n_trials; ++trial) {
        auto rng = run_rng(base.seed, static_cast<std::uint64_t>(row) << 32 | static_cast<std::uint64_t>(trial));
        std::uniform_int_distribution<std::int64_t> pick(hull_lo, hull_hi - width);
        starts.push_back(pick(rng));
      }
    }

    ModeStats synth, nosynth;
    for (auto start : starts) {
      Scenario s = base;
      s.window = {ViewTick{start}, ViewTick{start + width}};
      const auto n = s.window.tick_count();
      synth.add(solve_mode(s, CandidateMode::AllViews), n, opt.peak);
      nosynth.add(solve_mode(s, CandidateMode::CamerasOnly), n, opt.peak);
    }
    SweepRow r;
    r.sweep_value = delta_values[row].to_double();
    r.psnr_synth_db = synth.mean();
    r.psnr_nosynth_db = nosynth.mean();
    result.rows.push_back(r);
  }
  return result;
}

namespace {
constexpr int kMaxRedraws = 10000;

std::vector<ViewTick> perturbed_cameras(const Scenario &base, double sigma, std::mt19937_64 &rng) {
  const auto &grid = base.grid;
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::vector<ViewTick> cams;
    bool ok = true;
    for (const auto &c : grid.cameras) {
      int tries = 0;
      while (true) {
        const double offset = sigma * noise(rng) * static_cast<double>(grid.ticks_per_unit);
        auto t = c.ticks + static_cast<std::int64_t>(std::llround(offset));
        t = std::clamp(t, grid.min_tick.ticks, grid.max_tick.ticks);
        if (std::find(cams.begin(), cams.end(), ViewTick{t}) == cams.end()) {
          cams.push_back(ViewTick{t});
          break;
        }
        if (++tries > kMaxRedraws) {
          ok = false;
          break;
        }
      }
      if (!ok)
        break;
    }
    if (!ok)
      continue;
    std::sort(cams.begin(), cams.end());
    if (cams.front() <= base.window.left && cams.back() >= base.window.right)
      return cams;
  }
  throw Error(ErrorCode::InvalidParameters, "could not draw a camera set covering the window");
}
} // namespace

SweepResult sweep_camera_randomness(const Scenario &base, std::vector<double> sigma_sq_values,
                                    int n_runs, const ExperimentOptions &opt) {
  if (n_runs < 1)
    throw Error(ErrorCode::InvalidParameters, "n_runs must be positive");
  std::sort(sigma_sq_values.begin(), sigma_sq_values.end());
  SweepResult result{base.grid.ticks_per_unit, {}};
  const auto n = base.window.tick_count();
  for (double sigma_sq : sigma_sq_values) {
    if (!(sigma_sq >= 0))
      throw Error(ErrorCode::InvalidParameters, "variance must be non-negative");
    const double sigma = std::sqrt(sigma_sq);
    ModeStats synth, nosynth;
    for (int run = 0; run < n_runs; ++run) {
      auto rng = run_rng(base.seed, static_cast<std::uint64_t>(run));
      Scenario s = base;
      s.grid.cameras = perturbed_cameras(base, sigma, rng);
      synth.add(solve_mode(s, CandidateMode::AllViews), n, opt.peak);
      nosynth.add(solve_mode(s, CandidateMode::CamerasOnly), n, opt.peak);
    }
    SweepRow r;
    r.sweep_value = sigma_sq;
    r.psnr_synth_db = synth.mean();
    r.psnr_nosynth_db = nosynth.mean();
    result.rows.push_back(r);
  }
  return result;
}

SweepResult sweep_sampling_distance(const Scenario &base, std::vector<int> spacing_values,
                                    int n_runs, const ExperimentOptions &opt) {
  if (n_runs < 1)
    throw Error(ErrorCode::InvalidParameters, "n_runs must be positive");
  std::sort(spacing_values.begin(), spacing_values.end());
  SweepResult result{1, {}};

  ViewGrid grid;
  grid.ticks_per_unit = 1;
  grid.unit_spacing_mm =
      base.grid.unit_spacing_mm / static_cast<double>(base.grid.ticks_per_unit);
  grid.min_tick = ViewTick{0};
  grid.max_tick = ViewTick{base.grid.max_tick.ticks - base.grid.min_tick.ticks};

  for (int spacing : spacing_values) {
    if (spacing < 1)
      throw Error(ErrorCode::InvalidParameters, "sampling distance must be positive");
    Scenario s = base;
    s.grid = grid;
    for (std::int64_t t = 0; t <= grid.max_tick.ticks; t += spacing)
      s.grid.cameras.push_back(ViewTick{t});
    const auto hull_hi = s.grid.cameras.back().ticks;
    if (s.grid.cameras.size() < 2 || hull_hi < kSamplingWindowSteps)
      throw Error(ErrorCode::InvalidParameters, "grid too short for the sampling distance");
    const auto n_starts = hull_hi - kSamplingWindowSteps + 1;

    std::vector<std::int64_t> starts;
    if (n_starts <= n_runs) {
      for (std::int64_t t = 0; t < n_starts; ++t)
        starts.push_back(t);
    } else {
      for (int run = 0; run < n_runs; ++run) {
        auto rng = run_rng(base.seed, static_cast<std::uint64_t>(run));
        const double f = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        starts.push_back(
            std::min(n_starts - 1, static_cast<std::int64_t>(f * static_cast<double>(n_starts))));
      }
    }

    ModeStats synth, nosynth;
    for (auto start : starts) {
      s.window = {ViewTick{start}, ViewTick{start + kSamplingWindowSteps}};
      const auto n = s.window.tick_count();
      synth.add(solve_mode(s, CandidateMode::AllViews), n, opt.peak);
      nosynth.add(solve_mode(s, CandidateMode::CamerasOnly), n, opt.peak);
    }
    SweepRow r;
    r.sweep_value = spacing;
    r.psnr_synth_db = synth.mean();
    r.psnr_nosynth_db = nosynth.mean();
    result.rows.push_back(r);
  }
  return result;
}

std::vector<ThresholdRow> threshold_capacity(const Scenario &base,
                                             std::vector<Rational> ur_values, int c_max,
                                             const ExperimentOptions &opt) {
  if (c_max < 2)
    throw Error(ErrorCode::InvalidParameters, "c_max must be at least 2");
  std::sort(ur_values.begin(), ur_values.end(), less_rational);
  std::vector<ThresholdRow> rows;
  for (const auto &ur : ur_values) {
    Scenario s = base;
    s.window.right = s.grid.to_tick(ur);
    validate_window(s.window, s.grid);
    ThresholdRow row{ur.to_double(), std::nullopt};
    for (int c = c_max; c >= 2; --c) {
      s.capacity = c;
      const auto n = s.window.tick_count();
      const auto synth = solve_mode(s, CandidateMode::AllViews);
      const auto nosynth = solve_mode(s, CandidateMode::CamerasOnly);
      bool no_gain = false;
      if (synth && nosynth)
        no_gain = psnr_of(*synth, n, opt.peak) - psnr_of(*nosynth, n, opt.peak) <= 1e-9;
      if (!no_gain)
        break;
      row.c_star = c;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream &out, const SweepResult &result) {
  out << "sweep_value,psnr_synth_db,psnr_nosynth_db,refs_synth,refs_nosynth\n";
  for (const auto &r : result.rows)
    out << format_value(r.sweep_value) << ',' << format_psnr(r.psnr_synth_db) << ','
        << format_psnr(r.psnr_nosynth_db) << ',' << join_refs(r.refs_synth, result.ticks_per_unit)
        << ',' << join_refs(r.refs_nosynth, result.ticks_per_unit) << '\n';
}

void write_threshold_csv(std::ostream &out, const std::vector<ThresholdRow> &rows) {
  out << "window_right,c_star\n";
  for (const auto &r : rows)
    out << format_value(r.window_right) << ','
        << (r.c_star ? std::to_string(*r.c_star) : std::string("none")) << '\n';
}

} // namespace refsel
