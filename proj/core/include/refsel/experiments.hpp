#pragma once

#include <refsel/instance.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

namespace refsel {

inline constexpr double kDefaultPeak = 255.0;

double psnr_of(const Selection &selection, std::int64_t window_tick_count,
               double peak = kDefaultPeak);

struct SweepRow {
  double sweep_value{0};
  std::optional<double> psnr_synth_db;   // empty when infeasible
  std::optional<double> psnr_nosynth_db; // empty when infeasible
  std::vector<ViewTick> refs_synth;
  std::vector<ViewTick> refs_nosynth;
};

struct SweepResult {
  std::int64_t ticks_per_unit{1};
  std::vector<SweepRow> rows;
};

struct ExperimentOptions {
  double peak{kDefaultPeak};
};

/// Generator for one Monte-Carlo run, independent of scheduling order.
std::mt19937_64 run_rng(std::uint64_t seed, std::uint64_t run_index);

/// Solves in the requested candidate mode; empty when no covering selection exists.
std::optional<Selection> solve_mode(Scenario s, CandidateMode mode);

SweepResult sweep_capacity(const Scenario &base, std::vector<int> c_values,
                           const ExperimentOptions &opt = {});

/// Window [ul, base.window.right] for each ul.
SweepResult sweep_window_left(const Scenario &base, std::vector<Rational> ul_values,
                              const ExperimentOptions &opt = {});

/// Mean PSNR over windows [s, s + delta] inside the camera hull; all starts are
/// used when there are at most n_trials of them, otherwise n_trials are sampled.
SweepResult sweep_window_size(const Scenario &base, std::vector<Rational> delta_values,
                              int n_trials, const ExperimentOptions &opt = {});

/// Mean PSNR over n_runs random camera sets: each base camera is moved by
/// N(0, sigma^2) units, snapped to the lattice and clamped to the grid.
SweepResult sweep_camera_randomness(const Scenario &base, std::vector<double> sigma_sq_values,
                                    int n_runs = 400, const ExperimentOptions &opt = {});

/// Every grid tick is a viewpoint and one in `spacing` is a camera. Windows of
/// 20 viewpoint steps are placed uniformly inside the camera hull; every placement
/// is used when there are at most n_runs of them.
SweepResult sweep_sampling_distance(const Scenario &base, std::vector<int> spacing_values,
                                    int n_runs = 400, const ExperimentOptions &opt = {});

inline constexpr std::int64_t kSamplingWindowSteps = 20;

struct ThresholdRow {
  double window_right{0};
  std::optional<int> c_star; // empty when synthesis still helps at c_max
};

/// Smallest C in [2, c_max] from which synthesis gives no PSNR gain for all larger C.
std::vector<ThresholdRow> threshold_capacity(const Scenario &base,
                                             std::vector<Rational> ur_values, int c_max,
                                             const ExperimentOptions &opt = {});

void write_sweep_csv(std::ostream &out, const SweepResult &result);
void write_threshold_csv(std::ostream &out, const std::vector<ThresholdRow> &rows);

} // namespace refsel
