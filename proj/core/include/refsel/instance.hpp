#pragma once

#include <refsel/distortion.hpp>
#include <refsel/view_grid.hpp>

#include <cstdint>
#include <vector>

namespace refsel {

enum class CandidateMode { AllViews, CamerasOnly };

struct Scenario {
  ViewGrid grid;
  NavigationWindow window;
  int capacity{2};
  SynthParams params;
  DistortionEvaluator evaluator;
  CandidateMode candidate_mode{CandidateMode::AllViews};
  std::uint64_t seed{0};
};

void validate(const Scenario &s);

/// Reference pair used for one window tick; vl == vr == u when u itself is a reference.
struct PairChoice {
  ViewTick vl;
  ViewTick vr;
};

struct Selection {
  std::vector<ViewTick> refs;
  ViewTick window_left;
  std::vector<PairChoice> assignment; // one entry per window tick, left to right
  std::vector<double> per_view;
  double objective{0};
};

/// Distortion of every grid tick when used as a reference. Non-candidates
/// (unsynthesizable views, or virtual views in cameras-only mode) hold +inf.
std::vector<double> reference_distortions(const Scenario &s);

/// Scenario plus its reference distortion table. Holds a reference to the scenario,
/// which must outlive it.
class Instance {
public:
  explicit Instance(const Scenario &s);
  Instance(const Scenario &s, std::vector<double> ref_distortion);

  const Scenario &scenario() const { return m_scenario; }
  const ViewGrid &grid() const { return m_scenario.grid; }
  const NavigationWindow &window() const { return m_scenario.window; }
  const std::vector<ViewTick> &candidates() const { return m_candidates; }
  const std::vector<double> &ref_distortions() const { return m_ref; }

  double ref_distortion(ViewTick v) const;

  /// d_u(vl, vr) with reference distortions from the table. A tick that coincides
  /// with one of the two references takes that reference's distortion.
  double pair_cost(ViewTick u, ViewTick vl, ViewTick vr) const;

private:
  const Scenario &m_scenario;
  std::vector<double> m_ref;
  std::vector<ViewTick> m_candidates;
};

/// Per-tick best pair (or passthrough) over refs, summed over the window.
/// Throws CoverageGapError when some window tick has no enclosing pair.
Selection aggregate_distortion(std::vector<ViewTick> refs, const Instance &inst);
Selection aggregate_distortion(std::vector<ViewTick> refs, const Scenario &s);

/// Objective tolerance used when deciding that two selections tie.
bool nearly_equal(double a, double b);

/// Tie-break order on selections of equal objective: fewer references first,
/// then lexicographically smaller tick sequence.
bool preferred_refs(const std::vector<ViewTick> &a, const std::vector<ViewTick> &b);

} // namespace refsel
