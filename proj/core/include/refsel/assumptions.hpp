#pragma once

#include <refsel/distortion.hpp>
#include <refsel/view_grid.hpp>

#include <optional>
#include <vector>

namespace refsel {

/// Witness of a failed implication. The left side compares pair (vl, vr) against
/// pair (vl2, vr2) at u, the right side at u2. For the independence check u2 == u
/// and the two sides compare (vl, vr) vs (vl2, vr) and (vl, vr2) vs (vl2, vr2).
struct Counterexample {
  ViewTick u, u2;
  ViewTick vl, vr, vl2, vr2;
  double lhs_first{0}, lhs_second{0};
  double rhs_first{0}, rhs_second{0};
};

struct AssumptionReport {
  bool holds{true};
  std::optional<Counterexample> counterexample;
};

/// refD is indexed by tick; +inf marks views that are not candidate references.
/// Ties never count as a violation.
AssumptionReport check_shared_optimality(const ViewGrid &grid, const NavigationWindow &window,
                                         const DistortionEvaluator &eval,
                                         const std::vector<double> &refD);

AssumptionReport check_independence(const ViewGrid &grid, const NavigationWindow &window,
                                    const DistortionEvaluator &eval,
                                    const std::vector<double> &refD);

/// Re-evaluates a witness and reports whether it still breaks the implication.
bool replay_shared_optimality(const Counterexample &c, const ViewGrid &grid,
                              const DistortionEvaluator &eval, const std::vector<double> &refD);
bool replay_independence(const Counterexample &c, const ViewGrid &grid,
                         const DistortionEvaluator &eval, const std::vector<double> &refD);

} // namespace refsel
