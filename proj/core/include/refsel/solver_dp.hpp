#pragma once

#include <refsel/instance.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace refsel {

struct DpOptions {
  bool memoize{true};
};

/// Picks the better left reference at an explicit probe: v1 unless v2 is strictly better.
ViewTick lambda_select(ViewTick v1, ViewTick v2, const Instance &inst, ViewTick probe_u,
                       ViewTick probe_vr);

/// Canonical probe: first window tick after max(v1, v2), paired with the rightmost
/// candidate reference. Throws NoValidProbe if no tick lies strictly between them.
ViewTick lambda_select(ViewTick v1, ViewTick v2, const Instance &inst);

/// Recursions over (segment start, current left reference, remaining budget).
/// All reference arguments must be candidate views of the instance.
class DpSolver {
public:
  DpSolver(const Instance &inst, int max_k, DpOptions options = {});
  ~DpSolver();
  DpSolver(const DpSolver &) = delete;
  DpSolver &operator=(const DpSolver &) = delete;

  /// Best distortion of window ticks [u_l, right] with left reference v_l and k more references.
  double phi(ViewTick u_l, ViewTick v_l, int k);

  /// Best distortion of window ticks from u_l up to the shared right reference v_r
  /// (inclusive of the window's right end when v_r reaches it), placing n new left references.
  double psi(ViewTick u_l, ViewTick v_l, ViewTick v_r, int n);

  /// Argmin over leftmost reference v <= window.left of phi(window.left, v, capacity - 1).
  Selection solve(int capacity);

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

Selection solve(const Scenario &s, DpOptions options = {});
Selection solve(const Instance &inst, DpOptions options = {});

} // namespace refsel
