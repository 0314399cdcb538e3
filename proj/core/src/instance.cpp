#include <refsel/error.hpp>
#include <refsel/instance.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace refsel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate(const Scenario &s) {
  if (s.grid.cameras.size() < 2)
    throw Error(ErrorCode::EmptyCameraSet, "at least two cameras are required");
  validate_window(s.window, s.grid);
  if (s.capacity < 2)
    throw Error(ErrorCode::Infeasible, "capacity must be at least 2");
  validate(s.params);
}

std::vector<double> reference_distortions(const Scenario &s) {
  const auto n = static_cast<std::size_t>(s.grid.max_tick.ticks + 1);
  std::vector<double> ref(n, kInf);
  for (const auto &c : s.grid.cameras)
    ref[static_cast<std::size_t>(c.ticks)] = s.params.d_camera;
  if (s.candidate_mode == CandidateMode::CamerasOnly)
    return ref;
  const auto first = s.grid.cameras.front().ticks;
  const auto last = s.grid.cameras.back().ticks;
  for (auto t = first + 1; t < last; ++t) {
    const ViewTick v{t};
    if (!s.grid.is_camera(v))
      ref[static_cast<std::size_t>(t)] = reference_distortion(v, s.grid, s.evaluator, s.params);
  }
  return ref;
}

Instance::Instance(const Scenario &s) : Instance(s, reference_distortions(s)) {}

Instance::Instance(const Scenario &s, std::vector<double> ref_distortion)
    : m_scenario(s), m_ref(std::move(ref_distortion)) {
  m_ref.resize(static_cast<std::size_t>(s.grid.max_tick.ticks + 1), kInf);
  for (std::size_t t = 0; t < m_ref.size(); ++t)
    if (std::isfinite(m_ref[t]) && static_cast<std::int64_t>(t) >= s.grid.min_tick.ticks)
      m_candidates.push_back(ViewTick{static_cast<std::int64_t>(t)});
}

double Instance::ref_distortion(ViewTick v) const {
  if (v.ticks < 0 || v.ticks >= static_cast<std::int64_t>(m_ref.size()))
    return kInf;
  return m_ref[static_cast<std::size_t>(v.ticks)];
}

double Instance::pair_cost(ViewTick u, ViewTick vl, ViewTick vr) const {
  if (u == vl)
    return ref_distortion(vl);
  if (u == vr)
    return ref_distortion(vr);
  return m_scenario.evaluator(u, vl, vr, ref_distortion(vl), ref_distortion(vr), grid());
}

Selection aggregate_distortion(std::vector<ViewTick> refs, const Instance &inst) {
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());

  const auto &w = inst.window();
  Selection sel;
  sel.refs = refs;
  sel.window_left = w.left;
  sel.assignment.reserve(static_cast<std::size_t>(w.tick_count()));
  sel.per_view.reserve(static_cast<std::size_t>(w.tick_count()));

  std::vector<long long> gaps;
  for (auto t = w.left.ticks; t <= w.right.ticks; ++t) {
    const ViewTick u{t};
    const auto split = std::lower_bound(refs.begin(), refs.end(), u);
    const bool is_ref = split != refs.end() && *split == u;
    double best = kInf;
    PairChoice choice{u, u};
    bool covered = is_ref;
    if (is_ref)
      best = inst.ref_distortion(u);

    // Left references at or before u (closest first), right references at or after u.
    const auto right_begin = split;
    const auto left_end = is_ref ? split + 1 : split;
    for (auto l = left_end; l != refs.begin();) {
      --l;
      for (auto r = right_begin; r != refs.end(); ++r) {
        if (*l == *r)
          continue;
        covered = true;
        const double c = inst.pair_cost(u, *l, *r);
        if (c < best) {
          best = c;
          choice = {*l, *r};
        }
      }
    }
    if (!covered)
      gaps.push_back(t);
    sel.assignment.push_back(choice);
    sel.per_view.push_back(best);
  }
  if (!gaps.empty())
    throw CoverageGapError(std::move(gaps));

  for (double d : sel.per_view)
    sel.objective += d;
  return sel;
}

Selection aggregate_distortion(std::vector<ViewTick> refs, const Scenario &s) {
  const Instance inst(s);
  return aggregate_distortion(std::move(refs), inst);
}

bool nearly_equal(double a, double b) {
  if (a == b)
    return true;
  if (!std::isfinite(a) || !std::isfinite(b))
    return false;
  return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool preferred_refs(const std::vector<ViewTick> &a, const std::vector<ViewTick> &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

} // namespace refsel
