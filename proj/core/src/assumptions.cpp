#include <refsel/assumptions.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace refsel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double ref_of(const std::vector<double> &refD, ViewTick v) {
  if (v.ticks < 0 || v.ticks >= static_cast<std::int64_t>(refD.size()))
    return kInf;
  return refD[static_cast<std::size_t>(v.ticks)];
}

double cost(ViewTick u, ViewTick vl, ViewTick vr, const ViewGrid &grid,
            const DistortionEvaluator &eval, const std::vector<double> &refD) {
  if (u == vl)
    return ref_of(refD, vl);
  if (u == vr)
    return ref_of(refD, vr);
  return eval(u, vl, vr, ref_of(refD, vl), ref_of(refD, vr), grid);
}

std::vector<ViewTick> candidate_views(const ViewGrid &grid, const std::vector<double> &refD) {
  std::vector<ViewTick> out;
  for (auto t = grid.min_tick.ticks; t <= grid.max_tick.ticks; ++t)
    if (std::isfinite(ref_of(refD, ViewTick{t})))
      out.push_back(ViewTick{t});
  return out;
}

struct PairCosts {
  ViewTick vl, vr;
  std::int64_t lo{0}, hi{-1}; // window ticks enclosed by the pair
  std::vector<double> d;      // indexed by u - lo
};
} // namespace

AssumptionReport check_shared_optimality(const ViewGrid &grid, const NavigationWindow &window,
                                         const DistortionEvaluator &eval,
                                         const std::vector<double> &refD) {
  const auto cands = candidate_views(grid, refD);
  std::vector<PairCosts> pairs;
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      PairCosts p{cands[i], cands[j], 0, 0, {}};
      p.lo = std::max(p.vl.ticks, window.left.ticks);
      p.hi = std::min(p.vr.ticks, window.right.ticks);
      if (p.lo > p.hi)
        continue;
      for (auto t = p.lo; t <= p.hi; ++t)
        p.d.push_back(cost(ViewTick{t}, p.vl, p.vr, grid, eval, refD));
      pairs.push_back(std::move(p));
    }

  for (const auto &a : pairs)
    for (const auto &b : pairs) {
      if (&a == &b)
        continue;
      const auto lo = std::max(a.lo, b.lo);
      const auto hi = std::min(a.hi, b.hi);
      std::int64_t first_lt = -1;
      std::int64_t first_gt = -1;
      for (auto t = lo; t <= hi && (first_lt < 0 || first_gt < 0); ++t) {
        const double da = a.d[static_cast<std::size_t>(t - a.lo)];
        const double db = b.d[static_cast<std::size_t>(t - b.lo)];
        if (da < db) {
          if (first_lt < 0)
            first_lt = t;
        } else if (da > db && first_gt < 0) {
          first_gt = t;
        }
      }
      if (first_lt >= 0 && first_gt >= 0) {
        Counterexample c;
        c.u = ViewTick{first_lt};
        c.u2 = ViewTick{first_gt};
        c.vl = a.vl;
        c.vr = a.vr;
        c.vl2 = b.vl;
        c.vr2 = b.vr;
        c.lhs_first = a.d[static_cast<std::size_t>(first_lt - a.lo)];
        c.lhs_second = b.d[static_cast<std::size_t>(first_lt - b.lo)];
        c.rhs_first = a.d[static_cast<std::size_t>(first_gt - a.lo)];
        c.rhs_second = b.d[static_cast<std::size_t>(first_gt - b.lo)];
        return {false, c};
      }
    }
  return {};
}

AssumptionReport check_independence(const ViewGrid &grid, const NavigationWindow &window,
                                    const DistortionEvaluator &eval,
                                    const std::vector<double> &refD) {
  const auto cands = candidate_views(grid, refD);
  std::vector<double> table;
  for (auto t = window.left.ticks; t <= window.right.ticks; ++t) {
    const ViewTick u{t};
    const auto split = std::lower_bound(cands.begin(), cands.end(), u);
    const std::vector<ViewTick> lefts(cands.begin(), split);
    const auto right_begin = (split != cands.end() && *split == u) ? split + 1 : split;
    const std::vector<ViewTick> rights(right_begin, cands.end());
    if (lefts.size() < 2 || rights.empty())
      continue;

    const auto nr = rights.size();
    table.assign(lefts.size() * nr, 0.0);
    for (std::size_t i = 0; i < lefts.size(); ++i)
      for (std::size_t r = 0; r < nr; ++r)
        table[i * nr + r] = cost(u, lefts[i], rights[r], grid, eval, refD);

    for (std::size_t i = 0; i < lefts.size(); ++i)
      for (std::size_t k = 0; k < lefts.size(); ++k) {
        if (i == k)
          continue;
        std::ptrdiff_t first_lt = -1;
        std::ptrdiff_t first_gt = -1;
        for (std::size_t r = 0; r < nr && (first_lt < 0 || first_gt < 0); ++r) {
          const double a = table[i * nr + r];
          const double b = table[k * nr + r];
          if (a < b) {
            if (first_lt < 0)
              first_lt = static_cast<std::ptrdiff_t>(r);
          } else if (a > b && first_gt < 0) {
            first_gt = static_cast<std::ptrdiff_t>(r);
          }
        }
        if (first_lt >= 0 && first_gt >= 0) {
          const auto rl = static_cast<std::size_t>(first_lt);
          const auto rg = static_cast<std::size_t>(first_gt);
          Counterexample c;
          c.u = u;
          c.u2 = u;
          c.vl = lefts[i];
          c.vl2 = lefts[k];
          c.vr = rights[rl];
          c.vr2 = rights[rg];
          c.lhs_first = table[i * nr + rl];
          c.lhs_second = table[k * nr + rl];
          c.rhs_first = table[i * nr + rg];
          c.rhs_second = table[k * nr + rg];
          return {false, c};
        }
      }
  }
  return {};
}

bool replay_shared_optimality(const Counterexample &c, const ViewGrid &grid,
                              const DistortionEvaluator &eval, const std::vector<double> &refD) {
  const double a_u = cost(c.u, c.vl, c.vr, grid, eval, refD);
  const double b_u = cost(c.u, c.vl2, c.vr2, grid, eval, refD);
  const double a_u2 = cost(c.u2, c.vl, c.vr, grid, eval, refD);
  const double b_u2 = cost(c.u2, c.vl2, c.vr2, grid, eval, refD);
  return a_u < b_u && a_u2 > b_u2;
}

bool replay_independence(const Counterexample &c, const ViewGrid &grid,
                         const DistortionEvaluator &eval, const std::vector<double> &refD) {
  const double a = cost(c.u, c.vl, c.vr, grid, eval, refD);
  const double b = cost(c.u, c.vl2, c.vr, grid, eval, refD);
  const double a2 = cost(c.u, c.vl, c.vr2, grid, eval, refD);
  const double b2 = cost(c.u, c.vl2, c.vr2, grid, eval, refD);
  return a < b && a2 > b2;
}

} // namespace refsel
