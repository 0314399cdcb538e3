#include <refsel/error.hpp>
#include <refsel/solver_oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace refsel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_guard(std::size_t n, int capacity) {
  if (count_subsets(n, capacity) > kOracleSubsetLimit)
    throw Error(ErrorCode::TooLarge, "oracle would enumerate more than " +
                                         std::to_string(kOracleSubsetLimit) + " subsets");
}

// Pair costs over the window for every ordered candidate pair, plus passthrough values.
class CostTable {
public:
  CostTable(const Instance &inst, std::vector<ViewTick> cands)
      : m_cands(std::move(cands)), m_ul(inst.window().left.ticks),
        m_ur(inst.window().right.ticks) {
    const auto m = m_cands.size();
    const auto n = static_cast<std::size_t>(m_ur - m_ul + 1);
    m_n = n;
    m_m = m;
    m_pair.assign(m * m * n, kInf);
    m_self.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
      m_self[a] = inst.ref_distortion(m_cands[a]);
      for (std::size_t b = a + 1; b < m; ++b) {
        const auto lo = std::max(m_cands[a].ticks, m_ul);
        const auto hi = std::min(m_cands[b].ticks, m_ur);
        for (auto u = lo; u <= hi; ++u)
          m_pair[(a * m + b) * n + static_cast<std::size_t>(u - m_ul)] =
              inst.pair_cost(ViewTick{u}, m_cands[a], m_cands[b]);
      }
    }
  }

  std::size_t size() const { return m_m; }
  std::int64_t tick(std::size_t a) const { return m_cands[a].ticks; }
  std::int64_t ul() const { return m_ul; }
  std::int64_t ur() const { return m_ur; }

  double pair(std::size_t a, std::size_t b, std::int64_t u) const {
    return m_pair[(a * m_m + b) * m_n + static_cast<std::size_t>(u - m_ul)];
  }

  /// Best cost of tick u from sorted reference indices; +inf if uncovered.
  double best(std::int64_t u, const std::vector<std::size_t> &refs) const {
    double best = kInf;
    for (std::size_t x = 0; x < refs.size(); ++x) {
      const auto tx = tick(refs[x]);
      if (tx > u)
        break;
      if (tx == u)
        best = std::min(best, m_self[refs[x]]);
      for (std::size_t y = refs.size(); y-- > x + 1;) {
        if (tick(refs[y]) < u)
          break;
        best = std::min(best, pair(refs[x], refs[y], u));
      }
    }
    return best;
  }

  double range_sum(std::int64_t a, std::int64_t b, const std::vector<std::size_t> &refs) const {
    double total = 0;
    for (auto u = std::max(a, m_ul); u <= std::min(b, m_ur); ++u)
      total += best(u, refs);
    return total;
  }

  std::vector<ViewTick> ticks_of(const std::vector<std::size_t> &refs) const {
    std::vector<ViewTick> out;
    for (auto r : refs)
      out.push_back(m_cands[r]);
    return out;
  }

private:
  std::vector<ViewTick> m_cands;
  std::int64_t m_ul, m_ur;
  std::size_t m_n{0}, m_m{0};
  std::vector<double> m_pair;
  std::vector<double> m_self;
};

struct Best {
  double value{kInf};
  std::vector<ViewTick> refs;

  void offer(double v, std::vector<ViewTick> r) {
    if (std::isnan(v))
      return;
    const bool tie = nearly_equal(v, value);
    if ((v < value && !tie) || (tie && std::isfinite(v) && preferred_refs(r, refs))) {
      value = v;
      refs = std::move(r);
    }
  }

  void offer_from(const Best &sub, double head) { offer(head + sub.value, sub.refs); }
};

class TreeSearch {
public:
  TreeSearch(const CostTable &table, int capacity) : m_t(table), m_capacity(capacity) {}

  Best run() {
    std::vector<std::size_t> chosen;
    return phi(m_t.ul(), chosen, m_capacity);
  }

private:
  // Some tick in [u_l, min(v_i, U_R)] would do better with a right reference
  // beyond the current last one.
  bool needs_later_right(std::int64_t u_l, const std::vector<std::size_t> &set) const {
    const auto last = set.back();
    const auto end = std::min(m_t.tick(last), m_t.ur());
    for (auto u = std::max(u_l, m_t.ul()); u <= end; ++u) {
      const double within = m_t.best(u, set);
      double beyond = kInf;
      for (auto l : set) {
        if (m_t.tick(l) > u)
          break;
        for (std::size_t r = last + 1; r < m_t.size(); ++r)
          beyond = std::min(beyond, m_t.pair(l, r, u));
      }
      if (within > beyond)
        return true;
    }
    return false;
  }

  Best phi(std::int64_t u_l, std::vector<std::size_t> &set, int k) {
    Best best;
    if (u_l > m_t.ur()) {
      best.offer(0.0, m_t.ticks_of(set));
      return best;
    }
    const std::size_t first = set.empty() ? 0 : set.back() + 1;

    if (k == 1) {
      if (!set.empty())
        best.offer(m_t.range_sum(u_l, m_t.ur(), set), m_t.ticks_of(set));
      for (std::size_t v = first; v < m_t.size(); ++v) {
        set.push_back(v);
        best.offer(m_t.range_sum(u_l, m_t.ur(), set), m_t.ticks_of(set));
        set.pop_back();
      }
      return best;
    }

    if (first >= m_t.size()) {
      best.offer(m_t.range_sum(u_l, m_t.ur(), set), m_t.ticks_of(set));
      return best;
    }
    for (std::size_t v = first; v < m_t.size(); ++v) {
      set.push_back(v);
      if (needs_later_right(u_l, set)) {
        best.offer_from(phi(u_l, set, k - 1), 0.0);
      } else {
        const auto end = std::min(m_t.tick(v), m_t.ur());
        const double head = m_t.range_sum(u_l, end, set);
        best.offer_from(phi(std::max(u_l, m_t.tick(v) + 1), set, k - 1), head);
      }
      set.pop_back();
    }
    return best;
  }

  const CostTable &m_t;
  int m_capacity;
};
} // namespace

std::uint64_t count_subsets(std::size_t n, int capacity) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (int s = 1; s <= capacity && static_cast<std::size_t>(s) <= n; ++s) {
    // binom(n, s) = binom(n, s - 1) * (n - s + 1) / s, saturating.
    const std::uint64_t factor = n - static_cast<std::size_t>(s) + 1;
    if (binom > std::numeric_limits<std::uint64_t>::max() / 2 / factor)
      return std::numeric_limits<std::uint64_t>::max();
    binom = binom * factor / static_cast<std::uint64_t>(s);
    total += binom;
    if (total > std::numeric_limits<std::uint64_t>::max() / 2)
      return std::numeric_limits<std::uint64_t>::max();
  }
  return total;
}

Selection exhaustive_solve(const Instance &inst, const std::vector<ViewTick> &candidates,
                           int capacity) {
  if (capacity < 1)
    throw Error(ErrorCode::Infeasible, "capacity must be positive");
  std::vector<ViewTick> cands = candidates;
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  check_guard(cands.size(), capacity);

  const CostTable table(inst, cands);
  const auto m = table.size();
  Best best;
  std::vector<std::size_t> combo;
  for (int s = 1; s <= capacity && static_cast<std::size_t>(s) <= m; ++s) {
    combo.resize(static_cast<std::size_t>(s));
    std::iota(combo.begin(), combo.end(), std::size_t{0});
    while (true) {
      if (table.tick(combo.front()) <= table.ul() && table.tick(combo.back()) >= table.ur()) {
        const double v = table.range_sum(table.ul(), table.ur(), combo);
        if (v < best.value || nearly_equal(v, best.value))
          best.offer(v, table.ticks_of(combo));
      }
      // Next combination in lexicographic order.
      std::size_t pos = combo.size();
      while (pos > 0 && combo[pos - 1] == m - combo.size() + pos - 1)
        --pos;
      if (pos == 0)
        break;
      ++combo[pos - 1];
      for (auto q = pos; q < combo.size(); ++q)
        combo[q] = combo[q - 1] + 1;
    }
  }
  if (!std::isfinite(best.value))
    throw Error(ErrorCode::Infeasible, "no subset within capacity covers the window");
  return aggregate_distortion(best.refs, inst);
}

Selection exhaustive_solve(const Scenario &s) {
  validate(s);
  const Instance inst(s);
  return exhaustive_solve(inst, inst.candidates(), s.capacity);
}

Selection treesearch_solve(const Instance &inst, int capacity) {
  if (capacity < 1)
    throw Error(ErrorCode::Infeasible, "capacity must be positive");
  check_guard(inst.candidates().size(), capacity);
  const CostTable table(inst, inst.candidates());
  TreeSearch search(table, capacity);
  const auto best = search.run();
  if (!std::isfinite(best.value))
    throw Error(ErrorCode::Infeasible, "no subset within capacity covers the window");
  return aggregate_distortion(best.refs, inst);
}

Selection treesearch_solve(const Scenario &s) {
  validate(s);
  const Instance inst(s);
  return treesearch_solve(inst, s.capacity);
}

} // namespace refsel
