#include <refsel/error.hpp>
#include <refsel/solver_dp.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace refsel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
using Seq = std::vector<ViewTick>;

enum class OptionKind { Done, Keep, Final, FinalShared, SharedLeft, SharedRight };

struct Option {
  OptionKind kind{OptionKind::Done};
  int j{-1};
  int n{0};
  int next_idx{-1};
  std::int64_t next_pos{0};
};

struct ScoredOption {
  double value;
  Option option;
};

struct PrefixEntry {
  double sum{0};
  std::int32_t infinite{0};
};

void append(Seq &dst, const Seq &src) { dst.insert(dst.end(), src.begin(), src.end()); }

std::int64_t canonical_probe_u(std::int64_t v1, std::int64_t v2, const NavigationWindow &w) {
  return std::max(std::max(v1, v2) + 1, w.left.ticks);
}
} // namespace

ViewTick lambda_select(ViewTick v1, ViewTick v2, const Instance &inst, ViewTick probe_u,
                       ViewTick probe_vr) {
  if (!(std::max(v1, v2) < probe_u && probe_u < probe_vr))
    throw Error(ErrorCode::NoValidProbe, "probe must satisfy max(v1, v2) < u < vR");
  return inst.pair_cost(probe_u, v1, probe_vr) <= inst.pair_cost(probe_u, v2, probe_vr) ? v1
                                                                                        : v2;
}

ViewTick lambda_select(ViewTick v1, ViewTick v2, const Instance &inst) {
  if (v1 == v2)
    return v1;
  const auto &w = inst.window();
  const auto &cands = inst.candidates();
  const ViewTick pu{canonical_probe_u(v1.ticks, v2.ticks, w)};
  if (pu > w.right || cands.empty() || !(pu < cands.back()))
    throw Error(ErrorCode::NoValidProbe, "no window tick lies between the references and the "
                                         "rightmost candidate");
  return lambda_select(v1, v2, inst, pu, cands.back());
}

struct DpSolver::Impl {
  const Instance &inst;
  int max_k;
  DpOptions options;

  std::vector<std::int64_t> c;
  std::vector<int> idx_of;
  int m{0};
  std::int64_t ul{0}, ur{0}, n_ticks{0};

  std::vector<std::int64_t> pair_off;
  std::vector<std::int64_t> pair_lo;
  std::vector<PrefixEntry> prefix;
  std::vector<signed char> lam_cache;

  std::vector<double> phi_memo;
  std::vector<int> phi_progress;
  std::vector<double> psi_memo;

  std::map<std::tuple<std::int64_t, int, int>, Seq> phi_seq_memo;

  Impl(const Instance &instance, int k, DpOptions opts)
      : inst(instance), max_k(k), options(opts) {
    for (const auto &v : inst.candidates())
      c.push_back(v.ticks);
    m = static_cast<int>(c.size());
    idx_of.assign(static_cast<std::size_t>(inst.grid().max_tick.ticks + 1), -1);
    for (int i = 0; i < m; ++i)
      idx_of[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])] = i;
    ul = inst.window().left.ticks;
    ur = inst.window().right.ticks;
    n_ticks = ur - ul + 1;
    build_prefix();
    lam_cache.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), -1);
    if (options.memoize) {
      const auto states = static_cast<std::size_t>(n_ticks) * static_cast<std::size_t>(m);
      phi_memo.assign(states * static_cast<std::size_t>(max_k + 1), kInf);
      phi_progress.assign(states, -1);
      psi_memo.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m) *
                          static_cast<std::size_t>(max_k + 1),
                      std::numeric_limits<double>::quiet_NaN());
    }
  }

  std::int64_t tick(int i) const { return c[static_cast<std::size_t>(i)]; }

  int index_of(ViewTick v) const {
    if (v.ticks < 0 || v.ticks >= static_cast<std::int64_t>(idx_of.size()) ||
        idx_of[static_cast<std::size_t>(v.ticks)] < 0)
      throw Error(ErrorCode::InvalidParameters,
                  "tick " + std::to_string(v.ticks) + " is not a candidate reference");
    return idx_of[static_cast<std::size_t>(v.ticks)];
  }

  void build_prefix() {
    const auto mm = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    pair_off.assign(mm, -1);
    pair_lo.assign(mm, 0);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const auto lo = std::max(tick(i), ul);
        const auto hi = std::min(tick(j), ur);
        if (lo > hi)
          continue;
        const auto key = static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                         static_cast<std::size_t>(j);
        pair_off[key] = static_cast<std::int64_t>(prefix.size());
        pair_lo[key] = lo;
        PrefixEntry acc;
        prefix.push_back(acc);
        for (auto u = lo; u <= hi; ++u) {
          const double d = inst.pair_cost(ViewTick{u}, ViewTick{tick(i)}, ViewTick{tick(j)});
          if (std::isinf(d))
            ++acc.infinite;
          else
            acc.sum += d;
          prefix.push_back(acc);
        }
      }
  }

  // Sum of d_u(c_i, c_j) over window ticks u in [a, b].
  double seg(int i, int j, std::int64_t a, std::int64_t b) const {
    a = std::max(a, ul);
    b = std::min(b, ur);
    if (a > b)
      return 0;
    const auto key =
        static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j);
    const auto off = pair_off[key];
    assert(off >= 0);
    const auto lo = pair_lo[key];
    assert(a >= lo && b <= std::min(tick(j), ur));
    const auto &hi_e = prefix[static_cast<std::size_t>(off + (b - lo) + 1)];
    const auto &lo_e = prefix[static_cast<std::size_t>(off + (a - lo))];
    if (hi_e.infinite > lo_e.infinite)
      return kInf;
    return hi_e.sum - lo_e.sum;
  }

  int lam(int i, int j) {
    auto &cached =
        lam_cache[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
    if (cached < 0) {
      const auto pu = canonical_probe_u(tick(i), tick(j), inst.window());
      const auto pvr = c.back();
      if (pu > ur || !(pu < pvr)) {
        cached = 1;
      } else {
        const double di = inst.pair_cost(ViewTick{pu}, ViewTick{tick(i)}, ViewTick{pvr});
        const double dj = inst.pair_cost(ViewTick{pu}, ViewTick{tick(j)}, ViewTick{pvr});
        cached = di <= dj ? 0 : 1;
      }
    }
    return cached == 0 ? i : j;
  }

  double psi_base(std::int64_t u, int i, int j) const {
    const auto end = tick(j) >= ur ? ur : tick(j) - 1;
    return seg(i, j, u, end);
  }

  template <class Visit> double psi_enumerate(std::int64_t u, int i, int j, int n, Visit &&visit) {
    double best = kInf;
    bool any = false;
    for (int ip = i + 1; ip < j; ++ip) {
      const auto t = tick(ip);
      if (t <= u)
        continue;
      if (t > ur)
        break;
      any = true;
      const double v = seg(i, j, u, t - 1) + psi_val(t, ip, j, n - 1);
      visit(v, ip);
      best = std::min(best, v);
    }
    if (!any) {
      const double v = psi_base(u, i, j);
      visit(v, -1);
      return v;
    }
    return best;
  }

  double psi_val(std::int64_t u, int i, int j, int n) {
    if (n == 0)
      return psi_base(u, i, j);
    auto noop = [](double, int) {};
    if (options.memoize && u == tick(i) && n <= max_k) {
      auto &slot = psi_memo[(static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                             static_cast<std::size_t>(j)) *
                                static_cast<std::size_t>(max_k + 1) +
                            static_cast<std::size_t>(n)];
      if (std::isnan(slot))
        slot = psi_enumerate(u, i, j, n, noop);
      return slot;
    }
    return psi_enumerate(u, i, j, n, noop);
  }

  template <class PsiFn, class Visit>
  double phi_enumerate(std::int64_t u, int i, int k, PsiFn &&psi_fn, Visit &&visit) {
    if (u > ur) {
      visit(0.0, Option{});
      return 0.0;
    }
    if (tick(i) == ur) {
      const double v = inst.ref_distortion(ViewTick{ur});
      visit(v, Option{});
      return v;
    }
    if (k <= 0)
      return kInf;

    double best = kInf;
    auto offer = [&](double v, const Option &o) {
      visit(v, o);
      best = std::min(best, v);
    };

    if (k >= 2)
      offer(phi_val(u, i, k - 1), Option{OptionKind::Keep});

    for (int j = i + 1; j < m; ++j) {
      const auto t = tick(j);
      if (t >= ur) {
        offer(seg(i, j, u, ur), Option{OptionKind::Final, j});
        if (t > u)
          for (int n = 1; n <= k - 1; ++n)
            offer(psi_fn(u, i, j, n), Option{OptionKind::FinalShared, j, n});
        continue;
      }
      if (k < 2)
        continue;
      const int next_idx = lam(i, j);
      const auto next_pos = std::max(u, t);
      const double head = t > u ? seg(i, j, u, t - 1) : 0.0;
      offer(head + phi_val(next_pos, next_idx, k - 1),
            Option{OptionKind::SharedLeft, j, 0, next_idx, next_pos});
      if (t > u)
        for (int n = 1; n <= k - 1; ++n)
          offer(psi_fn(u, i, j, n) + phi_val(t, j, k - n - 1),
                Option{OptionKind::SharedRight, j, n});
    }
    return best;
  }

  double phi_val(std::int64_t u, int i, int k) {
    if (u > ur)
      return 0.0;
    if (k < 0)
      return kInf;
    if (!options.memoize) {
      auto psi_fn = [this](std::int64_t uu, int ii, int jj, int nn) { return psi_val(uu, ii, jj, nn); };
      return phi_enumerate(u, i, k, psi_fn, [](double, const Option &) {});
    }
    if (k > max_k)
      throw Error(ErrorCode::InvalidParameters, "budget exceeds the solver's table size");
    const auto state = static_cast<std::size_t>(u - ul) * static_cast<std::size_t>(m) +
                       static_cast<std::size_t>(i);
    if (phi_progress[state] < 0)
      fill_state(u, i, state);
    assert(phi_progress[state] > k);
    return phi_memo[state * static_cast<std::size_t>(max_k + 1) + static_cast<std::size_t>(k)];
  }

  void fill_state(std::int64_t u, int i, std::size_t state) {
    phi_progress[state] = 0;
    const auto stride = static_cast<std::size_t>(max_k + 1);
    std::vector<double> local(static_cast<std::size_t>(m) * stride,
                              std::numeric_limits<double>::quiet_NaN());
    auto psi_fn = [&](std::int64_t uu, int ii, int jj, int nn) {
      auto &slot = local[static_cast<std::size_t>(jj) * stride + static_cast<std::size_t>(nn)];
      if (std::isnan(slot))
        slot = psi_val(uu, ii, jj, nn);
      return slot;
    };
    for (int k = 0; k <= max_k; ++k) {
      phi_memo[state * stride + static_cast<std::size_t>(k)] =
          phi_enumerate(u, i, k, psi_fn, [](double, const Option &) {});
      phi_progress[state] = k + 1;
    }
  }

  // Reconstruction: among options within tolerance of the optimum, keep the
  // preferred reference sequence.
  Seq psi_seq(std::int64_t u, int i, int j, int n) {
    if (n == 0)
      return {};
    std::vector<std::pair<double, int>> opts;
    const double best =
        psi_enumerate(u, i, j, n, [&](double v, int ip) { opts.emplace_back(v, ip); });
    Seq chosen;
    bool have = false;
    for (const auto &[v, ip] : opts) {
      if (!nearly_equal(v, best))
        continue;
      Seq s;
      if (ip >= 0) {
        s.push_back(ViewTick{tick(ip)});
        append(s, psi_seq(tick(ip), ip, j, n - 1));
      }
      if (!have || preferred_refs(s, chosen)) {
        chosen = std::move(s);
        have = true;
      }
    }
    return chosen;
  }

  Seq phi_seq(std::int64_t u, int i, int k) {
    if (u > ur || k <= 0 || tick(i) == ur)
      return {};
    const auto key = std::make_tuple(u, i, k);
    if (const auto it = phi_seq_memo.find(key); it != phi_seq_memo.end())
      return it->second;

    std::vector<ScoredOption> opts;
    auto psi_fn = [this](std::int64_t uu, int ii, int jj, int nn) { return psi_val(uu, ii, jj, nn); };
    const double best = phi_enumerate(u, i, k, psi_fn, [&](double v, const Option &o) {
      opts.push_back({v, o});
    });

    Seq chosen;
    bool have = false;
    for (const auto &[v, o] : opts) {
      if (!nearly_equal(v, best))
        continue;
      Seq s;
      switch (o.kind) {
      case OptionKind::Done:
        break;
      case OptionKind::Keep:
        s = phi_seq(u, i, k - 1);
        break;
      case OptionKind::Final:
        s.push_back(ViewTick{tick(o.j)});
        break;
      case OptionKind::FinalShared:
        s = psi_seq(u, i, o.j, o.n);
        s.push_back(ViewTick{tick(o.j)});
        break;
      case OptionKind::SharedLeft:
        s.push_back(ViewTick{tick(o.j)});
        append(s, phi_seq(o.next_pos, o.next_idx, k - 1));
        break;
      case OptionKind::SharedRight:
        s = psi_seq(u, i, o.j, o.n);
        s.push_back(ViewTick{tick(o.j)});
        append(s, phi_seq(tick(o.j), o.j, k - o.n - 1));
        break;
      }
      if (!have || preferred_refs(s, chosen)) {
        chosen = std::move(s);
        have = true;
      }
    }
    phi_seq_memo.emplace(key, chosen);
    return chosen;
  }
};

DpSolver::DpSolver(const Instance &inst, int max_k, DpOptions options)
    : m_impl(std::make_unique<Impl>(inst, std::max(max_k, 0), options)) {}

DpSolver::~DpSolver() = default;

double DpSolver::phi(ViewTick u_l, ViewTick v_l, int k) {
  if (!(v_l <= u_l))
    throw Error(ErrorCode::InvalidOrdering, "phi needs v_l <= u_l");
  if (k < 1)
    throw Error(ErrorCode::InvalidParameters, "phi needs k >= 1");
  return m_impl->phi_val(u_l.ticks, m_impl->index_of(v_l), k);
}

double DpSolver::psi(ViewTick u_l, ViewTick v_l, ViewTick v_r, int n) {
  if (!(v_l <= u_l && u_l < v_r))
    throw Error(ErrorCode::InvalidOrdering, "psi needs v_l <= u_l < v_r");
  if (n < 0)
    throw Error(ErrorCode::InvalidParameters, "psi needs n >= 0");
  return m_impl->psi_val(u_l.ticks, m_impl->index_of(v_l), m_impl->index_of(v_r), n);
}

Selection DpSolver::solve(int capacity) {
  auto &impl = *m_impl;
  if (capacity < 2)
    throw Error(ErrorCode::Infeasible, "capacity must be at least 2");
  const int k = capacity - 1;
  if (impl.options.memoize && k > impl.max_k)
    throw Error(ErrorCode::InvalidParameters, "capacity exceeds the solver's table size");

  double best = kInf;
  std::vector<std::pair<double, int>> seeds;
  for (int i = 0; i < impl.m && impl.tick(i) <= impl.ul; ++i) {
    const double v = impl.phi_val(impl.ul, i, k);
    seeds.emplace_back(v, i);
    best = std::min(best, v);
  }
  if (!std::isfinite(best))
    throw Error(ErrorCode::Infeasible, "no reference set within capacity covers the window");

  Seq chosen;
  bool have = false;
  for (const auto &[v, i] : seeds) {
    if (!nearly_equal(v, best))
      continue;
    Seq s{ViewTick{impl.tick(i)}};
    append(s, impl.phi_seq(impl.ul, i, k));
    if (!have || preferred_refs(s, chosen)) {
      chosen = std::move(s);
      have = true;
    }
  }
  return aggregate_distortion(chosen, impl.inst);
}

Selection solve(const Instance &inst, DpOptions options) {
  DpSolver solver(inst, inst.scenario().capacity - 1, options);
  return solver.solve(inst.scenario().capacity);
}

Selection solve(const Scenario &s, DpOptions options) {
  validate(s);
  const Instance inst(s);
  return solve(inst, options);
}

} // namespace refsel
