#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace refsel {

/// Position on the view lattice, in ticks (unit index times ticks_per_unit).
struct ViewTick {
  std::int64_t ticks{0};

  friend constexpr auto operator<=>(const ViewTick &, const ViewTick &) = default;
};

/// Exact num/den value used for positions given in unit indices.
struct Rational {
  std::int64_t num{0};
  std::int64_t den{1};

  static Rational from_int(std::int64_t v) { return {v, 1}; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "3", "-0.75", "11/4". Decimal strings are converted exactly.
Rational parse_rational(std::string_view text);

struct ViewGrid {
  std::int64_t ticks_per_unit{1};
  double unit_spacing_mm{1.0};
  ViewTick min_tick{};
  ViewTick max_tick{};
  std::vector<ViewTick> cameras;

  bool contains(ViewTick v) const { return v >= min_tick && v <= max_tick; }
  bool is_camera(ViewTick v) const;
  std::int64_t tick_count() const { return max_tick.ticks - min_tick.ticks + 1; }

  ViewTick to_tick(const Rational &units) const;
  double to_units(ViewTick v) const;
  double dist_mm(ViewTick a, ViewTick b) const;
};

struct NavigationWindow {
  ViewTick left{};
  ViewTick right{};

  std::int64_t tick_count() const { return right.ticks - left.ticks + 1; }
  bool contains(ViewTick v) const { return v >= left && v <= right; }
};

ViewGrid build_grid(std::int64_t ticks_per_unit, double unit_spacing_mm, const Rational &span_units,
                    const std::vector<Rational> &camera_positions);

/// Throws InvalidWindow unless min_tick <= left < right <= max_tick.
void validate_window(const NavigationWindow &window, const ViewGrid &grid);

NavigationWindow window_from_units(const Rational &left, const Rational &right,
                                   const ViewGrid &grid);

NavigationWindow window_from_request(ViewTick u, double rho_units_per_s, double t_s,
                                     const ViewGrid &grid);

/// Shortest decimal rendering of a tick as a unit index ("0.75", "3").
std::string format_units(ViewTick v, std::int64_t ticks_per_unit);

} // namespace refsel
