#include <refsel/error.hpp>
#include <refsel/view_grid.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace refsel {

const char *to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::NonIntegralPosition: return "NonIntegralPosition";
  case ErrorCode::EmptyCameraSet: return "EmptyCameraSet";
  case ErrorCode::InvalidGrid: return "InvalidGrid";
  case ErrorCode::InvalidWindow: return "InvalidWindow";
  case ErrorCode::InvalidOrdering: return "InvalidOrdering";
  case ErrorCode::Unsynthesizable: return "Unsynthesizable";
  case ErrorCode::DuplicateKey: return "DuplicateKey";
  case ErrorCode::NegativeDistortion: return "NegativeDistortion";
  case ErrorCode::NoValidProbe: return "NoValidProbe";
  case ErrorCode::Infeasible: return "Infeasible";
  case ErrorCode::CoverageGap: return "CoverageGap";
  case ErrorCode::TooLarge: return "TooLarge";
  case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorCode::InvalidParameters: return "InvalidParameters";
  case ErrorCode::Config: return "Config";
  case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {
std::string describe_gap(const std::vector<long long> &ticks) {
  std::string msg = "window ticks not covered by any reference:";
  for (auto t : ticks) {
    msg += ' ';
    msg += std::to_string(t);
  }
  return msg;
}

Rational normalized(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (s.empty())
    throw Error(ErrorCode::Config, "malformed number '" + std::string(whole) + "'");
  std::int64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::Config, "malformed number '" + std::string(whole) + "'");
    if (v > (INT64_MAX - 9) / 10)
      throw Error(ErrorCode::Config, "number out of range '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}
} // namespace

CoverageGapError::CoverageGapError(std::vector<long long> ticks)
    : Error(ErrorCode::CoverageGap, describe_gap(ticks)), m_ticks(std::move(ticks)) {}

Rational parse_rational(std::string_view text) {
  const auto whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational r;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0)
      throw Error(ErrorCode::Config, "zero denominator in '" + std::string(whole) + "'");
    r = normalized(parse_int(text.substr(0, slash), whole), den);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.size() > 15)
      throw Error(ErrorCode::Config, "too many decimals in '" + std::string(whole) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i)
      den *= 10;
    const auto ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    const auto fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    r = normalized(ip * den + fp, den);
  } else {
    r = {parse_int(text, whole), 1};
  }
  if (negative)
    r.num = -r.num;
  return r;
}

bool ViewGrid::is_camera(ViewTick v) const {
  return std::binary_search(cameras.begin(), cameras.end(), v);
}

ViewTick ViewGrid::to_tick(const Rational &units) const {
  const auto scaled = units.num * ticks_per_unit;
  if (scaled % units.den != 0)
    throw Error(ErrorCode::NonIntegralPosition,
                "position " + std::to_string(units.num) + "/" + std::to_string(units.den) +
                    " is not on a lattice with " + std::to_string(ticks_per_unit) +
                    " ticks per unit");
  return ViewTick{scaled / units.den};
}

double ViewGrid::to_units(ViewTick v) const {
  return static_cast<double>(v.ticks) / static_cast<double>(ticks_per_unit);
}

double ViewGrid::dist_mm(ViewTick a, ViewTick b) const {
  const auto diff = a.ticks > b.ticks ? a.ticks - b.ticks : b.ticks - a.ticks;
  return static_cast<double>(diff) / static_cast<double>(ticks_per_unit) * unit_spacing_mm;
}

ViewGrid build_grid(std::int64_t ticks_per_unit, double unit_spacing_mm, const Rational &span_units,
                    const std::vector<Rational> &camera_positions) {
  if (ticks_per_unit < 1)
    throw Error(ErrorCode::InvalidGrid, "ticks_per_unit must be >= 1");
  if (!(unit_spacing_mm > 0.0) || !std::isfinite(unit_spacing_mm))
    throw Error(ErrorCode::InvalidGrid, "unit_spacing_mm must be positive");
  if (camera_positions.size() < 2)
    throw Error(ErrorCode::EmptyCameraSet, "at least two cameras are required");

  ViewGrid grid;
  grid.ticks_per_unit = ticks_per_unit;
  grid.unit_spacing_mm = unit_spacing_mm;
  grid.min_tick = ViewTick{0};
  grid.max_tick = grid.to_tick(span_units);
  if (grid.max_tick.ticks <= 0)
    throw Error(ErrorCode::InvalidGrid, "span must be positive");

  grid.cameras.reserve(camera_positions.size());
  for (const auto &p : camera_positions) {
    const auto t = grid.to_tick(p);
    if (!grid.contains(t))
      throw Error(ErrorCode::InvalidGrid, "camera at tick " + std::to_string(t.ticks) +
                                              " lies outside the grid");
    if (!grid.cameras.empty() && t <= grid.cameras.back())
      throw Error(ErrorCode::InvalidGrid, "camera positions must be strictly increasing");
    grid.cameras.push_back(t);
  }
  return grid;
}

void validate_window(const NavigationWindow &window, const ViewGrid &grid) {
  if (!(grid.min_tick <= window.left && window.left < window.right &&
        window.right <= grid.max_tick))
    throw Error(ErrorCode::InvalidWindow,
                "window [" + std::to_string(window.left.ticks) + ", " +
                    std::to_string(window.right.ticks) + "] is not inside the grid");
}

NavigationWindow window_from_units(const Rational &left, const Rational &right,
                                   const ViewGrid &grid) {
  NavigationWindow w{grid.to_tick(left), grid.to_tick(right)};
  validate_window(w, grid);
  return w;
}

NavigationWindow window_from_request(ViewTick u, double rho_units_per_s, double t_s,
                                     const ViewGrid &grid) {
  const auto half = static_cast<std::int64_t>(
      std::llround(rho_units_per_s * t_s * static_cast<double>(grid.ticks_per_unit)));
  return {ViewTick{std::max(grid.min_tick.ticks, u.ticks - half)},
          ViewTick{std::min(grid.max_tick.ticks, u.ticks + half)}};
}

std::string format_units(ViewTick v, std::int64_t ticks_per_unit) {
  if (v.ticks % ticks_per_unit == 0)
    return std::to_string(v.ticks / ticks_per_unit);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g",
                static_cast<double>(v.ticks) / static_cast<double>(ticks_per_unit));
  return buf;
}

} // namespace refsel
