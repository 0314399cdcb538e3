#include <refsel/config.hpp>
#include <refsel/error.hpp>

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>

namespace refsel {

namespace {
std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string> &known_keys() {
  static const std::set<std::string> keys{
      "ticks_per_unit", "unit_spacing_mm", "span_units",    "cameras",   "window_left",
      "window_right",   "capacity",        "gamma",         "d_inpaint", "d_camera",
      "beta_mode",      "beta_fixed",      "d_max_override", "candidate_mode", "seed",
      "distortion_table"};
  return keys;
}

double to_real(const std::string &key, const std::string &v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size())
      return d;
  } catch (const std::exception &) {
  }
  throw Error(ErrorCode::Config, "key '" + key + "': expected a number, got '" + v + "'");
}

long long to_integer(const std::string &key, const std::string &v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos == v.size())
      return d;
  } catch (const std::exception &) {
  }
  throw Error(ErrorCode::Config, "key '" + key + "': expected an integer, got '" + v + "'");
}

Rational to_rational(const std::string &key, const std::string &v) {
  try {
    return parse_rational(v);
  } catch (const Error &) {
    throw Error(ErrorCode::Config, "key '" + key + "': expected a position, got '" + v + "'");
  }
}
} // namespace

Scenario parse_scenario(std::istream &in, const std::string &base_dir) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Config, "line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!known_keys().count(key))
      throw Error(ErrorCode::Config, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (!kv.emplace(key, value).second)
      throw Error(ErrorCode::Config, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }

  auto require = [&](const std::string &key) -> const std::string & {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw Error(ErrorCode::Config, "missing required key '" + key + "'");
    return it->second;
  };
  auto has = [&](const std::string &key) { return kv.count(key) > 0; };

  Scenario s;
  try {
    std::vector<Rational> cameras;
    std::string list = require("cameras");
    std::size_t start = 0;
    while (start <= list.size()) {
      const auto comma = list.find(',', start);
      const auto item = trim(list.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (!item.empty())
        cameras.push_back(to_rational("cameras", item));
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    s.grid = build_grid(to_integer("ticks_per_unit", require("ticks_per_unit")),
                        to_real("unit_spacing_mm", require("unit_spacing_mm")),
                        to_rational("span_units", require("span_units")), cameras);
    s.window = window_from_units(to_rational("window_left", require("window_left")),
                                 to_rational("window_right", require("window_right")), s.grid);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::Config)
      throw;
    throw Error(ErrorCode::Config, e.what());
  }

  if (has("capacity"))
    s.capacity = static_cast<int>(to_integer("capacity", kv["capacity"]));
  if (has("gamma"))
    s.params.gamma = to_real("gamma", kv["gamma"]);
  if (has("d_inpaint"))
    s.params.d_inpaint = to_real("d_inpaint", kv["d_inpaint"]);
  if (has("d_camera"))
    s.params.d_camera = to_real("d_camera", kv["d_camera"]);
  if (has("beta_mode")) {
    const auto &m = kv["beta_mode"];
    if (m == "computed")
      s.params.beta_mode = BetaMode::Computed;
    else if (m == "fixed")
      s.params.beta_mode = BetaMode::Fixed;
    else
      throw Error(ErrorCode::Config, "beta_mode must be 'computed' or 'fixed'");
  }
  if (has("beta_fixed"))
    s.params.beta_fixed = to_real("beta_fixed", kv["beta_fixed"]);
  if (has("d_max_override"))
    s.params.d_max_override = to_real("d_max_override", kv["d_max_override"]);
  if (has("candidate_mode")) {
    const auto &m = kv["candidate_mode"];
    if (m == "all")
      s.candidate_mode = CandidateMode::AllViews;
    else if (m == "cameras")
      s.candidate_mode = CandidateMode::CamerasOnly;
    else
      throw Error(ErrorCode::Config, "candidate_mode must be 'all' or 'cameras'");
  }
  if (has("seed")) {
    const auto seed = to_integer("seed", kv["seed"]);
    if (seed < 0)
      throw Error(ErrorCode::Config, "seed must be non-negative");
    s.seed = static_cast<std::uint64_t>(seed);
  }

  try {
    validate(s.params);
  } catch (const Error &e) {
    throw Error(ErrorCode::Config, e.what());
  }
  if (s.capacity < 2)
    throw Error(ErrorCode::Config, "capacity must be at least 2");

  if (has("distortion_table")) {
    std::filesystem::path p = kv["distortion_table"];
    if (p.is_relative())
      p = std::filesystem::path(base_dir) / p;
    try {
      s.evaluator = load_tabulated(read_tabulated_csv_file(p.string()));
    } catch (const Error &e) {
      throw Error(ErrorCode::Config, std::string("distortion_table: ") + e.what());
    }
  } else {
    s.evaluator = DistortionEvaluator::closed_form(s.params);
  }
  return s;
}

Scenario load_scenario_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::Config, "cannot open config " + path);
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario(in, dir.empty() ? std::string(".") : dir.string());
}

} // namespace refsel
