#include <refsel/distortion.hpp>
#include <refsel/error.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace refsel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kKeyLimit = std::int64_t{1} << 21;

std::uint64_t pack(ViewTick u, ViewTick vl, ViewTick vr) {
  return (static_cast<std::uint64_t>(u.ticks) << 42) |
         (static_cast<std::uint64_t>(vl.ticks) << 21) | static_cast<std::uint64_t>(vr.ticks);
}

bool packable(ViewTick t) { return t.ticks >= 0 && t.ticks < kKeyLimit; }

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t to_tick_value(const std::string &field, std::size_t line) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(field, &pos);
  } catch (const std::exception &) {
    pos = std::string::npos;
  }
  if (pos != field.size())
    throw Error(ErrorCode::Io, "line " + std::to_string(line) + ": bad tick '" + field + "'");
  return v;
}

double to_distortion(const std::string &field, std::size_t line) {
  if (field == "inf" || field == "+inf" || field == "Inf")
    return kInf;
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception &) {
    pos = std::string::npos;
  }
  if (pos != field.size() || std::isnan(v))
    throw Error(ErrorCode::Io,
                "line " + std::to_string(line) + ": bad distortion '" + field + "'");
  return v;
}
} // namespace

void validate(const SynthParams &p) {
  if (!(p.gamma >= 0) || !(p.d_inpaint >= 0) || !(p.d_camera >= 0))
    throw Error(ErrorCode::InvalidParameters, "gamma, D_I and D_cam must be non-negative");
  if (!(p.beta_fixed >= 0 && p.beta_fixed <= 1))
    throw Error(ErrorCode::InvalidParameters, "beta_fixed must lie in [0, 1]");
  if (p.beta_mode == BetaMode::Fixed && !p.d_max_override)
    throw Error(ErrorCode::InvalidParameters, "fixed beta mode needs d_max_override");
  if (p.d_max_override && !(*p.d_max_override >= 0))
    throw Error(ErrorCode::InvalidParameters, "d_max_override must be non-negative");
}

double eval_closed_form(ViewTick u, ViewTick vl, ViewTick vr, double d_l, double d_r,
                        const ViewGrid &grid, const SynthParams &p) {
  if (!(vl <= u && u <= vr))
    throw Error(ErrorCode::InvalidOrdering, "closed-form model needs vl <= u <= vr");
  if (u == vl)
    return d_l;
  if (u == vr)
    return d_r;

  const bool left_dominant = d_l <= d_r;
  const auto v_min = left_dominant ? vl : vr;
  const auto v_max = left_dominant ? vr : vl;
  const double d_min = left_dominant ? d_l : d_r;
  double d_max = left_dominant ? d_r : d_l;

  const double alpha = std::exp(-p.gamma * grid.dist_mm(u, v_min));
  double beta = 0;
  if (p.beta_mode == BetaMode::Computed) {
    beta = std::exp(-p.gamma * grid.dist_mm(u, v_max));
  } else {
    beta = p.beta_fixed;
    d_max = p.d_max_override.value_or(d_max);
  }
  const double w_max = (1 - alpha) * beta;
  return alpha * d_min + w_max * d_max + (1 - alpha - w_max) * p.d_inpaint;
}

DistortionEvaluator DistortionEvaluator::closed_form(SynthParams p) {
  validate(p);
  DistortionEvaluator e;
  e.m_kind = p;
  return e;
}

DistortionEvaluator DistortionEvaluator::tabulated(const std::vector<TabulatedRow> &rows) {
  Table table;
  table.entries.reserve(rows.size());
  for (const auto &row : rows) {
    if (!packable(row.u) || !packable(row.vl) || !packable(row.vr))
      throw Error(ErrorCode::InvalidParameters, "tabulated tick out of range");
    if (std::isnan(row.distortion) || row.distortion < 0)
      throw Error(ErrorCode::NegativeDistortion,
                  "negative distortion for triple (" + std::to_string(row.u.ticks) + ", " +
                      std::to_string(row.vl.ticks) + ", " + std::to_string(row.vr.ticks) + ")");
    if (!table.entries.emplace(pack(row.u, row.vl, row.vr), row.distortion).second)
      throw Error(ErrorCode::DuplicateKey,
                  "duplicate triple (" + std::to_string(row.u.ticks) + ", " +
                      std::to_string(row.vl.ticks) + ", " + std::to_string(row.vr.ticks) + ")");
  }
  DistortionEvaluator e;
  e.m_kind = std::move(table);
  return e;
}

std::size_t DistortionEvaluator::table_size() const {
  if (const auto *t = std::get_if<Table>(&m_kind))
    return t->entries.size();
  return 0;
}

double DistortionEvaluator::operator()(ViewTick u, ViewTick vl, ViewTick vr, double d_l,
                                       double d_r, const ViewGrid &grid) const {
  if (const auto *p = std::get_if<SynthParams>(&m_kind))
    return eval_closed_form(u, vl, vr, d_l, d_r, grid, *p);
  if (!packable(u) || !packable(vl) || !packable(vr))
    return kInf;
  const auto &entries = std::get<Table>(m_kind).entries;
  const auto it = entries.find(pack(u, vl, vr));
  return it == entries.end() ? kInf : it->second;
}

DistortionEvaluator load_tabulated(const std::vector<TabulatedRow> &rows) {
  return DistortionEvaluator::tabulated(rows);
}

std::vector<TabulatedRow> read_tabulated_csv(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<TabulatedRow> rows;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty())
      continue;
    if (!header_seen) {
      if (line != "u_tick,vl_tick,vr_tick,distortion")
        throw Error(ErrorCode::Io, "expected header u_tick,vl_tick,vr_tick,distortion");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
      fields.push_back(trim(field));
    if (fields.size() != 4)
      throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected 4 fields");
    rows.push_back({ViewTick{to_tick_value(fields[0], line_no)},
                    ViewTick{to_tick_value(fields[1], line_no)},
                    ViewTick{to_tick_value(fields[2], line_no)},
                    to_distortion(fields[3], line_no)});
  }
  if (!header_seen)
    throw Error(ErrorCode::Io, "empty distortion table file");
  return rows;
}

std::vector<TabulatedRow> read_tabulated_csv_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::Io, "cannot open " + path);
  return read_tabulated_csv(in);
}

void write_tabulated_csv(std::ostream &out, const std::vector<TabulatedRow> &rows) {
  out << "u_tick,vl_tick,vr_tick,distortion\n";
  for (const auto &r : rows) {
    out << r.u.ticks << ',' << r.vl.ticks << ',' << r.vr.ticks << ',';
    if (std::isinf(r.distortion))
      out << "inf";
    else
      out << std::setprecision(17) << r.distortion;
    out << '\n';
  }
}

double reference_distortion(ViewTick v, const ViewGrid &grid, const DistortionEvaluator &eval,
                            const SynthParams &p) {
  if (grid.is_camera(v))
    return p.d_camera;
  double best = kInf;
  bool enclosed = false;
  for (const auto &cl : grid.cameras) {
    if (cl >= v)
      break;
    for (auto it = grid.cameras.rbegin(); it != grid.cameras.rend() && *it > v; ++it) {
      enclosed = true;
      best = std::min(best, eval(v, cl, *it, p.d_camera, p.d_camera, grid));
    }
  }
  if (!enclosed)
    throw Error(ErrorCode::Unsynthesizable,
                "view at tick " + std::to_string(v.ticks) + " has no enclosing camera pair");
  return best;
}

} // namespace refsel
