#include <refsel/error.hpp>
#include <refsel/setcover.hpp>
#include <refsel/solver_oracle.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace refsel {

void validate(const SetCoverInstance &sc) {
  if (sc.universe_size < 1)
    throw Error(ErrorCode::InvalidParameters, "universe must contain at least one item");
  if (sc.subsets.empty())
    throw Error(ErrorCode::InvalidParameters, "collection of subsets is empty");
  if (sc.k < 1)
    throw Error(ErrorCode::InvalidParameters, "K must be at least 1");
  for (const auto &s : sc.subsets) {
    if (s.empty())
      throw Error(ErrorCode::InvalidParameters, "empty subset");
    for (int item : s)
      if (item < 1 || item > sc.universe_size)
        throw Error(ErrorCode::InvalidParameters,
                    "item " + std::to_string(item) + " outside the universe");
  }
}

SetCoverInstance read_setcover_csv(std::istream &in, int k) {
  std::string line;
  bool header = false;
  std::map<std::string, std::vector<int>> by_id;
  std::vector<std::string> order;
  int max_item = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (!header) {
      if (line != "subset_id,item")
        throw Error(ErrorCode::Io, "expected header subset_id,item");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected 2 fields");
    const auto id = line.substr(0, comma);
    int item = 0;
    try {
      std::size_t pos = 0;
      item = std::stoi(line.substr(comma + 1), &pos);
      if (pos != line.size() - comma - 1)
        throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": bad item");
    }
    if (by_id.find(id) == by_id.end())
      order.push_back(id);
    auto &members = by_id[id];
    if (std::find(members.begin(), members.end(), item) == members.end())
      members.push_back(item);
    max_item = std::max(max_item, item);
  }
  SetCoverInstance sc;
  sc.universe_size = max_item;
  sc.k = k;
  for (const auto &id : order) {
    auto members = by_id[id];
    std::sort(members.begin(), members.end());
    sc.subsets.push_back(std::move(members));
  }
  validate(sc);
  return sc;
}

SetCoverInstance read_setcover_csv_file(const std::string &path, int k) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::Io, "cannot open " + path);
  return read_setcover_csv(in, k);
}

GadgetInstance build_gadget(const SetCoverInstance &sc, double d_bar, double delta) {
  validate(sc);
  if (!(delta > 0) || !(delta < d_bar))
    throw Error(ErrorCode::InvalidParameters, "gadget needs 0 < delta < d_bar");

  const int items = sc.universe_size;
  const int sets = static_cast<int>(sc.subsets.size());
  const int last_view = items + 1 + sets;

  std::vector<Rational> cameras;
  for (int v = 1; v <= last_view; ++v)
    cameras.push_back(Rational::from_int(v));

  GadgetInstance g;
  g.d_bar = d_bar;
  g.delta = delta;
  g.budget = items + 1 + sc.k;
  g.target = items * (d_bar - delta);

  auto &s = g.scenario;
  s.grid = build_grid(2, 1.0, Rational::from_int(last_view), cameras);
  s.window = window_from_units(Rational::from_int(1), Rational::from_int(items + 1), s.grid);
  s.capacity = g.budget;
  s.params.d_camera = 0;
  s.candidate_mode = CandidateMode::CamerasOnly;

  const std::int64_t default_right = 2 * (items + 1);
  for (int i = 1; i <= items; ++i) {
    const ViewTick u{2 * i + 1};
    const ViewTick left{2 * i};
    g.rows.push_back({u, left, ViewTick{default_right}, d_bar});
    for (int j = 1; j <= sets; ++j) {
      const auto &subset = sc.subsets[static_cast<std::size_t>(j - 1)];
      const bool member = std::find(subset.begin(), subset.end(), i) != subset.end();
      g.rows.push_back({u, left, ViewTick{2 * (items + 1 + j)}, member ? d_bar - delta : d_bar});
    }
  }
  s.evaluator = load_tabulated(g.rows);
  return g;
}

Decision decide(const GadgetInstance &gadget) {
  const Instance inst(gadget.scenario);
  Decision d;
  d.selection = exhaustive_solve(inst, inst.candidates(), gadget.budget);
  d.answer = d.selection.objective <= gadget.target + 1e-9;
  return d;
}

} // namespace refsel
