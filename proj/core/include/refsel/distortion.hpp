#pragma once

#include <refsel/view_grid.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace refsel {

enum class BetaMode { Computed, Fixed };

struct SynthParams {
  double gamma{0.2};     // per-mm decay of the exponentials
  double d_inpaint{200}; // D_I, MSE
  double d_camera{0};    // distortion of captured camera views, MSE
  BetaMode beta_mode{BetaMode::Computed};
  double beta_fixed{0.2};
  std::optional<double> d_max_override;
};

void validate(const SynthParams &p);

struct TabulatedRow {
  ViewTick u;
  ViewTick vl;
  ViewTick vr;
  double distortion;
};

double eval_closed_form(ViewTick u, ViewTick vl, ViewTick vr, double d_l, double d_r,
                        const ViewGrid &grid, const SynthParams &p);

/// Per-view distortion of synthesizing u from (vl, vr). Closed-form or table backed.
class DistortionEvaluator {
public:
  struct Table {
    std::unordered_map<std::uint64_t, double> entries;
  };

  DistortionEvaluator() = default;
  static DistortionEvaluator closed_form(SynthParams p);
  static DistortionEvaluator tabulated(const std::vector<TabulatedRow> &rows);

  bool is_tabulated() const { return std::holds_alternative<Table>(m_kind); }
  const SynthParams *params() const { return std::get_if<SynthParams>(&m_kind); }
  std::size_t table_size() const;

  /// Returns d_u(vl, vr, d_l, d_r). Table lookups ignore d_l and d_r; missing triples are +inf.
  double operator()(ViewTick u, ViewTick vl, ViewTick vr, double d_l, double d_r,
                    const ViewGrid &grid) const;

private:
  std::variant<SynthParams, Table> m_kind{SynthParams{}};
};

DistortionEvaluator load_tabulated(const std::vector<TabulatedRow> &rows);

std::vector<TabulatedRow> read_tabulated_csv(std::istream &in);
std::vector<TabulatedRow> read_tabulated_csv_file(const std::string &path);
void write_tabulated_csv(std::ostream &out, const std::vector<TabulatedRow> &rows);

/// Distortion of v when sent as a reference: D_cam for cameras, otherwise the best
/// synthesis from an enclosing camera pair.
double reference_distortion(ViewTick v, const ViewGrid &grid, const DistortionEvaluator &eval,
                            const SynthParams &p);

} // namespace refsel
