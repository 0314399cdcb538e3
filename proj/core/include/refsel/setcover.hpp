#pragma once

#include <refsel/distortion.hpp>
#include <refsel/instance.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace refsel {

struct SetCoverInstance {
  int universe_size{0};
  std::vector<std::vector<int>> subsets; // items are 1-based
  int k{1};
};

void validate(const SetCoverInstance &sc);

/// Reads rows "subset_id,item"; the universe is 1..max item.
SetCoverInstance read_setcover_csv(std::istream &in, int k);
SetCoverInstance read_setcover_csv_file(const std::string &path, int k);

/// View-selection instance whose optimum reaches `target` iff the sets admit a
/// cover with at most k subsets. Views 1..|S|+1 and one view per subset are
/// undistorted; the window holds the half-integer views between 1 and |S|+1.
struct GadgetInstance {
  Scenario scenario;
  std::vector<TabulatedRow> rows;
  int budget{0};
  double d_bar{0};
  double delta{0};
  double target{0};
};

GadgetInstance build_gadget(const SetCoverInstance &sc, double d_bar, double delta);

struct Decision {
  bool answer{false};
  Selection selection;
};

Decision decide(const GadgetInstance &gadget);

} // namespace refsel
