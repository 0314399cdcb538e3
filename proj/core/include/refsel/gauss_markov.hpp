#pragma once

#include <cstddef>
#include <vector>

namespace refsel {

/// Small dense row-major matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : m_rows(rows), m_cols(cols), m_data(rows * cols, fill) {}

  std::size_t rows() const { return m_rows; }
  std::size_t cols() const { return m_cols; }
  double &operator()(std::size_t r, std::size_t c) { return m_data[r * m_cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return m_data[r * m_cols + c]; }

private:
  std::size_t m_rows{0};
  std::size_t m_cols{0};
  std::vector<double> m_data;
};

/// x_1 = e_1, x_v = x_{v-1} + e_v with independent e_v ~ N(0, sigmas_sq[v-1]).
struct GMChain {
  std::vector<double> sigmas_sq;
};

GMChain make_chain(std::vector<double> sigmas_sq);

Matrix precision_matrix(const GMChain &chain);

/// Principal submatrix of the precision matrix on 1-based view indices.
Matrix conditional_precision(const GMChain &chain, std::vector<std::size_t> target_indices);

struct PrecisionComparison {
  double q_synth{0};
  double q_direct{0};
  /// q_synth - q_direct, evaluated without cancellation.
  double gain{0};
};

/// Precision of x_2 given x_1 and either a synthesized x_3 (built from x_2 and x_4)
/// or the directly sent x_4.
PrecisionComparison compare_synth_vs_direct(double sigma2_sq, double sigma3_sq, double sigma4_sq);

} // namespace refsel
