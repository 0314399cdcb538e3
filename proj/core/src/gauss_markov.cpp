#include <refsel/error.hpp>
#include <refsel/gauss_markov.hpp>

#include <algorithm>
#include <cmath>

namespace refsel {

GMChain make_chain(std::vector<double> sigmas_sq) {
  if (sigmas_sq.size() < 2)
    throw Error(ErrorCode::InvalidParameters, "a chain needs at least two views");
  for (double s : sigmas_sq)
    if (!(s > 0) || !std::isfinite(s))
      throw Error(ErrorCode::InvalidParameters, "innovation variances must be positive");
  return GMChain{std::move(sigmas_sq)};
}

Matrix precision_matrix(const GMChain &chain) {
  const auto n = chain.sigmas_sq.size();
  Matrix q(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    q(v, v) = 1.0 / chain.sigmas_sq[v];
    if (v + 1 < n) {
      const double next = 1.0 / chain.sigmas_sq[v + 1];
      q(v, v) += next;
      q(v, v + 1) = -next;
      q(v + 1, v) = -next;
    }
  }
  return q;
}

Matrix conditional_precision(const GMChain &chain, std::vector<std::size_t> target_indices) {
  const auto n = chain.sigmas_sq.size();
  if (target_indices.empty())
    throw Error(ErrorCode::IndexOutOfRange, "target index set is empty");
  std::sort(target_indices.begin(), target_indices.end());
  target_indices.erase(std::unique(target_indices.begin(), target_indices.end()),
                       target_indices.end());
  for (auto idx : target_indices)
    if (idx < 1 || idx > n)
      throw Error(ErrorCode::IndexOutOfRange,
                  "view index " + std::to_string(idx) + " outside 1.." + std::to_string(n));

  const auto q = precision_matrix(chain);
  Matrix sub(target_indices.size(), target_indices.size());
  for (std::size_t r = 0; r < target_indices.size(); ++r)
    for (std::size_t c = 0; c < target_indices.size(); ++c)
      sub(r, c) = q(target_indices[r] - 1, target_indices[c] - 1);
  return sub;
}

PrecisionComparison compare_synth_vs_direct(double sigma2_sq, double sigma3_sq, double sigma4_sq) {
  if (!(sigma2_sq > 0) || !(sigma3_sq > 0) || !(sigma4_sq > 0))
    throw Error(ErrorCode::InvalidParameters, "variances must be positive");
  const double q3 = 1.0 / sigma3_sq + 1.0 / sigma4_sq;
  PrecisionComparison out;
  out.q_synth = 1.0 / sigma2_sq + 1.0 / (sigma3_sq + 1.0 / q3);
  out.q_direct = 1.0 / sigma2_sq + 1.0 / (sigma3_sq + sigma4_sq);
  const double total = sigma3_sq + sigma4_sq;
  out.gain = (sigma4_sq / total) * (sigma4_sq / total) / (sigma3_sq + 1.0 / q3);
  return out;
}

} // namespace refsel
