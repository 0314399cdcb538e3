#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace refsel {

enum class ErrorCode {
  NonIntegralPosition,
  EmptyCameraSet,
  InvalidGrid,
  InvalidWindow,
  InvalidOrdering,
  Unsynthesizable,
  DuplicateKey,
  NegativeDistortion,
  NoValidProbe,
  Infeasible,
  CoverageGap,
  TooLarge,
  IndexOutOfRange,
  InvalidParameters,
  Config,
  Io,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), m_code(code) {}

  ErrorCode code() const noexcept { return m_code; }

private:
  ErrorCode m_code;
};

/// Thrown by aggregate_distortion; carries the window ticks nobody covers.
class CoverageGapError : public Error {
public:
  explicit CoverageGapError(std::vector<long long> ticks);

  const std::vector<long long> &uncovered() const noexcept { return m_ticks; }

private:
  std::vector<long long> m_ticks;
};

} // namespace refsel
