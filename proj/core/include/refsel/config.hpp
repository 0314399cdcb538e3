#pragma once

#include <refsel/instance.hpp>

#include <iosfwd>
#include <string>

namespace refsel {

/// Parses a line-oriented `key = value` scenario description. `#` starts a comment.
/// A relative `distortion_table` path is resolved against base_dir.
Scenario parse_scenario(std::istream &in, const std::string &base_dir = ".");
Scenario load_scenario_file(const std::string &path);

} // namespace refsel
