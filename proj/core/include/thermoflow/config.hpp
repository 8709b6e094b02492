#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "thermoflow/time_stepper.hpp"

namespace thermoflow {

struct Config {
  RunConfig run;
  std::string output_dir = "output";
  bool write_csv = true;
  bool write_vtk = false;
  int check_samples = 10000;
  std::uint64_t check_seed = 12345;
};

/// Flat `section.key = value` lines; `#` starts a comment. Unknown keys,
/// malformed lines and out-of-domain values raise ValidationError.
Config parse_config(const std::string& path);
Config parse_config(std::istream& in, const std::string& source = "<stream>");

}  // namespace thermoflow
