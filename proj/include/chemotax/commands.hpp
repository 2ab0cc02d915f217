#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chemotax {

const std::vector<std::string>& command_names();

struct Invocation {
  std::string command;
  std::string config_path;
  std::string out_flag;  // empty falls back to CHEMOTAX_LV_OUT, then "out"
  std::optional<std::uint64_t> seed;
};

// Runs one command end to end. Data files are written only on success;
// manifest.json is always written. Returns the process exit code:
// 0 ok, 1 a verification verdict failed, 2 config, 3 numerical, 4 invariant.
int run_command(const Invocation& inv, std::ostream& log);

}  // namespace chemotax
