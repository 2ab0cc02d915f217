#pragma once

#include "chemotax/config.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace chemotax {

// Rows of numbers and short tokens, '.' decimal point, 17 significant digits, '\n' endings.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header);
  Csv& row(const std::vector<double>& values);
  // Mixed row; numbers go through format_double.
  Csv& raw(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }
  std::size_t rows() const { return rows_; }

 private:
  std::string text_;
  std::size_t cols_;
  std::size_t rows_ = 0;
};

// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct Manifest {
  std::string command;
  std::string status = "ok";
  std::string error;
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  double wall_seconds = 0;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, bool>> invariants;
  std::vector<std::pair<std::string, double>> results;
  std::vector<std::string> warnings;

  std::string json() const;
};

// Resolves the output directory: flag, then CHEMOTAX_LV_OUT, then "out".
std::filesystem::path resolve_out_dir(const std::string& flag);

}  // namespace chemotax
