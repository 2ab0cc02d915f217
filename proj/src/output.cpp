#include "chemotax/output.hpp"

#include "chemotax/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <unistd.h>

namespace chemotax {

Csv::Csv(const std::vector<std::string>& header) : cols_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
  text_ += '\n';
}

Csv& Csv::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  return raw(cells);
}

Csv& Csv::raw(const std::vector<std::string>& cells) {
  if (cells.size() != cols_) throw Error(ErrorKind::InvalidArgument, "CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
  text_ += '\n';
  ++rows_;
  return *this;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw Error(ErrorKind::InvalidArgument, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string Manifest::json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["artifact_version"] = CHEMOTAX_VERSION;
  j["status"] = status;
  j["exit_code"] = exit_code;
  if (!error.empty()) j["error"] = error;
  j["seed"] = seed;
  j["wall_seconds"] = wall_seconds;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  j["outputs"] = outputs;
  nlohmann::ordered_json inv = nlohmann::ordered_json::object();
  for (const auto& [k, v] : invariants) inv[k] = v ? "pass" : "fail";
  j["invariants"] = inv;
  nlohmann::ordered_json res = nlohmann::ordered_json::object();
  // strings keep every digit and survive nan/inf
  for (const auto& [k, v] : results) res[k] = format_double(v);
  j["results"] = res;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::filesystem::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* e = std::getenv("CHEMOTAX_LV_OUT"); e && *e) return e;
  return "out";
}

}  // namespace chemotax
