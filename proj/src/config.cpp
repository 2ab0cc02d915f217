#include "chemotax/config.hpp"

#include "chemotax/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace chemotax {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v) {
  double x = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) {
    if (v == "nan" || v == "auto") return std::nan("");
    throw std::invalid_argument("not a number: '" + v + "'");
  }
  return x;
}

long long parse_int(const std::string& v) {
  long long x = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw std::invalid_argument("not an integer: '" + v + "'");
  return x;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("not a boolean: '" + v + "'");
}

template <class T, class F>
std::vector<T> parse_list(const std::string& v, F&& one) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<T>(one(trim(item))));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct Key {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class M>
Key dbl(M m) {
  return {[m](RunConfig& c, const std::string& v) { m(c) = parse_double(v); },
          [m](const RunConfig& c) { return format_double(m(c)); }};
}

template <class M>
Key integer(M m) {
  return {[m](RunConfig& c, const std::string& v) {
            using T = std::remove_reference_t<decltype(m(c))>;
            m(c) = static_cast<T>(parse_int(v));
          },
          [m](const RunConfig& c) { return std::to_string(m(c)); }};
}

template <class M>
Key boolean(M m) {
  return {[m](RunConfig& c, const std::string& v) { m(c) = parse_bool(v); },
          [m](const RunConfig& c) { return std::string(m(c) ? "true" : "false"); }};
}

const std::vector<std::pair<std::string, Key>>& keys() {
  static const std::vector<std::pair<std::string, Key>> k = [] {
    std::vector<std::pair<std::string, Key>> v;
#define D(name, expr) v.emplace_back(name, dbl([](auto& c) -> auto& { return expr; }))
#define I(name, expr) v.emplace_back(name, integer([](auto& c) -> auto& { return expr; }))
#define B(name, expr) v.emplace_back(name, boolean([](auto& c) -> auto& { return expr; }))
    D("model.a1", c.model.a1);
    D("model.a2", c.model.a2);
    D("model.b1", c.model.b1);
    D("model.b2", c.model.b2);
    D("model.c1", c.model.c1);
    D("model.c2", c.model.c2);
    D("model.D1", c.model.D1);
    D("model.D2", c.model.D2);
    D("model.chi", c.model.chi);
    D("model.tau", c.model.tau);
    D("model.L", c.model.L);
    D("model.phi.p0", c.model.sensitivity.p[0]);
    D("model.phi.p1", c.model.sensitivity.p[1]);
    D("model.phi.p2", c.model.sensitivity.p[2]);
    D("model.phi.p3", c.model.sensitivity.p[3]);
    I("grid.n", c.grid_n);
    D("time.dt", c.time.dt);
    D("time.t_end", c.time.t_end);
    D("time.snapshot_every", c.time.snapshot_every);
    D("simulate.u0", c.simulate.u0);
    D("simulate.v0", c.simulate.v0);
    I("simulate.mode", c.simulate.mode);
    D("simulate.amplitude", c.simulate.amplitude);
    D("simulate.noise", c.simulate.noise);
    v.emplace_back("simulate.modes",
                   Key{[](RunConfig& c, const std::string& s) {
                         c.simulate.modes = parse_list<int>(s, [](const std::string& x) { return parse_int(x); });
                       },
                       [](const RunConfig& c) {
                         std::string out;
                         for (std::size_t i = 0; i < c.simulate.modes.size(); ++i)
                           out += (i ? "," : "") + std::to_string(c.simulate.modes[i]);
                         return out;
                       }});
    I("stability.k_max", c.stability.k_max);
    I("continue.k", c.cont.k);
    I("continue.n", c.cont.n);
    D("continue.chi_min", c.cont.chi_min);
    D("continue.chi_max", c.cont.chi_max);
    D("continue.ds", c.cont.ds);
    I("continue.max_points", c.cont.max_points);
    I("continue.direction", c.cont.direction);
    B("continue.stability", c.cont.stability);
    I("continue.profile_every", c.cont.profile_every);
    D("shadow.r", c.shadow.r);
    D("shadow.eps", c.shadow.eps);
    I("shadow.mode", c.shadow.mode);
    I("shadow.n", c.shadow.n);
    D("shadow.eps_min", c.shadow.eps_min);
    D("shadow.eps_max", c.shadow.eps_max);
    D("shadow.ds", c.shadow.ds);
    I("shadow.max_points", c.shadow.max_points);
    I("shadow.direction", c.shadow.direction);
    D("layer.eps", c.layer.eps);
    D("layer.v_bar2", c.layer.v_bar2);
    I("layer.n", c.layer.n);
    D("limit.r", c.limit.r);
    v.emplace_back("limit.D1_list",
                   Key{[](RunConfig& c, const std::string& s) {
                         c.limit.D1_list = parse_list<double>(s, [](const std::string& x) { return parse_double(x); });
                       },
                       [](const RunConfig& c) {
                         std::string out;
                         for (std::size_t i = 0; i < c.limit.D1_list.size(); ++i)
                           out += (i ? "," : "") + format_double(c.limit.D1_list[i]);
                         return out;
                       }});
    I("limit.n", c.limit.n);
    D("limit.dt", c.limit.dt);
    D("limit.t_end", c.limit.t_end);
    D("limit.stop_residual", c.limit.stop_residual);
    I("seed", c.seed);
#undef D
#undef I
#undef B
    return v;
  }();
  return k;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const Key* k = nullptr;
    for (const auto& [name, kk] : keys())
      if (name == key) k = &kk;
    if (!k) throw Error(ErrorKind::UnknownKey, "line " + std::to_string(lineno) + ": '" + key + "'");
    if (val.empty())
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    try {
      k->set(c, val);
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (auto it = seen.find(key); it != seen.end())
      c.warnings.push_back("line " + std::to_string(lineno) + ": '" + key + "' overrides line " +
                           std::to_string(it->second));
    seen[key] = lineno;
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, k] : keys()) out.emplace_back(name, k.get(c));
  return out;
}

}  // namespace chemotax
