#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "holderlab/csv.hpp"
#include "holderlab/presets.hpp"

namespace holderlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(int line, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x)) fail_at(line, "'" + key + "' expects a number, got '" + v + "'");
  return x;
}

long long parse_int(int line, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) fail_at(line, "'" + key + "' expects an integer, got '" + v + "'");
  return x;
}

std::uint64_t parse_u64(int line, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    if (!v.empty() && v[0] != '-') x = std::stoull(v, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) fail_at(line, "'" + key + "' expects an unsigned 64-bit integer, got '" + v + "'");
  return x;
}

void check_preset(int line, const std::string& key, const std::string& spec, int n) {
  try {
    (void)make_preset(spec, n);
  } catch (const Error& e) {
    fail_at(line, "'" + key + "': " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"solve",       "check-geometry", "verify-c1a", "verify-c0a",
                                          "second-diff", "schauder",       "smoothing",  "sweep"};
  return c;
}

std::string RunConfig::canonical() const {
  std::string s = "command=" + command + "\nn=" + std::to_string(n) + "\nr=" + fmt_num(r) +
                  "\nsymmetry=" + to_string(symmetry) + "\nphi=" + phi + "\nf=" + f + "\nalpha=" + fmt_num(alpha) +
                  "\nt=" + fmt_num(t) + "\nresolution=" + std::to_string(resolution) + "\nseed=" + std::to_string(seed) +
                  "\neps=";
  for (std::size_t i = 0; i < eps.size(); ++i) s += (i ? "," : "") + fmt_num(eps[i]);
  return s + "\n";
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::map<std::string, int> seen;  // "section.key" -> line
  std::map<std::string, std::string> raw;
  const std::set<std::string> sections{"run", "instance", "estimate", "grid"};
  const std::map<std::string, std::set<std::string>> keys{
      {"run", {"command", "seed", "out"}},
      {"instance", {"n", "r", "symmetry", "phi", "f"}},
      {"estimate", {"alpha", "t", "eps"}},
      {"grid", {"resolution"}}};

  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_at(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!sections.count(section)) fail_at(lineno, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_at(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail_at(lineno, "key '" + key + "' appears before any section");
    if (!keys.at(section).count(key)) fail_at(lineno, "unknown key '" + key + "' in section [" + section + "]");
    if (value.empty()) fail_at(lineno, "'" + key + "' has an empty value");
    const std::string full = section + "." + key;
    if (seen.count(full)) fail_at(lineno, "duplicate key '" + key + "'");
    seen[full] = lineno;
    raw[full] = value;
  }

  const auto get = [&](const std::string& full, const std::function<void(int, const std::string&)>& set) {
    if (auto it = raw.find(full); it != raw.end()) set(seen[full], it->second);
  };
  get("run.command", [&](int, const std::string& v) { c.command = v; });
  get("run.seed", [&](int l, const std::string& v) { c.seed = parse_u64(l, "seed", v); });
  get("run.out", [&](int, const std::string& v) { c.out = v; });
  get("instance.n", [&](int l, const std::string& v) {
    const long long n = parse_int(l, "n", v);
    if (n < 1 || n > 8) fail_at(l, "'n' must lie in [1, 8]");
    c.n = static_cast<int>(n);
  });
  get("instance.r", [&](int l, const std::string& v) { c.r = parse_double(l, "r", v); });
  get("instance.symmetry", [&](int l, const std::string& v) {
    try {
      c.symmetry = symmetry_from_string(v);
    } catch (const Error& e) {
      fail_at(l, std::string("'symmetry': ") + e.what());
    }
  });
  get("instance.phi", [&](int, const std::string& v) { c.phi = v; });
  get("instance.f", [&](int, const std::string& v) { c.f = v; });
  get("estimate.alpha", [&](int l, const std::string& v) { c.alpha = parse_double(l, "alpha", v); });
  get("estimate.t", [&](int l, const std::string& v) { c.t = parse_double(l, "t", v); });
  get("estimate.eps", [&](int l, const std::string& v) {
    c.eps.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) c.eps.push_back(parse_double(l, "eps", trim(item)));
  });
  get("grid.resolution", [&](int l, const std::string& v) {
    const long long res = parse_int(l, "resolution", v);
    if (res < 0 || res > 100000) fail_at(l, "'resolution' out of range");
    c.resolution = static_cast<int>(res);
  });

  // Presets depend on n, so they are checked once everything is read.
  get("instance.phi", [&](int l, const std::string& v) { check_preset(l, "phi", v, c.n); });
  get("instance.f", [&](int l, const std::string& v) { check_preset(l, "f", v, c.n); });

  try {
    validate(c);
  } catch (const ConfigError& e) {
    // Attach the line of the key the message names, when the file set it.
    const std::string msg = e.what();
    for (const auto& [full, l] : seen) {
      const std::string key = full.substr(full.find('.') + 1);
      if (msg.rfind("'" + key + "'", 0) == 0) fail_at(l, msg);
    }
    throw;
  }
  return c;
}

void validate(const RunConfig& c) {
  const auto& cmds = commands();
  if (c.command.empty()) throw ConfigError("'command' is required");
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end()) {
    throw ConfigError("'command' must be one of solve, check-geometry, verify-c1a, verify-c0a, second-diff, "
                      "schauder, smoothing, sweep; got '" + c.command + "'");
  }
  if (!(c.r > 0.0)) throw ConfigError("'r' must be positive");
  const bool c0 = c.command == "verify-c0a";
  if (c0 ? !(c.alpha > 0.0 && c.alpha <= 1.0) : !(c.alpha > 0.0 && c.alpha < 1.0)) {
    throw ConfigError(std::string("'alpha' must lie in ") + (c0 ? "(0, 1]" : "(0, 1)") + ", got " + fmt_num(c.alpha));
  }
  if (!(c.t > 0.0 && c.t < 1.0)) throw ConfigError("'t' must lie in (0, 1), got " + fmt_num(c.t));
  if (c.resolution < 33) throw ConfigError("'resolution' must be at least 33");
  if (c.resolution % 2 == 0) throw ConfigError("'resolution' must be odd");
  if (c.symmetry == Symmetry::Disc && c.n != 1) throw ConfigError("'symmetry' disc requires n = 1");
  if (c.symmetry == Symmetry::Toric && c.n != 2) throw ConfigError("'symmetry' toric requires n = 2");
  if (c.eps.size() < 2) throw ConfigError("'eps' needs at least two values");
  for (double e : c.eps) {
    if (!(e > 0.0 && e < 0.5)) throw ConfigError("'eps' values must lie in (0, 1/2)");
  }
  for (std::size_t i = 1; i < c.eps.size(); ++i) {
    if (!(c.eps[i] < c.eps[i - 1])) throw ConfigError("'eps' values must decrease");
  }
  for (const auto* key : {"phi", "f"}) {
    try {
      (void)make_preset(std::string(key) == "phi" ? c.phi : c.f, c.n);
    } catch (const Error& e) {
      throw ConfigError(std::string("'") + key + "': " + e.what());
    }
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace holderlab::cli
