#include "ansec/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ansec {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream os;
  os << "config line " << line << ": " << what;
  throw ConfigError(os.str());
}

double parse_number(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) fail(line, "trailing characters after value of " + key);
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "value of " + key + " is not a number: '" + v + "'");
  }
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool in_system = false;
  std::map<std::string, std::pair<double, int>> kv;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[system]")
        fail(line_no, "unknown section " + line + " (only [system] is recognized)");
      if (in_system) fail(line_no, "duplicate [system] section");
      in_system = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    if (!in_system) fail(line_no, "key appears before the [system] section");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    static const char* known[] = {"n_antennas", "power_dbm",  "power_linear",
                                  "alpha",      "r_bob",      "lambda_e",
                                  "tau",        "gamma_hat"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(line_no, "unknown key '" + key + "'");
    if (kv.count(key)) fail(line_no, "duplicate key '" + key + "'");
    kv[key] = {parse_number(line_no, key, val), line_no};
  }
  if (!in_system) throw ConfigError("config: missing [system] section");

  const auto need = [&](const char* key) -> double {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ConfigError(std::string("config: missing required key '") + key + "'");
    return it->second.first;
  };

  SystemConfig cfg;
  const double n = need("n_antennas");
  if (n != std::floor(n))
    throw ConfigError("config: n_antennas must be an integer");
  cfg.n_antennas = int(n);

  const bool has_dbm = kv.count("power_dbm") > 0;
  const bool has_lin = kv.count("power_linear") > 0;
  if (has_dbm == has_lin)
    throw ConfigError(
        "config: exactly one of power_dbm / power_linear must be given");
  cfg.power = has_dbm ? dbm_to_linear(kv["power_dbm"].first)
                      : kv["power_linear"].first;
  cfg.alpha = need("alpha");
  cfg.r_bob = need("r_bob");
  cfg.lambda_e = need("lambda_e");
  cfg.tau = need("tau");
  cfg.gamma_hat = need("gamma_hat");

  try {
    validate(cfg);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const SystemConfig& cfg) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "[system]\n"
                "n_antennas = %d\n"
                "power_linear = %.12g\n"
                "alpha = %.12g\n"
                "r_bob = %.12g\n"
                "lambda_e = %.12g\n"
                "tau = %.12g\n"
                "gamma_hat = %.12g\n",
                cfg.n_antennas, cfg.power, cfg.alpha, cfg.r_bob, cfg.lambda_e,
                cfg.tau, cfg.gamma_hat);
  return buf;
}

}  // namespace ansec
