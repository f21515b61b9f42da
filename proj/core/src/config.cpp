#include "sgn/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "sgn/errors.hpp"

namespace sgn {

namespace pt = boost::property_tree;

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  try {
    pt::read_ini(in, cfg.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return tree_.get<std::string>(key, fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  try {
    return tree_.get<double>(key);
  } catch (const pt::ptree_error&) {
    throw ConfigError("config: " + key + " is not a number");
  }
}

long long Config::get_int(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  try {
    return tree_.get<long long>(key);
  } catch (const pt::ptree_error&) {
    throw ConfigError("config: " + key + " is not an integer");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = tree_.get<std::string>(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: " + key + " is not a boolean");
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  std::string v = tree_.get<std::string>(key);
  for (char& ch : v)
    if (ch == ',') ch = ' ';
  std::istringstream in(v);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("config: " + key + " is not a list of numbers");
    }
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) { tree_.put(key, value); }

std::string Config::canonical() const {
  // ptree keeps insertion order; sort for a stable hash.
  std::map<std::string, std::string> flat;
  for (const auto& [section, body] : tree_) {
    if (body.empty()) {
      flat[section] = body.data();
      continue;
    }
    for (const auto& [key, value] : body) flat[section + "." + key] = value.data();
  }
  std::string out;
  for (const auto& [k, v] : flat) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t Config::hash() const { return fnv1a(canonical()); }

std::string Config::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

std::shared_ptr<const Surface> surface_from_config(const Config& cfg) {
  const std::string kind = cfg.get_string("surface.kind", "torus");
  if (kind == "torus") return make_flat_torus(cfg.get_double("surface.lx", 1.0), cfg.get_double("surface.ly", 1.0));
  if (kind == "sphere") return make_round_sphere(cfg.get_double("surface.radius", 1.0));
  if (kind == "dumbbell")
    return make_dumbbell(cfg.get_double("surface.bulb_radius", 1.0), cfg.get_double("surface.neck_radius", 0.1),
                         cfg.get_double("surface.beta", 0.6));
  throw ConfigError("config: unknown surface.kind '" + kind + "'");
}

Metric metric_from_config(const Config& cfg) {
  std::shared_ptr<const Surface> surface;
  try {
    surface = surface_from_config(cfg);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  Metric m(surface);
  if (cfg.has("surface.injectivity")) {
    const double inj = cfg.get_double("surface.injectivity", 0.0);
    if (!(inj > 0.0)) throw ConfigError("config: surface.injectivity must be positive");
    m.set_injectivity_bound(inj);
  }
  if (cfg.has("surface.quadrature_resolution")) {
    const long long n = cfg.get_int("surface.quadrature_resolution", 0);
    if (n < 4) throw ConfigError("config: surface.quadrature_resolution must be at least 4");
    m.set_quadrature_resolution(static_cast<int>(n));
  }
  return m;
}

std::string csv_preamble(const Config& cfg, const std::map<std::string, std::string>& knobs) {
  std::string out = "# config_hash=" + cfg.hash_hex() + "\n";
  for (const auto& [k, v] : knobs) out += "# " + k + "=" + v + "\n";
  return out;
}

}  // namespace sgn
