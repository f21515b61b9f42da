#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "sgn/metric.hpp"

namespace sgn {

// Plain-text `key = value` config with [sections] (INI syntax). Keys are
// addressed as "section.key".
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
  // Programmatic override, e.g. from command-line flags.
  void set(const std::string& key, const std::string& value);

  // FNV-1a over the canonical key=value listing.
  std::uint64_t hash() const;
  std::string hash_hex() const;
  std::string canonical() const;

 private:
  boost::property_tree::ptree tree_;
};

std::uint64_t fnv1a(const std::string& text);

// Surface from [surface]: kind = torus | sphere | dumbbell with lx, ly,
// radius, bulb_radius, neck_radius, beta.
std::shared_ptr<const Surface> surface_from_config(const Config& cfg);
// Base metric with [surface] injectivity and quadrature_resolution applied.
Metric metric_from_config(const Config& cfg);

// Comment header for CSV outputs: config hash, seed and resolution knobs.
std::string csv_preamble(const Config& cfg, const std::map<std::string, std::string>& knobs);

}  // namespace sgn
