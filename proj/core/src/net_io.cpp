#include "sgn/net_io.hpp"

#include <fstream>
#include <sstream>

#include "sgn/errors.hpp"

namespace sgn {
namespace {

nlohmann::json point_json(const SurfacePoint& p) { return nlohmann::json::array({p.chart, p.x[0], p.x[1]}); }

SurfacePoint point_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw StructuralError("a point is [chart, x, y]");
  return {j[0].get<int>(), Vec2(j[1].get<double>(), j[2].get<double>())};
}

}  // namespace

nlohmann::json net_to_json(const GammaNet& net) {
  nlohmann::json j;
  j["format"] = "sgn-net";
  j["version"] = 1;
  j["arclength_uniform"] = net.arclength_uniform();
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : net.vertices()) j["vertices"].push_back(point_json(v));
  j["edges"] = nlohmann::json::array();
  for (int e = 0; e < net.edge_count(); ++e) {
    nlohmann::json je;
    je["ends"] = {net.graph().edge(e).ends[0], net.graph().edge(e).ends[1]};
    je["multiplicity"] = net.multiplicity(e);
    je["samples"] = nlohmann::json::array();
    for (const auto& p : net.curve(e)) je["samples"].push_back(point_json(p));
    j["edges"].push_back(std::move(je));
  }
  return j;
}

GammaNet net_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "sgn-net") throw StructuralError("not an sgn-net record");
    WeightedMultigraph g;
    std::vector<SurfacePoint> verts;
    for (const auto& v : j.at("vertices")) {
      g.add_vertex();
      verts.push_back(point_from(v));
    }
    std::vector<Polyline> curves;
    for (const auto& je : j.at("edges")) {
      g.add_edge(je.at("ends")[0].get<int>(), je.at("ends")[1].get<int>(), je.at("multiplicity").get<int>());
      Polyline line;
      for (const auto& p : je.at("samples")) line.push_back(point_from(p));
      curves.push_back(std::move(line));
    }
    GammaNet net(std::move(g), std::move(verts), std::move(curves));
    net.set_arclength_uniform(j.value("arclength_uniform", false));
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed net record: ") + e.what());
  }
}

std::string dump_net(const GammaNet& net, int indent) { return net_to_json(net).dump(indent); }

GammaNet parse_net(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed net record: ") + e.what());
  }
  return net_from_json(j);
}

void save_net(const GammaNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << dump_net(net, 1) << '\n';
}

GammaNet load_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_net(ss.str());
}

}  // namespace sgn
