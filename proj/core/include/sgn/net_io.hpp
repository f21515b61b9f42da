#pragma once

#include <string>

#include <json.hpp>

#include "sgn/net.hpp"

namespace sgn {

nlohmann::json net_to_json(const GammaNet& net);
GammaNet net_from_json(const nlohmann::json& j);

std::string dump_net(const GammaNet& net, int indent = -1);
GammaNet parse_net(const std::string& text);

void save_net(const GammaNet& net, const std::string& path);
GammaNet load_net(const std::string& path);

}  // namespace sgn
