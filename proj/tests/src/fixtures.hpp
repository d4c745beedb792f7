#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

inline nlohmann::json load_fixture(const std::string& name) {
    std::string path = std::string(CMUNITS_FIXTURE_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture " + path);
    return nlohmann::json::parse(in);
}
