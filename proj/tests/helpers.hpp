#pragma once

#include <cstdlib>
#include <string>

#include "dgc/parse.hpp"

inline std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("DGC_FIXTURES");
    return std::string(dir ? dir : "fixtures") + "/" + name;
}

inline dgc::Presentation load_fixture(const std::string& name) {
    return dgc::parse_file(fixture_path(name));
}
