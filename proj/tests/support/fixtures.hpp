#ifndef GVA_TESTS_FIXTURES_HPP
#define GVA_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "gva/dsl.hpp"

namespace gva::testing {

inline std::string fixture_text(const std::string& name) {
    std::ifstream in(std::string(GVA_FIXTURES_DIR) + "/" + name);
    if (!in) throw Error("missing fixture " + name);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline Gva fixture_gva(const std::string& name) {
    return std::get<Gva>(parse_automaton(fixture_text(name)));
}

} // namespace gva::testing

#endif
