#pragma once

#include "ocs/space.hpp"

#include <map>
#include <optional>
#include <string>

namespace ocs {

// A parsed instance file: the space plus optional labeled attachments used
// by the command-line tools.
struct Instance {
    std::string name;
    CalibratedSpace space;
    std::map<std::string, Functional> functionals;
    std::map<std::string, Subspace> subspaces;
    std::map<std::string, RVec> order_units;
};

// Strict JSON subset, format 1. All rationals are "p" or "p/q" strings; a
// float literal anywhere is a parse error. Diagnostics carry line numbers.
Instance parse_instance(const std::string& text, const std::string& name = "");

std::string serialize_instance(const Instance& inst);

// Parses a comma-separated rational vector literal like "1,-2/3,0".
RVec parse_vector(const std::string& text);

}  // namespace ocs
