#pragma once

#include "ocs/io.hpp"

#include <string>
#include <vector>

namespace ocs {

struct Fixture {
    std::string name;
    std::string text;
};

// The built-in instance corpus: small worked examples with hand-checked
// expected behaviour plus degenerate spaces exercising the edge paths.
const std::vector<Fixture>& fixtures();

std::vector<Instance> fixture_instances();

}  // namespace ocs
