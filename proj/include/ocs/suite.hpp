#pragma once

#include "ocs/io.hpp"

#include <string>
#include <vector>

namespace ocs {

struct SuiteOptions {
    int state_samples = 20;
    int gk_samples = 20;
    int additivity_samples = 10;
    int bnn_samples = 2;
    // Test-only hook: flips the fullness leg of the first instance to prove
    // the harness reports disagreements.
    bool corrupt_full_check = false;
};

// One equivalence row per seminorm index: the theorem legs must all carry
// the same truth value; gk and additivity follow the same verdict on their
// samples.
struct AlphaVerdict {
    std::size_t alpha = 0;
    bool full = false;
    bool cover = false;
    bool attain = false;
    bool isometric_everywhere = false;
    bool gk_zero_gap = false;
    bool additivity_ok = false;      // witness feasibility matched additivity
    bool increasing = false;          // informational
    bool positives_isometric = false; // must hold whenever increasing does
    bool agree = false;
};

struct InstanceVerdict {
    std::string name;
    std::vector<AlphaVerdict> alphas;
    bool bnn_routes_agree = false;
    bool agree = false;
};

struct SuiteReport {
    std::vector<InstanceVerdict> instances;
    bool all_agree = false;
    std::string first_disagreement;  // instance name
    std::string reproducer;          // serialized instance, ready to re-run
    long long timing_ms = 0;

    std::string to_json(bool include_timing = true) const;
};

SuiteReport run_suite(const std::vector<Instance>& instances, const SuiteOptions& opt = {});

}  // namespace ocs
