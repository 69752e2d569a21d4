#pragma once

#include "ocs/io.hpp"
#include "ocs/space.hpp"

#include <cstdint>
#include <random>

namespace ocs {

struct GenerateOptions {
    std::size_t dim = 2;            // capped at 4
    std::size_t max_generators = 6;
    std::size_t max_rows = 5;
    std::size_t seminorm_count = 2;
    bool force_rank_deficient = false;  // make seminorm 0 drop rank
};

// Deterministic from the seed: pointed cone with small integer generators,
// spanning seminorm rows. Retries internally on degenerate draws and throws
// after a bounded number of attempts.
CalibratedSpace generate_instance(std::uint64_t seed, const GenerateOptions& opt = {});

// Deterministic samplers used by the verification suites.
RVec sample_cone_point(std::mt19937_64& rng, const CalibratedSpace& s);
Functional sample_span_functional(std::mt19937_64& rng, const CalibratedSpace& s,
                                  std::size_t alpha);
Functional sample_positive_functional(std::mt19937_64& rng, const CalibratedSpace& s,
                                      const std::vector<RVec>& state_vertices);
Subspace sample_subspace(std::mt19937_64& rng, const CalibratedSpace& s, std::size_t sub_dim);
RVec sample_point(std::mt19937_64& rng, std::size_t dim, int lo = -9, int hi = 9);

}  // namespace ocs
