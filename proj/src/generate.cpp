#include "ocs/generate.hpp"

#include <sstream>

namespace ocs {

namespace {

Rat q(long n) { return Rat(Int(n)); }

}  // namespace

RVec sample_point(std::mt19937_64& rng, std::size_t dim, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    RVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = q(d(rng));
    return v;
}

CalibratedSpace generate_instance(std::uint64_t seed, const GenerateOptions& opt) {
    if (opt.dim < 1 || opt.dim > 4)
        throw std::invalid_argument("generate_instance: dim must be in 1..4");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> ngen(1, opt.max_generators);
    std::uniform_int_distribution<std::size_t> nrow(1, opt.max_rows);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<RVec> gens;
        std::size_t g = ngen(rng);
        for (std::size_t i = 0; i < g; ++i) gens.push_back(sample_point(rng, opt.dim));
        PolyCone cone(opt.dim, gens);
        if (!cone.is_pointed()) continue;

        std::vector<PolyhedralSeminorm> seminorms;
        bool bad = false;
        for (std::size_t k = 0; k < opt.seminorm_count && !bad; ++k) {
            std::vector<RVec> rows;
            std::size_t r = nrow(rng);
            for (std::size_t i = 0; i < r; ++i) {
                RVec row = sample_point(rng, opt.dim);
                if (opt.force_rank_deficient && k == 0 && opt.dim > 1) row[opt.dim - 1] = 0;
                rows.push_back(row);
            }
            try {
                seminorms.emplace_back("p" + std::to_string(k), rows, opt.dim);
            } catch (const space_error&) {
                bad = true;  // all-zero draw, retry
            }
        }
        if (bad) continue;
        if (opt.force_rank_deficient && opt.dim > 1) {
            RMat first(0, opt.dim);
            for (const RVec& r : seminorms[0].rows()) first.append_row(r);
            if (rank(first) == opt.dim) continue;
        }
        try {
            return CalibratedSpace::make(opt.dim, cone, seminorms);
        } catch (const space_error&) {
            continue;  // rows failed to span, retry
        }
    }
    std::ostringstream os;
    os << "generate_instance: no valid space after 200 attempts (seed " << seed << ")";
    throw std::runtime_error(os.str());
}

RVec sample_cone_point(std::mt19937_64& rng, const CalibratedSpace& s) {
    std::uniform_int_distribution<int> w(0, 4);
    RVec x(s.dim());
    for (const RVec& g : s.cone().generators()) x = x + g * q(w(rng));
    return x;
}

Functional sample_span_functional(std::mt19937_64& rng, const CalibratedSpace& s,
                                  std::size_t alpha) {
    std::uniform_int_distribution<int> w(-3, 3);
    RVec u(s.dim());
    for (const RVec& a : s.seminorm(alpha).rows()) u = u + a * q(w(rng));
    return u;
}

Functional sample_positive_functional(std::mt19937_64& rng, const CalibratedSpace& s,
                                      const std::vector<RVec>& state_vertices) {
    std::uniform_int_distribution<int> w(0, 3);
    RVec u(s.dim());
    for (const RVec& v : state_vertices) u = u + v * q(w(rng));
    return u;
}

Subspace sample_subspace(std::mt19937_64& rng, const CalibratedSpace& s, std::size_t sub_dim) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        RMat basis(0, s.dim());
        for (std::size_t i = 0; i < sub_dim; ++i) {
            RVec row = sample_point(rng, s.dim(), -4, 4);
            if (row.is_zero()) row[i % s.dim()] = 1;
            basis.append_row(row);
        }
        if (rank(basis) == basis.nrows()) return Subspace(basis);
    }
    throw std::runtime_error("sample_subspace: no independent draw");
}

}  // namespace ocs
