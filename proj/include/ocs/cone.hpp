#pragma once

#include "ocs/linalg.hpp"
#include "ocs/lp.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace ocs {

// V-to-H conversion core: extreme rays and lineality basis of
// {x : <h, x> >= 0 for every row h}. Rays and lineality vectors come back
// as primitive integer vectors, sorted lexicographically.
struct DDResult {
    std::vector<RVec> rays;
    std::vector<RVec> lineality;
};
DDResult dd_extreme_rays(const std::vector<RVec>& halfspaces, std::size_t dim);

// Vertices of the polytope {x : <row_i, x> >= rhs_i}; throws if the set is
// unbounded or empty. Equalities may be encoded as opposite row pairs.
std::vector<RVec> enumerate_vertices(const std::vector<RVec>& rows,
                                     const std::vector<Rat>& rhs, std::size_t dim);

// Finitely generated convex cone. Generators are canonicalized to primitive
// integer vectors; the inequality description is computed lazily and cached
// (thread-safe, first reader computes).
class PolyCone {
  public:
    explicit PolyCone(std::size_t dim) : dim_(dim), state_(std::make_shared<HState>()) {}
    PolyCone(std::size_t dim, const std::vector<RVec>& generators);

    std::size_t dim() const { return dim_; }
    const std::vector<RVec>& generators() const { return generators_; }

    // Irredundant H-representation: x in cone <=> <h, x> >= 0 for all h.
    // Two-sided pairs +/-h encode the equations cutting out lower
    // dimensional cones.
    const std::vector<RVec>& inequalities() const;

    // Exact membership, decided by LP feasibility over the generators.
    bool contains(const RVec& x) const;

    // {f : <f, g> >= 0 for every generator g}, with generators computed by
    // double description.
    PolyCone dual_cone() const;

    // Pointedness; when the cone contains a line, a nonzero v with both v
    // and -v inside is returned instead.
    std::optional<RVec> line_witness() const;
    bool is_pointed() const { return !line_witness().has_value(); }

    bool trivial() const { return generators_.empty(); }

  private:
    struct HState {
        std::once_flag once;
        std::vector<RVec> inequalities;
    };
    std::size_t dim_;
    std::vector<RVec> generators_;
    std::shared_ptr<HState> state_;
};

// Same cone with inequalities forced to be materialized (Minkowski-Weyl
// conversion); returns the argument for chaining.
const PolyCone& dual_description(const PolyCone& c);

}  // namespace ocs
