#pragma once

#include "ocs/space.hpp"

#include <optional>
#include <vector>

namespace ocs {

// Finite state space: per index alpha, the vertex list of the polytope
// B_alpha = K_alpha intersected with the dual cone. Every supremum over
// B_alpha that the decision procedures need is attained at a vertex, so
// the finite skeleton is lossless.
class FiniteStateSpace {
  public:
    FiniteStateSpace(std::size_t dim, std::vector<std::vector<RVec>> vertices)
        : dim_(dim), vertices_(std::move(vertices)) {}

    std::size_t dim() const { return dim_; }
    std::size_t family_size() const { return vertices_.size(); }
    const std::vector<RVec>& vertices(std::size_t alpha) const { return vertices_.at(alpha); }

    // max_{v in V_alpha} |<v, x>|: the seminorm induced by the evaluation map.
    Rat induced_seminorm(std::size_t alpha, const RVec& x) const;
    // max_{v in V_alpha} <v, x>: the positive-side supremum over states.
    Rat state_supremum(std::size_t alpha, const RVec& x) const;

  private:
    std::size_t dim_;
    std::vector<std::vector<RVec>> vertices_;
};

// Point of the representation: tagged evaluation phi(x)(v, alpha) = <v, x>.
struct TaggedValue {
    std::size_t alpha;
    std::size_t index;
    Rat value;
};

// Enumerates the vertices of every B_alpha. Dimension is capped (default 6,
// override with OC_MAX_DIM) and seminorms are capped at 10 rows to keep the
// double description tractable.
FiniteStateSpace build_representation(const CalibratedSpace& s);

std::vector<TaggedValue> evaluate(const FiniteStateSpace& fs, const RVec& x);

struct RepresentationReport {
    bool injective = false;
    bool bipositive = false;
    std::vector<bool> isometric_on_positives;
    std::vector<bool> isometric_everywhere;
    // When bipositive fails: x with phi(x) >= 0 at every vertex yet outside
    // the cone. When isometric_on_positives[alpha] fails: x in E+ with
    // p_alpha(x) strictly above the vertex supremum.
    std::optional<RVec> bipositive_witness;
    std::vector<std::optional<RVec>> positives_witness;
};

RepresentationReport verify_representation(const CalibratedSpace& s, const FiniteStateSpace& fs);

// Sub-convex weights over V_alpha realizing f, i.e. w >= 0, sum w <= 1 and
// sum w(v) v = f; exists iff f lies in B_alpha.
std::optional<std::vector<Rat>> realize_state(const FiniteStateSpace& fs, std::size_t alpha,
                                              const Functional& f);

}  // namespace ocs
