#pragma once

#include "ocs/criteria.hpp"
#include "ocs/represent.hpp"
#include "ocs/space.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ocs {

class extend_error : public std::runtime_error {
  public:
    explicit extend_error(const std::string& what) : std::runtime_error(what) {}
};

// Positive norm-preserving extension problem: a functional given by its
// values on the basis rows of a subspace, to be extended to the whole space
// without increasing its seminorm.
struct ExtensionProblem {
    CalibratedSpace space;
    std::size_t alpha = 0;
    Subspace sub;
    RVec f_on_sub;  // one value per basis row
};

// sup{f(x) : x in sub, p_alpha(x) <= 1}; nullopt when f is nonzero on
// sub intersected with ker p_alpha (the norm is infinite).
std::optional<Rat> subspace_norm(const ExtensionProblem& ep);

// The four primal condition routes of the extension theorem plus the dual
// construction; all five decide the same question.
enum class BNNRoute { cond2, cond3, cond4, cond5, construct };

struct BNNResult {
    bool extendable = false;
    std::optional<Functional> extension;  // populated on the construct route
    std::optional<Rat> sub_norm;          // nullopt = infinite
    // (x, y) with x in sub, x <= y and f(x) > sub_norm * p_alpha(y); for an
    // infinite sub_norm the pair has p_alpha(y) = 0 < f(x), violating every
    // normalization.
    std::optional<std::pair<RVec, RVec>> violation;
    std::optional<lp::LPOutcome> infeasibility;  // construct-route diagnostics
};

// Condition route: decides extendability by one LP over the normalized
// functional; violation extracted and re-verified on failure.
BNNResult bnn_check(const ExtensionProblem& ep, BNNRoute route = BNNRoute::cond4);

// Dual route: constructs the extension inside sub_norm times the dual ball,
// positive on the cone and agreeing on the subspace basis.
BNNResult bnn_construct(const ExtensionProblem& ep);

struct AdditivityResult {
    bool additive = false;
    Rat lhs;  // |f+g|
    Rat rhs;  // |f| + |g|
    Rat norm_f, norm_g;
};
// Three gauge LPs; inputs must be positive with finite norms.
AdditivityResult norm_additivity_check(const CalibratedSpace& s, std::size_t alpha,
                                       const Functional& f, const Functional& g);

// Vertex-weight realization of the additivity characterization: w_h is a
// norm-preserving positive extension of f+g dominating one of f, both as
// weight vectors over the state vertices.
struct AdditivityWitness {
    std::vector<Rat> w_f, w_h;
};
struct AdditivityWitnessResult {
    bool state_cover_holds = false;  // the theorem hypothesis for this alpha
    std::optional<AdditivityWitness> witness;
};
AdditivityWitnessResult additivity_extension_witness(const CalibratedSpace& s, std::size_t alpha,
                                                     const FiniteStateSpace& fs,
                                                     const Functional& f, const Functional& g);

}  // namespace ocs
