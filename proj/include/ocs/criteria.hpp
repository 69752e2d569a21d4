#pragma once

#include "ocs/represent.hpp"
#include "ocs/space.hpp"

#include <optional>
#include <utility>
#include <variant>

namespace ocs {

class criteria_error : public std::runtime_error {
  public:
    explicit criteria_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Criterion { full_ball, sandwich, semi_all, state_sup, gk_decomposable };
const char* criterion_name(Criterion c);

// a <= mid <= b with p(a), p(b) <= 1 < p(mid).
struct TripleWitness {
    RVec lo, mid, hi;
};
// Element that is neither semi positive nor semi negative: its supremum
// over states stays strictly below its seminorm.
struct SeparatingWitness {
    std::size_t row_index;
    RVec x;
    Rat sup_states;
    Rat p_value;
};
// Functional with no norm-additive positive split; best_split is empty when
// no positive split exists at all.
struct GapWitness {
    Functional u;
    Rat norm_u;
    std::optional<Rat> best_split;
};
using CriterionWitness = std::variant<TripleWitness, SeparatingWitness, GapWitness>;

struct CriterionReport {
    Criterion criterion;
    std::size_t alpha = 0;
    bool holds = false;
    std::optional<CriterionWitness> witness;
};

// p_alpha(x + l) >= p_alpha(x) for all l in E+; when false, the returned l
// improves: p_alpha(x + l) < p_alpha(x).
struct SemiResult {
    bool semi = false;
    std::optional<RVec> improving_l;
};
SemiResult semi_positive(const CalibratedSpace& s, std::size_t alpha, const RVec& x);
SemiResult semi_negative(const CalibratedSpace& s, std::size_t alpha, const RVec& x);

// A state attaining sign * p_alpha(x0) at x0. The dual-ball multipliers are
// retained so the certificate re-verifies by plain arithmetic.
struct StateCertificate {
    Functional f;
    std::size_t alpha = 0;
    int sign = +1;
    RVec x0;
    std::vector<Rat> ball_pos, ball_neg;  // f = sum (pos - neg) rows, mass <= 1
};
bool verify_state(const CalibratedSpace& s, const StateCertificate& c);

// Attainment certificate via LP feasibility; agreement with the
// semi-positivity route is asserted internally (they are equivalent).
std::optional<StateCertificate> find_state(const CalibratedSpace& s, std::size_t alpha,
                                           const RVec& x0);

// Fullness of the unit ball (equivalently the max-sandwich inequality).
CriterionReport check_full(const CalibratedSpace& s, std::size_t alpha);

// Coverage of the dual ball by conv(B u -B): equivalent to the supremum-
// over-states identity and to every element being semi positive or semi
// negative.
CriterionReport check_state_cover(const CalibratedSpace& s, std::size_t alpha,
                                  const FiniteStateSpace& fs);

// Norm-additive decomposability of every functional, decided through the
// state cover; a failing space gets a directed functional witness whose
// minimal positive split exceeds its norm.
CriterionReport check_gk(const CalibratedSpace& s, std::size_t alpha,
                         const FiniteStateSpace& fs);

// Some positive split u = v1 - v2 (no norm optimality); requires an
// increasing seminorm to be guaranteed, throws with the Farkas diagnostic
// otherwise.
std::pair<Functional, Functional> krein_decompose(const CalibratedSpace& s, std::size_t alpha,
                                                  const Functional& u);

struct GkResult {
    bool decomposable = false;  // some positive split exists
    Functional v1, v2;
    Rat norm_sum;   // |v1| + |v2|, minimal
    Rat norm_u;
    Rat gap;        // norm_sum - |u|, zero iff norm-additive split exists
};
GkResult grosberg_krein(const CalibratedSpace& s, std::size_t alpha, const Functional& u);

}  // namespace ocs
