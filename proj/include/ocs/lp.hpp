#pragma once

#include "ocs/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ocs::lp {

enum class Rel { le, eq, ge };
enum class Sense { maximize, minimize };

struct Constraint {
    RVec row;
    Rel rel = Rel::le;
    Rat rhs;
};

// Per-variable bounds; absent side means unbounded there. Default: free.
struct Bounds {
    std::optional<Rat> lower;
    std::optional<Rat> upper;
};

struct LPProblem {
    Sense sense = Sense::maximize;
    RVec objective;
    std::vector<Constraint> constraints;
    std::vector<Bounds> var_bounds;  // empty or one entry per variable

    std::size_t nvars() const { return objective.dim(); }
    Bounds bounds_of(std::size_t j) const {
        return var_bounds.empty() ? Bounds{} : var_bounds[j];
    }
    // One constraint per line; used in failure reports.
    std::string dump() const;
};

enum class LPStatus { optimal, infeasible, unbounded };

// Certificate conventions, all checked by verify_certificate with pure
// arithmetic:
//  - optimal:   primal + dual. Dual multipliers are stated for the problem
//    as given; in maximize form y_i >= 0 on `le` rows, y_i <= 0 on `ge`
//    rows, free on `eq` rows (mirrored for minimize). Reduced costs must be
//    absorbable by finite variable bounds.
//  - unbounded: ray (improving recession direction) + ray_origin (feasible
//    point it improves from).
//  - infeasible: farkas, one multiplier per constraint, nonnegative on
//    inequality rows when those are oriented as ">=" (le rows aggregate
//    negated), free on eq rows. The aggregated inequality r.x >= beta must
//    exceed the box supremum of r.x over the variable bounds.
struct LPOutcome {
    LPStatus status = LPStatus::infeasible;
    Rat optimum;
    std::optional<RVec> primal;
    std::optional<RVec> dual;
    std::optional<RVec> ray;
    std::optional<RVec> ray_origin;
    std::optional<RVec> farkas;
};

// Exact two-phase simplex with Bland's rule. Deterministic: identical
// problems yield identical outcomes. The returned certificate has already
// passed verify_certificate (a failure would be an internal bug and
// throws); the pass is also tallied in solve_stats.
LPOutcome solve(const LPProblem& p);

// Zero-objective wrapper: status optimal <=> the system is feasible.
LPOutcome check_feasible(std::size_t nvars, std::vector<Constraint> constraints,
                         std::vector<Bounds> var_bounds = {});

// Re-checks the outcome against the problem by direct arithmetic, no
// pivoting. True iff the certificate is valid.
bool verify_certificate(const LPProblem& p, const LPOutcome& o);

struct SolveStats {
    std::uint64_t solves = 0;
    std::uint64_t certificates_verified = 0;
};
// Process-wide tallies, used by the acceptance suite to confirm that every
// outcome produced anywhere was certificate-checked.
SolveStats solve_stats();
void reset_solve_stats();

}  // namespace ocs::lp
