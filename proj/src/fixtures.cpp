#include "ocs/fixtures.hpp"

namespace ocs {

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> corpus = {
        // R^2 with the sup norm and the |x1| seminorm over the orthant; the
        // attached functional restricts to f(1,-2) = 2 on the subspace. Its
        // positive norm-preserving extension fails at alpha 0 and succeeds
        // with (2, 0) at alpha 1.
        {"sup_abs_extension", R"({
  "format": 1,
  "dim": 2,
  "cone": {"generators": [["1","0"],["0","1"]]},
  "seminorms": [
    {"name": "sup", "rows": [["1","0"],["0","1"]]},
    {"name": "abs_x", "rows": [["1","0"]]}
  ],
  "subspaces": {"X": [["1","-2"]]},
  "functionals": {"f": ["0","-1"]}
})"},
        // Wedge 4 t2 <= t1 <= 8 t2 with the sup norm; f, g are positive with
        // |f| = 2, |g| = 3, |f+g| = 3, so norm additivity fails.
        {"wedge_sup", R"({
  "format": 1,
  "dim": 2,
  "cone": {"generators": [["4","1"],["8","1"]]},
  "seminorms": [{"name": "sup", "rows": [["1","0"],["0","1"]]}],
  "functionals": {"f": ["1","1"], "g": ["1","-2"]}
})"},
        // l1 gauge as max(|x1+x2|, |x1-x2|) over the orthant: increasing but
        // not full; u = (1,-1) has no norm-additive positive split.
        {"l1_gauge", R"({
  "format": 1,
  "dim": 2,
  "cone": {"generators": [["1","0"],["0","1"]]},
  "seminorms": [{"name": "l1", "rows": [["1","1"],["1","-1"]]}],
  "functionals": {"u": ["1","-1"]}
})"},
        // The two-point C(X) model itself.
        {"orthant_sup", R"({
  "format": 1,
  "dim": 2,
  "cone": {"generators": [["1","0"],["0","1"]]},
  "seminorms": [{"name": "sup", "rows": [["1","0"],["0","1"]]}]
})"},
        // Trivial cone: order collapses to equality and extension theory
        // degenerates to plain Hahn-Banach.
        {"trivial_cone_sup", R"({
  "format": 1,
  "dim": 2,
  "cone": {"generators": []},
  "seminorms": [{"name": "sup", "rows": [["1","0"],["0","1"]]}]
})"},
        // One non-increasing difference seminorm (its state polytope is the
        // origin) next to an increasing sum seminorm.
        {"skew_rows", R"({
  "format": 1,
  "dim": 2,
  "cone": {"generators": [["1","0"],["0","1"]]},
  "seminorms": [
    {"name": "diff", "rows": [["1","-1"]]},
    {"name": "sum", "rows": [["1","1"]]}
  ]
})"},
        // Smallest nontrivial space.
        {"line_abs", R"({
  "format": 1,
  "dim": 1,
  "cone": {"generators": [["1"]]},
  "seminorms": [{"name": "abs", "rows": [["1"]]}]
})"},
        // Order-unit seminorm of e = (6,1) on the wedge, written out as
        // facet rows scaled by their value at e.
        {"wedge_order_unit", R"({
  "format": 1,
  "dim": 2,
  "cone": {"generators": [["4","1"],["8","1"]]},
  "seminorms": [{"name": "p_e", "rows": [["1/2","-2"],["-1/2","4"]]}],
  "order_units": {"e": ["6","1"]}
})"},
    };
    return corpus;
}

std::vector<Instance> fixture_instances() {
    std::vector<Instance> out;
    for (const Fixture& f : fixtures()) out.push_back(parse_instance(f.text, f.name));
    return out;
}

}  // namespace ocs
