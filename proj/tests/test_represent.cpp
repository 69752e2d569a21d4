#include "ocs/represent.hpp"

#include "ocs/criteria.hpp"
#include "ocs/fixtures.hpp"
#include "ocs/generate.hpp"

#include <doctest.h>

#include <cstdlib>
#include <random>

using namespace ocs;

namespace {

Rat q(long n, long d = 1) { return Rat(Int(n), Int(d)); }

Instance fixture(const std::string& name) {
    for (const Fixture& f : fixtures())
        if (f.name == name) return parse_instance(f.text, f.name);
    throw std::runtime_error("no fixture " + name);
}

// Supremum of <f, x> over B_alpha by LP over the dual-ball multipliers;
// independent of the vertex enumeration it cross-checks.
Rat lp_state_supremum(const CalibratedSpace& s, std::size_t alpha, const RVec& x) {
    const auto& rows = s.seminorm(alpha).rows();
    const std::size_t n = rows.size();
    lp::LPProblem p;
    p.sense = lp::Sense::maximize;
    p.objective = RVec(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        p.objective[i] = dot(rows[i], x);
        p.objective[n + i] = -p.objective[i];
    }
    RVec ones(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) ones[i] = 1;
    p.constraints.push_back({ones, lp::Rel::le, q(1)});
    for (const RVec& g : s.cone().generators()) {
        RVec r(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = dot(rows[i], g);
            r[n + i] = -r[i];
        }
        p.constraints.push_back({r, lp::Rel::ge, q(0)});
    }
    p.var_bounds.assign(2 * n, lp::Bounds{q(0), std::nullopt});
    lp::LPOutcome o = lp::solve(p);
    REQUIRE(o.status == lp::LPStatus::optimal);
    return o.optimum;
}

}  // namespace

TEST_CASE("state polytope vertices of the two-point model") {
    Instance os = fixture("orthant_sup");
    FiniteStateSpace fs = build_representation(os.space);
    REQUIRE(fs.vertices(0).size() == 3);
    CHECK(fs.vertices(0)[0] == RVec{q(0), q(0)});
    CHECK(fs.vertices(0)[1] == RVec{q(0), q(1)});
    CHECK(fs.vertices(0)[2] == RVec{q(1), q(0)});
}

TEST_CASE("degenerate state polytope collapses to the origin") {
    Instance sk = fixture("skew_rows");
    FiniteStateSpace fs = build_representation(sk.space);
    REQUIRE(fs.vertices(0).size() == 1);
    CHECK(fs.vertices(0)[0] == RVec{q(0), q(0)});
    // The sum seminorm keeps the segment up to (1,1).
    REQUIRE(fs.vertices(1).size() == 2);
    CHECK(fs.vertices(1)[1] == RVec{q(1), q(1)});
}

TEST_CASE("trivial cone exposes the whole dual ball") {
    Instance tc = fixture("trivial_cone_sup");
    FiniteStateSpace fs = build_representation(tc.space);
    REQUIRE(fs.vertices(0).size() == 4);  // cross-polytope corners
    CHECK(fs.vertices(0)[0] == RVec{q(-1), q(0)});
    CHECK(fs.vertices(0)[3] == RVec{q(1), q(0)});
}

TEST_CASE("evaluation of the representation map") {
    Instance os = fixture("orthant_sup");
    FiniteStateSpace fs = build_representation(os.space);
    auto vals = evaluate(fs, RVec{q(1), q(-2)});
    REQUIRE(vals.size() == 3);
    CHECK(vals[0].value == 0);
    CHECK(vals[1].value == -2);
    CHECK(vals[2].value == 1);
    CHECK(fs.induced_seminorm(0, RVec{q(1), q(-2)}) == 2);
    CHECK(fs.induced_seminorm(0, RVec{q(0), q(0)}) == 0);
}

TEST_CASE("representation report on the model space") {
    Instance os = fixture("orthant_sup");
    FiniteStateSpace fs = build_representation(os.space);
    RepresentationReport rep = verify_representation(os.space, fs);
    CHECK(rep.injective);
    CHECK(rep.bipositive);
    CHECK(rep.isometric_on_positives[0]);
    CHECK(rep.isometric_everywhere[0]);
}

TEST_CASE("representation report on a degenerate space") {
    Instance sk = fixture("skew_rows");
    FiniteStateSpace fs = build_representation(sk.space);
    RepresentationReport rep = verify_representation(sk.space, fs);
    CHECK(!rep.injective);  // all vertices lie on the diagonal
    CHECK(!rep.bipositive);
    REQUIRE(rep.bipositive_witness);
    // phi of the witness is nonnegative at every vertex, yet the element is
    // outside the cone.
    for (std::size_t a = 0; a < fs.family_size(); ++a)
        for (const RVec& v : fs.vertices(a)) CHECK(dot(v, *rep.bipositive_witness) >= 0);
    CHECK(!sk.space.cone().contains(*rep.bipositive_witness));
    CHECK(!rep.isometric_on_positives[0]);
    REQUIRE(rep.positives_witness[0]);
    CHECK(sk.space.cone().contains(*rep.positives_witness[0]));
    CHECK(fs.state_supremum(0, *rep.positives_witness[0]) <
          sk.space.seminorm(0).eval(*rep.positives_witness[0]));
    CHECK(!rep.isometric_everywhere[0]);
    CHECK(rep.isometric_on_positives[1]);
    CHECK(rep.isometric_everywhere[1]);
}

TEST_CASE("wedge representation is isometric") {
    Instance ws = fixture("wedge_sup");
    FiniteStateSpace fs = build_representation(ws.space);
    RepresentationReport rep = verify_representation(ws.space, fs);
    CHECK(rep.injective);
    CHECK(rep.bipositive);
    CHECK(rep.isometric_on_positives[0]);
    CHECK(rep.isometric_everywhere[0]);
    // Vertex list pinned by hand: 0, the two scaled dual-cone rays and the
    // two ball corners inside the dual cone.
    CHECK(fs.vertices(0).size() == 5);
}

TEST_CASE("vertex supremum equals the polytope supremum") {
    std::mt19937_64 rng(71);
    for (const char* name : {"orthant_sup", "wedge_sup", "l1_gauge", "skew_rows"}) {
        Instance inst = fixture(name);
        FiniteStateSpace fs = build_representation(inst.space);
        for (std::size_t alpha = 0; alpha < inst.space.family_size(); ++alpha) {
            for (int t = 0; t < 10; ++t) {
                RVec x = sample_point(rng, inst.space.dim(), -7, 7);
                CHECK(fs.state_supremum(alpha, x) == lp_state_supremum(inst.space, alpha, x));
            }
        }
    }
}

TEST_CASE("bipositive spaces recover cone membership from vertex signs") {
    std::mt19937_64 rng(73);
    for (const char* name : {"orthant_sup", "wedge_sup", "trivial_cone_sup"}) {
        Instance inst = fixture(name);
        FiniteStateSpace fs = build_representation(inst.space);
        RepresentationReport rep = verify_representation(inst.space, fs);
        REQUIRE(rep.bipositive);
        for (int t = 0; t < 25; ++t) {
            RVec x = sample_point(rng, inst.space.dim(), -6, 6);
            bool nonneg_everywhere = true;
            for (std::size_t a = 0; a < fs.family_size(); ++a)
                for (const RVec& v : fs.vertices(a))
                    nonneg_everywhere = nonneg_everywhere && dot(v, x) >= 0;
            CHECK(nonneg_everywhere == inst.space.cone().contains(x));
        }
    }
}

TEST_CASE("realize_state weights") {
    Instance os = fixture("orthant_sup");
    FiniteStateSpace fs = build_representation(os.space);
    const auto& verts = fs.vertices(0);

    // A vertex realizes as its own indicator.
    auto w1 = realize_state(fs, 0, RVec{q(1), q(0)});
    REQUIRE(w1);
    for (std::size_t i = 0; i < verts.size(); ++i)
        CHECK((*w1)[i] == (verts[i] == RVec{q(1), q(0)} ? q(1) : q(0)));

    // Interior states get sub-convex weights reproducing the functional.
    auto w2 = realize_state(fs, 0, RVec{q(1, 2), q(1, 2)});
    REQUIRE(w2);
    RVec recon(2);
    Rat mass = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        CHECK((*w2)[i] >= 0);
        recon = recon + verts[i] * (*w2)[i];
        mass += (*w2)[i];
    }
    CHECK(recon == RVec{q(1, 2), q(1, 2)});
    CHECK(mass <= 1);

    // Outside the state polytope: no realization.
    CHECK(!realize_state(fs, 0, RVec{q(1), q(1)}));
}

TEST_CASE("dimension cap guards the enumeration") {
    std::vector<RVec> gens;
    std::vector<RVec> rows;
    for (std::size_t j = 0; j < 7; ++j) {
        RVec e(7);
        e[j] = 1;
        gens.push_back(e);
        rows.push_back(e);
    }
    CalibratedSpace big =
        CalibratedSpace::make(7, PolyCone(7, gens), {PolyhedralSeminorm("sup", rows, 7)});
    CHECK_THROWS_WITH_AS(build_representation(big), doctest::Contains("OC_MAX_DIM"),
                         std::runtime_error);
}
