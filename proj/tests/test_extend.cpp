#include "ocs/extend.hpp"

#include "ocs/fixtures.hpp"
#include "ocs/generate.hpp"

#include <doctest.h>

#include <random>

using namespace ocs;

namespace {

Rat q(long n, long d = 1) { return Rat(Int(n), Int(d)); }

Instance fixture(const std::string& name) {
    for (const Fixture& f : fixtures())
        if (f.name == name) return parse_instance(f.text, f.name);
    throw std::runtime_error("no fixture " + name);
}

ExtensionProblem span_problem(const Instance& inst, std::size_t alpha) {
    const Subspace& sub = inst.subspaces.at("X");
    const Functional& f = inst.functionals.at("f");
    RVec f_on_sub(sub.dim());
    for (std::size_t i = 0; i < sub.dim(); ++i) f_on_sub[i] = dot(f, sub.basis().row(i));
    return ExtensionProblem{inst.space, alpha, sub, f_on_sub};
}

}  // namespace

TEST_CASE("subspace norms on the span of (1,-2)") {
    Instance inst = fixture("sup_abs_extension");
    ExtensionProblem sup_ep = span_problem(inst, 0);
    CHECK(*subspace_norm(sup_ep) == 1);
    ExtensionProblem abs_ep = span_problem(inst, 1);
    CHECK(*subspace_norm(abs_ep) == 2);

    ExtensionProblem zero{inst.space, 0, inst.subspaces.at("X"), RVec{q(0)}};
    CHECK(*subspace_norm(zero) == 0);
    CHECK(bnn_check(zero).extendable);
}

TEST_CASE("extension fails under the sup norm") {
    Instance inst = fixture("sup_abs_extension");
    ExtensionProblem ep = span_problem(inst, 0);
    for (BNNRoute route : {BNNRoute::cond2, BNNRoute::cond3, BNNRoute::cond4, BNNRoute::cond5}) {
        BNNResult r = bnn_check(ep, route);
        CHECK(!r.extendable);
        REQUIRE(r.violation);
        // x <= y with f(x) > sub_norm * p(y), all re-checked by arithmetic.
        const auto& [x, y] = *r.violation;
        CHECK(inst.space.cone().contains(y - x));
        auto coords = solve_linear(ep.sub.basis().transposed(), x);
        REQUIRE(coords);
        CHECK(dot(ep.f_on_sub, *coords) > *r.sub_norm * inst.space.seminorm(0).eval(y));
    }
    BNNResult built = bnn_construct(ep);
    CHECK(!built.extendable);
    REQUIRE(built.infeasibility);
    CHECK(built.infeasibility->farkas.has_value());

    // The hand pair x = (1,-2) <= y = (1,-1) already violates.
    CHECK(inst.space.seminorm(0).eval(RVec{q(1), q(-1)}) == 1);
    CHECK(dot(inst.functionals.at("f"), RVec{q(1), q(-2)}) == 2);
}

TEST_CASE("extension succeeds under the |x1| seminorm") {
    Instance inst = fixture("sup_abs_extension");
    ExtensionProblem ep = span_problem(inst, 1);
    BNNResult r = bnn_construct(ep);
    CHECK(r.extendable);
    REQUIRE(r.extension);
    // Agrees on the subspace, positive, and norm-preserving; (2,0) is the
    // canonical such extension.
    CHECK(dot(*r.extension, RVec{q(1), q(-2)}) == 2);
    CHECK(functional_positive(inst.space, *r.extension));
    CHECK(*functional_norm(inst.space, 1, *r.extension) == 2);
    CHECK(*r.extension == Functional{q(2), q(0)});
    for (BNNRoute route : {BNNRoute::cond2, BNNRoute::cond3, BNNRoute::cond4, BNNRoute::cond5})
        CHECK(bnn_check(ep, route).extendable);
}

TEST_CASE("whole-space subspace keeps the functional") {
    Instance inst = fixture("orthant_sup");
    RMat basis{{q(1), q(0)}, {q(0), q(1)}};
    Functional f{q(1), q(2)};
    ExtensionProblem ep{inst.space, 0, Subspace(basis), f};
    BNNResult r = bnn_construct(ep);
    CHECK(r.extendable);
    CHECK(*r.extension == f);
}

TEST_CASE("infinite subspace norm blocks every route") {
    Instance inst = fixture("sup_abs_extension");
    RMat basis{{q(0), q(1)}};  // inside ker |x1|
    ExtensionProblem ep{inst.space, 1, Subspace(basis), RVec{q(1)}};
    CHECK(!subspace_norm(ep));
    for (BNNRoute route : {BNNRoute::cond2, BNNRoute::cond3, BNNRoute::cond4, BNNRoute::cond5,
                           BNNRoute::construct}) {
        BNNResult r = bnn_check(ep, route);
        CHECK(!r.extendable);
        CHECK(!r.sub_norm);
        REQUIRE(r.violation);
        const auto& [x, y] = *r.violation;
        CHECK(inst.space.seminorm(1).eval(y) == 0);
        auto coords = solve_linear(ep.sub.basis().transposed(), x);
        CHECK(dot(ep.f_on_sub, *coords) > 0);
    }
}

TEST_CASE("functional negative on the subspace cone is not extendable") {
    Instance inst = fixture("orthant_sup");
    RMat basis{{q(1), q(0)}};
    ExtensionProblem ep{inst.space, 0, Subspace(basis), RVec{q(-1)}};  // f(e1) = -1
    for (BNNRoute route : {BNNRoute::cond2, BNNRoute::cond3, BNNRoute::cond4, BNNRoute::cond5,
                           BNNRoute::construct})
        CHECK(!bnn_check(ep, route).extendable);
}

TEST_CASE("trivial cone reduces to Hahn-Banach: always extendable") {
    Instance inst = fixture("trivial_cone_sup");
    std::mt19937_64 rng(101);
    for (int t = 0; t < 15; ++t) {
        std::size_t sub_dim = 1 + t % 2;
        Subspace sub = sample_subspace(rng, inst.space, sub_dim);
        RVec f = sample_point(rng, sub_dim, -4, 4);
        ExtensionProblem ep{inst.space, 0, sub, f};
        BNNResult r = bnn_check(ep, BNNRoute::cond4);
        CHECK(r.extendable);
    }
}

TEST_CASE("route agreement on random extension problems") {
    std::mt19937_64 rng(103);
    for (std::uint64_t seed = 30; seed < 38; ++seed) {
        GenerateOptions opt;
        opt.dim = 1 + seed % 3;
        CalibratedSpace s = generate_instance(seed, opt);
        for (int t = 0; t < 4; ++t) {
            std::size_t sub_dim = 1 + t % std::min<std::size_t>(2, s.dim());
            ExtensionProblem ep{s, t % s.family_size(), sample_subspace(rng, s, sub_dim),
                                sample_point(rng, sub_dim, -4, 4)};
            BNNResult c2 = bnn_check(ep, BNNRoute::cond2);
            BNNResult c3 = bnn_check(ep, BNNRoute::cond3);
            BNNResult c4 = bnn_check(ep, BNNRoute::cond4);
            BNNResult c5 = bnn_check(ep, BNNRoute::cond5);
            BNNResult ct = bnn_construct(ep);
            CHECK(c2.extendable == ct.extendable);
            CHECK(c3.extendable == ct.extendable);
            CHECK(c4.extendable == ct.extendable);
            CHECK(c5.extendable == ct.extendable);
            if (ct.extendable && ct.sub_norm) {
                CHECK(*functional_norm(s, ep.alpha, *ct.extension) == *ct.sub_norm);
                CHECK(functional_positive(s, *ct.extension));
            }
        }
    }
}

TEST_CASE("norm additivity on the wedge") {
    Instance ws = fixture("wedge_sup");
    const Functional& f = ws.functionals.at("f");
    const Functional& g = ws.functionals.at("g");
    AdditivityResult r = norm_additivity_check(ws.space, 0, f, g);
    CHECK(r.norm_f == 2);
    CHECK(r.norm_g == 3);
    CHECK(r.lhs == 3);
    CHECK(r.rhs == 5);
    CHECK(!r.additive);

    CHECK(norm_additivity_check(ws.space, 0, f, Functional{q(0), q(0)}).additive);
    AdditivityResult dbl = norm_additivity_check(ws.space, 0, f, f);
    CHECK(dbl.additive);
    CHECK(dbl.lhs == 4);

    CHECK_THROWS_AS(norm_additivity_check(ws.space, 0, Functional{q(-1), q(0)}, f),
                    extend_error);
}

TEST_CASE("additivity witness biconditional") {
    Instance os = fixture("orthant_sup");
    FiniteStateSpace fs = build_representation(os.space);
    Functional f{q(1), q(0)}, g{q(0), q(1)};
    AdditivityWitnessResult w = additivity_extension_witness(os.space, 0, fs, f, g);
    CHECK(w.state_cover_holds);
    REQUIRE(w.witness);
    const auto& verts = fs.vertices(0);
    RVec mf(2), mh(2);
    Rat mass_f = 0, mass_h = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        CHECK(w.witness->w_f[i] >= 0);
        CHECK(w.witness->w_h[i] >= w.witness->w_f[i]);
        mf = mf + verts[i] * w.witness->w_f[i];
        mh = mh + verts[i] * w.witness->w_h[i];
        mass_f += w.witness->w_f[i];
        mass_h += w.witness->w_h[i];
    }
    CHECK(mf == f);
    CHECK(mh == f + g);
    CHECK(mass_f == 1);
    CHECK(mass_h == 2);

    // Zero f: the zero weight vector dominates.
    AdditivityWitnessResult wz =
        additivity_extension_witness(os.space, 0, fs, Functional{q(0), q(0)}, g);
    REQUIRE(wz.witness);
    for (const Rat& wf : wz.witness->w_f) CHECK(wf == 0);
}

TEST_CASE("wedge additivity failure has no witness despite state cover") {
    // The space satisfies the representability criteria, so the theorem
    // applies in both directions: non-additive pairs must be infeasible.
    Instance ws = fixture("wedge_sup");
    FiniteStateSpace fs = build_representation(ws.space);
    AdditivityWitnessResult w = additivity_extension_witness(
        ws.space, 0, fs, ws.functionals.at("f"), ws.functionals.at("g"));
    CHECK(w.state_cover_holds);
    CHECK(!w.witness);
}

TEST_CASE("additivity biconditional on random positive pairs") {
    std::mt19937_64 rng(107);
    for (std::uint64_t seed = 40; seed < 46; ++seed) {
        GenerateOptions opt;
        opt.dim = 1 + seed % 3;
        CalibratedSpace s = generate_instance(seed, opt);
        FiniteStateSpace fs = build_representation(s);
        for (int t = 0; t < 5; ++t) {
            Functional f = sample_positive_functional(rng, s, fs.vertices(0));
            Functional g = sample_positive_functional(rng, s, fs.vertices(0));
            AdditivityResult add = norm_additivity_check(s, 0, f, g);
            AdditivityWitnessResult wit = additivity_extension_witness(s, 0, fs, f, g);
            if (wit.witness) CHECK(add.additive);
            if (wit.state_cover_holds) CHECK(add.additive == wit.witness.has_value());
        }
    }
}
