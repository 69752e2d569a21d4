// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every expected value below is pinned exactly; tolerances are zero by
// construction (all arithmetic is rational).

#include "ocs/criteria.hpp"
#include "ocs/extend.hpp"
#include "ocs/fixtures.hpp"
#include "ocs/generate.hpp"
#include "ocs/represent.hpp"
#include "ocs/suite.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace ocs;

namespace {

Rat q(long n, long d = 1) { return Rat(Int(n), Int(d)); }

int g_failures = 0;

void criterion(int number, const char* what, const std::function<bool()>& body,
               double budget_seconds) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs < budget_seconds;
    if (!ok || !in_budget) ++g_failures;
    std::printf("criterion %d: %s — %s (%.2fs, budget %.0fs)%s%s\n", number,
                ok && in_budget ? "PASS" : "FAIL", what, secs, budget_seconds,
                !in_budget ? " [over budget]" : "", error.empty() ? "" : (" [" + error + "]").c_str());
}

Instance fixture(const std::string& name) {
    for (const Fixture& f : fixtures())
        if (f.name == name) return parse_instance(f.text, f.name);
    throw std::runtime_error("no fixture " + name);
}

ExtensionProblem extension_fixture(const Instance& inst, std::size_t alpha) {
    const Subspace& sub = inst.subspaces.at("X");
    const Functional& f = inst.functionals.at("f");
    RVec f_on_sub(sub.dim());
    for (std::size_t i = 0; i < sub.dim(); ++i) f_on_sub[i] = dot(f, sub.basis().row(i));
    return ExtensionProblem{inst.space, alpha, sub, f_on_sub};
}

bool criterion1() {
    Instance inst = fixture("sup_abs_extension");
    ExtensionProblem ep = extension_fixture(inst, 0);
    if (*subspace_norm(ep) != 1) return false;
    BNNResult r = bnn_check(ep, BNNRoute::cond4);
    if (r.extendable || !r.violation) return false;
    const auto& [x, y] = *r.violation;
    if (!inst.space.cone().contains(y - x)) return false;
    auto coords = solve_linear(ep.sub.basis().transposed(), x);
    if (!coords || !(dot(ep.f_on_sub, *coords) > inst.space.seminorm(0).eval(y))) return false;
    BNNResult built = bnn_construct(ep);
    return !built.extendable && built.infeasibility && built.infeasibility->farkas &&
           built.infeasibility->status == lp::LPStatus::infeasible;
}

bool criterion2() {
    Instance inst = fixture("sup_abs_extension");
    ExtensionProblem ep = extension_fixture(inst, 1);
    if (*subspace_norm(ep) != 2) return false;
    BNNResult r = bnn_construct(ep);
    if (!r.extendable || !r.extension) return false;
    return dot(*r.extension, RVec{q(1), q(-2)}) == 2 && functional_positive(inst.space, *r.extension) &&
           *functional_norm(inst.space, 1, *r.extension) == 2;
}

bool criterion3() {
    Instance inst = fixture("wedge_sup");
    AdditivityResult r = norm_additivity_check(inst.space, 0, inst.functionals.at("f"),
                                               inst.functionals.at("g"));
    return r.norm_f == 2 && r.norm_g == 3 && r.lhs == 3 && !r.additive;
}

bool criterion4() {
    Instance inst = fixture("l1_gauge");
    const PolyhedralSeminorm& p = inst.space.seminorm(0);
    CriterionReport full = check_full(inst.space, 0);
    if (full.holds || !full.witness) return false;
    const auto& w = std::get<TripleWitness>(*full.witness);
    if (!(p.eval(w.lo) <= 1 && p.eval(w.hi) <= 1 && p.eval(w.mid) > 1)) return false;
    if (!inst.space.cone().contains(w.mid - w.lo) || !inst.space.cone().contains(w.hi - w.mid))
        return false;
    FiniteStateSpace fs = build_representation(inst.space);
    CriterionReport cover = check_state_cover(inst.space, 0, fs);
    if (cover.holds || !cover.witness) return false;
    const auto& sw = std::get<SeparatingWitness>(*cover.witness);
    return fs.induced_seminorm(0, sw.x) == sw.sup_states && p.eval(sw.x) == sw.p_value &&
           sw.sup_states < sw.p_value;
}

bool criterion5() {
    std::vector<Instance> instances;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GenerateOptions opt;
        opt.dim = 1 + seed % 3;
        opt.max_generators = 5;
        opt.max_rows = 5;
        opt.seminorm_count = 2;
        instances.push_back(
            Instance{"seed-" + std::to_string(seed), generate_instance(seed, opt), {}, {}, {}});
    }
    SuiteOptions opt;
    opt.state_samples = 20;
    opt.gk_samples = 20;
    opt.additivity_samples = 10;
    opt.bnn_samples = 0;  // covered by criterion 6
    SuiteReport rep = run_suite(instances, opt);
    if (!rep.all_agree) std::fprintf(stderr, "%s", rep.to_json().c_str());
    return rep.all_agree;
}

bool criterion6() {
    std::mt19937_64 rng(0xB22);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenerateOptions opt;
        opt.dim = 1 + seed % 3;
        CalibratedSpace s = generate_instance(1000 + seed, opt);
        std::size_t sub_dim = 1 + seed % std::min<std::size_t>(2, s.dim());
        ExtensionProblem ep{s, seed % s.family_size(), sample_subspace(rng, s, sub_dim),
                            sample_point(rng, sub_dim, -4, 4)};
        BNNResult c2 = bnn_check(ep, BNNRoute::cond2);
        BNNResult c3 = bnn_check(ep, BNNRoute::cond3);
        BNNResult c4 = bnn_check(ep, BNNRoute::cond4);
        BNNResult c5 = bnn_check(ep, BNNRoute::cond5);
        BNNResult ct = bnn_construct(ep);
        bool e = ct.extendable;
        if (c2.extendable != e || c3.extendable != e || c4.extendable != e ||
            c5.extendable != e)
            return false;
        if (e && ct.sub_norm && *ct.sub_norm > 0) {
            if (*functional_norm(s, ep.alpha, *ct.extension) != *ct.sub_norm) return false;
        }
    }
    return true;
}

bool criterion7() {
    std::mt19937_64 rng(0xC01);
    int found = 0;
    std::uint64_t seed = 2000;
    while (found < 30 && seed < 2400) {
        GenerateOptions opt;
        opt.dim = 1 + seed % 3;
        CalibratedSpace s = generate_instance(seed++, opt);
        std::size_t alpha = seed % s.family_size();
        if (!is_increasing(s, alpha).increasing) continue;
        ++found;
        FiniteStateSpace fs = build_representation(s);
        for (int t = 0; t < 20; ++t) {
            RVec x = sample_cone_point(rng, s);
            if (fs.state_supremum(alpha, x) != s.seminorm(alpha).eval(x)) return false;
        }
    }
    return found == 30;
}

bool criterion8() {
    std::mt19937_64 rng(0xD01);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenerateOptions opt;
        opt.dim = 2 + seed % 2;
        opt.force_rank_deficient = true;
        CalibratedSpace s = generate_instance(3000 + seed, opt);
        QuotientResult qr = quotient(s, 0);
        for (int t = 0; t < 20; ++t) {
            RVec x = sample_point(rng, s.dim(), -9, 9);
            if (qr.space.seminorm(0).eval(qr.projection.mul(x)) != s.seminorm(0).eval(x))
                return false;
        }
        for (int t = 0; t < 10; ++t) {
            Functional f = sample_span_functional(rng, s, 0);
            Functional fq = quotient_functional(qr, f);
            if (*functional_norm(qr.space, 0, fq) != *functional_norm(s, 0, f)) return false;
        }
    }
    return true;
}

bool criterion9() {
    lp::SolveStats st = lp::solve_stats();
    std::printf("  lp outcomes produced: %llu, certificate-verified: %llu\n",
                static_cast<unsigned long long>(st.solves),
                static_cast<unsigned long long>(st.certificates_verified));
    return st.solves > 0 && st.solves == st.certificates_verified;
}

}  // namespace

int main() {
    lp::reset_solve_stats();
    criterion(1, "norm-preserving positive extension fails under the sup norm", criterion1, 1);
    criterion(2, "extension succeeds under the |x1| seminorm with norm 2", criterion2, 1);
    criterion(3, "wedge norms |f|=2, |g|=3, |f+g|=3: additivity fails", criterion3, 1);
    criterion(4, "l1 gauge: full-ball and state-cover criteria fail with witnesses", criterion4,
              1);
    criterion(5, "50-instance equivalence sweep: all legs agree", criterion5, 60);
    criterion(6, "30 extension problems: all five routes agree, norms preserved", criterion6,
              30);
    criterion(7, "30 increasing instances: vertex supremum equals the seminorm on the cone",
              criterion7, 30);
    criterion(8, "20 rank-deficient instances: quotient isometries are exact", criterion8, 15);
    criterion(9, "every LP outcome was certificate-verified", criterion9, 5);
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria PASS\n");
    return 0;
}
