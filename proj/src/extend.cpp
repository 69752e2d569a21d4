#include "ocs/extend.hpp"

#include <sstream>

namespace ocs {

namespace {

// max f.s over the subspace slice of the unit ball; the ball is symmetric
// in the s coordinates, so this is also sup|f|.
lp::LPOutcome sub_norm_lp(const ExtensionProblem& ep) {
    const auto& rows = ep.space.seminorm(ep.alpha).rows();
    const RMat& B = ep.sub.basis();
    const std::size_t k = B.nrows();
    if (ep.f_on_sub.dim() != k) throw extend_error("bnn: f_on_sub length != basis rows");
    lp::LPProblem p;
    p.sense = lp::Sense::maximize;
    p.objective = ep.f_on_sub;
    for (const RVec& a : rows) {
        RVec r(k);
        for (std::size_t i = 0; i < k; ++i) r[i] = dot(a, B.row(i));
        p.constraints.push_back({r, lp::Rel::le, Rat(1)});
        p.constraints.push_back({-r, lp::Rel::le, Rat(1)});
    }
    return lp::solve(p);
}

RVec to_ambient(const Subspace& sub, const RVec& s_coords) {
    RVec x(sub.ambient_dim());
    for (std::size_t i = 0; i < sub.dim(); ++i) x = x + sub.basis().row(i) * s_coords[i];
    return x;
}

Rat f_value(const ExtensionProblem& ep, const RVec& s_coords) {
    return dot(ep.f_on_sub, s_coords);
}

void verify_violation(const ExtensionProblem& ep, const Rat& sigma,
                      const std::pair<RVec, RVec>& viol) {
    const auto& [x, y] = viol;
    for (const RVec& h : ep.space.cone().inequalities())
        if (dot(h, y - x) < 0) throw std::logic_error("bnn: violation pair is not ordered");
    // f is evaluated through the subspace coordinates of x.
    auto coords = solve_linear(ep.sub.basis().transposed(), x);
    if (!coords) throw std::logic_error("bnn: violation x left the subspace");
    Rat fx = f_value(ep, *coords);
    Rat py = ep.space.seminorm(ep.alpha).eval(y);
    if (!(fx > sigma * py)) throw std::logic_error("bnn: violation does not violate");
}

// Interprets a condition-route LP outcome: optimum <= 1 passes, anything
// else yields a violating pair in the canonical (x <= y) form.
struct ConditionOutcome {
    bool holds;
    std::optional<std::pair<RVec, RVec>> violation;
};

}  // namespace

std::optional<Rat> subspace_norm(const ExtensionProblem& ep) {
    lp::LPOutcome o = sub_norm_lp(ep);
    if (o.status == lp::LPStatus::unbounded) return std::nullopt;
    if (o.status != lp::LPStatus::optimal)
        throw std::logic_error("subspace_norm: ball slice cannot be empty");
    return o.optimum;
}

namespace {

ConditionOutcome run_condition(const ExtensionProblem& ep, BNNRoute route, const Rat& sigma) {
    const CalibratedSpace& s = ep.space;
    const auto& rows = s.seminorm(ep.alpha).rows();
    const auto& hrep = s.cone().inequalities();
    const RMat& B = ep.sub.basis();
    const std::size_t k = B.nrows(), d = s.dim();
    // Normalized functional f' = f / sigma throughout.
    RVec fprime(k);
    for (std::size_t i = 0; i < k; ++i) fprime[i] = ep.f_on_sub[i] / sigma;

    // Variables (s_coords, w) with w in E^d; the routes differ in how the
    // ball constraint couples to w and in the objective sign.
    lp::LPProblem p;
    p.objective = RVec(k + d);
    std::vector<lp::Constraint>& cons = p.constraints;
    auto ball_row = [&](const RVec& a, const Rat& coef_s, const Rat& coef_w) {
        // coef_s * <a, B^T s> + coef_w * <a, w> bounded by 1 in abs value
        RVec r(k + d);
        for (std::size_t i = 0; i < k; ++i) r[i] = coef_s * dot(a, B.row(i));
        for (std::size_t j = 0; j < d; ++j) r[k + j] = coef_w * a[j];
        cons.push_back({r, lp::Rel::le, Rat(1)});
        cons.push_back({-r, lp::Rel::le, Rat(1)});
    };
    auto cone_rows_on_w = [&](const Rat& sign) {
        for (const RVec& h : hrep) {
            RVec r(k + d);
            for (std::size_t j = 0; j < d; ++j) r[k + j] = sign * h[j];
            cons.push_back({r, lp::Rel::ge, Rat(0)});
        }
    };
    bool minimize = false;
    switch (route) {
        case BNNRoute::cond4:
            // x <= y, p(y) <= 1, maximize f'(x); w plays y.
            p.sense = lp::Sense::maximize;
            for (std::size_t i = 0; i < k; ++i) p.objective[i] = fprime[i];
            for (const RVec& h : hrep) {
                RVec r(k + d);
                for (std::size_t i = 0; i < k; ++i) r[i] = -dot(h, B.row(i));
                for (std::size_t j = 0; j < d; ++j) r[k + j] = h[j];
                cons.push_back({r, lp::Rel::ge, Rat(0)});  // <h, y - x> >= 0
            }
            for (const RVec& a : rows) ball_row(a, Rat(0), Rat(1));
            break;
        case BNNRoute::cond3:
            // x = a - l: p(x + l) <= 1, l in E+, maximize f'(x); w plays l.
            p.sense = lp::Sense::maximize;
            for (std::size_t i = 0; i < k; ++i) p.objective[i] = fprime[i];
            cone_rows_on_w(Rat(1));
            for (const RVec& a : rows) ball_row(a, Rat(1), Rat(1));
            break;
        case BNNRoute::cond2:
            // x = a + l: p(x - l) <= 1, l in E+, minimize f'(x), pass iff >= -1.
            p.sense = lp::Sense::minimize;
            minimize = true;
            for (std::size_t i = 0; i < k; ++i) p.objective[i] = fprime[i];
            cone_rows_on_w(Rat(1));
            for (const RVec& a : rows) ball_row(a, Rat(1), Rat(-1));
            break;
        case BNNRoute::cond5:
            // y <= x, p(y) <= 1, maximize f'(-x); w plays y.
            p.sense = lp::Sense::maximize;
            for (std::size_t i = 0; i < k; ++i) p.objective[i] = -fprime[i];
            for (const RVec& h : hrep) {
                RVec r(k + d);
                for (std::size_t i = 0; i < k; ++i) r[i] = dot(h, B.row(i));
                for (std::size_t j = 0; j < d; ++j) r[k + j] = -h[j];
                cons.push_back({r, lp::Rel::ge, Rat(0)});  // <h, x - y> >= 0
            }
            for (const RVec& a : rows) ball_row(a, Rat(0), Rat(1));
            break;
        case BNNRoute::construct:
            throw std::logic_error("run_condition: construct is not a condition route");
    }
    lp::LPOutcome o = lp::solve(p);
    Rat threshold = minimize ? Rat(-1) : Rat(1);
    if (o.status == lp::LPStatus::optimal &&
        (minimize ? o.optimum >= threshold : o.optimum <= threshold))
        return {true, std::nullopt};

    // Extract (s_coords, w) beyond the threshold; unbounded outcomes walk
    // the ray until the normalized value passes 2.
    RVec sc(k), w(d);
    if (o.status == lp::LPStatus::optimal) {
        for (std::size_t i = 0; i < k; ++i) sc[i] = (*o.primal)[i];
        for (std::size_t j = 0; j < d; ++j) w[j] = (*o.primal)[k + j];
    } else {
        Rat have = 0, slope = 0;
        for (std::size_t i = 0; i < k + d; ++i) {
            have += p.objective[i] * (*o.ray_origin)[i];
            slope += p.objective[i] * (*o.ray)[i];
        }
        if (minimize) {
            have = -have;
            slope = -slope;
        }
        Rat t = (Rat(2) - have) / slope;
        if (t < 1) t = 1;
        for (std::size_t i = 0; i < k; ++i) sc[i] = (*o.ray_origin)[i] + t * (*o.ray)[i];
        for (std::size_t j = 0; j < d; ++j)
            w[j] = (*o.ray_origin)[k + j] + t * (*o.ray)[k + j];
    }

    // Map to the canonical violation pair (x, y) with x <= y and
    // f(x) > sigma p(y).
    RVec x = to_ambient(ep.sub, sc);
    RVec y(d);
    switch (route) {
        case BNNRoute::cond4: y = w; break;
        case BNNRoute::cond3: y = x + w; break;
        case BNNRoute::cond2: y = -(x - w); x = -x; break;
        case BNNRoute::cond5: y = -w; x = -x; break;
        default: break;
    }
    return {false, std::make_pair(x, y)};
}

}  // namespace

BNNResult bnn_check(const ExtensionProblem& ep, BNNRoute route) {
    if (route == BNNRoute::construct) return bnn_construct(ep);
    BNNResult res;
    lp::LPOutcome norm_lp = sub_norm_lp(ep);
    if (norm_lp.status == lp::LPStatus::unbounded) {
        // f is nonzero on sub intersect ker p: no normalization can pass.
        res.sub_norm = std::nullopt;
        res.extendable = false;
        RVec x = to_ambient(ep.sub, *norm_lp.ray);
        if (!(ep.space.seminorm(ep.alpha).eval(x) == 0) || !(dot(ep.f_on_sub, *norm_lp.ray) > 0))
            throw std::logic_error("bnn_check: infinite-norm ray is not a null direction");
        res.violation = std::make_pair(x, x);
        return res;
    }
    Rat sigma = norm_lp.optimum;
    res.sub_norm = sigma;
    if (sigma == 0) {
        res.extendable = true;
        res.extension = RVec(ep.space.dim());
        return res;
    }
    ConditionOutcome c = run_condition(ep, route, sigma);
    res.extendable = c.holds;
    if (!c.holds) {
        verify_violation(ep, sigma, *c.violation);
        res.violation = c.violation;
        return res;
    }
    // The dual construction must concur and supplies the extension.
    BNNResult built = bnn_construct(ep);
    if (!built.extendable)
        throw std::logic_error("bnn_check: condition route passed but construction failed");
    res.extension = built.extension;
    return res;
}

BNNResult bnn_construct(const ExtensionProblem& ep) {
    BNNResult res;
    lp::LPOutcome norm_lp = sub_norm_lp(ep);
    if (norm_lp.status == lp::LPStatus::unbounded) {
        res.sub_norm = std::nullopt;
        res.extendable = false;
        RVec x = to_ambient(ep.sub, *norm_lp.ray);
        res.violation = std::make_pair(x, x);
        return res;
    }
    Rat sigma = norm_lp.optimum;
    res.sub_norm = sigma;
    if (sigma == 0) {
        res.extendable = true;
        res.extension = RVec(ep.space.dim());
        return res;
    }
    const CalibratedSpace& s = ep.space;
    const auto& rows = s.seminorm(ep.alpha).rows();
    const std::size_t n = rows.size(), d = s.dim();
    const RMat& B = ep.sub.basis();
    // Extension = sum (c+ - c-) a_i with mass <= sigma, positive on the
    // cone, agreeing with f on the basis rows.
    std::vector<lp::Constraint> cons;
    RVec ones(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) ones[i] = 1;
    cons.push_back({ones, lp::Rel::le, sigma});
    for (const RVec& g : s.cone().generators()) {
        RVec r(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = dot(rows[i], g);
            r[n + i] = -r[i];
        }
        cons.push_back({r, lp::Rel::ge, Rat(0)});
    }
    for (std::size_t b = 0; b < B.nrows(); ++b) {
        RVec r(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = dot(rows[i], B.row(b));
            r[n + i] = -r[i];
        }
        cons.push_back({r, lp::Rel::eq, ep.f_on_sub[b]});
    }
    std::vector<lp::Bounds> bounds(2 * n, lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::check_feasible(2 * n, std::move(cons), std::move(bounds));
    if (o.status != lp::LPStatus::optimal) {
        res.extendable = false;
        res.infeasibility = o;
        return res;
    }
    RVec ext(d);
    for (std::size_t i = 0; i < n; ++i)
        ext = ext + rows[i] * ((*o.primal)[i] - (*o.primal)[n + i]);
    // An extension cannot decrease the norm, so the gauge must land exactly
    // on sigma.
    auto norm = functional_norm(s, ep.alpha, ext);
    if (!norm || *norm != sigma)
        throw std::logic_error("bnn_construct: extension norm drifted from the subspace norm");
    res.extendable = true;
    res.extension = ext;
    return res;
}

AdditivityResult norm_additivity_check(const CalibratedSpace& s, std::size_t alpha,
                                       const Functional& f, const Functional& g) {
    if (!functional_positive(s, f) || !functional_positive(s, g))
        throw extend_error("norm_additivity_check: inputs must be positive functionals");
    auto nf = functional_norm(s, alpha, f), ng = functional_norm(s, alpha, g);
    auto nh = functional_norm(s, alpha, f + g);
    if (!nf || !ng || !nh)
        throw extend_error("norm_additivity_check: a norm is infinite");
    AdditivityResult r;
    r.norm_f = *nf;
    r.norm_g = *ng;
    r.lhs = *nh;
    r.rhs = *nf + *ng;
    r.additive = r.lhs == r.rhs;
    return r;
}

AdditivityWitnessResult additivity_extension_witness(const CalibratedSpace& s, std::size_t alpha,
                                                     const FiniteStateSpace& fs,
                                                     const Functional& f, const Functional& g) {
    if (!functional_positive(s, f) || !functional_positive(s, g))
        throw extend_error("additivity_extension_witness: inputs must be positive");
    auto nf = functional_norm(s, alpha, f);
    auto nh = functional_norm(s, alpha, f + g);
    if (!nf || !nh) throw extend_error("additivity_extension_witness: a norm is infinite");

    AdditivityWitnessResult out;
    out.state_cover_holds = check_state_cover(s, alpha, fs).holds;

    const auto& verts = fs.vertices(alpha);
    const std::size_t n = verts.size(), d = s.dim();
    // Weights w_f, w_h >= 0 over the vertices: both norm-preserving
    // positive extensions, with w_h dominating w_f.
    std::vector<lp::Constraint> cons;
    for (std::size_t k = 0; k < d; ++k) {
        RVec rf(2 * n), rh(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            rf[i] = verts[i][k];
            rh[n + i] = verts[i][k];
        }
        cons.push_back({rf, lp::Rel::eq, f[k]});
        cons.push_back({rh, lp::Rel::eq, f[k] + g[k]});
    }
    RVec mass_f(2 * n), mass_h(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        mass_f[i] = 1;
        mass_h[n + i] = 1;
    }
    cons.push_back({mass_f, lp::Rel::eq, *nf});
    cons.push_back({mass_h, lp::Rel::eq, *nh});
    for (std::size_t i = 0; i < n; ++i) {
        RVec r(2 * n);
        r[n + i] = 1;
        r[i] = -1;
        cons.push_back({r, lp::Rel::ge, Rat(0)});
    }
    std::vector<lp::Bounds> bounds(2 * n, lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::check_feasible(2 * n, std::move(cons), std::move(bounds));
    if (o.status != lp::LPStatus::optimal) return out;
    AdditivityWitness w;
    w.w_f.resize(n);
    w.w_h.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        w.w_f[i] = (*o.primal)[i];
        w.w_h[i] = (*o.primal)[n + i];
    }
    out.witness = w;
    return out;
}

}  // namespace ocs
