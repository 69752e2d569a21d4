#include "ocs/criteria.hpp"

#include <sstream>

namespace ocs {

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::full_ball: return "full_ball";
        case Criterion::sandwich: return "sandwich";
        case Criterion::semi_all: return "semi_all";
        case Criterion::state_sup: return "state_sup";
        case Criterion::gk_decomposable: return "gk_decomposable";
    }
    return "?";
}

namespace {

// min over l in E+ of p(x + l), with the minimizing l.
std::pair<Rat, RVec> min_over_cone_shift(const CalibratedSpace& s, std::size_t alpha,
                                         const RVec& x) {
    const auto& rows = s.seminorm(alpha).rows();
    const auto& hrep = s.cone().inequalities();
    const std::size_t d = s.dim();
    lp::LPProblem p;
    p.sense = lp::Sense::minimize;
    p.objective = RVec(d + 1);
    p.objective[d] = 1;
    for (const RVec& h : hrep) {
        RVec row(d + 1);
        for (std::size_t j = 0; j < d; ++j) row[j] = h[j];
        p.constraints.push_back({row, lp::Rel::ge, Rat(0)});
    }
    for (const RVec& a : rows) {
        // |<a, x + l>| <= t
        RVec row(d + 1);
        for (std::size_t j = 0; j < d; ++j) row[j] = a[j];
        row[d] = -1;
        p.constraints.push_back({row, lp::Rel::le, -dot(a, x)});
        RVec neg = -row;
        neg[d] = -1;
        p.constraints.push_back({neg, lp::Rel::le, dot(a, x)});
    }
    lp::LPOutcome o = lp::solve(p);
    if (o.status != lp::LPStatus::optimal)
        throw std::logic_error("semi_positive: interior LP not optimal");
    RVec l(d);
    for (std::size_t j = 0; j < d; ++j) l[j] = (*o.primal)[j];
    return {o.optimum, l};
}

}  // namespace

SemiResult semi_positive(const CalibratedSpace& s, std::size_t alpha, const RVec& x) {
    auto [m, l] = min_over_cone_shift(s, alpha, x);
    Rat px = s.seminorm(alpha).eval(x);
    if (m == px) return SemiResult{true, std::nullopt};
    if (!(s.seminorm(alpha).eval(x + l) < px) || !s.cone().contains(l))
        throw std::logic_error("semi_positive: witness does not improve");
    return SemiResult{false, l};
}

SemiResult semi_negative(const CalibratedSpace& s, std::size_t alpha, const RVec& x) {
    // p(x - l) = p(-x + l), so this is semi positivity of -x.
    SemiResult r = semi_positive(s, alpha, -x);
    return r;
}

bool verify_state(const CalibratedSpace& s, const StateCertificate& c) {
    const auto& rows = s.seminorm(c.alpha).rows();
    if (c.ball_pos.size() != rows.size() || c.ball_neg.size() != rows.size()) return false;
    RVec f(s.dim());
    Rat mass = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (c.ball_pos[i] < 0 || c.ball_neg[i] < 0) return false;
        f = f + rows[i] * (c.ball_pos[i] - c.ball_neg[i]);
        mass += c.ball_pos[i] + c.ball_neg[i];
    }
    if (f != c.f || mass > 1) return false;
    for (const RVec& g : s.cone().generators())
        if (dot(c.f, g) < 0) return false;
    return dot(c.f, c.x0) == Rat(c.sign) * s.seminorm(c.alpha).eval(c.x0);
}

namespace {

std::optional<StateCertificate> state_lp(const CalibratedSpace& s, std::size_t alpha,
                                         const RVec& x0, int sign) {
    const auto& rows = s.seminorm(alpha).rows();
    const std::size_t n = rows.size();
    Rat target = Rat(sign) * s.seminorm(alpha).eval(x0);
    std::vector<lp::Constraint> cons;
    // mass
    RVec ones(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) ones[i] = 1;
    cons.push_back({ones, lp::Rel::le, Rat(1)});
    // attainment <f, x0> = target
    RVec att(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        att[i] = dot(rows[i], x0);
        att[n + i] = -att[i];
    }
    cons.push_back({att, lp::Rel::eq, target});
    // positivity on generators
    for (const RVec& g : s.cone().generators()) {
        RVec row(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = dot(rows[i], g);
            row[n + i] = -row[i];
        }
        cons.push_back({row, lp::Rel::ge, Rat(0)});
    }
    std::vector<lp::Bounds> bounds(2 * n, lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::check_feasible(2 * n, std::move(cons), std::move(bounds));
    if (o.status != lp::LPStatus::optimal) return std::nullopt;
    StateCertificate cert;
    cert.alpha = alpha;
    cert.sign = sign;
    cert.x0 = x0;
    cert.ball_pos.resize(n);
    cert.ball_neg.resize(n);
    RVec f(s.dim());
    for (std::size_t i = 0; i < n; ++i) {
        cert.ball_pos[i] = (*o.primal)[i];
        cert.ball_neg[i] = (*o.primal)[n + i];
        f = f + rows[i] * (cert.ball_pos[i] - cert.ball_neg[i]);
    }
    cert.f = f;
    return cert;
}

}  // namespace

std::optional<StateCertificate> find_state(const CalibratedSpace& s, std::size_t alpha,
                                           const RVec& x0) {
    if (s.seminorm(alpha).eval(x0) == 0) {
        StateCertificate zero;
        zero.alpha = alpha;
        zero.sign = +1;
        zero.x0 = x0;
        zero.f = RVec(s.dim());
        zero.ball_pos.assign(s.seminorm(alpha).rows().size(), Rat(0));
        zero.ball_neg.assign(s.seminorm(alpha).rows().size(), Rat(0));
        return zero;
    }
    SemiResult sp = semi_positive(s, alpha, x0);
    SemiResult sn = semi_negative(s, alpha, x0);
    auto plus = state_lp(s, alpha, x0, +1);
    auto minus = state_lp(s, alpha, x0, -1);
    // The feasibility route and the semi-positivity route decide the same
    // condition; disagreement would be a bug, not data.
    if (sp.semi != plus.has_value() || sn.semi != minus.has_value())
        throw std::logic_error("find_state: state existence disagrees with semi positivity");
    if (plus && !verify_state(s, *plus))
        throw std::logic_error("find_state: + certificate failed direct verification");
    if (minus && !verify_state(s, *minus))
        throw std::logic_error("find_state: - certificate failed direct verification");
    if (plus) return plus;
    if (minus) return minus;
    return std::nullopt;
}

CriterionReport check_full(const CalibratedSpace& s, std::size_t alpha) {
    const auto& rows = s.seminorm(alpha).rows();
    const auto& hrep = s.cone().inequalities();
    const std::size_t d = s.dim();
    // Variables (x, y, z): x <= y <= z, p(x) <= 1, p(z) <= 1; maximize the
    // signed row value at y.
    std::vector<lp::Constraint> cons;
    for (const RVec& h : hrep) {
        RVec ryx(3 * d), rzy(3 * d);
        for (std::size_t j = 0; j < d; ++j) {
            ryx[d + j] = h[j];
            ryx[j] = -h[j];
            rzy[2 * d + j] = h[j];
            rzy[d + j] = -h[j];
        }
        cons.push_back({ryx, lp::Rel::ge, Rat(0)});
        cons.push_back({rzy, lp::Rel::ge, Rat(0)});
    }
    for (const RVec& a : rows) {
        RVec rx(3 * d), rz(3 * d);
        for (std::size_t j = 0; j < d; ++j) {
            rx[j] = a[j];
            rz[2 * d + j] = a[j];
        }
        for (const RVec& r : {rx, rz}) {
            cons.push_back({r, lp::Rel::le, Rat(1)});
            cons.push_back({-r, lp::Rel::le, Rat(1)});
        }
    }
    CriterionReport rep{Criterion::full_ball, alpha, true, std::nullopt};
    for (const RVec& a : rows) {
        for (int sign : {+1, -1}) {
            lp::LPProblem p;
            p.sense = lp::Sense::maximize;
            p.objective = RVec(3 * d);
            for (std::size_t j = 0; j < d; ++j) p.objective[d + j] = Rat(sign) * a[j];
            p.constraints = cons;
            lp::LPOutcome o = lp::solve(p);
            if (o.status == lp::LPStatus::optimal && o.optimum <= 1) continue;
            RVec x(d), y(d), z(d);
            if (o.status == lp::LPStatus::optimal) {
                for (std::size_t j = 0; j < d; ++j) {
                    x[j] = (*o.primal)[j];
                    y[j] = (*o.primal)[d + j];
                    z[j] = (*o.primal)[2 * d + j];
                }
            } else {
                // Recession keeps p(x), p(z) <= 1; walk until the middle
                // element leaves the ball.
                Rat slope = 0, have = 0;
                for (std::size_t j = 0; j < d; ++j) {
                    slope += Rat(sign) * a[j] * (*o.ray)[d + j];
                    have += Rat(sign) * a[j] * (*o.ray_origin)[d + j];
                }
                Rat t = (Rat(2) - have) / slope;
                if (t < 1) t = 1;
                for (std::size_t j = 0; j < d; ++j) {
                    x[j] = (*o.ray_origin)[j] + t * (*o.ray)[j];
                    y[j] = (*o.ray_origin)[d + j] + t * (*o.ray)[d + j];
                    z[j] = (*o.ray_origin)[2 * d + j] + t * (*o.ray)[2 * d + j];
                }
            }
            const PolyhedralSeminorm& pa = s.seminorm(alpha);
            for (const RVec& h : hrep)
                if (dot(h, y - x) < 0 || dot(h, z - y) < 0)
                    throw std::logic_error("check_full: witness breaks the order chain");
            if (!(pa.eval(x) <= 1 && pa.eval(z) <= 1 && pa.eval(y) > 1))
                throw std::logic_error("check_full: witness does not violate fullness");
            rep.holds = false;
            rep.witness = TripleWitness{x, y, z};
            return rep;
        }
    }
    return rep;
}

CriterionReport check_state_cover(const CalibratedSpace& s, std::size_t alpha,
                                  const FiniteStateSpace& fs) {
    const auto& rows = s.seminorm(alpha).rows();
    const auto& verts = fs.vertices(alpha);
    const std::size_t n = verts.size(), d = s.dim();
    CriterionReport rep{Criterion::state_sup, alpha, true, std::nullopt};
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        // row in conv(B u -B): weights w, u >= 0 with mass at most one.
        std::vector<lp::Constraint> cons;
        for (std::size_t k = 0; k < d; ++k) {
            RVec row(2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                row[i] = verts[i][k];
                row[n + i] = -verts[i][k];
            }
            cons.push_back({row, lp::Rel::eq, rows[ri][k]});
        }
        RVec ones(2 * n);
        for (std::size_t i = 0; i < 2 * n; ++i) ones[i] = 1;
        cons.push_back({ones, lp::Rel::le, Rat(1)});
        std::vector<lp::Bounds> bounds(2 * n, lp::Bounds{Rat(0), std::nullopt});
        lp::LPOutcome o = lp::check_feasible(2 * n, std::move(cons), std::move(bounds));
        if (o.status == lp::LPStatus::optimal) continue;
        // Farkas multipliers on the coordinate rows are the separating
        // element: states cannot reach its seminorm value.
        RVec x(d);
        for (std::size_t k = 0; k < d; ++k) x[k] = (*o.farkas)[k];
        Rat sup = 0;
        for (const RVec& v : verts) {
            Rat val = rat_abs(dot(v, x));
            if (val > sup) sup = val;
        }
        Rat pval = s.seminorm(alpha).eval(x);
        if (!(sup < pval)) throw std::logic_error("check_state_cover: separator not separating");
        rep.holds = false;
        rep.witness = SeparatingWitness{ri, x, sup, pval};
        return rep;
    }
    return rep;
}

CriterionReport check_gk(const CalibratedSpace& s, std::size_t alpha,
                         const FiniteStateSpace& fs) {
    CriterionReport cover = check_state_cover(s, alpha, fs);
    CriterionReport rep{Criterion::gk_decomposable, alpha, cover.holds, std::nullopt};
    if (cover.holds) return rep;
    // Directed witness: the signed row attaining p at the separating element
    // admits no norm-additive positive split.
    const auto& w = std::get<SeparatingWitness>(*cover.witness);
    const auto& rows = s.seminorm(alpha).rows();
    Functional u;
    for (const RVec& a : rows) {
        if (dot(a, w.x) == w.p_value) {
            u = a;
            break;
        }
        if (dot(-a, w.x) == w.p_value) {
            u = -a;
            break;
        }
    }
    if (u.dim() == 0) throw std::logic_error("check_gk: no attaining row for the separator");
    GkResult gk = grosberg_krein(s, alpha, u);
    if (gk.decomposable && gk.gap == 0)
        throw std::logic_error("check_gk: directed witness unexpectedly splits additively");
    rep.witness = GapWitness{u, gk.norm_u,
                             gk.decomposable ? std::optional<Rat>(gk.norm_sum) : std::nullopt};
    return rep;
}

std::pair<Functional, Functional> krein_decompose(const CalibratedSpace& s, std::size_t alpha,
                                                  const Functional& u) {
    const auto& rows = s.seminorm(alpha).rows();
    const std::size_t n = rows.size();
    // v1 = sum c_i a_i positive with v1 - u positive; free multipliers keep
    // v1 inside the dual span so both parts carry finite alpha-norms.
    std::vector<lp::Constraint> cons;
    for (const RVec& g : s.cone().generators()) {
        RVec row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = dot(rows[i], g);
        cons.push_back({row, lp::Rel::ge, Rat(0)});
        cons.push_back({row, lp::Rel::ge, dot(u, g)});
    }
    lp::LPOutcome o = lp::check_feasible(n, std::move(cons));
    if (o.status != lp::LPStatus::optimal) {
        std::ostringstream os;
        os << "krein_decompose: no positive split for " << u.str()
           << " (is the seminorm increasing?); Farkas: " << o.farkas->str();
        throw criteria_error(os.str());
    }
    RVec v1(s.dim());
    for (std::size_t i = 0; i < n; ++i) v1 = v1 + rows[i] * (*o.primal)[i];
    return {v1, v1 - u};
}

GkResult grosberg_krein(const CalibratedSpace& s, std::size_t alpha, const Functional& u) {
    auto norm_u = functional_norm(s, alpha, u);
    if (!norm_u) throw criteria_error("grosberg_krein: |u| is infinite");
    const auto& rows = s.seminorm(alpha).rows();
    const std::size_t n = rows.size();
    // Variables: dual-ball multipliers of v1 (c+, c-) and of v2 (d+, d-).
    lp::LPProblem p;
    p.sense = lp::Sense::minimize;
    p.objective = RVec(4 * n);
    for (std::size_t i = 0; i < 4 * n; ++i) p.objective[i] = 1;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        RVec row(4 * n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = rows[i][k];
            row[n + i] = -rows[i][k];
            row[2 * n + i] = -rows[i][k];
            row[3 * n + i] = rows[i][k];
        }
        p.constraints.push_back({row, lp::Rel::eq, u[k]});
    }
    for (const RVec& g : s.cone().generators()) {
        RVec r1(4 * n), r2(4 * n);
        for (std::size_t i = 0; i < n; ++i) {
            Rat ag = dot(rows[i], g);
            r1[i] = ag;
            r1[n + i] = -ag;
            r2[2 * n + i] = ag;
            r2[3 * n + i] = -ag;
        }
        p.constraints.push_back({r1, lp::Rel::ge, Rat(0)});
        p.constraints.push_back({r2, lp::Rel::ge, Rat(0)});
    }
    p.var_bounds.assign(4 * n, lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::solve(p);
    GkResult res;
    res.norm_u = *norm_u;
    if (o.status != lp::LPStatus::optimal) {
        res.decomposable = false;
        return res;
    }
    res.decomposable = true;
    RVec v1(s.dim()), v2(s.dim());
    for (std::size_t i = 0; i < n; ++i) {
        v1 = v1 + rows[i] * ((*o.primal)[i] - (*o.primal)[n + i]);
        v2 = v2 + rows[i] * ((*o.primal)[2 * n + i] - (*o.primal)[3 * n + i]);
    }
    res.v1 = v1;
    res.v2 = v2;
    res.norm_sum = o.optimum;
    res.gap = o.optimum - *norm_u;
    if (res.gap < 0) throw std::logic_error("grosberg_krein: negative gap");
    if (v1 - v2 != u) throw std::logic_error("grosberg_krein: split does not recompose");
    return res;
}

}  // namespace ocs
