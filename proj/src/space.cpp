#include "ocs/space.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ocs {

namespace {

bool lex_less(const RVec& a, const RVec& b) {
    for (std::size_t i = 0; i < std::min(a.dim(), b.dim()); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return a.dim() < b.dim();
}

std::vector<RVec> cone_hrep(const PolyCone& cone) { return cone.inequalities(); }

}  // namespace

PolyhedralSeminorm::PolyhedralSeminorm(std::string name, std::vector<RVec> rows, std::size_t dim)
    : name_(std::move(name)), dim_(dim) {
    // Group proportional rows by signed primitive direction; keep the
    // dominating magnitude. |<a, x>| = |<-a, x>| so signs normalize away.
    std::map<std::vector<Rat>, Rat> strongest;
    for (const RVec& row : rows) {
        if (row.dim() != dim_) throw space_error("seminorm '" + name_ + "': row dim mismatch");
        if (row.is_zero()) continue;
        RVec prim = row.primitive(true);
        std::size_t lead = 0;
        while (prim[lead] == 0) ++lead;
        Rat mag = rat_abs(row[lead] / prim[lead]);
        std::vector<Rat> key(prim.begin(), prim.end());
        auto it = strongest.find(key);
        if (it == strongest.end() || it->second < mag) strongest[key] = mag;
    }
    for (const auto& [dir, mag] : strongest) rows_.push_back(RVec(dir) * mag);
    std::sort(rows_.begin(), rows_.end(), lex_less);
    if (rows_.empty())
        throw space_error("seminorm '" + name_ + "': no nonzero rows");
}

Rat PolyhedralSeminorm::eval(const RVec& x) const {
    if (x.dim() != dim_) throw space_error("seminorm '" + name_ + "': eval dim mismatch");
    Rat best = 0;
    for (const RVec& a : rows_) {
        Rat v = rat_abs(dot(a, x));
        if (v > best) best = v;
    }
    return best;
}

Subspace::Subspace(RMat basis) : basis_(std::move(basis)) {
    if (basis_.nrows() == 0) throw space_error("subspace: empty basis");
    if (rank(basis_) != basis_.nrows()) throw space_error("subspace: dependent basis rows");
}

void CalibratedSpace::validate_common(std::size_t dim, const PolyCone& cone,
                                      const std::vector<PolyhedralSeminorm>& seminorms) {
    if (cone.dim() != dim) throw space_error("space: cone dimension mismatch");
    if (seminorms.empty()) throw space_error("space: seminorm family is empty");
    RMat stacked(0, dim);
    for (const PolyhedralSeminorm& p : seminorms) {
        if (p.dim() != dim) throw space_error("space: seminorm dimension mismatch");
        for (const RVec& r : p.rows()) stacked.append_row(r);
    }
    if (rank(stacked) != dim) {
        std::ostringstream os;
        os << "space: seminorm rows do not separate points (rank " << rank(stacked) << " < "
           << dim << ")";
        throw space_error(os.str());
    }
}

CalibratedSpace CalibratedSpace::make(std::size_t dim, PolyCone cone,
                                      std::vector<PolyhedralSeminorm> seminorms) {
    validate_common(dim, cone, seminorms);
    if (auto w = cone.line_witness())
        throw space_error("space: cone is not pointed, contains the line through " + w->str());
    return CalibratedSpace(dim, std::move(cone), std::move(seminorms));
}

CalibratedSpace CalibratedSpace::make_wedge(std::size_t dim, PolyCone cone,
                                            std::vector<PolyhedralSeminorm> seminorms) {
    validate_common(dim, cone, seminorms);
    return CalibratedSpace(dim, std::move(cone), std::move(seminorms));
}

const PolyhedralSeminorm& CalibratedSpace::seminorm(std::size_t alpha) const {
    if (alpha >= seminorms_.size()) throw space_error("space: seminorm index out of range");
    return seminorms_[alpha];
}

std::optional<GaugeDecomposition> functional_gauge(const CalibratedSpace& s, std::size_t alpha,
                                                   const Functional& u) {
    const auto& rows = s.seminorm(alpha).rows();
    const std::size_t n = rows.size();
    if (u.dim() != s.dim()) throw space_error("functional_gauge: dim mismatch");
    // min sum(c+ + c-)  s.t.  sum (c+_i - c-_i) row_i = u, c >= 0
    lp::LPProblem p;
    p.sense = lp::Sense::minimize;
    p.objective = RVec(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) p.objective[i] = 1;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        RVec row(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = rows[i][k];
            row[n + i] = -rows[i][k];
        }
        p.constraints.push_back({row, lp::Rel::eq, u[k]});
    }
    p.var_bounds.assign(2 * n, lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::solve(p);
    if (o.status == lp::LPStatus::infeasible) return std::nullopt;
    GaugeDecomposition g;
    g.norm = o.optimum;
    g.pos.resize(n);
    g.neg.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.pos[i] = (*o.primal)[i];
        g.neg[i] = (*o.primal)[n + i];
    }
    return g;
}

std::optional<Rat> functional_norm(const CalibratedSpace& s, std::size_t alpha,
                                   const Functional& u) {
    auto g = functional_gauge(s, alpha, u);
    if (!g) return std::nullopt;
    return g->norm;
}

IncreasingReport is_increasing(const CalibratedSpace& s, std::size_t alpha) {
    const auto& rows = s.seminorm(alpha).rows();
    const auto hrep = cone_hrep(s.cone());
    const std::size_t d = s.dim();
    // Variables (x, y); constraints y in E+, x - y in E+, p(x) <= 1.
    std::vector<lp::Constraint> cons;
    for (const RVec& h : hrep) {
        RVec ry(2 * d), rxy(2 * d);
        for (std::size_t j = 0; j < d; ++j) {
            ry[d + j] = h[j];
            rxy[j] = h[j];
            rxy[d + j] = -h[j];
        }
        cons.push_back({ry, lp::Rel::ge, Rat(0)});
        cons.push_back({rxy, lp::Rel::ge, Rat(0)});
    }
    for (const RVec& a : rows) {
        RVec r(2 * d);
        for (std::size_t j = 0; j < d; ++j) r[j] = a[j];
        cons.push_back({r, lp::Rel::le, Rat(1)});
        cons.push_back({-r, lp::Rel::le, Rat(1)});
    }
    auto check_witness = [&](const RVec& y, const RVec& x) {
        const PolyhedralSeminorm& p = s.seminorm(alpha);
        for (const RVec& h : hrep)
            if (dot(h, y) < 0 || dot(h, x - y) < 0)
                throw std::logic_error("is_increasing: witness escaped the cone");
        if (!(p.eval(y) > p.eval(x)))
            throw std::logic_error("is_increasing: witness does not violate monotonicity");
    };
    for (const RVec& a : rows) {
        for (int sign : {+1, -1}) {
            lp::LPProblem p;
            p.sense = lp::Sense::maximize;
            p.objective = RVec(2 * d);
            for (std::size_t j = 0; j < d; ++j) p.objective[d + j] = Rat(sign) * a[j];
            p.constraints = cons;
            lp::LPOutcome o = lp::solve(p);
            if (o.status == lp::LPStatus::optimal && o.optimum <= 1) continue;
            RVec x(d), y(d);
            if (o.status == lp::LPStatus::optimal) {
                for (std::size_t j = 0; j < d; ++j) {
                    x[j] = (*o.primal)[j];
                    y[j] = (*o.primal)[d + j];
                }
            } else {
                // Walk far enough along the improving ray to beat p(x) <= 1.
                RVec x0(d), y0(d), dx(d), dy(d);
                for (std::size_t j = 0; j < d; ++j) {
                    x0[j] = (*o.ray_origin)[j];
                    y0[j] = (*o.ray_origin)[d + j];
                    dx[j] = (*o.ray)[j];
                    dy[j] = (*o.ray)[d + j];
                }
                Rat slope = 0;
                for (std::size_t j = 0; j < d; ++j) slope += Rat(sign) * a[j] * dy[j];
                Rat have = 0;
                for (std::size_t j = 0; j < d; ++j) have += Rat(sign) * a[j] * y0[j];
                Rat t = (Rat(2) - have) / slope;
                if (t < 1) t = 1;
                x = x0 + dx * t;
                y = y0 + dy * t;
            }
            check_witness(y, x);
            return IncreasingReport{false, std::make_pair(y, x)};
        }
    }
    return IncreasingReport{true, std::nullopt};
}

bool order_unit_check(const CalibratedSpace& s, const RVec& e) {
    if (e.dim() != s.dim()) throw space_error("order_unit_check: dim mismatch");
    const auto hrep = cone_hrep(s.cone());
    for (std::size_t k = 0; k < s.dim(); ++k) {
        for (int sign : {+1, -1}) {
            // lambda e - (+-e_k) in E+ for some lambda >= 0
            std::vector<lp::Constraint> cons;
            for (const RVec& h : hrep) {
                RVec row{Rat(dot(h, e))};
                cons.push_back({row, lp::Rel::ge, Rat(sign) * h[k]});
            }
            std::vector<lp::Bounds> b{lp::Bounds{Rat(0), std::nullopt}};
            if (lp::check_feasible(1, std::move(cons), std::move(b)).status !=
                lp::LPStatus::optimal)
                return false;
        }
    }
    return true;
}

Rat order_seminorm(const CalibratedSpace& s, const RVec& e, const RVec& x) {
    if (!order_unit_check(s, e))
        throw space_error("order_seminorm: " + e.str() + " is not an order unit");
    const auto hrep = cone_hrep(s.cone());
    lp::LPProblem p;
    p.sense = lp::Sense::minimize;
    p.objective = RVec{Rat(1)};
    for (const RVec& h : hrep) {
        // <h, lambda e - x> >= 0 and <h, lambda e + x> >= 0
        p.constraints.push_back({RVec{Rat(dot(h, e))}, lp::Rel::ge, dot(h, x)});
        p.constraints.push_back({RVec{Rat(dot(h, e))}, lp::Rel::ge, -dot(h, x)});
    }
    p.var_bounds = {lp::Bounds{Rat(0), std::nullopt}};
    lp::LPOutcome o = lp::solve(p);
    if (o.status != lp::LPStatus::optimal)
        throw std::logic_error("order_seminorm: lp not optimal for an order unit");
    return o.optimum;
}

PolyhedralSeminorm order_seminorm_rows(const CalibratedSpace& s, const RVec& e,
                                       const std::string& name) {
    if (!order_unit_check(s, e))
        throw space_error("order_seminorm_rows: " + e.str() + " is not an order unit");
    std::vector<RVec> rows;
    for (const RVec& h : cone_hrep(s.cone())) {
        Rat he = dot(h, e);
        if (he == 0) throw space_error("order_seminorm_rows: unit is not interior");
        rows.push_back(h * (Rat(1) / he));
    }
    return PolyhedralSeminorm(name, rows, s.dim());
}

QuotientResult quotient(const CalibratedSpace& s, std::size_t alpha) {
    const PolyhedralSeminorm& p = s.seminorm(alpha);
    // Quotient coordinates: a row-space basis of the seminorm rows. The
    // kernel of the projection is then exactly ker p_alpha. A seminorm of
    // full rank quotients by nothing, so the projection is the identity.
    RMat P(0, s.dim());
    {
        RMat acc(0, s.dim());
        std::size_t rk = 0;
        for (const RVec& r : p.rows()) {
            acc.append_row(r);
            if (rank(acc) > rk) {
                ++rk;
                P.append_row(r);
            } else {
                std::vector<RVec> keep;
                for (std::size_t i = 0; i < P.nrows(); ++i) keep.push_back(P.row(i));
                acc = RMat(keep, s.dim());
            }
        }
    }
    if (P.nrows() == s.dim()) {
        P = RMat(s.dim(), s.dim());
        for (std::size_t j = 0; j < s.dim(); ++j) P.at(j, j) = 1;
        CalibratedSpace qspace = CalibratedSpace::make_wedge(s.dim(), s.cone(), {p});
        return QuotientResult{P, std::move(qspace)};
    }
    const std::size_t r = P.nrows();
    RMat Pt = P.transposed();
    std::vector<RVec> qrows;
    for (const RVec& a : p.rows()) {
        auto sol = solve_linear(Pt, a);
        if (!sol) throw std::logic_error("quotient: seminorm row escaped its own row space");
        qrows.push_back(*sol);
    }
    std::vector<RVec> qgens;
    for (const RVec& g : s.cone().generators()) qgens.push_back(P.mul(g));
    CalibratedSpace qspace = CalibratedSpace::make_wedge(
        r, PolyCone(r, qgens), {PolyhedralSeminorm(p.name(), qrows, r)});
    return QuotientResult{P, std::move(qspace)};
}

Functional quotient_functional(const QuotientResult& q, const Functional& u) {
    auto sol = solve_linear(q.projection.transposed(), u);
    if (!sol)
        throw space_error("quotient_functional: functional does not vanish on the kernel");
    return *sol;
}

PolyhedralSeminorm saturate(const CalibratedSpace& s, const std::vector<std::size_t>& alphas,
                            const std::string& name) {
    std::vector<RVec> rows;
    for (std::size_t a : alphas)
        for (const RVec& r : s.seminorm(a).rows()) rows.push_back(r);
    return PolyhedralSeminorm(name, rows, s.dim());
}

bool functional_positive(const CalibratedSpace& s, const Functional& u) {
    for (const RVec& g : s.cone().generators())
        if (dot(u, g) < 0) return false;
    return true;
}

}  // namespace ocs
