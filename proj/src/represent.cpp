#include "ocs/represent.hpp"

#include "ocs/criteria.hpp"

#include <cstdlib>
#include <sstream>

namespace ocs {

namespace {

std::size_t dimension_cap() {
    if (const char* env = std::getenv("OC_MAX_DIM")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 6;
}

constexpr std::size_t kMaxRows = 10;

}  // namespace

Rat FiniteStateSpace::induced_seminorm(std::size_t alpha, const RVec& x) const {
    Rat best = 0;
    for (const RVec& v : vertices(alpha)) {
        Rat val = rat_abs(dot(v, x));
        if (val > best) best = val;
    }
    return best;
}

Rat FiniteStateSpace::state_supremum(std::size_t alpha, const RVec& x) const {
    Rat best = 0;  // the zero functional is always a state
    for (const RVec& v : vertices(alpha)) {
        Rat val = dot(v, x);
        if (val > best) best = val;
    }
    return best;
}

FiniteStateSpace build_representation(const CalibratedSpace& s) {
    if (s.dim() > dimension_cap()) {
        std::ostringstream os;
        os << "build_representation: dimension " << s.dim() << " exceeds the cap "
           << dimension_cap() << " (override with OC_MAX_DIM)";
        throw std::runtime_error(os.str());
    }
    std::vector<std::vector<RVec>> all;
    for (const PolyhedralSeminorm& p : s.seminorms()) {
        if (p.rows().size() > kMaxRows)
            throw std::runtime_error("build_representation: seminorm '" + p.name() +
                                     "' has more than 10 rows");
        // H-representation of K = conv{+-rows} through the homogenization
        // cone over {(+-a_i, 1)}.
        std::vector<RVec> lifted;
        for (const RVec& a : p.rows()) {
            RVec up(s.dim() + 1), dn(s.dim() + 1);
            for (std::size_t j = 0; j < s.dim(); ++j) {
                up[j] = a[j];
                dn[j] = -a[j];
            }
            up[s.dim()] = 1;
            dn[s.dim()] = 1;
            lifted.push_back(up);
            lifted.push_back(dn);
        }
        PolyCone hull(s.dim() + 1, lifted);
        std::vector<RVec> rows;
        std::vector<Rat> rhs;
        for (const RVec& h : hull.inequalities()) {
            RVec row(s.dim());
            for (std::size_t j = 0; j < s.dim(); ++j) row[j] = h[j];
            rows.push_back(row);
            rhs.push_back(-h[s.dim()]);
        }
        for (const RVec& g : s.cone().generators()) {
            rows.push_back(g);
            rhs.push_back(Rat(0));
        }
        all.push_back(enumerate_vertices(rows, rhs, s.dim()));
    }
    return FiniteStateSpace(s.dim(), std::move(all));
}

std::vector<TaggedValue> evaluate(const FiniteStateSpace& fs, const RVec& x) {
    std::vector<TaggedValue> out;
    for (std::size_t alpha = 0; alpha < fs.family_size(); ++alpha) {
        const auto& verts = fs.vertices(alpha);
        for (std::size_t i = 0; i < verts.size(); ++i)
            out.push_back({alpha, i, dot(verts[i], x)});
    }
    return out;
}

namespace {

// Membership of target in the cone spanned by the given vectors; on failure
// the Farkas certificate provides the separating functional.
struct MembershipResult {
    bool member;
    RVec separator;  // <separator, v> >= 0 for all v, <separator, target> < 0
};

MembershipResult conic_membership(const std::vector<RVec>& vecs, const RVec& target,
                                  std::size_t dim) {
    std::vector<lp::Constraint> cons;
    for (std::size_t k = 0; k < dim; ++k) {
        RVec row(vecs.size());
        for (std::size_t i = 0; i < vecs.size(); ++i) row[i] = vecs[i][k];
        cons.push_back({row, lp::Rel::eq, target[k]});
    }
    std::vector<lp::Bounds> bounds(vecs.size(), lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::check_feasible(vecs.size(), std::move(cons), std::move(bounds));
    if (o.status == lp::LPStatus::optimal) return {true, RVec()};
    RVec m(dim);
    for (std::size_t k = 0; k < dim; ++k) m[k] = (*o.farkas)[k];
    // The aggregate row over the weight variables is <m, v> per column with
    // box supremum zero, and beta = <m, target> > 0; flip to the convention
    // in the result contract.
    return {false, -m};
}

}  // namespace

RepresentationReport verify_representation(const CalibratedSpace& s, const FiniteStateSpace& fs) {
    RepresentationReport rep;
    const std::size_t d = s.dim();

    RMat stacked(0, d);
    std::vector<RVec> all_vertices;
    for (std::size_t alpha = 0; alpha < fs.family_size(); ++alpha) {
        for (const RVec& v : fs.vertices(alpha)) {
            stacked.append_row(v);
            all_vertices.push_back(v);
        }
    }
    rep.injective = rank(stacked) == d;

    rep.bipositive = true;
    for (const RVec& h : s.cone().inequalities()) {
        MembershipResult m = conic_membership(all_vertices, h, d);
        if (!m.member) {
            rep.bipositive = false;
            for (const RVec& v : all_vertices)
                if (dot(m.separator, v) < 0)
                    throw std::logic_error("verify_representation: bad bipositivity separator");
            if (dot(h, m.separator) >= 0)
                throw std::logic_error("verify_representation: separator misses the facet");
            rep.bipositive_witness = m.separator;
            break;
        }
    }

    for (std::size_t alpha = 0; alpha < fs.family_size(); ++alpha) {
        const auto& rows = s.seminorm(alpha).rows();
        const auto& verts = fs.vertices(alpha);
        const auto hrep = s.cone().inequalities();
        bool isometric = true;
        std::optional<RVec> witness;
        // sup{ sigma<a_i, x> - max_v <v, x> : x in E+, p(x) <= 1 } must stay
        // at zero for every signed row; one LP per signed row with the
        // epigraph variable t.
        for (const RVec& a : rows) {
            if (!isometric) break;
            for (int sign : {+1, -1}) {
                lp::LPProblem p;
                p.sense = lp::Sense::maximize;
                p.objective = RVec(d + 1);
                p.objective[d] = 1;
                for (const RVec& h : hrep) {
                    RVec row(d + 1);
                    for (std::size_t j = 0; j < d; ++j) row[j] = h[j];
                    p.constraints.push_back({row, lp::Rel::ge, Rat(0)});
                }
                for (const RVec& b : rows) {
                    RVec row(d + 1);
                    for (std::size_t j = 0; j < d; ++j) row[j] = b[j];
                    p.constraints.push_back({row, lp::Rel::le, Rat(1)});
                    p.constraints.push_back({-row, lp::Rel::le, Rat(1)});
                }
                for (const RVec& v : verts) {
                    RVec row(d + 1);
                    for (std::size_t j = 0; j < d; ++j) row[j] = Rat(sign) * a[j] - v[j];
                    row[d] = -1;
                    p.constraints.push_back({row, lp::Rel::ge, Rat(0)});
                }
                lp::LPOutcome o = lp::solve(p);
                if (o.status != lp::LPStatus::optimal)
                    throw std::logic_error("verify_representation: isometry LP unbounded");
                if (o.optimum > 0) {
                    isometric = false;
                    RVec x(d);
                    for (std::size_t j = 0; j < d; ++j) x[j] = (*o.primal)[j];
                    Rat pval = s.seminorm(alpha).eval(x);
                    if (!(fs.state_supremum(alpha, x) < pval))
                        throw std::logic_error("verify_representation: positives witness bogus");
                    witness = x;
                    break;
                }
            }
        }
        rep.isometric_on_positives.push_back(isometric);
        rep.positives_witness.push_back(witness);
        rep.isometric_everywhere.push_back(check_state_cover(s, alpha, fs).holds);
    }
    return rep;
}

std::optional<std::vector<Rat>> realize_state(const FiniteStateSpace& fs, std::size_t alpha,
                                              const Functional& f) {
    const auto& verts = fs.vertices(alpha);
    const std::size_t n = verts.size(), d = fs.dim();
    std::vector<lp::Constraint> cons;
    for (std::size_t k = 0; k < d; ++k) {
        RVec row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = verts[i][k];
        cons.push_back({row, lp::Rel::eq, f[k]});
    }
    RVec ones(n);
    for (std::size_t i = 0; i < n; ++i) ones[i] = 1;
    cons.push_back({ones, lp::Rel::le, Rat(1)});
    std::vector<lp::Bounds> bounds(n, lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::check_feasible(n, std::move(cons), std::move(bounds));
    if (o.status != lp::LPStatus::optimal) return std::nullopt;
    std::vector<Rat> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (*o.primal)[i];
    return w;
}

}  // namespace ocs
