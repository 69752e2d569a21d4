#include "ocs/cone.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocs {

namespace {

bool lex_less(const RVec& a, const RVec& b) {
    for (std::size_t i = 0; i < std::min(a.dim(), b.dim()); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.dim() < b.dim();
}

// Greedy row basis: keeps rows that raise the rank, in input order.
std::vector<RVec> row_basis(const std::vector<RVec>& rows, std::size_t dim) {
    std::vector<RVec> kept;
    RMat acc(0, dim);
    std::size_t r = 0;
    for (const RVec& row : rows) {
        acc.append_row(row);
        if (rank(acc) > r) {
            ++r;
            kept.push_back(row);
        } else {
            acc = RMat(kept, dim);
        }
    }
    return kept;
}

struct Ray {
    RVec v;                   // coordinates in the pointed subspace
    std::vector<char> tight;  // tightness per processed halfspace
};

}  // namespace

DDResult dd_extreme_rays(const std::vector<RVec>& halfspaces, std::size_t dim) {
    std::vector<RVec> rows;
    for (const RVec& h : halfspaces) {
        if (h.dim() != dim) throw dimension_error("dd: halfspace dim mismatch");
        if (!h.is_zero()) rows.push_back(h);
    }
    DDResult out;
    RMat H(rows, dim);
    RMat L = null_space(H);
    for (std::size_t i = 0; i < L.nrows(); ++i) out.lineality.push_back(L.row(i).primitive(true));
    if (rows.empty()) {
        std::sort(out.lineality.begin(), out.lineality.end(), lex_less);
        return out;
    }

    // Split off the lineality: work inside the row space of H, where the
    // cone {y : H W^T y >= 0} is pointed.
    std::vector<RVec> W = row_basis(rows, dim);
    const std::size_t r = W.size();
    RMat Wm(W, dim);
    std::vector<RVec> A;  // constraint rows in subspace coordinates
    A.reserve(rows.size());
    for (const RVec& row : rows) {
        RVec a(r);
        for (std::size_t j = 0; j < r; ++j) a[j] = dot(row, W[j]);
        A.push_back(a);
    }

    // Initial simplicial cone from r independent rows; its extreme rays are
    // the columns of the inverse.
    std::vector<std::size_t> base;
    {
        RMat acc(0, r);
        std::size_t rk = 0;
        for (std::size_t i = 0; i < A.size() && rk < r; ++i) {
            acc.append_row(A[i]);
            if (rank(acc) > rk) {
                ++rk;
                base.push_back(i);
            } else {
                std::vector<RVec> keep;
                for (std::size_t k : base) keep.push_back(A[k]);
                acc = RMat(keep, r);
            }
        }
        if (rk != r) throw std::logic_error("dd: pointed reduction lost rank");
    }
    RMat B(0, r);
    for (std::size_t k : base) B.append_row(A[k]);

    std::vector<std::size_t> order = base;  // processed constraint indices
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < r; ++j) {
        RVec e(r);
        e[j] = 1;
        auto y = solve_linear(B, e);
        if (!y) throw std::logic_error("dd: singular initial basis");
        Ray ray{y->primitive(), std::vector<char>(r, 1)};
        ray.tight[j] = 0;
        rays.push_back(std::move(ray));
    }

    std::vector<char> in_base(A.size(), 0);
    for (std::size_t k : base) in_base[k] = 1;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (in_base[i]) continue;
        const RVec& a = A[i];
        std::vector<Rat> sign(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) sign[k] = dot(a, rays[k].v);

        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (sign[k] < 0) continue;
            Ray kept = rays[k];
            kept.tight.push_back(sign[k] == 0);
            next.push_back(std::move(kept));
        }
        const std::size_t nproc = order.size();
        for (std::size_t kp = 0; kp < rays.size(); ++kp) {
            if (sign[kp] <= 0) continue;
            for (std::size_t km = 0; km < rays.size(); ++km) {
                if (sign[km] >= 0) continue;
                // Combinatorial adjacency: no third extreme ray is tight on
                // the common tight set of the pair.
                std::vector<char> common(nproc);
                for (std::size_t t = 0; t < nproc; ++t)
                    common[t] = rays[kp].tight[t] && rays[km].tight[t];
                bool adjacent = true;
                for (std::size_t k3 = 0; k3 < rays.size() && adjacent; ++k3) {
                    if (k3 == kp || k3 == km) continue;
                    bool covers = true;
                    for (std::size_t t = 0; t < nproc; ++t) {
                        if (common[t] && !rays[k3].tight[t]) {
                            covers = false;
                            break;
                        }
                    }
                    if (covers) adjacent = false;
                }
                if (!adjacent) continue;
                Ray w;
                w.v = (rays[km].v * sign[kp] - rays[kp].v * sign[km]).primitive();
                w.tight.resize(nproc + 1);
                for (std::size_t t = 0; t < nproc; ++t) w.tight[t] = common[t];
                w.tight[nproc] = 1;
                next.push_back(std::move(w));
            }
        }
        rays = std::move(next);
        order.push_back(i);
    }

    for (const Ray& ray : rays) {
        RVec x(dim);
        for (std::size_t j = 0; j < r; ++j) x = x + W[j] * ray.v[j];
        out.rays.push_back(x.primitive());
    }
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    std::sort(out.lineality.begin(), out.lineality.end(), lex_less);
    return out;
}

std::vector<RVec> enumerate_vertices(const std::vector<RVec>& rows,
                                     const std::vector<Rat>& rhs, std::size_t dim) {
    if (rows.size() != rhs.size()) throw dimension_error("enumerate_vertices: rhs size");
    // Homogenize: {(x, t) : <row, x> - rhs t >= 0, t >= 0}; vertices are the
    // rays piercing t = 1.
    std::vector<RVec> lifted;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        RVec h(dim + 1);
        for (std::size_t j = 0; j < dim; ++j) h[j] = rows[i][j];
        h[dim] = -rhs[i];
        lifted.push_back(h);
    }
    RVec t_axis(dim + 1);
    t_axis[dim] = 1;
    lifted.push_back(t_axis);
    DDResult dd = dd_extreme_rays(lifted, dim + 1);
    if (!dd.lineality.empty()) throw std::runtime_error("enumerate_vertices: unbounded polytope");
    std::vector<RVec> vertices;
    bool any = false;
    for (const RVec& ray : dd.rays) {
        if (ray[dim] == 0) throw std::runtime_error("enumerate_vertices: unbounded polytope");
        any = true;
        RVec v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = ray[j] / ray[dim];
        vertices.push_back(v);
    }
    if (!any) throw std::runtime_error("enumerate_vertices: empty polytope");
    std::sort(vertices.begin(), vertices.end(), lex_less);
    return vertices;
}

PolyCone::PolyCone(std::size_t dim, const std::vector<RVec>& generators)
    : dim_(dim), state_(std::make_shared<HState>()) {
    for (const RVec& g : generators) {
        if (g.dim() != dim_) throw dimension_error("PolyCone: generator dim mismatch");
        if (g.is_zero()) continue;
        generators_.push_back(g.primitive());
    }
    std::sort(generators_.begin(), generators_.end(), lex_less);
    generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
}

const std::vector<RVec>& PolyCone::inequalities() const {
    std::call_once(state_->once, [this] {
        DDResult dd = dd_extreme_rays(generators_, dim_);
        std::vector<RVec> ineqs = dd.rays;
        for (const RVec& l : dd.lineality) {
            ineqs.push_back(l);
            ineqs.push_back(-l);
        }
        std::sort(ineqs.begin(), ineqs.end(), lex_less);
        state_->inequalities = std::move(ineqs);
    });
    return state_->inequalities;
}

bool PolyCone::contains(const RVec& x) const {
    if (x.dim() != dim_) throw dimension_error("PolyCone::contains: dim mismatch");
    if (generators_.empty()) return x.is_zero();
    std::vector<lp::Constraint> rows;
    for (std::size_t k = 0; k < dim_; ++k) {
        RVec row(generators_.size());
        for (std::size_t i = 0; i < generators_.size(); ++i) row[i] = generators_[i][k];
        rows.push_back({row, lp::Rel::eq, x[k]});
    }
    std::vector<lp::Bounds> bounds(generators_.size(), lp::Bounds{Rat(0), std::nullopt});
    return lp::check_feasible(generators_.size(), std::move(rows), std::move(bounds)).status ==
           lp::LPStatus::optimal;
}

PolyCone PolyCone::dual_cone() const {
    DDResult dd = dd_extreme_rays(generators_, dim_);
    std::vector<RVec> gens = dd.rays;
    for (const RVec& l : dd.lineality) {
        gens.push_back(l);
        gens.push_back(-l);
    }
    return PolyCone(dim_, gens);
}

std::optional<RVec> PolyCone::line_witness() const {
    if (generators_.empty()) return std::nullopt;
    const std::size_t n = generators_.size();
    std::vector<lp::Constraint> rows;
    for (std::size_t k = 0; k < dim_; ++k) {
        RVec row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = generators_[i][k];
        rows.push_back({row, lp::Rel::eq, Rat(0)});
    }
    RVec ones(n);
    for (std::size_t i = 0; i < n; ++i) ones[i] = 1;
    rows.push_back({ones, lp::Rel::eq, Rat(1)});
    std::vector<lp::Bounds> bounds(n, lp::Bounds{Rat(0), std::nullopt});
    lp::LPOutcome o = lp::check_feasible(n, std::move(rows), std::move(bounds));
    if (o.status != lp::LPStatus::optimal) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        if ((*o.primal)[i] > 0 && contains(-generators_[i])) return generators_[i];
    }
    throw std::logic_error("PolyCone: nontrivial zero combination without a line");
}

const PolyCone& dual_description(const PolyCone& c) {
    c.inequalities();
    return c;
}

}  // namespace ocs
