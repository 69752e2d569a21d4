#include "ocs/lp.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ocs::lp {

namespace {

std::mutex g_stats_mutex;
SolveStats g_stats;

void bump_stats(bool verified) {
    std::lock_guard<std::mutex> lock(g_stats_mutex);
    ++g_stats.solves;
    if (verified) ++g_stats.certificates_verified;
}

const char* rel_str(Rel r) {
    switch (r) {
        case Rel::le: return "<=";
        case Rel::eq: return "==";
        default: return ">=";
    }
}

// How an original variable maps into the nonnegative standard-form space.
struct VarMap {
    enum Kind { free_pair, shifted_lower, shifted_upper } kind;
    std::size_t zpos = 0;  // z+ column (or the single column)
    std::size_t zneg = 0;  // z- column for free variables
    Rat shift;             // x = shift + z (lower), x = shift - z (upper)
};

struct StandardForm {
    std::size_t nz = 0;                // structural z columns
    std::vector<VarMap> vars;
    // rows: original constraints first, then upper-bound rows
    std::vector<RVec> rows;            // coefficients over z columns
    std::vector<Rat> rhs;
    std::vector<Rel> rels;
    std::vector<int> orig_of_row;      // original constraint index, -1 for bound rows
};

StandardForm to_standard(const LPProblem& p) {
    StandardForm sf;
    const std::size_t n = p.nvars();
    sf.vars.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        Bounds b = p.bounds_of(j);
        if (b.lower && b.upper && *b.lower > *b.upper)
            throw std::invalid_argument("lp: variable bounds are inverted");
        VarMap& vm = sf.vars[j];
        if (b.lower) {
            vm.kind = VarMap::shifted_lower;
            vm.shift = *b.lower;
            vm.zpos = sf.nz++;
        } else if (b.upper) {
            vm.kind = VarMap::shifted_upper;
            vm.shift = *b.upper;
            vm.zpos = sf.nz++;
        } else {
            vm.kind = VarMap::free_pair;
            vm.zpos = sf.nz++;
            vm.zneg = sf.nz++;
        }
    }
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const Constraint& c = p.constraints[i];
        if (c.row.dim() != n) throw std::invalid_argument("lp: constraint row dim mismatch");
        RVec zr(sf.nz);
        Rat b = c.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& a = c.row[j];
            if (a == 0) continue;
            const VarMap& vm = sf.vars[j];
            switch (vm.kind) {
                case VarMap::free_pair:
                    zr[vm.zpos] += a;
                    zr[vm.zneg] -= a;
                    break;
                case VarMap::shifted_lower:
                    zr[vm.zpos] += a;
                    b -= a * vm.shift;
                    break;
                case VarMap::shifted_upper:
                    zr[vm.zpos] -= a;
                    b -= a * vm.shift;
                    break;
            }
        }
        sf.rows.push_back(zr);
        sf.rhs.push_back(b);
        sf.rels.push_back(c.rel);
        sf.orig_of_row.push_back(static_cast<int>(i));
    }
    // Two-sided variables get an explicit row z <= u - l.
    for (std::size_t j = 0; j < n; ++j) {
        Bounds b = p.bounds_of(j);
        if (b.lower && b.upper) {
            RVec zr(sf.nz);
            zr[sf.vars[j].zpos] = 1;
            sf.rows.push_back(zr);
            sf.rhs.push_back(*b.upper - *b.lower);
            sf.rels.push_back(Rel::le);
            sf.orig_of_row.push_back(-1);
        }
    }
    return sf;
}

// Dense exact simplex tableau over the equality system [A | I_art] z = b,
// z >= 0, with an initial all-artificial basis.
class Tableau {
  public:
    Tableau(const StandardForm& sf)
        : m_(sf.rows.size()), nz_(sf.nz) {
        nslack_ = 0;
        for (Rel r : sf.rels)
            if (r != Rel::eq) ++nslack_;
        ncols_ = nz_ + nslack_ + m_;  // artificials last
        rowsign_.assign(m_, 1);
        rows_.assign(m_, RVec(ncols_ + 1));
        basis_.resize(m_);
        std::size_t slack = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            RVec& t = rows_[i];
            for (std::size_t j = 0; j < nz_; ++j) t[j] = sf.rows[i][j];
            if (sf.rels[i] != Rel::eq) {
                t[nz_ + slack] = sf.rels[i] == Rel::le ? 1 : -1;
                ++slack;
            }
            t[ncols_] = sf.rhs[i];
            if (t[ncols_] < 0) {
                rowsign_[i] = -1;
                for (std::size_t j = 0; j <= ncols_; ++j) t[j] = -t[j];
            }
            t[art_col(i)] = 1;
            basis_[i] = art_col(i);
        }
    }

    std::size_t art_col(std::size_t i) const { return nz_ + nslack_ + i; }
    bool is_artificial(std::size_t col) const { return col >= nz_ + nslack_; }
    std::size_t cols() const { return ncols_; }
    std::size_t rows() const { return m_; }
    int rowsign(std::size_t i) const { return rowsign_[i]; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Rat& value(std::size_t i) const { return rows_[i][ncols_]; }
    const Rat& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }

    void pivot(std::size_t r, std::size_t c) {
        Rat inv = Rat(1) / rows_[r][c];
        rows_[r] = rows_[r] * inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || rows_[i][c] == 0) continue;
            Rat f = rows_[i][c];
            rows_[i] = rows_[i] - rows_[r] * f;
        }
        if (cost_.dim() != 0 && cost_[c] != 0) {
            Rat f = cost_[c];
            cost_ = cost_ - rows_[r] * f;
        }
        basis_[r] = c;
    }

    // Installs a cost vector (over columns) and prices out the basis.
    void set_costs(const RVec& c) {
        cost_ = RVec(ncols_ + 1);
        for (std::size_t j = 0; j < ncols_; ++j) cost_[j] = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (cost_[basis_[i]] == 0) continue;
            Rat f = cost_[basis_[i]];
            cost_ = cost_ - rows_[i] * f;
        }
    }

    const Rat& reduced_cost(std::size_t j) const { return cost_[j]; }
    Rat objective_value() const { return -cost_[ncols_]; }

    // Minimizes the installed costs with Bland's rule. Returns the entering
    // column when the problem is unbounded in that direction, nullopt at
    // optimality. `allow` filters entering candidates.
    template <class Allow>
    std::optional<std::size_t> run(Allow allow) {
        for (;;) {
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!allow(j)) continue;
                if (cost_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) return std::nullopt;  // optimal
            std::size_t leave = m_;
            Rat best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rat ratio = rows_[i][ncols_] / rows_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return enter;  // unbounded
            pivot(leave, enter);
        }
    }

    // Row multipliers y = c_B B^-1, read off the artificial (initial
    // identity) columns.
    RVec row_multipliers(const RVec& costs) const {
        RVec y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            Rat acc = 0;
            for (std::size_t k = 0; k < m_; ++k) {
                const Rat& cb = costs[basis_[k]];
                if (cb != 0) acc += cb * rows_[k][art_col(i)];
            }
            y[i] = acc;
        }
        return y;
    }

  private:
    std::size_t m_, nz_, nslack_ = 0, ncols_ = 0;
    std::vector<RVec> rows_;
    RVec cost_;
    std::vector<std::size_t> basis_;
    std::vector<int> rowsign_;
};

RVec extract_x(const StandardForm& sf, const std::vector<Rat>& z) {
    RVec x(sf.vars.size());
    for (std::size_t j = 0; j < sf.vars.size(); ++j) {
        const VarMap& vm = sf.vars[j];
        switch (vm.kind) {
            case VarMap::free_pair: x[j] = z[vm.zpos] - z[vm.zneg]; break;
            case VarMap::shifted_lower: x[j] = vm.shift + z[vm.zpos]; break;
            case VarMap::shifted_upper: x[j] = vm.shift - z[vm.zpos]; break;
        }
    }
    return x;
}

std::vector<Rat> basic_solution(const Tableau& t) {
    std::vector<Rat> z(t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i) z[t.basis()[i]] = t.value(i);
    return z;
}

}  // namespace

std::string LPProblem::dump() const {
    std::ostringstream os;
    os << (sense == Sense::maximize ? "maximize " : "minimize ") << objective.str() << "\n";
    for (const Constraint& c : constraints)
        os << "  " << c.row.str() << " " << rel_str(c.rel) << " " << c.rhs << "\n";
    for (std::size_t j = 0; j < var_bounds.size(); ++j) {
        const Bounds& b = var_bounds[j];
        if (!b.lower && !b.upper) continue;
        os << "  x" << j << " in ["
           << (b.lower ? b.lower->str() : std::string("-inf")) << ", "
           << (b.upper ? b.upper->str() : std::string("+inf")) << "]\n";
    }
    return os.str();
}

LPOutcome solve(const LPProblem& p) {
    if (!p.var_bounds.empty() && p.var_bounds.size() != p.nvars())
        throw std::invalid_argument("lp: var_bounds size mismatch");
    StandardForm sf = to_standard(p);
    Tableau t(sf);
    const std::size_t m = t.rows();

    // Phase 1: minimize the artificial mass.
    RVec phase1(t.cols());
    for (std::size_t i = 0; i < m; ++i) phase1[t.art_col(i)] = 1;
    t.set_costs(phase1);
    auto esc = t.run([&](std::size_t j) { return !t.is_artificial(j); });
    if (esc) throw std::logic_error("lp: internal error, phase-1 escaped below zero");
    LPOutcome out;
    if (t.objective_value() != 0) {
        out.status = LPStatus::infeasible;
        RVec y = t.row_multipliers(phase1);
        RVec farkas(p.constraints.size());
        for (std::size_t i = 0; i < m; ++i) {
            int orig = sf.orig_of_row[i];
            if (orig < 0) continue;  // bound rows fold into the box supremum
            Rat w = y[i] * t.rowsign(i);
            farkas[orig] = p.constraints[orig].rel == Rel::le ? Rat(-w) : w;
        }
        out.farkas = farkas.primitive();
        if (!verify_certificate(p, out)) {
            bump_stats(false);
            throw std::logic_error("lp: internal error, infeasibility certificate failed\n" + p.dump());
        }
        bump_stats(true);
        return out;
    }

    // Drive basic artificials out; a row with no real pivot is redundant and
    // stays inert (its artificial remains basic at level zero).
    for (std::size_t i = 0; i < m; ++i) {
        if (!t.is_artificial(t.basis()[i])) continue;
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (t.is_artificial(j) || t.at(i, j) == 0) continue;
            t.pivot(i, j);
            break;
        }
    }

    // Phase 2 on the internal minimization objective.
    const bool maximize = p.sense == Sense::maximize;
    RVec phase2(t.cols());
    for (std::size_t j = 0; j < p.nvars(); ++j) {
        Rat cj = maximize ? Rat(-p.objective[j]) : p.objective[j];
        if (cj == 0) continue;
        const VarMap& vm = sf.vars[j];
        switch (vm.kind) {
            case VarMap::free_pair:
                phase2[vm.zpos] += cj;
                phase2[vm.zneg] -= cj;
                break;
            case VarMap::shifted_lower: phase2[vm.zpos] += cj; break;
            case VarMap::shifted_upper: phase2[vm.zpos] -= cj; break;
        }
    }
    t.set_costs(phase2);
    auto entering = t.run([&](std::size_t j) { return !t.is_artificial(j); });

    if (entering) {
        out.status = LPStatus::unbounded;
        std::vector<Rat> dz(t.cols());
        dz[*entering] = 1;
        for (std::size_t i = 0; i < m; ++i)
            if (t.at(i, *entering) != 0) dz[t.basis()[i]] = -t.at(i, *entering);
        RVec dx(p.nvars());
        for (std::size_t j = 0; j < p.nvars(); ++j) {
            const VarMap& vm = sf.vars[j];
            switch (vm.kind) {
                case VarMap::free_pair: dx[j] = dz[vm.zpos] - dz[vm.zneg]; break;
                case VarMap::shifted_lower: dx[j] = dz[vm.zpos]; break;
                case VarMap::shifted_upper: dx[j] = -dz[vm.zpos]; break;
            }
        }
        out.ray = dx.primitive();
        out.ray_origin = extract_x(sf, basic_solution(t));
    } else {
        out.status = LPStatus::optimal;
        out.primal = extract_x(sf, basic_solution(t));
        out.optimum = dot(p.objective, *out.primal);
        RVec y = t.row_multipliers(phase2);
        RVec dual(p.constraints.size());
        for (std::size_t i = 0; i < m; ++i) {
            int orig = sf.orig_of_row[i];
            if (orig < 0) continue;
            Rat w = y[i] * t.rowsign(i);
            dual[orig] = maximize ? Rat(-w) : w;
        }
        out.dual = dual;
    }
    if (!verify_certificate(p, out)) {
        bump_stats(false);
        throw std::logic_error("lp: internal error, outcome certificate failed\n" + p.dump());
    }
    bump_stats(true);
    return out;
}

LPOutcome check_feasible(std::size_t nvars, std::vector<Constraint> constraints,
                         std::vector<Bounds> var_bounds) {
    LPProblem p;
    p.sense = Sense::maximize;
    p.objective = RVec(nvars);
    p.constraints = std::move(constraints);
    p.var_bounds = std::move(var_bounds);
    return solve(p);
}

namespace {

bool point_feasible(const LPProblem& p, const RVec& x) {
    if (x.dim() != p.nvars()) return false;
    for (const Constraint& c : p.constraints) {
        Rat v = dot(c.row, x);
        if (c.rel == Rel::le && !(v <= c.rhs)) return false;
        if (c.rel == Rel::eq && !(v == c.rhs)) return false;
        if (c.rel == Rel::ge && !(v >= c.rhs)) return false;
    }
    for (std::size_t j = 0; j < p.nvars(); ++j) {
        Bounds b = p.bounds_of(j);
        if (b.lower && x[j] < *b.lower) return false;
        if (b.upper && x[j] > *b.upper) return false;
    }
    return true;
}

bool verify_optimal(const LPProblem& p, const LPOutcome& o) {
    if (!o.primal || !o.dual || o.ray || o.farkas) return false;
    if (!point_feasible(p, *o.primal)) return false;
    if (dot(p.objective, *o.primal) != o.optimum) return false;
    if (o.dual->dim() != p.constraints.size()) return false;

    // Check in maximize form: for all feasible x,
    //   c.x = rc.x + sum_i y_i (a_i.x) <= sum_j cap_j + y.b
    // with the sign conditions making each bound exact.
    const bool maximize = p.sense == Sense::maximize;
    Rat bound = 0;
    RVec rc(p.nvars());
    for (std::size_t j = 0; j < p.nvars(); ++j)
        rc[j] = maximize ? p.objective[j] : Rat(-p.objective[j]);
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const Constraint& c = p.constraints[i];
        Rat y = maximize ? (*o.dual)[i] : Rat(-(*o.dual)[i]);
        if (c.rel == Rel::le && y < 0) return false;
        if (c.rel == Rel::ge && y > 0) return false;
        if (y == 0) continue;
        for (std::size_t j = 0; j < p.nvars(); ++j) rc[j] -= y * c.row[j];
        bound += y * c.rhs;
    }
    for (std::size_t j = 0; j < p.nvars(); ++j) {
        if (rc[j] == 0) continue;
        Bounds b = p.bounds_of(j);
        if (rc[j] > 0) {
            if (!b.upper) return false;
            bound += rc[j] * *b.upper;
        } else {
            if (!b.lower) return false;
            bound += rc[j] * *b.lower;
        }
    }
    Rat opt_max = maximize ? o.optimum : Rat(-o.optimum);
    return bound == opt_max;
}

bool verify_unbounded(const LPProblem& p, const LPOutcome& o) {
    if (!o.ray || !o.ray_origin || o.primal || o.farkas) return false;
    const RVec& d = *o.ray;
    if (d.dim() != p.nvars() || d.is_zero()) return false;
    if (!point_feasible(p, *o.ray_origin)) return false;
    for (const Constraint& c : p.constraints) {
        Rat v = dot(c.row, d);
        if (c.rel == Rel::le && !(v <= 0)) return false;
        if (c.rel == Rel::eq && !(v == 0)) return false;
        if (c.rel == Rel::ge && !(v >= 0)) return false;
    }
    for (std::size_t j = 0; j < p.nvars(); ++j) {
        Bounds b = p.bounds_of(j);
        if (b.lower && d[j] < 0) return false;
        if (b.upper && d[j] > 0) return false;
    }
    Rat gain = dot(p.objective, d);
    return p.sense == Sense::maximize ? gain > 0 : gain < 0;
}

bool verify_infeasible(const LPProblem& p, const LPOutcome& o) {
    if (!o.farkas || o.primal || o.ray) return false;
    if (o.farkas->dim() != p.constraints.size()) return false;
    // Orient every row as ">=" and aggregate; feasibility would force
    // r.x >= beta, impossible when the box supremum of r.x stays below beta.
    RVec r(p.nvars());
    Rat beta = 0;
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const Constraint& c = p.constraints[i];
        Rat mi = (*o.farkas)[i];
        if (c.rel != Rel::eq && mi < 0) return false;
        if (mi == 0) continue;
        Rat s = c.rel == Rel::le ? Rat(-mi) : mi;
        for (std::size_t j = 0; j < p.nvars(); ++j) r[j] += s * c.row[j];
        beta += s * c.rhs;
    }
    Rat sup = 0;
    for (std::size_t j = 0; j < p.nvars(); ++j) {
        if (r[j] == 0) continue;
        Bounds b = p.bounds_of(j);
        if (r[j] > 0) {
            if (!b.upper) return false;
            sup += r[j] * *b.upper;
        } else {
            if (!b.lower) return false;
            sup += r[j] * *b.lower;
        }
    }
    return sup < beta;
}

}  // namespace

bool verify_certificate(const LPProblem& p, const LPOutcome& o) {
    switch (o.status) {
        case LPStatus::optimal: return verify_optimal(p, o);
        case LPStatus::unbounded: return verify_unbounded(p, o);
        case LPStatus::infeasible: return verify_infeasible(p, o);
    }
    return false;
}

SolveStats solve_stats() {
    std::lock_guard<std::mutex> lock(g_stats_mutex);
    return g_stats;
}

void reset_solve_stats() {
    std::lock_guard<std::mutex> lock(g_stats_mutex);
    g_stats = SolveStats{};
}

}  // namespace ocs::lp
