#pragma once

#include "ocs/cone.hpp"
#include "ocs/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ocs {

class space_error : public std::runtime_error {
  public:
    explicit space_error(const std::string& what) : std::runtime_error(what) {}
};

// p(x) = max_i |<row_i, x>|. Rows are canonicalized at construction: zero
// rows dropped, proportional rows merged keeping the dominating magnitude,
// signs normalized (a row and its negation induce the same seminorm).
class PolyhedralSeminorm {
  public:
    PolyhedralSeminorm(std::string name, std::vector<RVec> rows, std::size_t dim);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    const std::vector<RVec>& rows() const { return rows_; }

    Rat eval(const RVec& x) const;

  private:
    std::string name_;
    std::size_t dim_;
    std::vector<RVec> rows_;
};

// Linear functionals are plain dual vectors u with u(x) = <u, x>;
// positivity and the per-index norms are computed properties.
using Functional = RVec;

// Subspace spanned by independent basis rows.
class Subspace {
  public:
    explicit Subspace(RMat basis);
    const RMat& basis() const { return basis_; }
    std::size_t ambient_dim() const { return basis_.ncols(); }
    std::size_t dim() const { return basis_.nrows(); }

  private:
    RMat basis_;
};

// The triple (E, E+, {p_alpha}): a finite-dimensional space with a pointed
// polyhedral cone and a finite family of polyhedral seminorms whose stacked
// rows separate points.
class CalibratedSpace {
  public:
    static CalibratedSpace make(std::size_t dim, PolyCone cone,
                                std::vector<PolyhedralSeminorm> seminorms);

    // Quotient construction path: the induced wedge need not be strict, so
    // pointedness is not enforced here.
    static CalibratedSpace make_wedge(std::size_t dim, PolyCone cone,
                                      std::vector<PolyhedralSeminorm> seminorms);

    std::size_t dim() const { return dim_; }
    const PolyCone& cone() const { return cone_; }
    const std::vector<PolyhedralSeminorm>& seminorms() const { return seminorms_; }
    const PolyhedralSeminorm& seminorm(std::size_t alpha) const;
    std::size_t family_size() const { return seminorms_.size(); }

  private:
    CalibratedSpace(std::size_t dim, PolyCone cone, std::vector<PolyhedralSeminorm> seminorms)
        : dim_(dim), cone_(std::move(cone)), seminorms_(std::move(seminorms)) {}
    static void validate_common(std::size_t dim, const PolyCone& cone,
                                const std::vector<PolyhedralSeminorm>& seminorms);

    std::size_t dim_;
    PolyCone cone_;
    std::vector<PolyhedralSeminorm> seminorms_;
};

inline Rat eval_seminorm(const PolyhedralSeminorm& p, const RVec& x) { return p.eval(x); }

// |u|_alpha as the gauge of the dual ball K = conv{+-rows}; nullopt means
// infinite (u does not vanish on ker p_alpha).
std::optional<Rat> functional_norm(const CalibratedSpace& s, std::size_t alpha,
                                   const Functional& u);

// Multiplier form of the same gauge: u = sum (c+ - c-) rows with
// sum(c+ + c-) minimal. Needed wherever a membership witness has to be
// checked by direct arithmetic later.
struct GaugeDecomposition {
    Rat norm;
    std::vector<Rat> pos, neg;  // per seminorm row
};
std::optional<GaugeDecomposition> functional_gauge(const CalibratedSpace& s, std::size_t alpha,
                                                   const Functional& u);

struct IncreasingReport {
    bool increasing = false;
    // When false: 0 <= y <= x with p(y) > p(x), directly re-evaluated.
    std::optional<std::pair<RVec, RVec>> witness;  // (y, x)
};
IncreasingReport is_increasing(const CalibratedSpace& s, std::size_t alpha);

bool order_unit_check(const CalibratedSpace& s, const RVec& e);

// p_e(x) = inf{ lambda > 0 : -lambda e <= x <= lambda e }; requires e to be
// an order unit.
Rat order_seminorm(const CalibratedSpace& s, const RVec& e, const RVec& x);

// Rows of the order seminorm as a PolyhedralSeminorm (it is max-|linear|
// over the cone facets scaled by their value at e).
PolyhedralSeminorm order_seminorm_rows(const CalibratedSpace& s, const RVec& e,
                                       const std::string& name);

struct QuotientResult {
    RMat projection;         // maps E onto the quotient coordinates
    CalibratedSpace space;   // quotient space with the induced norm
};
// E / ker p_alpha with the induced norm; ||proj(x)|| = p_alpha(x) for all x
// by construction.
QuotientResult quotient(const CalibratedSpace& s, std::size_t alpha);

// Push a functional with finite |.|_alpha down to the quotient: the unique
// g with g(proj(x)) = u(x).
Functional quotient_functional(const QuotientResult& q, const Functional& u);

// Pointwise-maximum seminorm of the selected family members (union of the
// row sets). Never applied implicitly.
PolyhedralSeminorm saturate(const CalibratedSpace& s, const std::vector<std::size_t>& alphas,
                            const std::string& name);

// True when <u, g> >= 0 for every cone generator.
bool functional_positive(const CalibratedSpace& s, const Functional& u);

}  // namespace ocs
