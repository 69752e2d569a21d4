#include "ocs/linalg.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <sstream>

namespace ocs {

namespace {

Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    Int r = (a / g) * b;
    return r < 0 ? Int(-r) : r;
}

// Pivot weight per the elimination heuristic: |num|·den of the candidate.
Int pivot_weight(const Rat& r) {
    Int n = numerator(r);
    if (n < 0) n = -n;
    return n * denominator(r);
}

}  // namespace

bool RVec::is_zero() const {
    for (const Rat& e : entries_)
        if (e != 0) return false;
    return true;
}

RVec RVec::operator+(const RVec& o) const {
    if (dim() != o.dim()) throw dimension_error("RVec+: dim mismatch");
    RVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = entries_[i] + o[i];
    return r;
}

RVec RVec::operator-(const RVec& o) const {
    if (dim() != o.dim()) throw dimension_error("RVec-: dim mismatch");
    RVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = entries_[i] - o[i];
    return r;
}

RVec RVec::operator-() const {
    RVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = -entries_[i];
    return r;
}

RVec RVec::operator*(const Rat& s) const {
    RVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = entries_[i] * s;
    return r;
}

RVec RVec::primitive(bool sign_normalize) const {
    Int den_lcm = 1;
    for (const Rat& e : entries_) den_lcm = lcm(den_lcm == 0 ? Int(1) : den_lcm, denominator(e));
    Int num_gcd = 0;
    std::vector<Int> scaled(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        scaled[i] = numerator(entries_[i]) * (den_lcm / denominator(entries_[i]));
        num_gcd = gcd(num_gcd, scaled[i]);
    }
    if (num_gcd == 0) return RVec(dim());
    int lead = 0;
    if (sign_normalize) {
        for (const Int& s : scaled) {
            if (s != 0) {
                lead = s < 0 ? -1 : 1;
                break;
            }
        }
    }
    if (lead < 0) num_gcd = -num_gcd;
    RVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = Rat(scaled[i] / num_gcd);
    return r;
}

std::string RVec::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) os << ", ";
        os << entries_[i];
    }
    os << ")";
    return os.str();
}

Rat dot(const RVec& a, const RVec& b) {
    if (a.dim() != b.dim()) throw dimension_error("dot: dim mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

RMat::RMat(std::initializer_list<RVec> rows) {
    for (const RVec& r : rows) append_row(r);
}

RMat::RMat(std::vector<RVec> rows, std::size_t ncols) : ncols_(ncols) {
    for (RVec& r : rows) {
        if (r.dim() != ncols_) throw dimension_error("RMat: ragged rows");
        rows_.push_back(std::move(r));
    }
}

void RMat::append_row(const RVec& r) {
    if (rows_.empty())
        ncols_ = r.dim();
    else if (r.dim() != ncols_)
        throw dimension_error("RMat: ragged rows");
    rows_.push_back(r);
}

RVec RMat::mul(const RVec& x) const {
    if (x.dim() != ncols_) throw dimension_error("RMat::mul: dim mismatch");
    RVec out(nrows());
    for (std::size_t i = 0; i < nrows(); ++i) out[i] = dot(rows_[i], x);
    return out;
}

RMat RMat::transposed() const {
    RMat t(ncols_, nrows());
    for (std::size_t i = 0; i < nrows(); ++i)
        for (std::size_t j = 0; j < ncols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::string RMat::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < nrows(); ++i) os << rows_[i].str() << "\n";
    return os.str();
}

namespace {

// Row echelon form via exact Gauss-Jordan. Returns pivot column per pivot
// row; `work` is reduced in place and carries `extra` alongside (for the
// augmented column of solve_linear).
std::vector<std::size_t> reduce(RMat& work, RVec* extra) {
    std::vector<std::size_t> pivot_cols;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < work.ncols() && prow < work.nrows(); ++col) {
        std::size_t best = work.nrows();
        Int best_w = 0;
        for (std::size_t i = prow; i < work.nrows(); ++i) {
            if (work.at(i, col) == 0) continue;
            Int w = pivot_weight(work.at(i, col));
            if (best == work.nrows() || w > best_w) {
                best = i;
                best_w = w;
            }
        }
        if (best == work.nrows()) continue;
        std::swap(work.row(prow), work.row(best));
        if (extra) std::swap((*extra)[prow], (*extra)[best]);
        Rat inv = Rat(1) / work.at(prow, col);
        work.row(prow) = work.row(prow) * inv;
        if (extra) (*extra)[prow] *= inv;
        for (std::size_t i = 0; i < work.nrows(); ++i) {
            if (i == prow || work.at(i, col) == 0) continue;
            Rat factor = work.at(i, col);
            work.row(i) = work.row(i) - work.row(prow) * factor;
            if (extra) (*extra)[i] -= (*extra)[prow] * factor;
        }
        pivot_cols.push_back(col);
        ++prow;
    }
    return pivot_cols;
}

}  // namespace

std::optional<RVec> solve_linear(const RMat& A, const RVec& b) {
    if (b.dim() != A.nrows()) throw dimension_error("solve_linear: rhs dim mismatch");
    RMat work = A;
    RVec rhs = b;
    std::vector<std::size_t> pivots = reduce(work, &rhs);
    // Inconsistency: a zero row with nonzero rhs.
    for (std::size_t i = pivots.size(); i < work.nrows(); ++i)
        if (rhs[i] != 0) return std::nullopt;
    RVec x(A.ncols());
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = rhs[k];
    return x;
}

RMat null_space(const RMat& A) {
    RMat work = A;
    std::vector<std::size_t> pivots = reduce(work, nullptr);
    std::vector<bool> is_pivot(A.ncols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    RMat basis(0, A.ncols());
    for (std::size_t free_col = 0; free_col < A.ncols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        RVec v(A.ncols());
        v[free_col] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -work.at(k, free_col);
        basis.append_row(v.primitive());
    }
    return basis;
}

std::size_t rank(const RMat& A) {
    RMat work = A;
    return reduce(work, nullptr).size();
}

}  // namespace ocs
