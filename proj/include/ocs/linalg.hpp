#pragma once

#include "ocs/rational.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace ocs {

class dimension_error : public std::logic_error {
  public:
    explicit dimension_error(const std::string& what) : std::logic_error(what) {}
};

// Dense rational vector. Immutable dimension, value semantics.
class RVec {
  public:
    RVec() = default;
    explicit RVec(std::size_t dim) : entries_(dim) {}
    RVec(std::initializer_list<Rat> init) : entries_(init) {}
    explicit RVec(std::vector<Rat> entries) : entries_(std::move(entries)) {}

    std::size_t dim() const { return entries_.size(); }
    const Rat& operator[](std::size_t i) const { return entries_[i]; }
    Rat& operator[](std::size_t i) { return entries_[i]; }

    bool operator==(const RVec& o) const = default;

    bool is_zero() const;
    RVec operator+(const RVec& o) const;
    RVec operator-(const RVec& o) const;
    RVec operator-() const;
    RVec operator*(const Rat& s) const;

    // Scales to pairwise-coprime integer entries with a positive leading
    // nonzero entry when sign_normalize is set. Zero vector stays zero.
    RVec primitive(bool sign_normalize = false) const;

    std::string str() const;

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

  private:
    std::vector<Rat> entries_;
};

Rat dot(const RVec& a, const RVec& b);

// Row-major rational matrix; rows share a common column count.
class RMat {
  public:
    RMat() = default;
    RMat(std::size_t nrows, std::size_t ncols)
        : rows_(nrows, RVec(ncols)), ncols_(ncols) {}
    RMat(std::initializer_list<RVec> rows);
    RMat(std::vector<RVec> rows, std::size_t ncols);

    std::size_t nrows() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }
    const RVec& row(std::size_t i) const { return rows_[i]; }
    RVec& row(std::size_t i) { return rows_[i]; }
    const Rat& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    Rat& at(std::size_t i, std::size_t j) { return rows_[i][j]; }

    void append_row(const RVec& r);
    RVec mul(const RVec& x) const;  // A·x
    RMat transposed() const;

    bool operator==(const RMat& o) const = default;

    std::string str() const;

  private:
    std::vector<RVec> rows_;
    std::size_t ncols_ = 0;
};

// Exact solution of A·x = b, or nullopt when the system is inconsistent.
// Underdetermined systems return one particular solution.
std::optional<RVec> solve_linear(const RMat& A, const RVec& b);

// Basis of {x : A·x = 0}, one basis vector per row; 0 rows when trivial.
RMat null_space(const RMat& A);

// Exact rank over the rationals.
std::size_t rank(const RMat& A);

}  // namespace ocs
