#pragma once

#include "superspec/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace superspec {

/// Dense row-major matrix of exact rationals. Matrices act on column vectors,
/// so a map C^a -> C^b is a b x a matrix.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(size_t rows, size_t cols);

    static RationalMatrix identity(size_t n);
    /// All rows must have the same length; `cols` fixes the width when `rows` is empty.
    static RationalMatrix from_rows(const std::vector<Vector>& rows, size_t cols = 0);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rational& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    std::span<Rational> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Rational> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(size_t r) const;
    Vector column(size_t c) const;

    RationalMatrix transpose() const;
    /// Rows of `*this` followed by rows of `below`; column counts must agree.
    RationalMatrix stacked(const RationalMatrix& below) const;
    void append_row(std::span<const Rational> values);

    Vector apply(std::span<const Rational> v) const;
    bool is_zero() const;

    RationalMatrix operator*(const RationalMatrix& rhs) const;
    RationalMatrix operator+(const RationalMatrix& rhs) const;
    RationalMatrix operator-(const RationalMatrix& rhs) const;
    RationalMatrix& operator*=(const Rational& s);

    bool operator==(const RationalMatrix& rhs) const = default;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RrefResult {
    RationalMatrix reduced;       // canonical RREF, zero rows kept at the bottom
    std::vector<size_t> pivots;   // pivot column of each nonzero row
};

/// Canonical reduced row echelon form (pivots 1, pivot columns otherwise zero).
RrefResult rref(RationalMatrix m);

/// RREF of `m` together with T such that T * m equals the RREF.
struct RrefTransform {
    RrefResult rref;
    RationalMatrix transform;
};
RrefTransform rref_with_transform(const RationalMatrix& m);

size_t rank(const RationalMatrix& m);

/// Exact inverse, or nullopt for singular (or non-square) input.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Some x with a * x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const RationalMatrix& a, std::span<const Rational> b);

}  // namespace superspec
