#include "superspec/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace superspec {

RationalMatrix::RationalMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(size_t n)
{
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<Vector>& rows, size_t cols)
{
    if (!rows.empty())
        cols = rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("RationalMatrix::from_rows: ragged rows");
        for (size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Vector RationalMatrix::row_vector(size_t r) const
{
    auto s = row(r);
    return Vector(s.begin(), s.end());
}

Vector RationalMatrix::column(size_t c) const
{
    Vector v(rows_);
    for (size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix RationalMatrix::stacked(const RationalMatrix& below) const
{
    if (rows_ == 0)
        return below.rows_ == 0 ? RationalMatrix(0, cols_ != 0 ? cols_ : below.cols_) : below;
    if (below.rows_ == 0)
        return *this;
    if (below.cols_ != cols_)
        throw std::invalid_argument("RationalMatrix::stacked: column mismatch");
    RationalMatrix out = *this;
    out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
    out.rows_ += below.rows_;
    return out;
}

void RationalMatrix::append_row(std::span<const Rational> values)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = values.size();
    if (values.size() != cols_)
        throw std::invalid_argument("RationalMatrix::append_row: width mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Vector RationalMatrix::apply(std::span<const Rational> v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("RationalMatrix::apply: dimension mismatch");
    Vector out(rows_);
    for (size_t c = 0; c < cols_; ++c) {
        if (sgn(v[c]) == 0)
            continue;
        for (size_t r = 0; r < rows_; ++r) {
            const Rational& a = (*this)(r, c);
            if (sgn(a) != 0)
                out[r] += a * v[c];
        }
    }
    return out;
}

bool RationalMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (sgn(x) != 0)
            return false;
    return true;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("RationalMatrix::operator*: dimension mismatch");
    RationalMatrix out(rows_, rhs.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0)
                continue;
            for (size_t j = 0; j < rhs.cols_; ++j) {
                const Rational& b = rhs(k, j);
                if (sgn(b) != 0)
                    out(i, j) += a * b;
            }
        }
    return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("RationalMatrix::operator+: dimension mismatch");
    RationalMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += rhs.data_[i];
    return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("RationalMatrix::operator-: dimension mismatch");
    RationalMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i)
        out.data_[i] -= rhs.data_[i];
    return out;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s)
{
    for (auto& x : data_)
        x *= s;
    return *this;
}

namespace {

// Gauss-Jordan on `m`, mirroring every row operation onto `shadow` (if any).
std::vector<size_t> reduce_in_place(RationalMatrix& m, RationalMatrix* shadow)
{
    std::vector<size_t> pivots;
    size_t lead = 0;
    Rational factor;
    for (size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        size_t sel = lead;
        while (sel < m.rows() && sgn(m(sel, col)) == 0)
            ++sel;
        if (sel == m.rows())
            continue;
        if (sel != lead) {
            for (size_t c = 0; c < m.cols(); ++c)
                std::swap(m(sel, c), m(lead, c));
            if (shadow)
                for (size_t c = 0; c < shadow->cols(); ++c)
                    std::swap((*shadow)(sel, c), (*shadow)(lead, c));
        }
        Rational inv = 1 / m(lead, col);
        if (inv != 1) {
            for (size_t c = col; c < m.cols(); ++c)
                if (sgn(m(lead, c)) != 0)
                    m(lead, c) *= inv;
            if (shadow)
                for (size_t c = 0; c < shadow->cols(); ++c)
                    if (sgn((*shadow)(lead, c)) != 0)
                        (*shadow)(lead, c) *= inv;
        }
        for (size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || sgn(m(r, col)) == 0)
                continue;
            factor = m(r, col);
            for (size_t c = col; c < m.cols(); ++c)
                if (sgn(m(lead, c)) != 0)
                    m(r, c) -= factor * m(lead, c);
            if (shadow)
                for (size_t c = 0; c < shadow->cols(); ++c)
                    if (sgn((*shadow)(lead, c)) != 0)
                        (*shadow)(r, c) -= factor * (*shadow)(lead, c);
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

}  // namespace

RrefResult rref(RationalMatrix m)
{
    auto pivots = reduce_in_place(m, nullptr);
    return {std::move(m), std::move(pivots)};
}

RrefTransform rref_with_transform(const RationalMatrix& m)
{
    RationalMatrix work = m;
    RationalMatrix t = RationalMatrix::identity(m.rows());
    auto pivots = reduce_in_place(work, &t);
    return {{std::move(work), std::move(pivots)}, std::move(t)};
}

size_t rank(const RationalMatrix& m)
{
    return rref(m).pivots.size();
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    auto r = rref_with_transform(m);
    if (r.rref.pivots.size() != m.rows())
        return std::nullopt;
    return std::move(r.transform);
}

std::optional<Vector> solve(const RationalMatrix& a, std::span<const Rational> b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("solve: right-hand side has wrong length");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c)
            aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    auto red = rref(std::move(aug));
    if (!red.pivots.empty() && red.pivots.back() == a.cols())
        return std::nullopt;
    Vector x(a.cols());
    for (size_t i = 0; i < red.pivots.size(); ++i)
        x[red.pivots[i]] = red.reduced(i, a.cols());
    return x;
}

}  // namespace superspec
