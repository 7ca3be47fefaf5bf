#include "superspec/subspace.hpp"

#include <stdexcept>

namespace superspec {

Subspace::Subspace(size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

Subspace Subspace::full(size_t ambient_dim)
{
    Subspace s(ambient_dim);
    s.basis_ = RationalMatrix::identity(ambient_dim);
    s.pivots_.resize(ambient_dim);
    for (size_t i = 0; i < ambient_dim; ++i)
        s.pivots_[i] = i;
    return s;
}

Subspace Subspace::span(const RationalMatrix& generators)
{
    Subspace s(generators.cols());
    auto red = rref(generators);
    RationalMatrix basis(red.pivots.size(), generators.cols());
    for (size_t r = 0; r < red.pivots.size(); ++r)
        for (size_t c = 0; c < generators.cols(); ++c)
            basis(r, c) = red.reduced(r, c);
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(red.pivots);
    return s;
}

Subspace Subspace::span(const std::vector<Vector>& generators, size_t ambient_dim)
{
    return span(RationalMatrix::from_rows(generators, ambient_dim));
}

Subspace Subspace::coordinate(size_t ambient_dim, std::span<const size_t> indices)
{
    RationalMatrix g(indices.size(), ambient_dim);
    for (size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= ambient_dim)
            throw std::out_of_range("Subspace::coordinate: index out of range");
        g(i, indices[i]) = 1;
    }
    return span(g);
}

Vector Subspace::reduce(std::span<const Rational> v) const
{
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace::reduce: dimension mismatch");
    Vector out(v.begin(), v.end());
    for (size_t i = 0; i < pivots_.size(); ++i) {
        Rational f = out[pivots_[i]];
        if (sgn(f) == 0)
            continue;
        auto row = basis_.row(i);
        for (size_t c = pivots_[i]; c < ambient_; ++c)
            if (sgn(row[c]) != 0)
                out[c] -= f * row[c];
    }
    return out;
}

bool Subspace::contains(std::span<const Rational> v) const
{
    return superspec::is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& other) const
{
    if (other.ambient_ != ambient_)
        throw std::invalid_argument("Subspace::contains: ambient dimension mismatch");
    if (other.dim() > dim())
        return false;
    for (size_t r = 0; r < other.dim(); ++r)
        if (!contains(other.basis_.row(r)))
            return false;
    return true;
}

Subspace kernel(const RationalMatrix& m)
{
    auto red = rref(m);
    const size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : red.pivots)
        is_pivot[p] = true;
    RationalMatrix gens(0, n);
    Vector v(n);
    for (size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        for (auto& x : v)
            x = 0;
        v[free] = 1;
        for (size_t i = 0; i < red.pivots.size(); ++i)
            v[red.pivots[i]] = -red.reduced(i, free);
        gens.append_row(v);
    }
    return Subspace::span(gens);
}

Subspace image(const RationalMatrix& m)
{
    return Subspace::span(m.transpose());
}

Subspace image(const RationalMatrix& m, const Subspace& s)
{
    if (s.ambient_dim() != m.cols())
        throw std::invalid_argument("image: dimension mismatch");
    if (s.dim() == 0)
        return Subspace(m.rows());
    // rows of (m * basis^T)^T = basis * m^T
    return Subspace::span(s.basis() * m.transpose());
}

Subspace annihilator(const Subspace& s)
{
    if (s.dim() == 0)
        return Subspace::full(s.ambient_dim());
    return kernel(s.basis());
}

Subspace preimage(const RationalMatrix& m, const Subspace& w)
{
    if (w.ambient_dim() != m.rows())
        throw std::invalid_argument("preimage: target subspace lives in the wrong ambient space");
    if (w.dim() == w.ambient_dim())
        return Subspace::full(m.cols());
    Subspace ann = annihilator(w);
    return kernel(ann.basis() * m);
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    if (a.dim() == 0 || b.dim() == 0)
        return Subspace(a.ambient_dim());
    if (a.contains(b))
        return b;
    if (b.contains(a))
        return a;
    return kernel(annihilator(a).basis().stacked(annihilator(b).basis()));
}

Subspace sum(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("sum: ambient dimension mismatch");
    if (b.dim() == 0)
        return a;
    if (a.dim() == 0)
        return b;
    return Subspace::span(a.basis().stacked(b.basis()));
}

Vector EchelonBuilder::reduced(std::span<const Rational> v) const
{
    if (v.size() != ambient_)
        throw std::invalid_argument("EchelonBuilder: dimension mismatch");
    Vector out(v.begin(), v.end());
    for (size_t i = 0; i < rows_.size(); ++i) {
        Rational f = out[leads_[i]];
        if (sgn(f) == 0)
            continue;
        const Vector& row = rows_[i];
        for (size_t c = leads_[i]; c < ambient_; ++c)
            if (sgn(row[c]) != 0)
                out[c] -= f * row[c];
    }
    return out;
}

bool EchelonBuilder::add(std::span<const Rational> v)
{
    Vector r = reduced(v);
    size_t lead = 0;
    while (lead < ambient_ && sgn(r[lead]) == 0)
        ++lead;
    if (lead == ambient_)
        return false;
    Rational inv = 1 / r[lead];
    for (auto& x : r)
        x *= inv;
    // keep earlier rows reduced in the new lead column so later reductions stay one pass
    for (auto& row : rows_) {
        Rational f = row[lead];
        if (sgn(f) == 0)
            continue;
        for (size_t c = lead; c < ambient_; ++c)
            if (sgn(r[c]) != 0)
                row[c] -= f * r[c];
    }
    rows_.push_back(std::move(r));
    leads_.push_back(lead);
    return true;
}

bool EchelonBuilder::spans(std::span<const Rational> v) const
{
    return superspec::is_zero(reduced(v));
}

}  // namespace superspec
