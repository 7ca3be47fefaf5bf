#include "superspec/quotient.hpp"

#include <stdexcept>

namespace superspec {

QuotientPresentation::QuotientPresentation(Subspace numerator, Subspace denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator))
{
    if (numerator_.ambient_dim() != denominator_.ambient_dim())
        throw std::invalid_argument("quotient: ambient dimension mismatch");
    if (!numerator_.contains(denominator_))
        throw std::invalid_argument("quotient: denominator is not contained in numerator");

    const size_t n = numerator_.ambient_dim();
    EchelonBuilder echelon(n);
    for (size_t r = 0; r < denominator_.dim(); ++r)
        echelon.add(denominator_.basis().row(r));
    representatives_ = RationalMatrix(0, n);
    for (size_t r = 0; r < numerator_.dim(); ++r) {
        auto row = numerator_.basis().row(r);
        if (echelon.add(row))
            representatives_.append_row(row);
    }

    RationalMatrix full_basis = denominator_.basis().stacked(representatives_);
    if (full_basis.rows() == 0)
        return;
    auto rt = rref_with_transform(full_basis);
    pivots_ = std::move(rt.rref.pivots);
    transform_ = std::move(rt.transform);
}

Vector QuotientPresentation::project(std::span<const Rational> x) const
{
    if (x.size() != ambient_dim())
        throw std::invalid_argument("quotient projection: dimension mismatch");
    if (!numerator_.contains(x))
        throw std::domain_error("quotient projection: vector is not in the numerator subspace");
    const size_t k = denominator_.dim();
    Vector out(dim());
    for (size_t l = 0; l < pivots_.size(); ++l) {
        const Rational& xl = x[pivots_[l]];
        if (sgn(xl) == 0)
            continue;
        for (size_t i = 0; i < dim(); ++i) {
            const Rational& t = transform_(l, k + i);
            if (sgn(t) != 0)
                out[i] += xl * t;
        }
    }
    return out;
}

RationalMatrix induced_map(const RationalMatrix& f, const QuotientPresentation& src,
                           const QuotientPresentation& dst)
{
    if (f.cols() != src.ambient_dim() || f.rows() != dst.ambient_dim())
        throw std::invalid_argument("induced_map: matrix shape does not match the quotients");
    const auto& w = src.denominator();
    for (size_t r = 0; r < w.dim(); ++r)
        if (!dst.denominator().contains(f.apply(w.basis().row(r))))
            throw std::domain_error("induced_map: map does not send src denominator into dst denominator");
    RationalMatrix out(dst.dim(), src.dim());
    for (size_t j = 0; j < src.dim(); ++j) {
        Vector image = f.apply(src.representatives().row(j));
        if (!dst.numerator().contains(image))
            throw std::domain_error("induced_map: map does not send src numerator into dst numerator");
        Vector coords = dst.project(image);
        for (size_t i = 0; i < dst.dim(); ++i)
            out(i, j) = coords[i];
    }
    return out;
}

}  // namespace superspec
