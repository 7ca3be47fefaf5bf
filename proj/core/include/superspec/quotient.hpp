#pragma once

#include "superspec/subspace.hpp"

namespace superspec {

/// Presentation of v / w for subspaces w ⊆ v of a common ambient space.
///
/// Representatives are the rows of v's RREF basis that are not already
/// spanned by w together with the previously chosen rows (greedy pivot
/// completion), so the basis of the quotient is deterministic.
class QuotientPresentation {
public:
    QuotientPresentation() = default;
    /// Throws std::invalid_argument when w is not contained in v.
    QuotientPresentation(Subspace numerator, Subspace denominator);

    const Subspace& numerator() const { return numerator_; }
    const Subspace& denominator() const { return denominator_; }
    size_t dim() const { return representatives_.rows(); }
    size_t ambient_dim() const { return numerator_.ambient_dim(); }

    /// Row i is a vector of v whose class is the i-th quotient basis vector.
    const RationalMatrix& representatives() const { return representatives_; }

    /// Coordinates of the class of x in the quotient basis. Throws
    /// std::domain_error when x is not in v.
    Vector project(std::span<const Rational> x) const;

    bool operator==(const QuotientPresentation& rhs) const
    {
        return numerator_ == rhs.numerator_ && denominator_ == rhs.denominator_;
    }

private:
    Subspace numerator_;
    Subspace denominator_;
    RationalMatrix representatives_;
    // x = c * [w basis; representatives] is solved as c = x[pivots] * transform_.
    std::vector<size_t> pivots_;
    RationalMatrix transform_;
};

/// Matrix (dst.dim() x src.dim()) of the map induced by f on the quotients.
/// Throws std::domain_error when f does not send src.v into dst.v and src.w
/// into dst.w.
RationalMatrix induced_map(const RationalMatrix& f, const QuotientPresentation& src,
                           const QuotientPresentation& dst);

}  // namespace superspec
