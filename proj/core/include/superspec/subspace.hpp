#pragma once

#include "superspec/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace superspec {

/// A linear subspace of Q^n stored by its canonical RREF basis (one basis
/// vector per row). Equal subspaces have identical representations, so
/// equality is member-wise comparison.
class Subspace {
public:
    explicit Subspace(size_t ambient_dim = 0);

    static Subspace zero(size_t ambient_dim) { return Subspace(ambient_dim); }
    static Subspace full(size_t ambient_dim);
    /// Span of the rows of `generators` (any rank, any order).
    static Subspace span(const RationalMatrix& generators);
    static Subspace span(const std::vector<Vector>& generators, size_t ambient_dim);
    /// Span of the standard basis vectors e_i, i in `indices`.
    static Subspace coordinate(size_t ambient_dim, std::span<const size_t> indices);

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    const RationalMatrix& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    bool contains(std::span<const Rational> v) const;
    bool contains(const Subspace& other) const;
    /// v minus its reduction against the basis; zero iff v lies in the subspace.
    Vector reduce(std::span<const Rational> v) const;

    bool operator==(const Subspace& rhs) const = default;

private:
    size_t ambient_;
    RationalMatrix basis_;
    std::vector<size_t> pivots_;
};

/// {v | m v = 0}.
Subspace kernel(const RationalMatrix& m);
/// Column space of m.
Subspace image(const RationalMatrix& m);
/// m applied to every vector of s.
Subspace image(const RationalMatrix& m, const Subspace& s);
/// {v | m v in w}. Throws std::invalid_argument when w.ambient_dim() != m.rows().
Subspace preimage(const RationalMatrix& m, const Subspace& w);
/// Orthogonal complement with respect to the standard pairing.
Subspace annihilator(const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

/// Incremental row echelon basis; cheap independence tests while growing a span.
class EchelonBuilder {
public:
    explicit EchelonBuilder(size_t ambient_dim) : ambient_(ambient_dim) {}
    /// Adds v if it is independent of what is already present; returns whether it was.
    bool add(std::span<const Rational> v);
    bool spans(std::span<const Rational> v) const;
    size_t rank() const { return rows_.size(); }

private:
    Vector reduced(std::span<const Rational> v) const;

    size_t ambient_;
    std::vector<Vector> rows_;
    std::vector<size_t> leads_;
};

}  // namespace superspec
