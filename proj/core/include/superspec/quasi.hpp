#pragma once

#include "superspec/grassmann.hpp"

#include <vector>

namespace superspec::deform {

using cech::ModuleShape;
using cech::SuperFunction;
using cech::SuperSection;

/// Least raise of Z-degree over a set of sections; cech::kNoDegree when all vanish.
struct Raise {
    int module = cech::kNoDegree;
    int field = cech::kNoDegree;
};

/// Even quasi-derivation (A, Γ) of a free module over the overlap: A is fixed by
/// its values on the generators, Γ by Γ(x) and Γ(ξ_i), and
/// A(h·s) = Γ(h)·s + h·A(s).
class QuasiDerivation {
public:
    QuasiDerivation() = default;
    QuasiDerivation(ModuleShape shape, std::vector<SuperSection> images, SuperFunction field_x,
                    std::vector<SuperFunction> field_xi);
    static QuasiDerivation zero(const ModuleShape& shape);
    /// O-linear derivation (Γ = 0).
    static QuasiDerivation linear(const ModuleShape& shape, std::vector<SuperSection> images);

    const ModuleShape& shape() const { return shape_; }
    const std::vector<SuperSection>& images() const { return images_; }
    const SuperFunction& field_x() const { return field_x_; }
    const std::vector<SuperFunction>& field_xi() const { return field_xi_; }

    SuperFunction apply(const SuperFunction& f) const;
    SuperSection apply(const SuperSection& s) const;

    bool is_zero() const;
    bool is_linear() const;
    bool is_even() const;
    Raise raise() const;
    /// A(E_(r)) ⊆ E_(r+p) and Γ(J^s) ⊆ J^(s+q).
    bool in_filtration(int p, int q) const;
    /// Part raising Z-degree by exactly k.
    QuasiDerivation homogeneous_component(int k) const;

    QuasiDerivation& operator+=(const QuasiDerivation& rhs);
    QuasiDerivation& operator*=(const Rational& s);
    friend QuasiDerivation operator+(QuasiDerivation a, const QuasiDerivation& b) { return a += b; }
    friend QuasiDerivation operator*(QuasiDerivation a, const Rational& s) { return a *= s; }
    friend QuasiDerivation operator-(const QuasiDerivation& a, const QuasiDerivation& b)
    {
        return a + b * Rational(-1);
    }
    bool operator==(const QuasiDerivation&) const = default;

private:
    ModuleShape shape_;
    std::vector<SuperSection> images_;
    SuperFunction field_x_;
    std::vector<SuperFunction> field_xi_;
};

/// Even quasi-automorphism (Φ, Ψ) on the overlap: Φ(h·s) = Ψ(h)·Φ(s).
/// Ψ(x) - x must have no part of J-degree 0.
class QuasiAutomorphism {
public:
    QuasiAutomorphism() = default;
    QuasiAutomorphism(ModuleShape shape, std::vector<SuperSection> images, SuperFunction psi_x,
                      std::vector<SuperFunction> psi_xi);
    static QuasiAutomorphism identity(const ModuleShape& shape);
    /// O-linear automorphism (Ψ = id).
    static QuasiAutomorphism linear(const ModuleShape& shape, std::vector<SuperSection> images);

    const ModuleShape& shape() const { return shape_; }
    const std::vector<SuperSection>& images() const { return images_; }
    const SuperFunction& psi_x() const { return psi_x_; }
    const std::vector<SuperFunction>& psi_xi() const { return psi_xi_; }

    SuperFunction apply(const SuperFunction& f) const;
    SuperSection apply(const SuperSection& s) const;

    bool is_identity() const;
    bool is_linear() const;
    bool is_even() const;
    /// Raise of Φ - id and Ψ - id.
    Raise raise() const;
    bool in_filtration(int p, int q) const;

    /// this ∘ inner.
    QuasiAutomorphism compose(const QuasiAutomorphism& inner) const;
    QuasiAutomorphism inverse() const;
    bool operator==(const QuasiAutomorphism&) const = default;

private:
    SuperFunction psi_x_power(int k) const;

    ModuleShape shape_;
    std::vector<SuperSection> images_;
    SuperFunction psi_x_;
    std::vector<SuperFunction> psi_xi_;
};

/// Both throw std::invalid_argument unless the input is even and in the
/// (2,2) filtration level, which makes the series finite.
QuasiAutomorphism exp(const QuasiDerivation& a);
QuasiDerivation log(const QuasiAutomorphism& a);

/// Degree-k component of log(a) for a in Aut_(k)(2). Throws std::invalid_argument
/// when a has a nonzero component of degree below k and std::logic_error when
/// log(a) has a nonzero component of odd degree.
QuasiDerivation mu(const QuasiAutomorphism& a, int k);

}  // namespace superspec::deform
