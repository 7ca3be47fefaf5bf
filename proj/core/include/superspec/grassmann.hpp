#pragma once

#include "superspec/rational.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace superspec::cech {

/// Subset I ⊆ {1..m} of odd generators, bit i-1 set when ξ_i ∈ I.
using Mask = std::uint32_t;

inline int odd_degree(Mask mask) { return std::popcount(mask); }

/// Sign of ξ_I ξ_J rewritten as ±ξ_{I∪J}; 0 when I and J overlap.
int wedge_sign(Mask left, Mask right);

/// Exterior algebra on m odd generators: basis ξ_I indexed by I ⊆ {1..m}.
class GrassmannAlgebra {
public:
    explicit GrassmannAlgebra(int m);
    int generators() const { return m_; }
    size_t dim() const { return size_t{1} << m_; }
    Mask full_mask() const { return m_ == 0 ? 0 : (Mask{1} << m_) - 1; }
    /// Basis masks of J-degree `degree`, or all of them when degree < 0, in increasing order.
    std::vector<Mask> basis(int degree = -1) const;

private:
    int m_;
};

struct LaurentMonomial {
    int exponent = 0;   // power of the chart coordinate
    Mask mask = 0;      // odd part ξ_I
    auto operator<=>(const LaurentMonomial&) const = default;
};

/// Element of Q[x, x^-1] ⊗ Λ(ξ_1, ..., ξ_m): a finitely supported sum of
/// c · x^k ξ_I. Zero coefficients are never stored.
class SuperFunction {
public:
    SuperFunction() = default;
    static SuperFunction monomial(int exponent, Mask mask, const Rational& coeff = 1);
    static SuperFunction constant(const Rational& c) { return monomial(0, 0, c); }
    /// ξ_i with 1-based index i.
    static SuperFunction xi(int i) { return monomial(0, Mask{1} << (i - 1)); }
    static SuperFunction x(int power = 1) { return monomial(power, 0); }

    const std::map<LaurentMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(int exponent, Mask mask) const;
    void add_term(int exponent, Mask mask, const Rational& coeff);

    /// Terms with |I| = degree.
    SuperFunction odd_degree_part(int degree) const;
    /// Smallest |I| among the terms; a large sentinel for zero.
    int min_odd_degree() const;
    /// 0 or 1 when every term has the same parity |I| mod 2; -1 otherwise (or zero).
    int parity() const;

    SuperFunction& operator+=(const SuperFunction& rhs);
    SuperFunction& operator-=(const SuperFunction& rhs);
    SuperFunction& operator*=(const Rational& s);
    friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
    friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
    friend SuperFunction operator*(SuperFunction a, const Rational& s) { return a *= s; }
    friend SuperFunction operator*(const Rational& s, SuperFunction a) { return a *= s; }
    /// Supercommutative product with the exterior sign.
    friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
    SuperFunction operator-() const { return *this * Rational(-1); }

    bool operator==(const SuperFunction&) const = default;

private:
    std::map<LaurentMonomial, Rational> terms_;
};

SuperFunction pow(const SuperFunction& f, unsigned k);

/// Free module generators: e_1..e_p (even) then f_1..f_q (odd).
struct ModuleShape {
    int m = 0;
    int n_even = 0;
    int n_odd = 0;

    int generators() const { return n_even + n_odd; }
    bool odd(int g) const { return g >= n_even; }
    /// Z-degree of ξ_I g in the graded sheaf: |I| for even g, |I| + 1 for odd g.
    int degree(Mask mask, int g) const { return odd_degree(mask) + (odd(g) ? 1 : 0); }
    int parity(Mask mask, int g) const { return degree(mask, g) % 2; }
    std::string name(int g) const;
    bool operator==(const ModuleShape&) const = default;
};

enum class Chart { U0, U1, U01 };
std::string to_string(Chart chart);

/// Section of the free module: one coefficient function per generator,
/// written in the frame of `chart` (overlap sections use the U0 frame).
class SuperSection {
public:
    SuperSection() = default;
    SuperSection(Chart chart, size_t generators) : chart_(chart), coeffs_(generators) {}
    static SuperSection generator(Chart chart, size_t generators, int g);

    Chart chart() const { return chart_; }
    size_t generators() const { return coeffs_.size(); }
    const SuperFunction& coefficient(int g) const { return coeffs_.at(static_cast<size_t>(g)); }
    SuperFunction& coefficient(int g) { return coeffs_.at(static_cast<size_t>(g)); }
    bool is_zero() const;

    /// Terms of Z-degree exactly `degree`.
    SuperSection degree_part(const ModuleShape& shape, int degree) const;
    /// Smallest Z-degree among terms; a large sentinel for zero.
    int min_degree(const ModuleShape& shape) const;
    /// True when every term has parity `expected`.
    bool homogeneous_parity(const ModuleShape& shape, int expected) const;

    SuperSection& operator+=(const SuperSection& rhs);
    SuperSection& operator-=(const SuperSection& rhs);
    SuperSection& operator*=(const Rational& s);
    friend SuperSection operator+(SuperSection a, const SuperSection& b) { return a += b; }
    friend SuperSection operator-(SuperSection a, const SuperSection& b) { return a -= b; }
    friend SuperSection operator*(SuperSection a, const Rational& s) { return a *= s; }
    /// f · s (left multiplication by a function).
    friend SuperSection operator*(const SuperFunction& f, const SuperSection& s);

    bool operator==(const SuperSection&) const = default;

private:
    Chart chart_ = Chart::U01;
    std::vector<SuperFunction> coeffs_;
};

inline constexpr int kNoDegree = 1 << 20;

/// "3/2*x^-1*xi1*xi2 - xi1" style rendering; "0" for zero.
std::string format(const SuperFunction& f);
/// "x^-1*xi1*xi2*e1 + f1" style rendering; "0" for zero.
std::string format(const SuperSection& s, const ModuleShape& shape);

}  // namespace superspec::cech
