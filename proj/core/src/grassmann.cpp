#include "superspec/grassmann.hpp"

#include <sstream>
#include <stdexcept>

namespace superspec::cech {

int wedge_sign(Mask left, Mask right)
{
    if (left & right)
        return 0;
    // each generator of `right` moves past the generators of `left` with larger index
    int swaps = 0;
    for (Mask r = right; r != 0; r &= r - 1) {
        Mask bit = r & (~r + 1);
        swaps += std::popcount(left & ~(bit | (bit - 1)));
    }
    return (swaps % 2) ? -1 : 1;
}

GrassmannAlgebra::GrassmannAlgebra(int m) : m_(m)
{
    if (m < 0 || m > 16)
        throw std::invalid_argument("GrassmannAlgebra: number of odd generators must lie in [0, 16]");
}

std::vector<Mask> GrassmannAlgebra::basis(int degree) const
{
    std::vector<Mask> out;
    for (Mask mask = 0; mask <= full_mask(); ++mask) {
        if (degree < 0 || odd_degree(mask) == degree)
            out.push_back(mask);
        if (mask == full_mask())
            break;
    }
    return out;
}

SuperFunction SuperFunction::monomial(int exponent, Mask mask, const Rational& coeff)
{
    SuperFunction f;
    f.add_term(exponent, mask, coeff);
    return f;
}

Rational SuperFunction::coefficient(int exponent, Mask mask) const
{
    auto it = terms_.find({exponent, mask});
    return it == terms_.end() ? Rational(0) : it->second;
}

void SuperFunction::add_term(int exponent, Mask mask, const Rational& coeff)
{
    if (sgn(coeff) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace({exponent, mask}, coeff);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += coeff;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

SuperFunction SuperFunction::odd_degree_part(int degree) const
{
    SuperFunction out;
    for (const auto& [mono, c] : terms_)
        if (odd_degree(mono.mask) == degree)
            out.terms_.emplace(mono, c);
    return out;
}

int SuperFunction::min_odd_degree() const
{
    int best = kNoDegree;
    for (const auto& [mono, c] : terms_)
        best = std::min(best, odd_degree(mono.mask));
    return best;
}

int SuperFunction::parity() const
{
    int seen = -1;
    for (const auto& [mono, c] : terms_) {
        int p = odd_degree(mono.mask) % 2;
        if (seen == -1)
            seen = p;
        else if (seen != p)
            return -1;
    }
    return seen;
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& rhs)
{
    for (const auto& [mono, c] : rhs.terms_)
        add_term(mono.exponent, mono.mask, c);
    return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& rhs)
{
    for (const auto& [mono, c] : rhs.terms_)
        add_term(mono.exponent, mono.mask, -c);
    return *this;
}

SuperFunction& SuperFunction::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, c] : terms_)
        c *= s;
    return *this;
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b)
{
    SuperFunction out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int sign = wedge_sign(ma.mask, mb.mask);
            if (sign == 0)
                continue;
            Rational c = ca * cb;
            out.add_term(ma.exponent + mb.exponent, ma.mask | mb.mask, sign > 0 ? c : Rational(-c));
        }
    return out;
}

SuperFunction pow(const SuperFunction& f, unsigned k)
{
    SuperFunction result = SuperFunction::constant(1);
    SuperFunction base = f;
    while (k) {
        if (k & 1u)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

std::string ModuleShape::name(int g) const
{
    return odd(g) ? "f" + std::to_string(g - n_even + 1) : "e" + std::to_string(g + 1);
}

std::string to_string(Chart chart)
{
    switch (chart) {
    case Chart::U0:
        return "U0";
    case Chart::U1:
        return "U1";
    case Chart::U01:
        return "U01";
    }
    return "?";
}

SuperSection SuperSection::generator(Chart chart, size_t generators, int g)
{
    SuperSection s(chart, generators);
    s.coefficient(g) = SuperFunction::constant(1);
    return s;
}

bool SuperSection::is_zero() const
{
    for (const auto& c : coeffs_)
        if (!c.is_zero())
            return false;
    return true;
}

SuperSection SuperSection::degree_part(const ModuleShape& shape, int degree) const
{
    SuperSection out(chart_, coeffs_.size());
    for (size_t g = 0; g < coeffs_.size(); ++g) {
        int shift = shape.odd(static_cast<int>(g)) ? 1 : 0;
        if (degree - shift >= 0)
            out.coeffs_[g] = coeffs_[g].odd_degree_part(degree - shift);
    }
    return out;
}

int SuperSection::min_degree(const ModuleShape& shape) const
{
    int best = kNoDegree;
    for (size_t g = 0; g < coeffs_.size(); ++g) {
        int d = coeffs_[g].min_odd_degree();
        if (d != kNoDegree)
            best = std::min(best, d + (shape.odd(static_cast<int>(g)) ? 1 : 0));
    }
    return best;
}

bool SuperSection::homogeneous_parity(const ModuleShape& shape, int expected) const
{
    for (size_t g = 0; g < coeffs_.size(); ++g)
        for (const auto& [mono, c] : coeffs_[g].terms())
            if (shape.parity(mono.mask, static_cast<int>(g)) != expected)
                return false;
    return true;
}

SuperSection& SuperSection::operator+=(const SuperSection& rhs)
{
    if (rhs.coeffs_.size() != coeffs_.size())
        throw std::invalid_argument("SuperSection: generator count mismatch");
    for (size_t g = 0; g < coeffs_.size(); ++g)
        coeffs_[g] += rhs.coeffs_[g];
    return *this;
}

SuperSection& SuperSection::operator-=(const SuperSection& rhs)
{
    if (rhs.coeffs_.size() != coeffs_.size())
        throw std::invalid_argument("SuperSection: generator count mismatch");
    for (size_t g = 0; g < coeffs_.size(); ++g)
        coeffs_[g] -= rhs.coeffs_[g];
    return *this;
}

SuperSection& SuperSection::operator*=(const Rational& s)
{
    for (auto& c : coeffs_)
        c *= s;
    return *this;
}

SuperSection operator*(const SuperFunction& f, const SuperSection& s)
{
    SuperSection out(s.chart(), s.generators());
    for (size_t g = 0; g < s.generators(); ++g)
        out.coefficient(static_cast<int>(g)) = f * s.coefficient(static_cast<int>(g));
    return out;
}

namespace {

std::string monomial_body(const LaurentMonomial& mono)
{
    std::string body;
    auto append = [&](const std::string& factor) {
        if (!body.empty())
            body += "*";
        body += factor;
    };
    if (mono.exponent == 1)
        append("x");
    else if (mono.exponent != 0)
        append("x^" + std::to_string(mono.exponent));
    for (int i = 0; i < 32; ++i)
        if (mono.mask & (Mask{1} << i))
            append("xi" + std::to_string(i + 1));
    return body;
}

void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::string& body)
{
    Rational mag = abs(c);
    if (first)
        os << (sgn(c) < 0 ? "-" : "");
    else
        os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    if (body.empty()) {
        os << superspec::to_string(mag);
        return;
    }
    if (mag != 1)
        os << superspec::to_string(mag) << "*";
    os << body;
}

}  // namespace

std::string format(const SuperFunction& f)
{
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : f.terms())
        append_term(os, first, c, monomial_body(mono));
    return os.str();
}

std::string format(const SuperSection& s, const ModuleShape& shape)
{
    std::ostringstream os;
    bool first = true;
    for (size_t g = 0; g < s.generators(); ++g)
        for (const auto& [mono, c] : s.coefficient(static_cast<int>(g)).terms()) {
            std::string body = monomial_body(mono);
            body += (body.empty() ? "" : "*") + shape.name(static_cast<int>(g));
            append_term(os, first, c, body);
        }
    return first ? "0" : os.str();
}

}  // namespace superspec::cech
