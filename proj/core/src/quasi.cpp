#include "superspec/quasi.hpp"

#include <stdexcept>

namespace superspec::deform {

using cech::Chart;
using cech::kNoDegree;
using cech::Mask;

namespace {

void check_sizes(const ModuleShape& shape, const std::vector<SuperSection>& images,
                 const std::vector<SuperFunction>& fields, const char* who)
{
    if (images.size() != static_cast<size_t>(shape.generators()))
        throw std::invalid_argument(std::string(who) + ": one image per generator expected");
    for (const auto& s : images)
        if (s.generators() != static_cast<size_t>(shape.generators()))
            throw std::invalid_argument(std::string(who) + ": image has wrong generator count");
    if (fields.size() != static_cast<size_t>(shape.m))
        throw std::invalid_argument(std::string(who) + ": one odd coordinate image per ξ_i expected");
}

int section_raise(const ModuleShape& shape, const std::vector<SuperSection>& sections)
{
    int best = kNoDegree;
    for (size_t g = 0; g < sections.size(); ++g) {
        int d = sections[g].min_degree(shape);
        if (d != kNoDegree)
            best = std::min(best, d - shape.degree(0, static_cast<int>(g)));
    }
    return best;
}

int field_raise(const SuperFunction& fx, const std::vector<SuperFunction>& fxi)
{
    int best = fx.min_odd_degree();
    for (const auto& f : fxi) {
        int d = f.min_odd_degree();
        if (d != kNoDegree)
            best = std::min(best, d - 1);
    }
    return best;
}

bool raise_in_filtration(const Raise& r, const ModuleShape& shape, int p, int q)
{
    if (r.module < p || r.field < q)
        return false;
    // Γ acts on the coefficients of every section, so it must raise by p as well
    return shape.generators() == 0 || r.field >= p;
}

bool sections_even(const ModuleShape& shape, const std::vector<SuperSection>& images)
{
    for (size_t g = 0; g < images.size(); ++g)
        if (!images[g].homogeneous_parity(shape, shape.parity(0, static_cast<int>(g))))
            return false;
    return true;
}

bool fields_even(const SuperFunction& fx, const std::vector<SuperFunction>& fxi)
{
    if (fx.parity() == 1)
        return false;
    for (const auto& f : fxi)
        if (f.parity() == 0)
            return false;
    return true;
}

std::vector<SuperSection> generator_sections(const ModuleShape& shape)
{
    std::vector<SuperSection> out;
    for (int g = 0; g < shape.generators(); ++g)
        out.push_back(SuperSection::generator(Chart::U01, static_cast<size_t>(shape.generators()), g));
    return out;
}

std::vector<SuperFunction> odd_coordinates(const ModuleShape& shape)
{
    std::vector<SuperFunction> out;
    for (int i = 1; i <= shape.m; ++i)
        out.push_back(SuperFunction::xi(i));
    return out;
}

}  // namespace

QuasiDerivation::QuasiDerivation(ModuleShape shape, std::vector<SuperSection> images, SuperFunction field_x,
                                 std::vector<SuperFunction> field_xi)
    : shape_(shape), images_(std::move(images)), field_x_(std::move(field_x)), field_xi_(std::move(field_xi))
{
    check_sizes(shape_, images_, field_xi_, "QuasiDerivation");
}

QuasiDerivation QuasiDerivation::zero(const ModuleShape& shape)
{
    std::vector<SuperSection> images(static_cast<size_t>(shape.generators()),
                                     SuperSection(Chart::U01, static_cast<size_t>(shape.generators())));
    return {shape, std::move(images), {}, std::vector<SuperFunction>(static_cast<size_t>(shape.m))};
}

QuasiDerivation QuasiDerivation::linear(const ModuleShape& shape, std::vector<SuperSection> images)
{
    return {shape, std::move(images), {}, std::vector<SuperFunction>(static_cast<size_t>(shape.m))};
}

SuperFunction QuasiDerivation::apply(const SuperFunction& f) const
{
    SuperFunction out;
    for (const auto& [mono, c] : f.terms()) {
        SuperFunction odd_part = SuperFunction::monomial(0, mono.mask);
        if (mono.exponent != 0 && !field_x_.is_zero())
            out += SuperFunction::monomial(mono.exponent - 1, 0, c * mono.exponent) * field_x_ * odd_part;
        // Γ(ξ_i1 ... ξ_ir) = Σ_s ξ_i1 ... Γ(ξ_is) ... ξ_ir
        for (int s = 0; s < shape_.m; ++s) {
            Mask bit = Mask{1} << s;
            if (!(mono.mask & bit) || field_xi_[static_cast<size_t>(s)].is_zero())
                continue;
            Mask before = mono.mask & (bit - 1);
            Mask after = mono.mask & ~(bit | (bit - 1));
            out += SuperFunction::monomial(mono.exponent, before, c) * field_xi_[static_cast<size_t>(s)] *
                   SuperFunction::monomial(0, after);
        }
    }
    return out;
}

SuperSection QuasiDerivation::apply(const SuperSection& s) const
{
    if (s.generators() != static_cast<size_t>(shape_.generators()))
        throw std::invalid_argument("QuasiDerivation::apply: generator count mismatch");
    SuperSection out(s.chart(), s.generators());
    for (int g = 0; g < shape_.generators(); ++g) {
        const SuperFunction& h = s.coefficient(g);
        if (h.is_zero())
            continue;
        out.coefficient(g) += apply(h);
        out += h * images_[static_cast<size_t>(g)];
    }
    return out;
}

bool QuasiDerivation::is_zero() const
{
    for (const auto& s : images_)
        if (!s.is_zero())
            return false;
    return is_linear();
}

bool QuasiDerivation::is_linear() const
{
    if (!field_x_.is_zero())
        return false;
    for (const auto& f : field_xi_)
        if (!f.is_zero())
            return false;
    return true;
}

bool QuasiDerivation::is_even() const
{
    return sections_even(shape_, images_) && fields_even(field_x_, field_xi_);
}

Raise QuasiDerivation::raise() const
{
    return {section_raise(shape_, images_), field_raise(field_x_, field_xi_)};
}

bool QuasiDerivation::in_filtration(int p, int q) const
{
    return raise_in_filtration(raise(), shape_, p, q);
}

QuasiDerivation QuasiDerivation::homogeneous_component(int k) const
{
    std::vector<SuperSection> images;
    for (int g = 0; g < shape_.generators(); ++g)
        images.push_back(images_[static_cast<size_t>(g)].degree_part(shape_, shape_.degree(0, g) + k));
    std::vector<SuperFunction> fxi;
    for (const auto& f : field_xi_)
        fxi.push_back(f.odd_degree_part(k + 1));
    return {shape_, std::move(images), field_x_.odd_degree_part(k), std::move(fxi)};
}

QuasiDerivation& QuasiDerivation::operator+=(const QuasiDerivation& rhs)
{
    if (!(rhs.shape_ == shape_))
        throw std::invalid_argument("QuasiDerivation: shape mismatch");
    for (size_t g = 0; g < images_.size(); ++g)
        images_[g] += rhs.images_[g];
    field_x_ += rhs.field_x_;
    for (size_t i = 0; i < field_xi_.size(); ++i)
        field_xi_[i] += rhs.field_xi_[i];
    return *this;
}

QuasiDerivation& QuasiDerivation::operator*=(const Rational& s)
{
    for (auto& img : images_)
        img *= s;
    field_x_ *= s;
    for (auto& f : field_xi_)
        f *= s;
    return *this;
}

QuasiAutomorphism::QuasiAutomorphism(ModuleShape shape, std::vector<SuperSection> images, SuperFunction psi_x,
                                     std::vector<SuperFunction> psi_xi)
    : shape_(shape), images_(std::move(images)), psi_x_(std::move(psi_x)), psi_xi_(std::move(psi_xi))
{
    check_sizes(shape_, images_, psi_xi_, "QuasiAutomorphism");
    if (!(psi_x_ - SuperFunction::x()).odd_degree_part(0).is_zero())
        throw std::invalid_argument("QuasiAutomorphism: Ψ(x) must reduce to x modulo nilpotents");
}

QuasiAutomorphism QuasiAutomorphism::identity(const ModuleShape& shape)
{
    return linear(shape, generator_sections(shape));
}

QuasiAutomorphism QuasiAutomorphism::linear(const ModuleShape& shape, std::vector<SuperSection> images)
{
    return {shape, std::move(images), SuperFunction::x(), odd_coordinates(shape)};
}

SuperFunction QuasiAutomorphism::psi_x_power(int k) const
{
    if (k >= 0)
        return pow(psi_x_, static_cast<unsigned>(k));
    // Ψ(x) = x(1 + u) with u nilpotent, so Ψ(x)^-1 = x^-1 Σ_j (-u)^j
    SuperFunction minus_u = SuperFunction::x(-1) * (SuperFunction::x() - psi_x_);
    SuperFunction series = SuperFunction::constant(1);
    SuperFunction term = SuperFunction::constant(1);
    for (int j = 0; j < shape_.m; ++j) {
        term = term * minus_u;
        if (term.is_zero())
            break;
        series += term;
    }
    SuperFunction inv = SuperFunction::x(-1) * series;
    return pow(inv, static_cast<unsigned>(-k));
}

SuperFunction QuasiAutomorphism::apply(const SuperFunction& f) const
{
    SuperFunction out;
    std::map<int, SuperFunction> powers;
    for (const auto& [mono, c] : f.terms()) {
        auto it = powers.find(mono.exponent);
        if (it == powers.end())
            it = powers.emplace(mono.exponent, psi_x_power(mono.exponent)).first;
        SuperFunction term = it->second * c;
        for (int i = 0; i < shape_.m; ++i)
            if (mono.mask & (Mask{1} << i))
                term = term * psi_xi_[static_cast<size_t>(i)];
        out += term;
    }
    return out;
}

SuperSection QuasiAutomorphism::apply(const SuperSection& s) const
{
    if (s.generators() != static_cast<size_t>(shape_.generators()))
        throw std::invalid_argument("QuasiAutomorphism::apply: generator count mismatch");
    SuperSection out(s.chart(), s.generators());
    for (int g = 0; g < shape_.generators(); ++g) {
        const SuperFunction& h = s.coefficient(g);
        if (!h.is_zero())
            out += apply(h) * images_[static_cast<size_t>(g)];
    }
    return out;
}

bool QuasiAutomorphism::is_identity() const
{
    return *this == identity(shape_);
}

bool QuasiAutomorphism::is_linear() const
{
    return psi_x_ == SuperFunction::x() && psi_xi_ == odd_coordinates(shape_);
}

bool QuasiAutomorphism::is_even() const
{
    return sections_even(shape_, images_) && fields_even(psi_x_, psi_xi_);
}

Raise QuasiAutomorphism::raise() const
{
    std::vector<SuperSection> diff = images_;
    auto gens = generator_sections(shape_);
    for (size_t g = 0; g < diff.size(); ++g)
        diff[g] -= gens[g];
    std::vector<SuperFunction> dxi = psi_xi_;
    auto xis = odd_coordinates(shape_);
    for (size_t i = 0; i < dxi.size(); ++i)
        dxi[i] -= xis[i];
    return {section_raise(shape_, diff), field_raise(psi_x_ - SuperFunction::x(), dxi)};
}

bool QuasiAutomorphism::in_filtration(int p, int q) const
{
    return raise_in_filtration(raise(), shape_, p, q);
}

QuasiAutomorphism QuasiAutomorphism::compose(const QuasiAutomorphism& inner) const
{
    if (!(inner.shape_ == shape_))
        throw std::invalid_argument("QuasiAutomorphism::compose: shape mismatch");
    std::vector<SuperSection> images;
    for (const auto& img : inner.images_)
        images.push_back(apply(img));
    std::vector<SuperFunction> xi;
    for (const auto& f : inner.psi_xi_)
        xi.push_back(apply(f));
    return {shape_, std::move(images), apply(inner.psi_x_), std::move(xi)};
}

QuasiAutomorphism QuasiAutomorphism::inverse() const
{
    return exp(log(*this) * Rational(-1));
}

namespace {

void require_nilpotent(bool even, bool filtered, const char* who)
{
    if (!even)
        throw std::invalid_argument(std::string(who) + ": input must be even");
    if (!filtered)
        throw std::invalid_argument(std::string(who) + ": input must raise degree by at least 2");
}

// the series stop after at most (top degree)/2 + 1 steps; past that the input was not nilpotent
int series_bound(const ModuleShape& shape)
{
    return shape.m + 3;
}

}  // namespace

QuasiAutomorphism exp(const QuasiDerivation& a)
{
    require_nilpotent(a.is_even(), a.in_filtration(2, 2), "exp");
    const ModuleShape& shape = a.shape();
    const int bound = series_bound(shape);

    auto exp_section = [&](SuperSection s) {
        SuperSection sum = s;
        for (int j = 1; j <= bound && !s.is_zero(); ++j) {
            s = a.apply(s) * Rational(1, j);
            sum += s;
        }
        if (!s.is_zero())
            throw std::logic_error("exp: series did not terminate");
        return sum;
    };
    auto exp_function = [&](SuperFunction f) {
        SuperFunction sum = f;
        for (int j = 1; j <= bound && !f.is_zero(); ++j) {
            f = a.apply(f) * Rational(1, j);
            sum += f;
        }
        if (!f.is_zero())
            throw std::logic_error("exp: series did not terminate");
        return sum;
    };

    std::vector<SuperSection> images;
    for (const auto& g : generator_sections(shape))
        images.push_back(exp_section(g));
    std::vector<SuperFunction> xi;
    for (const auto& f : odd_coordinates(shape))
        xi.push_back(exp_function(f));
    return {shape, std::move(images), exp_function(SuperFunction::x()), std::move(xi)};
}

QuasiDerivation log(const QuasiAutomorphism& a)
{
    require_nilpotent(a.is_even(), a.in_filtration(2, 2), "log");
    const ModuleShape& shape = a.shape();
    const int bound = series_bound(shape);

    // log(a) = Σ_{j≥1} (-1)^(j+1) (a - id)^j / j
    auto log_section = [&](const SuperSection& s) {
        SuperSection sum(s.chart(), s.generators());
        SuperSection power = s;
        for (int j = 1; j <= bound; ++j) {
            power = a.apply(power) - power;
            if (power.is_zero())
                return sum;
            sum += power * Rational(j % 2 ? 1 : -1, j);
        }
        throw std::logic_error("log: series did not terminate");
    };
    auto log_function = [&](const SuperFunction& f) {
        SuperFunction sum;
        SuperFunction power = f;
        for (int j = 1; j <= bound; ++j) {
            power = a.apply(power) - power;
            if (power.is_zero())
                return sum;
            sum += power * Rational(j % 2 ? 1 : -1, j);
        }
        throw std::logic_error("log: series did not terminate");
    };

    std::vector<SuperSection> images;
    for (const auto& g : generator_sections(shape))
        images.push_back(log_section(g));
    std::vector<SuperFunction> xi;
    for (const auto& f : odd_coordinates(shape))
        xi.push_back(log_function(f));
    return {shape, std::move(images), log_function(SuperFunction::x()), std::move(xi)};
}

QuasiDerivation mu(const QuasiAutomorphism& a, int k)
{
    if (k < 2)
        throw std::invalid_argument("mu: degree must be at least 2");
    if (!a.in_filtration(k, 2))
        throw std::invalid_argument("mu: automorphism has a nonzero component of degree below " +
                                    std::to_string(k));
    QuasiDerivation full = log(a);
    const int top = a.shape().m + 1;
    for (int d = 1; d <= top; d += 2)
        if (!full.homogeneous_component(d).is_zero())
            throw std::logic_error("mu: log has a nonzero component of odd degree " + std::to_string(d));
    return full.homogeneous_component(k);
}

}  // namespace superspec::deform
