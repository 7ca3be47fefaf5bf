#include "superspec/sheaf_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace superspec::cech {

ModuleShape SheafModel::shape() const
{
    return {m(), static_cast<int>(even_twists.size()), static_cast<int>(odd_twists.size())};
}

int SheafModel::generator_twist(int g) const
{
    const int n_even = static_cast<int>(even_twists.size());
    return g < n_even ? even_twists.at(static_cast<size_t>(g)) : odd_twists.at(static_cast<size_t>(g - n_even));
}

void SheafModel::check() const
{
    if (m() > 8)
        throw std::invalid_argument("SheafModel: at most 8 odd coordinates are supported");
    if (window < 1)
        throw std::invalid_argument("SheafModel: window must be at least 1");
    if (!transition)
        return;
    if (!(transition->shape() == shape()))
        throw std::invalid_argument("SheafModel: transition does not match the rank and odd dimension");
    if (!transition->is_even())
        throw std::invalid_argument("SheafModel: transition must preserve parity");
    if (!transition->in_filtration(2, 2))
        throw std::invalid_argument("SheafModel: transition must lie in Aut_(2)(2)");
}

SectionLayout::SectionLayout(const SheafModel& model, std::optional<int> window_override)
    : model_(model), window_(window_override.value_or(model.window))
{
    model_.window = window_;
    model_.check();
    const ModuleShape shape = model_.shape();
    GrassmannAlgebra grassmann(model_.m());
    for (int g = 0; g < shape.generators(); ++g)
        for (Mask mask : grassmann.basis()) {
            int twist = model_.generator_twist(g);
            for (int i = 0; i < model_.m(); ++i)
                if (mask & (Mask{1} << i))
                    twist += model_.twists.a[static_cast<size_t>(i)];
            components_.push_back({mask, g, shape.degree(mask, g), twist});
        }
    std::stable_sort(components_.begin(), components_.end(), [](const auto& l, const auto& r) {
        return std::tie(l.degree, l.generator, l.mask) < std::tie(r.degree, r.generator, r.mask);
    });
    for (size_t c = 0; c < components_.size(); ++c)
        component_lookup_[{components_[c].mask, components_[c].generator}] = c;

    windows_.assign(components_.size(), ComponentWindow{window_, window_, 0, 0});
    grow_windows();
    for (size_t c = 0; c < components_.size(); ++c) {
        auto& w = windows_[c];
        w.lo = std::min(0, components_[c].twist - w.u1_max);
        w.hi = std::max(w.u0_max, components_[c].twist);
    }

    for (size_t c = 0; c < components_.size(); ++c) {
        const auto& w = windows_[c];
        for (int e = 0; e <= w.u0_max; ++e)
            basis_[chart_slot(Chart::U0)].push_back({c, e});
        for (int j = 0; j <= w.u1_max; ++j)
            basis_[chart_slot(Chart::U1)].push_back({c, j});
        for (int e = w.lo; e <= w.hi; ++e)
            basis_[chart_slot(Chart::U01)].push_back({c, e});
    }
    for (size_t slot = 0; slot < 3; ++slot)
        for (size_t i = 0; i < basis_[slot].size(); ++i)
            index_[slot][{basis_[slot][i].component, basis_[slot][i].exponent}] = i;
}

void SectionLayout::grow_windows()
{
    if (!model_.transition || model_.transition->is_identity())
        return;
    const auto& a = *model_.transition;
    // corrections raise the degree, so visiting components by increasing degree
    // sees every window before it is used as a source
    for (size_t c = 0; c < components_.size(); ++c)
        for (int j = 0; j <= windows_[c].u1_max; ++j) {
            SuperSection s = restrict(Chart::U1, {c, j});
            SuperSection correction = a.apply(s) - s;
            for (size_t g = 0; g < correction.generators(); ++g)
                for (const auto& [mono, coeff] : correction.coefficient(static_cast<int>(g)).terms()) {
                    size_t target = component_lookup_.at({mono.mask, static_cast<int>(g)});
                    if (target <= c)
                        throw std::logic_error("SectionLayout: transition correction does not raise degree");
                    auto& w = windows_[target];
                    w.u0_max = std::max(w.u0_max, mono.exponent);
                    w.u1_max = std::max(w.u1_max, components_[target].twist - mono.exponent);
                }
        }
}

std::optional<size_t> SectionLayout::component_index(Mask mask, int generator) const
{
    auto it = component_lookup_.find({mask, generator});
    if (it == component_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<size_t> SectionLayout::index(Chart chart, size_t component, int exponent) const
{
    const auto& idx = index_[chart_slot(chart)];
    auto it = idx.find({component, exponent});
    if (it == idx.end())
        return std::nullopt;
    return it->second;
}

SuperSection SectionLayout::section(Chart chart, const SectionMonomial& mono) const
{
    const auto& comp = components_.at(mono.component);
    SuperSection s(chart, static_cast<size_t>(model_.shape().generators()));
    s.coefficient(comp.generator) = SuperFunction::monomial(mono.exponent, comp.mask);
    return s;
}

SuperSection SectionLayout::restrict(Chart chart, const SectionMonomial& mono) const
{
    const auto& comp = components_.at(mono.component);
    int exponent = chart == Chart::U1 ? comp.twist - mono.exponent : mono.exponent;
    SuperSection s(Chart::U01, static_cast<size_t>(model_.shape().generators()));
    s.coefficient(comp.generator) = SuperFunction::monomial(exponent, comp.mask);
    return s;
}

Vector SectionLayout::coordinates(Chart chart, const SuperSection& s) const
{
    Vector out(dim(chart));
    for (size_t g = 0; g < s.generators(); ++g)
        for (const auto& [mono, coeff] : s.coefficient(static_cast<int>(g)).terms()) {
            size_t c = component_lookup_.at({mono.mask, static_cast<int>(g)});
            auto i = index(chart, c, mono.exponent);
            if (!i)
                throw std::out_of_range("SectionLayout: term x^" + std::to_string(mono.exponent) + " of " +
                                        format(section(chart, {c, 0}), model_.shape()) + " lies outside the " +
                                        to_string(chart) + " window");
            out[*i] += coeff;
        }
    return out;
}

SuperSection SectionLayout::section(Chart chart, std::span<const Rational> coords) const
{
    if (coords.size() != dim(chart))
        throw std::invalid_argument("SectionLayout::section: coordinate vector has wrong length");
    SuperSection s(chart, static_cast<size_t>(model_.shape().generators()));
    const auto& b = basis(chart);
    for (size_t i = 0; i < coords.size(); ++i)
        if (sgn(coords[i]) != 0) {
            const auto& comp = components_[b[i].component];
            s.coefficient(comp.generator).add_term(b[i].exponent, comp.mask, coords[i]);
        }
    return s;
}

SectionSpace build_section_space(const SectionLayout& layout, Chart chart, int p)
{
    SectionSpace space{chart, p, {}, {}};
    const auto& basis = layout.basis(chart);
    for (size_t i = 0; i < basis.size(); ++i)
        if (layout.components()[basis[i].component].degree >= p) {
            space.indices.push_back(i);
            space.basis.push_back(basis[i]);
        }
    return space;
}

SectionSpace build_section_space(const SheafModel& model, Chart chart, int p, std::optional<int> window_override)
{
    return build_section_space(SectionLayout(model, window_override), chart, p);
}

GradedSheafData retract_graded(const SectionLayout& layout)
{
    GradedSheafData data;
    const ModuleShape shape = layout.model().shape();
    data.reduced_even_rank = static_cast<size_t>(shape.n_even);
    data.reduced_odd_rank = static_cast<size_t>(shape.n_odd);
    const std::array<Chart, 3> charts{Chart::U0, Chart::U1, Chart::U01};
    for (int p = 0; p <= layout.model().m() + 1; ++p) {
        GradedPiece piece;
        piece.p = p;
        piece.parity = p % 2;
        for (Chart chart : charts) {
            const size_t slot = static_cast<size_t>(chart);
            const size_t n = layout.dim(chart);
            auto upper = build_section_space(layout, chart, p);
            auto lower = build_section_space(layout, chart, p + 1);
            piece.sections[slot] = QuotientPresentation(Subspace::coordinate(n, upper.indices),
                                                        Subspace::coordinate(n, lower.indices));
            for (const auto& mono : layout.basis(chart)) {
                const auto& comp = layout.components()[mono.component];
                if (!shape.odd(comp.generator) && odd_degree(comp.mask) == p)
                    ++piece.even_part[slot];
                if (shape.odd(comp.generator) && odd_degree(comp.mask) == p - 1)
                    ++piece.odd_part[slot];
            }
        }
        data.pieces.push_back(std::move(piece));
    }
    return data;
}

GradedSheafData retract_graded(const SheafModel& model)
{
    return retract_graded(SectionLayout(model));
}

}  // namespace superspec::cech
