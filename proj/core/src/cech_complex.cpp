#include "superspec/cech_complex.hpp"

#include <sstream>
#include <stdexcept>

namespace superspec::cech {

namespace {

SuperSection apply_transition(const SheafModel& model, const SuperSection& s)
{
    return model.transition ? model.transition->apply(s) : s;
}

}  // namespace

std::pair<SuperSection, SuperSection> CechComplex::split_cochain(std::span<const Rational> c0) const
{
    const size_t n0 = u0_dim();
    if (c0.size() != n0 + layout.dim(Chart::U1))
        throw std::invalid_argument("CechComplex: 0-cochain has wrong length");
    return {layout.section(Chart::U0, c0.subspan(0, n0)), layout.section(Chart::U1, c0.subspan(n0))};
}

Vector CechComplex::join_cochain(const SuperSection& s0, const SuperSection& s1) const
{
    Vector out = layout.coordinates(Chart::U0, s0);
    Vector second = layout.coordinates(Chart::U1, s1);
    out.insert(out.end(), second.begin(), second.end());
    return out;
}

CechComplex build_cech_complex(const SheafModel& model, std::optional<int> window_override)
{
    SectionLayout layout(model, window_override);
    const size_t n0 = layout.dim(Chart::U0);
    const size_t n1 = layout.dim(Chart::U1);
    const size_t n01 = layout.dim(Chart::U01);

    RationalMatrix d(n01, n0 + n1);
    for (size_t i = 0; i < n0; ++i) {
        Vector col = layout.coordinates(Chart::U01, layout.restrict(Chart::U0, layout.basis(Chart::U0)[i]));
        for (size_t r = 0; r < n01; ++r)
            d(r, i) = col[r];
    }
    for (size_t i = 0; i < n1; ++i) {
        SuperSection s = layout.restrict(Chart::U1, layout.basis(Chart::U1)[i]);
        Vector col = layout.coordinates(Chart::U01, apply_transition(layout.model(), s));
        for (size_t r = 0; r < n01; ++r)
            d(r, n0 + i) = -col[r];
    }

    std::vector<int> degree0, degree1;
    for (size_t i = 0; i < n0; ++i)
        degree0.push_back(layout.degree(Chart::U0, i));
    for (size_t i = 0; i < n1; ++i)
        degree0.push_back(layout.degree(Chart::U1, i));
    for (size_t i = 0; i < n01; ++i)
        degree1.push_back(layout.degree(Chart::U01, i));

    const int p_max = layout.model().m() + 2;
    auto level = [](const std::vector<int>& degrees, int p) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < degrees.size(); ++i)
            if (degrees[i] >= p)
                idx.push_back(i);
        return Subspace::coordinate(degrees.size(), idx);
    };
    std::vector<std::vector<Subspace>> filtration;
    for (int p = 0; p <= p_max; ++p)
        filtration.push_back({level(degree0, p), level(degree1, p)});

    std::vector<ParityVector> parity(2);
    for (int deg : degree0)
        parity[0].push_back(deg % 2);
    for (int deg : degree1)
        parity[1].push_back((deg + 1) % 2);

    FilteredComplex complex({n0 + n1, n01}, {std::move(d)}, std::move(filtration), std::move(parity));
    return {std::move(layout), std::move(complex)};
}

SuperSection twisted_differential(const SectionLayout& layout, const SuperSection& s0, const SuperSection& s1)
{
    SuperSection out(Chart::U01, static_cast<size_t>(layout.model().shape().generators()));
    SuperSection r1 = out;
    for (size_t i = 0; i < layout.dim(Chart::U0); ++i) {
        const auto& mono = layout.basis(Chart::U0)[i];
        const auto& comp = layout.components()[mono.component];
        Rational c = s0.coefficient(comp.generator).coefficient(mono.exponent, comp.mask);
        if (sgn(c) != 0)
            out += layout.restrict(Chart::U0, mono) * c;
    }
    for (size_t i = 0; i < layout.dim(Chart::U1); ++i) {
        const auto& mono = layout.basis(Chart::U1)[i];
        const auto& comp = layout.components()[mono.component];
        Rational c = s1.coefficient(comp.generator).coefficient(mono.exponent, comp.mask);
        if (sgn(c) != 0)
            r1 += layout.restrict(Chart::U1, mono) * c;
    }
    return out - apply_transition(layout.model(), r1);
}

Vector twisted_differential(const CechComplex& cc, std::span<const Rational> c0)
{
    auto [s0, s1] = cc.split_cochain(c0);
    return cc.layout.coordinates(Chart::U01, twisted_differential(cc.layout, s0, s1));
}

StabilityReport stabilization_check(const SheafModel& model, std::optional<int> window_override)
{
    StabilityReport report;
    report.window = window_override.value_or(model.window);
    SpectralSequence lower(build_cech_complex(model, report.window).complex);
    SpectralSequence upper(build_cech_complex(model, report.window + 1).complex);

    auto h_dims = [](const SpectralSequence& ss) {
        auto h = ss.cohomology();
        return std::vector<size_t>{h.dim(0), h.dim(1)};
    };
    report.cohomology_lower = h_dims(lower);
    report.cohomology_upper = h_dims(upper);

    std::ostringstream why;
    if (report.cohomology_lower != report.cohomology_upper)
        why << "dim H changes from (" << report.cohomology_lower[0] << ", " << report.cohomology_lower[1]
            << ") to (" << report.cohomology_upper[0] << ", " << report.cohomology_upper[1] << ")";
    else
        for (int r = 1; r <= lower.complex().p_max(); ++r)
            if (lower.page(r).dims() != upper.page(r).dims()) {
                why << "page E_" << r << " changes";
                break;
            }
    if (!why.str().empty()) {
        report.stable = false;
        report.message = "window unstable, increase N (N = " + std::to_string(report.window) + ": " +
                         why.str() + " at N + 1)";
    } else {
        report.message = "window stable at N = " + std::to_string(report.window);
    }
    return report;
}

}  // namespace superspec::cech
