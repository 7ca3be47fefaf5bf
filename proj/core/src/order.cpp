#include "superspec/order.hpp"

#include "superspec/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace superspec::deform {

using cech::Chart;
using cech::Mask;

namespace {

// one matrix entry g -> ξ_I g' of a linear derivation, with its Laurent coefficient
struct Entry {
    int source = 0;
    int target = 0;
    Mask mask = 0;
    int bound = 0;   // U1-regular terms in the U0 frame have exponent <= bound
    int lo = 0;
    int hi = 0;
};

int total_twist(const cech::SheafModel& model, Mask mask, int g)
{
    int t = model.generator_twist(g);
    for (int i = 0; i < model.m(); ++i)
        if (mask & (Mask{1} << i))
            t += model.twists.a[static_cast<size_t>(i)];
    return t;
}

}  // namespace

std::optional<std::pair<QuasiDerivation, QuasiDerivation>> split_coboundary(const QuasiDerivation& mu,
                                                                            const cech::SheafModel& model)
{
    if (!mu.is_linear())
        throw std::invalid_argument("split_coboundary: only O-linear derivations are supported");
    const ModuleShape shape = mu.shape();
    const int n = shape.generators();

    // every entry ξ_I g' of every image, with the exponent range the unknowns need
    std::vector<Entry> entries;
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            std::map<Mask, std::pair<int, int>> ranges;
            for (const auto& [mono, c] : mu.images()[static_cast<size_t>(g)].coefficient(h).terms()) {
                auto [it, fresh] = ranges.try_emplace(mono.mask, mono.exponent, mono.exponent);
                it->second.first = std::min(it->second.first, mono.exponent);
                it->second.second = std::max(it->second.second, mono.exponent);
            }
            for (const auto& [mask, range] : ranges) {
                int bound = total_twist(model, mask, h) - model.generator_twist(g);
                entries.push_back({g, h, mask, bound, std::min({range.first, bound, 0}),
                                   std::max({range.second, bound, 0})});
            }
        }

    // unknowns: B0 coefficient at x^e (e >= 0) and B1 coefficient at x^e (e <= bound), per entry
    struct Unknown {
        size_t entry;
        int exponent;
        bool u1;
    };
    std::vector<Unknown> unknowns;
    std::vector<size_t> row_offset;
    size_t rows = 0;
    for (size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        row_offset.push_back(rows);
        rows += static_cast<size_t>(e.hi - e.lo + 1);
        for (int x = std::max(0, e.lo); x <= e.hi; ++x)
            unknowns.push_back({k, x, false});
        for (int x = e.lo; x <= std::min(e.bound, e.hi); ++x)
            unknowns.push_back({k, x, true});
    }
    RationalMatrix system(rows, unknowns.size());
    for (size_t u = 0; u < unknowns.size(); ++u) {
        const auto& e = entries[unknowns[u].entry];
        size_t r = row_offset[unknowns[u].entry] + static_cast<size_t>(unknowns[u].exponent - e.lo);
        system(r, u) = unknowns[u].u1 ? -1 : 1;
    }
    Vector rhs(rows);
    for (size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        for (int x = e.lo; x <= e.hi; ++x)
            rhs[row_offset[k] + static_cast<size_t>(x - e.lo)] =
                mu.images()[static_cast<size_t>(e.source)].coefficient(e.target).coefficient(x, e.mask);
    }
    auto solution = solve(system, rhs);
    if (!solution)
        return std::nullopt;

    std::vector<SuperSection> b0(static_cast<size_t>(n), SuperSection(Chart::U01, static_cast<size_t>(n)));
    std::vector<SuperSection> b1 = b0;
    for (size_t u = 0; u < unknowns.size(); ++u) {
        const auto& e = entries[unknowns[u].entry];
        auto& target = unknowns[u].u1 ? b1 : b0;
        target[static_cast<size_t>(e.source)].coefficient(e.target).add_term(unknowns[u].exponent, e.mask,
                                                                            (*solution)[u]);
    }
    return std::pair{QuasiDerivation::linear(shape, std::move(b0)), QuasiDerivation::linear(shape, std::move(b1))};
}

OrderResult order(const QuasiAutomorphism& a01, const cech::SheafModel& model)
{
    if (!a01.is_linear())
        throw std::invalid_argument("order: cocycles with a nontrivial Ψ part are not supported");
    if (!a01.in_filtration(2, 2))
        throw std::invalid_argument("order: cocycle must lie in Aut_(2)(2)");
    OrderResult result;
    result.normalized = a01;
    const int top = model.m() + 1;
    for (int j = 2; j <= top; j += 2) {
        OrderStage stage;
        stage.degree = j;
        stage.mu = mu(result.normalized, j);
        if (stage.mu.is_zero()) {
            result.stages.push_back(std::move(stage));
            continue;
        }
        auto gauge = split_coboundary(stage.mu, model);
        if (!gauge) {
            stage.obstructed = true;
            result.order = j;
            result.stages.push_back(std::move(stage));
            return result;
        }
        stage.gauge_u0 = gauge->first;
        stage.gauge_u1 = gauge->second;
        result.normalized = exp(gauge->first * Rational(-1)).compose(result.normalized).compose(exp(gauge->second));
        result.stages.push_back(std::move(stage));
        if (!result.normalized.in_filtration(j + 2, 2))
            throw std::logic_error("order: gauge step did not remove the degree " + std::to_string(j) + " part");
    }
    if (!result.normalized.is_identity())
        throw std::logic_error("order: normalization did not reach the identity");
    return result;
}

}  // namespace superspec::deform
