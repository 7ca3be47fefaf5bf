#include "doctest.h"
#include "generators.hpp"

#include "superspec/quasi.hpp"

#include <random>

using namespace superspec;
using namespace superspec::cech;
using namespace superspec::deform;

namespace {

const ModuleShape kRank11{2, 1, 1};

SuperSection section(size_t g, int gen, const SuperFunction& f)
{
    SuperSection s(Chart::U01, g);
    s.coefficient(gen) = f;
    return s;
}

// A(e) = ξ1ξ2 e, A(f) = 0
QuasiDerivation top_on_e()
{
    return QuasiDerivation::linear(kRank11, {section(2, 0, SuperFunction::monomial(0, 3)), SuperSection(Chart::U01, 2)});
}

// all monomial sections x^k ξ_I g with |k| <= range
std::vector<SuperSection> monomial_sections(const ModuleShape& shape, int range)
{
    std::vector<SuperSection> out;
    GrassmannAlgebra alg(shape.m);
    for (int g = 0; g < shape.generators(); ++g)
        for (Mask mask : alg.basis())
            for (int k = -range; k <= range; ++k)
                out.push_back(section(static_cast<size_t>(shape.generators()), g, SuperFunction::monomial(k, mask)));
    return out;
}

std::vector<SuperFunction> monomial_functions(int m, int range)
{
    std::vector<SuperFunction> out;
    for (Mask mask : GrassmannAlgebra(m).basis())
        for (int k = -range; k <= range; ++k)
            out.push_back(SuperFunction::monomial(k, mask));
    return out;
}

const std::vector<ModuleShape> kShapes{{2, 1, 1}, {3, 1, 1}, {2, 2, 1}, {3, 1, 0}};

}  // namespace

TEST_CASE("exp of zero is the identity")
{
    CHECK(exp(QuasiDerivation::zero(kRank11)).is_identity());
    CHECK(log(QuasiAutomorphism::identity(kRank11)).is_zero());
}

TEST_CASE("exp of a square-zero derivation is id + A")
{
    auto a = exp(top_on_e());
    CHECK(a.images()[0] == section(2, 0, SuperFunction::constant(1)) + section(2, 0, SuperFunction::monomial(0, 3)));
    CHECK(a.images()[1] == section(2, 1, SuperFunction::constant(1)));
    CHECK(a.is_linear());
    CHECK(log(a) == top_on_e());
}

TEST_CASE("exp and log reject inputs that are not nilpotent")
{
    // raise 0
    auto bad = QuasiDerivation::linear(kRank11, {section(2, 0, SuperFunction::x(1)), SuperSection(Chart::U01, 2)});
    CHECK_THROWS_AS(exp(bad), std::invalid_argument);
    // odd: e -> ξ1 e
    auto odd = QuasiDerivation::linear(kRank11, {section(2, 0, SuperFunction::xi(1)), SuperSection(Chart::U01, 2)});
    CHECK_THROWS_AS(exp(odd), std::invalid_argument);
    // Γ(x) = 1 does not raise the J-degree
    QuasiDerivation shift(kRank11, {SuperSection(Chart::U01, 2), SuperSection(Chart::U01, 2)},
                          SuperFunction::constant(1), {SuperFunction(), SuperFunction()});
    CHECK_THROWS_AS(exp(shift), std::invalid_argument);
    // Φ(e) = 2e
    auto scale = QuasiAutomorphism::linear(kRank11, {section(2, 0, SuperFunction::constant(2)),
                                                     section(2, 1, SuperFunction::constant(1))});
    CHECK_THROWS_AS(log(scale), std::invalid_argument);
}

TEST_CASE("log inverts exp on random nilpotent derivations")
{
    std::mt19937 rng(2024);
    int trials = 0;
    for (const auto& shape : kShapes)
        for (int t = 0; t < 15; ++t, ++trials) {
            gen::DerivationShape opts;
            opts.with_field = t % 2 == 1;
            auto a = gen::random_derivation(rng, shape, opts);
            auto g = exp(a);
            CHECK(g.in_filtration(2, 2));
            CHECK(g.is_even());
            CHECK(log(g) == a);
            CHECK(exp(log(g)) == g);
        }
    CHECK(trials >= 50);
}

TEST_CASE("Leibniz rule on full monomial bases")
{
    std::mt19937 rng(5);
    for (const auto& shape : kShapes) {
        gen::DerivationShape opts;
        opts.with_field = true;
        opts.density = 0.6;
        auto a = gen::random_derivation(rng, shape, opts);
        auto functions = monomial_functions(shape.m, 2);
        for (const auto& f : functions) {
            for (const auto& h : functions)
                CHECK(a.apply(f * h) == a.apply(f) * h + f * a.apply(h));
            for (const auto& s : monomial_sections(shape, 1))
                CHECK(a.apply(f * s) == a.apply(f) * s + f * a.apply(s));
        }
    }
}

TEST_CASE("quasi-automorphisms are multiplicative on full monomial bases")
{
    std::mt19937 rng(6);
    for (const auto& shape : kShapes) {
        gen::DerivationShape opts;
        opts.with_field = true;
        opts.density = 0.6;
        auto g = exp(gen::random_derivation(rng, shape, opts));
        auto functions = monomial_functions(shape.m, 2);
        for (const auto& f : functions) {
            for (const auto& h : functions)
                CHECK(g.apply(f * h) == g.apply(f) * g.apply(h));
            for (const auto& s : monomial_sections(shape, 1))
                CHECK(g.apply(f * s) == g.apply(f) * g.apply(s));
        }
    }
}

TEST_CASE("filtration membership holds on monomial bases")
{
    std::mt19937 rng(7);
    for (const auto& shape : kShapes) {
        gen::DerivationShape opts;
        opts.with_field = true;
        auto a = gen::random_derivation(rng, shape, opts);
        auto r = a.raise();
        const int p = std::min(r.module, r.field);
        CHECK(a.in_filtration(std::min(p, kNoDegree), std::min(r.field, kNoDegree)));
        for (const auto& s : monomial_sections(shape, 2)) {
            auto img = a.apply(s);
            if (!img.is_zero())
                CHECK(img.min_degree(shape) >= s.min_degree(shape) + p);
        }
        for (const auto& f : monomial_functions(shape.m, 2)) {
            auto img = a.apply(f);
            if (!img.is_zero())
                CHECK(img.min_odd_degree() >= f.min_odd_degree() + r.field);
        }
    }
}

TEST_CASE("composition and inverse")
{
    std::mt19937 rng(8);
    for (const auto& shape : kShapes) {
        gen::DerivationShape opts;
        opts.with_field = true;
        auto a = exp(gen::random_derivation(rng, shape, opts));
        auto b = exp(gen::random_derivation(rng, shape, opts));
        CHECK(a.compose(a.inverse()).is_identity());
        CHECK(a.inverse().compose(a).is_identity());
        auto ab = a.compose(b);
        for (const auto& s : monomial_sections(shape, 1))
            CHECK(ab.apply(s) == a.apply(b.apply(s)));
    }
}

TEST_CASE("mu_k is the degree-k component of log")
{
    std::mt19937 rng(9);
    const ModuleShape shape{3, 1, 1};
    for (int k : {2, 4}) {
        auto a = gen::random_homogeneous_derivation(rng, shape, k, {k, 2, 0.6, true});
        CHECK(mu(exp(a), k) == a);
    }
    auto a = exp(top_on_e());
    CHECK(mu(a, 2) == top_on_e());
    CHECK_THROWS_AS(mu(a, 3), std::invalid_argument);
    CHECK_THROWS_AS(mu(a, 4), std::invalid_argument);
    CHECK_THROWS_AS(mu(a, 0), std::invalid_argument);
}

TEST_CASE("mu_k vanishes exactly on the next filtration level")
{
    std::mt19937 rng(10);
    const ModuleShape shape{3, 1, 1};
    for (int t = 0; t < 20; ++t) {
        gen::DerivationShape opts;
        opts.with_field = t % 2 == 0;
        auto high = exp(gen::random_derivation(rng, shape, {4, 2, 0.5, opts.with_field}));
        CHECK(mu(high, 2).is_zero());

        auto g = exp(gen::random_derivation(rng, shape, opts));
        bool kernel = mu(g, 2).is_zero();
        CHECK(kernel == g.in_filtration(4, 2));
    }
}

TEST_CASE("mu_k is additive")
{
    std::mt19937 rng(12);
    for (const auto& shape : kShapes)
        for (int k : {2, 4}) {
            if (k > shape.m + 1)
                continue;
            for (int t = 0; t < 5; ++t) {
                gen::DerivationShape opts{k, 2, 0.5, t % 2 == 0};
                auto a = exp(gen::random_derivation(rng, shape, opts));
                auto b = exp(gen::random_derivation(rng, shape, opts));
                CHECK(mu(a.compose(b), k) == mu(a, k) + mu(b, k));
            }
        }
}

TEST_CASE("quasi-automorphism constructor rejects a moving base point")
{
    CHECK_THROWS_AS(QuasiAutomorphism(kRank11, {section(2, 0, SuperFunction::constant(1)),
                                                section(2, 1, SuperFunction::constant(1))},
                                      SuperFunction::x(1) + SuperFunction::constant(1),
                                      {SuperFunction::xi(1), SuperFunction::xi(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(QuasiDerivation::linear(kRank11, {SuperSection(Chart::U01, 2)}), std::invalid_argument);
}
