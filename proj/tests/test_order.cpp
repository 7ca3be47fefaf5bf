#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

#include "superspec/degeneracy.hpp"

#include <random>

using namespace superspec;
using namespace superspec::cech;
using namespace superspec::deform;

namespace {

SuperSection on(size_t n, int g, const SuperFunction& f)
{
    SuperSection s(Chart::U01, n);
    s.coefficient(g) = f;
    return s;
}

SheafModel base_model(std::vector<int> a = {-1, -1}, int window = 2)
{
    SheafModel m;
    m.twists.a = std::move(a);
    m.even_twists = {0};
    m.odd_twists = {0};
    m.window = window;
    return m;
}

QuasiDerivation order_two_derivation()
{
    SuperFunction top = SuperFunction::monomial(-1, 3);
    return QuasiDerivation::linear({2, 1, 1}, {on(2, 0, top), on(2, 1, top)});
}

SheafModel order_two_fixture()
{
    auto m = base_model();
    m.transition = exp(order_two_derivation());
    return m;
}

SheafModel normalizable_fixture()
{
    auto m = base_model();
    m.transition = exp(QuasiDerivation::linear({2, 1, 1}, {on(2, 0, SuperFunction::monomial(1, 3)), SuperSection(Chart::U01, 2)}));
    return m;
}

// m = 3, A(e) = x^-1 ξ1ξ2ξ3 f raises degree by 4
SheafModel order_four_fixture()
{
    auto m = base_model({-1, -1, -1});
    m.transition = exp(QuasiDerivation::linear({3, 1, 1}, {on(2, 1, SuperFunction::monomial(-1, 7)), SuperSection(Chart::U01, 2)}));
    return m;
}

// term x^e of g -> ξ_I g' can be split iff e >= 0 or e <= s, s = twist(ξ_I g') - twist(g)
bool oracle_splittable(const QuasiDerivation& mu, const SheafModel& model)
{
    const auto shape = mu.shape();
    for (int g = 0; g < shape.generators(); ++g)
        for (int h = 0; h < shape.generators(); ++h)
            for (const auto& [mono, c] : mu.images()[static_cast<size_t>(g)].coefficient(h).terms()) {
                int s = model.generator_twist(h) - model.generator_twist(g);
                for (int i = 0; i < model.m(); ++i)
                    if (mono.mask & (1u << i))
                        s += model.twists.a[static_cast<size_t>(i)];
                if (s < mono.exponent && mono.exponent < 0)
                    return false;
            }
    return true;
}

std::vector<size_t> h_dims(const SheafModel& m)
{
    return oracle::cohomology_dims(build_cech_complex(m).complex);
}

}  // namespace

TEST_CASE("order of the split cocycle is infinite")
{
    auto m = base_model();
    auto r = order(QuasiAutomorphism::identity(m.shape()), m);
    CHECK(r.split());
    CHECK(r.to_string() == "∞");
}

TEST_CASE("order-2 fixture")
{
    auto m = order_two_fixture();
    auto r = order(*m.transition, m);
    REQUIRE(r.order);
    CHECK(*r.order == 2);
    CHECK(r.stages.back().obstructed);
    CHECK(r.stages.back().mu == order_two_derivation());
    CHECK_FALSE(split_coboundary(order_two_derivation(), m));
}

TEST_CASE("normalizable fixture has infinite order")
{
    auto m = normalizable_fixture();
    auto r = order(*m.transition, m);
    CHECK(r.split());
    CHECK(r.normalized.is_identity());
    REQUIRE(r.stages.size() == 1);
    const auto& st = r.stages[0];
    REQUIRE(st.gauge_u0);
    CHECK(*st.gauge_u0 - *st.gauge_u1 == st.mu);
    // normalization is a change of trivialization, so cohomology is unchanged
    auto normalized = m;
    normalized.transition = r.normalized;
    CHECK(h_dims(m) == h_dims(normalized));
}

TEST_CASE("order-4 fixture")
{
    auto m = order_four_fixture();
    auto r = order(*m.transition, m);
    REQUIRE(r.order);
    CHECK(*r.order == 4);
}

TEST_CASE("coboundary solver agrees with the exponent oracle")
{
    std::mt19937 rng(41);
    const std::vector<std::vector<int>> twists{{-1, -1}, {-2, 0}, {1, -3}, {-1, -2}};
    int solvable = 0, obstructed = 0;
    for (int t = 0; t < 80; ++t) {
        auto model = base_model(twists[static_cast<size_t>(t) % twists.size()]);
        model.even_twists = {t % 3 - 1};
        model.odd_twists = {(t / 3) % 3 - 1};
        auto mu = gen::random_homogeneous_derivation(rng, model.shape(), 2, {2, 3, 0.4, false});
        auto sol = split_coboundary(mu, model);
        CHECK(sol.has_value() == oracle_splittable(mu, model));
        if (!sol) {
            ++obstructed;
            continue;
        }
        ++solvable;
        CHECK(sol->first - sol->second == mu);
        // B0 regular on U0, B1 regular on U1
        for (int g = 0; g < 2; ++g)
            for (int h = 0; h < 2; ++h) {
                for (const auto& [mono, c] : sol->first.images()[static_cast<size_t>(g)].coefficient(h).terms())
                    CHECK(mono.exponent >= 0);
                for (const auto& [mono, c] : sol->second.images()[static_cast<size_t>(g)].coefficient(h).terms()) {
                    int s = model.generator_twist(h) - model.generator_twist(g);
                    for (int i = 0; i < 2; ++i)
                        if (mono.mask & (1u << i))
                            s += model.twists.a[static_cast<size_t>(i)];
                    CHECK(mono.exponent <= s);
                }
            }
        auto a = exp(mu);
        auto r = order(a, model);
        CHECK(r.split());
    }
    CHECK(solvable > 5);
    CHECK(obstructed > 5);
}

TEST_CASE("order is invariant under diagonal rescaling")
{
    std::mt19937 rng(43);
    for (int t = 0; t < 20; ++t) {
        auto model = base_model();
        auto a = exp(gen::random_homogeneous_derivation(rng, model.shape(), 2, {2, 2, 0.5, false}));
        const Rational lambda(t + 2), nu(-1 - t % 3);
        auto d = QuasiAutomorphism::linear(model.shape(), {on(2, 0, SuperFunction::constant(lambda)),
                                                           on(2, 1, SuperFunction::constant(nu))});
        auto d_inv = QuasiAutomorphism::linear(model.shape(), {on(2, 0, SuperFunction::constant(1 / lambda)),
                                                               on(2, 1, SuperFunction::constant(1 / nu))});
        auto conj = d.compose(a).compose(d_inv);
        CHECK(order(a, model).to_string() == order(conj, model).to_string());
    }
}

TEST_CASE("order rejects cocycles outside its domain")
{
    const ModuleShape shape{2, 1, 1};
    auto model = base_model();
    QuasiDerivation field(shape, {SuperSection(Chart::U01, 2), SuperSection(Chart::U01, 2)},
                          SuperFunction::monomial(0, 3), {SuperFunction(), SuperFunction()});
    CHECK_THROWS_AS(order(exp(field), model), std::invalid_argument);
}

TEST_CASE("degeneracy on the order-2 fixture")
{
    auto m = order_two_fixture();
    auto report = verify_degeneracy(m);
    CHECK(report.pass);
    CHECK(report.summary == "order 2; d_1 = 0: PASS; d_2 = mu_2: PASS");
    bool nonzero = false;
    for (const auto& c : report.checks)
        if (c.r == 2 && !c.actual.is_zero())
            nonzero = true;
    CHECK(nonzero);

    // d_2 sends the constant e to the class of x^-1 ξ1ξ2 e and kills all cohomology
    SpectralSequence ss(build_cech_complex(m).complex);
    CHECK(ss.page(2).differential({0, 0}).rows() == 1);
    CHECK(ss.page(2).differential({0, 0}) == RationalMatrix::from_rows({{ss.page(2).differential({0, 0})(0, 0)}}));
    CHECK(sgn(ss.page(2).differential({0, 0})(0, 0)) != 0);
    CHECK(sgn(ss.page(2).differential({1, -1})(0, 0)) != 0);
    auto h = ss.cohomology();
    CHECK(h.dim(0) == 0);
    CHECK(h.dim(1) == 0);
    CHECK(oracle::cohomology_dims(ss.complex()) == std::vector<size_t>{0, 0});
}

TEST_CASE("tampered mu fails the comparison")
{
    auto m = order_two_fixture();
    auto report = verify_degeneracy(m, order_two_derivation() * Rational(2));
    CHECK_FALSE(report.pass);
    CHECK(report.summary == "order 2; d_1 = 0: PASS; d_2 = mu_2: FAIL");
    CHECK(report.details().find("(p,q,r) = (") != std::string::npos);
}

TEST_CASE("degeneracy on split and normalizable models")
{
    auto split = verify_degeneracy(base_model());
    CHECK(split.pass);
    CHECK(split.summary == "order ∞; degeneracy at E_1: PASS");
    auto norm = verify_degeneracy(normalizable_fixture());
    CHECK(norm.pass);
    CHECK(norm.summary == "order ∞; degeneracy at E_1: PASS");
    bool saw_twisted = false;
    for (const auto& c : norm.checks)
        saw_twisted = saw_twisted || c.label.find("twisted") != std::string::npos;
    CHECK(saw_twisted);
}

TEST_CASE("degeneracy on the order-4 fixture")
{
    auto report = verify_degeneracy(order_four_fixture());
    CHECK(report.pass);
    CHECK(report.summary == "order 4; d_1 = 0: PASS; d_2 = 0: PASS; d_3 = 0: PASS; d_4 = mu_4: PASS");
}

TEST_CASE("degeneracy on random order-2 cocycles")
{
    std::mt19937 rng(47);
    int checked = 0;
    for (int t = 0; t < 12; ++t) {
        auto model = base_model(t % 2 ? std::vector<int>{-1, -1} : std::vector<int>{-2, 0});
        auto a = exp(gen::random_derivation(rng, model.shape(), {2, 2, 0.5, false}));
        model.transition = a;
        auto report = verify_degeneracy(model);
        CHECK(report.pass);
        if (report.order)
            ++checked;
    }
    CHECK(checked > 0);
}
