#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

#include "superspec/quotient.hpp"

#include <random>

using namespace superspec;

namespace {

RationalMatrix M(std::vector<Vector> rows, size_t cols = 0)
{
    return RationalMatrix::from_rows(rows, cols);
}

Subspace S(std::vector<Vector> rows, size_t n)
{
    return Subspace::span(rows, n);
}

}  // namespace

TEST_CASE("rational parsing and printing")
{
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == -4);
    CHECK(parse_rational("+2/3") == Rational(2, 3));
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2/-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rref examples")
{
    auto a = rref(M({{2, 4}, {1, 2}}));
    CHECK(a.reduced == M({{1, 2}, {0, 0}}));
    CHECK(a.pivots == std::vector<size_t>{0});

    auto id = rref(RationalMatrix::identity(3));
    CHECK(id.reduced == RationalMatrix::identity(3));
    CHECK(id.pivots == std::vector<size_t>{0, 1, 2});

    auto sw = rref(M({{0, 1}, {1, 0}}));
    CHECK(sw.reduced == RationalMatrix::identity(2));
}

TEST_CASE("rref is idempotent and its transform is exact")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = gen::random_matrix(rng, 1 + trial % 5, 1 + (trial * 3) % 6);
        auto once = rref(m);
        auto twice = rref(once.reduced);
        CHECK(twice.reduced == once.reduced);
        CHECK(twice.pivots == once.pivots);
        auto rt = rref_with_transform(m);
        CHECK(rt.transform * m == rt.rref.reduced);
        CHECK(rt.rref.pivots.size() == oracle::rank(m));
    }
}

TEST_CASE("kernel examples")
{
    auto k = kernel(M({{1, 1}}));
    CHECK(k.dim() == 1);
    CHECK(k.basis() == M({{1, -1}}));
    CHECK(kernel(RationalMatrix(2, 2)) == Subspace::full(2));
    CHECK(kernel(RationalMatrix::identity(2)) == Subspace::zero(2));
}

TEST_CASE("rank-nullity on random matrices")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<size_t> sz(0, 7);
        size_t r = sz(rng), c = sz(rng);
        auto m = gen::random_matrix(rng, r, c);
        auto k = kernel(m);
        CHECK(oracle::rank(m) + k.dim() == c);
        for (size_t i = 0; i < k.dim(); ++i)
            CHECK(is_zero(m.apply(k.basis().row(i))));
    }
}

TEST_CASE("preimage examples")
{
    auto w = S({{3, 5}}, 2);
    CHECK(preimage(RationalMatrix::identity(2), w) == w);
    CHECK(preimage(M({{0, 0}, {1, 0}}), S({{0, 1}}, 2)) == Subspace::full(2));
    CHECK(preimage(RationalMatrix::identity(2), Subspace::zero(2)) == Subspace::zero(2));
    CHECK_THROWS_AS(preimage(RationalMatrix::identity(2), Subspace::zero(3)), std::invalid_argument);
}

TEST_CASE("preimage contains the kernel and maps into the target")
{
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = gen::random_matrix(rng, 4, 5);
        auto w = Subspace::span(gen::random_matrix(rng, 2, 4));
        auto pre = preimage(m, w);
        CHECK(pre.contains(kernel(m)));
        for (size_t i = 0; i < pre.dim(); ++i)
            CHECK(w.contains(m.apply(pre.basis().row(i))));
        // image(m) ∩ w pulls back with dimension dim ker + dim(im ∩ w)
        CHECK(pre.dim() == kernel(m).dim() + intersect(image(m), w).dim());
    }
}

TEST_CASE("intersect and sum examples")
{
    auto e1 = S({{1, 0}}, 2), e2 = S({{0, 1}}, 2);
    CHECK(intersect(e1, e2) == Subspace::zero(2));
    CHECK(sum(e1, e2) == Subspace::full(2));
    auto a = S({{1, 1}, {1, 0}}, 2), b = S({{1, 1}}, 2);
    CHECK(intersect(a, b) == b);
    CHECK(oracle::zassenhaus_intersection_dim({{1, 1}, {1, 0}}, {{1, 1}}, 2) == 1);
    CHECK_THROWS_AS(sum(e1, Subspace::zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(intersect(e1, Subspace::zero(3)), std::invalid_argument);
}

TEST_CASE("subspace lattice laws on random pairs")
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t n = 6;
        std::uniform_int_distribution<size_t> k(0, 5);
        auto am = gen::random_matrix(rng, k(rng), n);
        auto bm = gen::random_matrix(rng, k(rng), n);
        auto cm = gen::random_matrix(rng, k(rng), n);
        auto a = Subspace::span(am), b = Subspace::span(bm), c = Subspace::span(cm);
        CHECK(intersect(a, a) == a);
        CHECK(sum(a, Subspace::zero(n)) == a);
        auto meet = intersect(a, b);
        auto join = sum(a, b);
        CHECK(a.dim() + b.dim() == join.dim() + meet.dim());
        std::vector<Vector> ar, br;
        for (size_t i = 0; i < am.rows(); ++i)
            ar.push_back(am.row_vector(i));
        for (size_t i = 0; i < bm.rows(); ++i)
            br.push_back(bm.row_vector(i));
        CHECK(meet.dim() == oracle::zassenhaus_intersection_dim(ar, br, n));
        // modular law: a ⊆ c implies a + (b ∩ c) = (a + b) ∩ c
        auto ac = sum(a, c);
        CHECK(sum(a, intersect(b, ac)) == intersect(sum(a, b), ac));
        // canonical form: the same space from a different generating set is bit-identical
        CHECK(Subspace::span(join.basis() * RationalMatrix::identity(n)) == join);
        CHECK(sum(b, a) == join);
    }
}

TEST_CASE("quotient examples")
{
    auto q = QuotientPresentation(Subspace::full(2), S({{0, 1}}, 2));
    CHECK(q.dim() == 1);
    CHECK(q.representatives() == M({{1, 0}}));

    auto v = S({{1, 0}, {1, 1}}, 2);
    CHECK(QuotientPresentation(v, v).dim() == 0);

    auto q2 = QuotientPresentation(v, S({{1, 1}}, 2));
    CHECK(q2.dim() == oracle::rank(M({{1, 0}, {1, 1}})) - 1);
    // v = Q^2 has RREF basis e1, e2; e1 is independent of (1,1) and is picked first
    CHECK(q2.representatives() == M({{1, 0}}));
    CHECK(q2.project(Vector{Rational(3), Rational(3)}) == Vector{Rational(0)});
    CHECK(q2.project(Vector{Rational(2), Rational(5)}) == Vector{Rational(-3)});

    CHECK_THROWS_AS(QuotientPresentation(S({{1, 0}}, 2), S({{0, 1}}, 2)), std::invalid_argument);
    CHECK_THROWS_AS(q.project(Vector{Rational(1), Rational(0), Rational(0)}), std::invalid_argument);
}

TEST_CASE("quotient projection round-trips representatives and kills the denominator")
{
    std::mt19937 rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        const size_t n = 6;
        auto v = Subspace::span(gen::random_matrix(rng, 4, n));
        // w: random subspace of v
        RationalMatrix coeff = gen::random_matrix(rng, 2, v.dim());
        auto w = v.dim() == 0 ? Subspace::zero(n) : Subspace::span(coeff * v.basis());
        QuotientPresentation q(v, w);
        CHECK(q.dim() == v.dim() - w.dim());
        for (size_t i = 0; i < q.dim(); ++i) {
            Vector e(q.dim());
            e[i] = 1;
            CHECK(q.project(q.representatives().row(i)) == e);
        }
        for (size_t i = 0; i < w.dim(); ++i)
            CHECK(is_zero(q.project(w.basis().row(i))));
    }
}

TEST_CASE("induced maps")
{
    auto v = Subspace::full(3);
    auto w = S({{0, 0, 1}}, 3);
    QuotientPresentation q(v, w);
    CHECK(induced_map(RationalMatrix::identity(3), q, q) == RationalMatrix::identity(2));

    // f sends everything into w: induced map is zero
    auto f = M({{0, 0, 0}, {0, 0, 0}, {1, 2, 3}});
    CHECK(induced_map(f, q, q).is_zero());

    // f must preserve the pair
    auto bad = M({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}});
    CHECK_THROWS_AS(induced_map(bad, q, q), std::domain_error);

    // functoriality on random pairs preserved by upper triangular maps
    std::mt19937 rng(23);
    auto flag1 = S({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4);
    auto flag0 = S({{1, 0, 0, 0}}, 4);
    QuotientPresentation qq(flag1, flag0);
    QuotientPresentation big(Subspace::full(4), flag1);
    for (int trial = 0; trial < 20; ++trial) {
        auto upper = [&] {
            auto m = gen::random_matrix(rng, 4, 4);
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = 0; j < i; ++j)
                    m(i, j) = 0;
            return m;
        };
        auto g = upper(), h = upper();
        CHECK(induced_map(h * g, qq, qq) == induced_map(h, qq, qq) * induced_map(g, qq, qq));
        CHECK(induced_map(h * g, big, big) == induced_map(h, big, big) * induced_map(g, big, big));
    }
}

TEST_CASE("inclusion of a smaller pair induces an injection when denominators match")
{
    // v' ⊆ v, w' = v' ∩ w: the inclusion v'/w' -> v/w is injective
    std::mt19937 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const size_t n = 5;
        auto v = Subspace::span(gen::random_matrix(rng, 4, n));
        if (v.dim() == 0)
            continue;
        auto w = Subspace::span(gen::random_matrix(rng, 2, v.dim()) * v.basis());
        auto vp = Subspace::span(gen::random_matrix(rng, 3, v.dim()) * v.basis());
        auto wp = intersect(vp, w);
        QuotientPresentation small(vp, wp), large(v, w);
        auto inc = induced_map(RationalMatrix::identity(n), small, large);
        CHECK(oracle::rank(inc) == small.dim());
    }
}

TEST_CASE("solve and inverse")
{
    auto a = M({{1, 2}, {3, 4}});
    auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(*inv * a == RationalMatrix::identity(2));
    CHECK_FALSE(inverse(M({{1, 2}, {2, 4}})));
    auto x = solve(a, Vector{Rational(5), Rational(6)});
    REQUIRE(x);
    CHECK(a.apply(*x) == Vector{Rational(5), Rational(6)});
    CHECK_FALSE(solve(M({{1, 1}, {1, 1}}), Vector{Rational(0), Rational(1)}));
}
